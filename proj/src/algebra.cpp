#include "flagtrans/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace flagtrans {

std::pair<int, int> CompAlgebra::form_signature() const
{
    int p = 0;
    for (int s : form_signs) p += s > 0;
    return {p, dim - p};
}

CompAlgebra build_algebra(const std::vector<int>& tower)
{
    if (tower.size() > 3) throw std::invalid_argument("build_algebra: towers longer than 3 are not supported");
    CompAlgebra A;
    A.tower = tower;
    A.form_signs = {1};
    for (int eps : tower) {
        if (eps != 1 && eps != -1) throw std::invalid_argument("build_algebra: tower entries must be +1 or -1");
        const auto base = A.form_signs;
        for (int s : base) A.form_signs.push_back(-eps * s);
    }
    A.dim = static_cast<int>(A.form_signs.size());
    static const std::vector<std::pair<std::vector<int>, std::string>> names = {
        {{}, "R"}, {{-1}, "C"}, {{1}, "C'"}, {{-1, -1}, "H"}, {{-1, 1}, "H'"},
        {{-1, -1, -1}, "O"}, {{-1, -1, 1}, "O'"}};
    for (const auto& [t, n] : names)
        if (t == tower) A.name = n;
    return A;
}

CompAlgebra algebra_by_name(const std::string& name)
{
    if (name == "R") return build_algebra({});
    if (name == "C") return build_algebra({-1});
    if (name == "C'") return build_algebra({1});
    if (name == "H") return build_algebra({-1, -1});
    if (name == "H'") return build_algebra({-1, 1});
    if (name == "O") return build_algebra({-1, -1, -1});
    if (name == "O'") return build_algebra({-1, -1, 1});
    throw std::invalid_argument("unknown algebra: " + name);
}

AlgebraElement element(const CompAlgebra& A, Vec coords)
{
    if (coords.size() != A.dim) throw std::invalid_argument("element: coordinate count does not match algebra");
    return {A.tower, std::move(coords)};
}

AlgebraElement unit_element(const CompAlgebra& A, int index)
{
    if (index < 0 || index >= A.dim) throw std::invalid_argument("unit_element: index out of range");
    return {A.tower, Vec::Unit(A.dim, index)};
}

Vec cd_conjugate(const Vec& x)
{
    Vec out = -x;
    out(0) = x(0);
    return out;
}

static Vec cd_mul(const int* tower, size_t depth, const Vec& x, const Vec& y)
{
    if (depth == 0) return Vec::Constant(1, x(0) * y(0));
    const Eigen::Index h = x.size() / 2;
    const Vec a = x.head(h), b = x.tail(h), c = y.head(h), d = y.tail(h);
    const double eps = tower[depth - 1];
    Vec out(x.size());
    // (a,b)(c,d) = (ac + eps d b*, a* d + c b)
    out.head(h) = cd_mul(tower, depth - 1, a, c) + eps * cd_mul(tower, depth - 1, d, cd_conjugate(b));
    out.tail(h) = cd_mul(tower, depth - 1, cd_conjugate(a), d) + cd_mul(tower, depth - 1, c, b);
    return out;
}

Vec cd_multiply(const std::vector<int>& tower, const Vec& x, const Vec& y)
{
    const Eigen::Index n = Eigen::Index{1} << tower.size();
    if (x.size() != n || y.size() != n) throw std::invalid_argument("cd_multiply: length mismatch");
    return cd_mul(tower.data(), tower.size(), x, y);
}

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y)
{
    if (x.tower != y.tower) throw std::invalid_argument("multiply: elements from different algebras");
    return {x.tower, cd_multiply(x.tower, x.coords, y.coords)};
}

AlgebraElement conjugate(const AlgebraElement& x) { return {x.tower, cd_conjugate(x.coords)}; }

double norm(const AlgebraElement& x) { return cd_multiply(x.tower, x.coords, cd_conjugate(x.coords))(0); }

Mat left_mult_operator(const AlgebraElement& x)
{
    const auto n = x.coords.size();
    Mat L(n, n);
    for (Eigen::Index j = 0; j < n; ++j) L.col(j) = cd_multiply(x.tower, x.coords, Vec::Unit(n, j));
    return L;
}

Mat right_mult_operator(const AlgebraElement& x)
{
    const auto n = x.coords.size();
    Mat R(n, n);
    for (Eigen::Index j = 0; j < n; ++j) R.col(j) = cd_multiply(x.tower, Vec::Unit(n, j), x.coords);
    return R;
}

namespace {
const std::vector<int> kSplitOct = {-1, -1, 1};

Vec embed_im(const Vec& u)
{
    if (u.size() != 7) throw std::invalid_argument("expected a 7-vector in Im(O') coordinates");
    Vec x = Vec::Zero(8);
    x.tail(7) = u;
    return x;
}
}  // namespace

BilinearForm cross_form() { return make_form(3, 4, FormConvention::Diagonal); }

double cross_q(const Vec& u)
{
    return u.head(3).squaredNorm() - u.tail(4).squaredNorm();
}

Vec cross_product(const Vec& u, const Vec& v)
{
    return cd_multiply(kSplitOct, embed_im(u), embed_im(v)).tail(7);
}

Mat cross_matrix(const Vec& x)
{
    Mat C(7, 7);
    for (int j = 0; j < 7; ++j) C.col(j) = cross_product(x, Vec::Unit(7, j));
    return C;
}

Subspace annihilator(const Vec& x, double tol)
{
    if (x.size() != 7) throw std::invalid_argument("annihilator: expected a 7-vector");
    const double n2 = x.squaredNorm();
    if (n2 == 0.0) throw std::invalid_argument("annihilator: zero vector");
    if (std::abs(cross_q(x)) > tol * n2) throw std::invalid_argument("annihilator: vector is not null");
    Eigen::JacobiSVD<Mat> svd(cross_matrix(x), Eigen::ComputeFullV);
    // a null vector has exactly 4 nonzero singular values
    const auto& s = svd.singularValues();
    int r = 0;
    for (int i = 0; i < 7; ++i)
        if (s(i) > 1e-8 * s(0)) ++r;
    if (r != 4) throw std::runtime_error("annihilator: unexpected rank " + std::to_string(r));
    return Subspace{svd.matrixV().rightCols(3)};
}

Mat RCrossBasis::gram() const
{
    const BilinearForm f = cross_form();
    Mat G(7, 7);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) G(i, j) = f(vectors[i], vectors[j]);
    return G;
}

double RCrossBasis::grading_residual() const
{
    double worst = 0.0;
    for (int i = -3; i <= 3; ++i)
        for (int j = -3; j <= 3; ++j) {
            Vec r = cross_product(x(i), x(j));
            if (std::abs(i + j) <= 3) r -= coeff(i, j) * x(i + j);
            worst = std::max(worst, r.cwiseAbs().maxCoeff());
        }
    return worst;
}

RCrossBasis r_cross_basis()
{
    // l spans a negative line; its cross-product operator squares to the identity on
    // the complement, whose +-1 eigenspaces are a pair of transverse null 3-planes.
    const Vec l = Vec::Unit(7, 3);
    Mat A(7, 3), B0(7, 3);
    for (int i = 0; i < 3; ++i) {
        const Vec y = Vec::Unit(7, i);
        const Vec ly = cross_product(l, y);
        A.col(i) = 0.5 * (y + ly);
        B0.col(i) = 0.5 * (y - ly);
    }
    const BilinearForm f = cross_form();
    const Mat M = A.transpose() * f.matrix * B0;
    const Mat Bm = B0 * M.inverse();

    RCrossBasis out;
    out.vectors[3 + 3] = A.col(0);
    out.vectors[-2 + 3] = A.col(1);
    out.vectors[-1 + 3] = A.col(2);
    out.vectors[-3 + 3] = Bm.col(0);
    out.vectors[2 + 3] = Bm.col(1);
    out.vectors[1 + 3] = Bm.col(2);
    out.vectors[0 + 3] = l;

    for (int i = -3; i <= 3; ++i)
        for (int j = -3; j <= 3; ++j) {
            const int k = i + j;
            if (std::abs(k) > 3) continue;
            const double g = f(out.x(k), out.x(-k));
            out.c[i + 3][j + 3] = f(cross_product(out.x(i), out.x(j)), out.x(-k)) / g;
        }
    return out;
}

}  // namespace flagtrans
