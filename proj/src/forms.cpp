#include "flagtrans/forms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flagtrans {

std::string to_string(FormConvention c)
{
    switch (c) {
    case FormConvention::Diagonal: return "diagonal";
    case FormConvention::Antidiagonal: return "antidiagonal";
    case FormConvention::BSplit: return "B-split";
    case FormConvention::Custom: return "custom";
    }
    return "custom";
}

FormConvention form_convention_from_string(const std::string& s)
{
    if (s == "diagonal") return FormConvention::Diagonal;
    if (s == "antidiagonal") return FormConvention::Antidiagonal;
    if (s == "B-split" || s == "b-split") return FormConvention::BSplit;
    throw std::invalid_argument("unknown form convention: " + s);
}

BilinearForm make_form(int p, int q, FormConvention convention)
{
    if (p < 0 || q < 0 || p + q < 1)
        throw std::invalid_argument("make_form: need p,q >= 0 and p+q >= 1");
    BilinearForm f;
    f.p = p;
    f.q = q;
    f.convention = convention;
    const int n = p + q;
    f.matrix = Mat::Zero(n, n);
    switch (convention) {
    case FormConvention::Diagonal:
        for (int i = 0; i < n; ++i) f.matrix(i, i) = i < p ? 1.0 : -1.0;
        break;
    case FormConvention::Antidiagonal:
        if (p != q) throw std::invalid_argument("make_form: antidiagonal requires p = q");
        for (int i = 0; i < n; ++i) f.matrix(i, n - 1 - i) = 1.0;
        break;
    case FormConvention::BSplit:
        if (q != p + 1) throw std::invalid_argument("make_form: B-split requires q = p+1");
        for (int i = 0; i < n; ++i) f.matrix(i, n - 1 - i) = 1.0;
        f.matrix(p, p) = -1.0;
        break;
    case FormConvention::Custom:
        throw std::invalid_argument("make_form: custom forms come from direct_sum or negated");
    }
    return f;
}

static bool is_diagonal_pm1(const Mat& m)
{
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            const double v = m(i, j);
            if (i == j ? std::abs(std::abs(v) - 1.0) > 0 : v != 0.0) return false;
        }
    return true;
}

BilinearForm direct_sum(const BilinearForm& a, const BilinearForm& b)
{
    BilinearForm f;
    f.p = a.p + b.p;
    f.q = a.q + b.q;
    const int n = a.dim() + b.dim();
    f.matrix = Mat::Zero(n, n);
    f.matrix.topLeftCorner(a.dim(), a.dim()) = a.matrix;
    f.matrix.bottomRightCorner(b.dim(), b.dim()) = b.matrix;
    f.convention = FormConvention::Custom;
    // "Diagonal" means positives first, so R^{p,0} + R^{0,q} qualifies but not the reverse.
    if (is_diagonal_pm1(f.matrix)) {
        bool ordered = true;
        for (int i = 0; i < n; ++i)
            if ((f.matrix(i, i) > 0) != (i < f.p)) ordered = false;
        if (ordered) f.convention = FormConvention::Diagonal;
    }
    return f;
}

BilinearForm negated(const BilinearForm& f)
{
    BilinearForm g;
    g.p = f.q;
    g.q = f.p;
    g.matrix = -f.matrix;
    g.convention = FormConvention::Custom;
    return g;
}

std::pair<int, int> signature(const Mat& sym, double tol)
{
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (sym + sym.transpose()));
    const auto& ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    int pos = 0, neg = 0;
    for (int i = 0; i < ev.size(); ++i) {
        if (ev(i) > tol * scale) ++pos;
        else if (ev(i) < -tol * scale) ++neg;
    }
    return {pos, neg};
}

Subspace make_subspace(Mat basis, double rank_tol)
{
    if (basis.cols() > 0 && span_rank(basis, rank_tol) != basis.cols())
        throw std::invalid_argument("make_subspace: columns are not linearly independent");
    return Subspace{std::move(basis)};
}

Subspace zero_subspace(int ambient) { return Subspace{Mat(ambient, 0)}; }

Subspace full_subspace(int ambient) { return Subspace{Mat::Identity(ambient, ambient)}; }

Mat gram(const BilinearForm& form, const Subspace& U, const Subspace& W)
{
    if (U.ambient_dim() != form.dim() || W.ambient_dim() != form.dim())
        throw std::invalid_argument("gram: ambient dimension does not match the form");
    return U.basis.transpose() * form.matrix * W.basis;
}

Mat orthonormal_basis(const Mat& basis)
{
    if (basis.cols() == 0) return basis;
    Eigen::HouseholderQR<Mat> qr(basis);
    Mat Q = qr.householderQ() * Mat::Identity(basis.rows(), basis.cols());
    const Mat R = qr.matrixQR().topRows(basis.cols()).triangularView<Eigen::Upper>();
    for (int j = 0; j < basis.cols(); ++j)
        if (R(j, j) < 0) Q.col(j) = -Q.col(j);
    return Q;
}

double pairing_margin(const BilinearForm& form, const Subspace& U, const Subspace& W)
{
    if (U.dim() != W.dim()) throw std::invalid_argument("pairing: subspaces of unequal dimension");
    if (U.ambient_dim() != form.dim() || W.ambient_dim() != form.dim())
        throw std::invalid_argument("pairing: ambient dimension does not match the form");
    if (U.dim() == 0) return 1.0;
    const Mat G = orthonormal_basis(U.basis).transpose() * form.matrix * orthonormal_basis(W.basis);
    return G.partialPivLu().determinant();
}

double pairing_strength(const BilinearForm& form, const Subspace& U, const Subspace& W)
{
    if (U.dim() != W.dim()) throw std::invalid_argument("pairing: subspaces of unequal dimension");
    if (U.ambient_dim() != form.dim() || W.ambient_dim() != form.dim())
        throw std::invalid_argument("pairing: ambient dimension does not match the form");
    if (U.dim() == 0) return 1.0;
    const Mat G = orthonormal_basis(U.basis).transpose() * form.matrix * orthonormal_basis(W.basis);
    return Eigen::JacobiSVD<Mat>(G).singularValues().minCoeff();
}

bool pairing_nondegenerate(const BilinearForm& form, const Subspace& U, const Subspace& W,
                           const Tolerances& tol)
{
    return pairing_strength(form, U, W) > tol.det;
}

std::vector<double> leading_minors(const Mat& M)
{
    if (M.rows() != M.cols()) throw std::invalid_argument("leading_minors: square matrix required");
    std::vector<double> out;
    out.reserve(M.rows());
    for (int m = 1; m <= M.rows(); ++m)
        out.push_back(M.topLeftCorner(m, m).partialPivLu().determinant());
    return out;
}

int span_rank(const Mat& columns, double tol)
{
    if (columns.cols() == 0 || columns.rows() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(columns);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > tol * s(0)) ++r;
    return r;
}

int span_rank(const std::vector<Vec>& vectors, double tol)
{
    if (vectors.empty()) throw std::invalid_argument("span_rank: empty input");
    const auto n = vectors.front().size();
    Mat M(n, static_cast<Eigen::Index>(vectors.size()));
    for (size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != n) throw std::invalid_argument("span_rank: unequal lengths");
        M.col(static_cast<Eigen::Index>(j)) = vectors[j];
    }
    return span_rank(M, tol);
}

std::vector<Vec> orthonormalize(const BilinearForm& form, const std::vector<Vec>& vectors,
                                const std::vector<int>& expected_signs, const Tolerances& tol)
{
    const size_t k = vectors.size();
    if (expected_signs.size() != k) throw std::invalid_argument("orthonormalize: sign count mismatch");
    std::vector<Vec> work = vectors;
    std::vector<Vec> out(k);
    std::vector<bool> done(k, false);
    for (size_t step = 0; step < k; ++step) {
        size_t best = k;
        double best_val = 0.0;
        for (size_t i = 0; i < k; ++i) {
            if (done[i]) continue;
            const double s = std::abs(form(work[i], work[i])) / std::max(1e-300, work[i].squaredNorm());
            if (best == k || s > best_val) {
                best = i;
                best_val = s;
            }
        }
        if (best_val <= tol.residual) {
            // All remaining vectors are (nearly) null: mix in the partner with the
            // largest cross pairing.
            size_t bj = k;
            double cross = 0.0;
            for (size_t j = 0; j < k; ++j) {
                if (done[j] || j == best) continue;
                const double c = std::abs(form(work[best], work[j])) /
                                 std::max(1e-300, work[best].norm() * work[j].norm());
                if (c > cross) {
                    cross = c;
                    bj = j;
                }
            }
            if (bj == k || cross <= tol.residual)
                throw std::invalid_argument("orthonormalize: degenerate restriction of the form");
            const double sgn = form(work[best], work[bj]) * expected_signs[best] > 0 ? 1.0 : -1.0;
            work[best] += sgn * work[bj];
        }
        const double self = form(work[best], work[best]);
        const int sign = self > 0 ? 1 : -1;
        if (sign != expected_signs[best])
            throw std::invalid_argument("orthonormalize: sign mismatch at vector " + std::to_string(best));
        Vec u = work[best] / std::sqrt(std::abs(self));
        for (size_t j = 0; j < k; ++j)
            if (!done[j] && j != best) work[j] -= sign * form(u, work[j]) * u;
        out[best] = u;
        done[best] = true;
    }
    return out;
}

Subspace orthogonal_complement(const BilinearForm& form, const Subspace& U, double rank_tol)
{
    const int n = form.dim();
    if (U.dim() == 0) return full_subspace(n);
    const Mat A = U.basis.transpose() * form.matrix;  // rows are the linear functionals
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > rank_tol * s(0)) ++r;
    return Subspace{svd.matrixV().rightCols(n - r)};
}

Subspace subspace_sum(const Subspace& U, const Subspace& W, double rank_tol)
{
    Mat M(U.ambient_dim(), U.dim() + W.dim());
    M << U.basis, W.basis;
    if (M.cols() == 0) return U;
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > rank_tol * s(0)) ++r;
    return Subspace{svd.matrixU().leftCols(r)};
}

double containment_residual(const Subspace& U, const Subspace& W)
{
    if (U.dim() == 0) return 0.0;
    const Mat Qu = orthonormal_basis(U.basis);
    if (W.dim() == 0) return 1.0;
    const Mat Qw = orthonormal_basis(W.basis);
    const Mat R = Qu - Qw * (Qw.transpose() * Qu);
    return R.colwise().norm().maxCoeff();
}

double principal_angle_distance(const Subspace& U, const Subspace& W)
{
    if (U.dim() != W.dim()) throw std::invalid_argument("principal_angle_distance: unequal dimensions");
    if (U.dim() == 0) return 0.0;
    const Mat Qu = orthonormal_basis(U.basis);
    const Mat Qw = orthonormal_basis(W.basis);
    // sin of the largest angle straight from the residual; acos of cosines near 1 loses ~8 digits.
    const Mat R = Qu - Qw * (Qw.transpose() * Qu);
    const double s = Eigen::JacobiSVD<Mat>(R).singularValues()(0);
    return std::asin(std::min(1.0, s));
}

double isotropy_residual(const BilinearForm& form, const Subspace& U)
{
    if (U.dim() == 0) return 0.0;
    const Mat Q = orthonormal_basis(U.basis);
    return (Q.transpose() * form.matrix * Q).cwiseAbs().maxCoeff();
}

}  // namespace flagtrans
