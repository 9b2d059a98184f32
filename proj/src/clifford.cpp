#include "flagtrans/clifford.hpp"

#include "flagtrans/algebra.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace flagtrans {

int radon_hurwitz(std::int64_t d)
{
    if (d < 1) throw std::invalid_argument("radon_hurwitz: d must be positive");
    int v = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++v;
    }
    return 8 * (v / 4) + (1 << (v % 4));
}

std::int64_t spinor_dim(int n)
{
    if (n < 1) throw std::invalid_argument("spinor_dim: n must be positive");
    const int k = (n - 1) / 8;
    const int r = n - 8 * k;  // 1..8
    int base = 8;
    if (r == 1) base = 1;
    else if (r == 2) base = 2;
    else if (r <= 4) base = 4;
    std::int64_t p = 1;  // n = 64 already needs 2^31
    for (int i = 0; i < k; ++i) p *= 16;
    return base * p;
}

bool maximality_class(int n)
{
    if (n < 2) throw std::invalid_argument("maximality_class: n must be at least 2");
    const int r = n % 8;
    return r == 0 || r == 1 || r == 2 || r == 4;
}

GrothendieckRow grothendieck_row(int n)
{
    if (n < 0) throw std::invalid_argument("grothendieck_row: n must be non-negative");
    static const GrothendieckRow rows[8] = {
        {0, "Z", "Z", "Z", "Z"},       {1, "Z", "Z2", "Z2", "Z2"}, {2, "Z", "Z2", "Z2", "Z2"},
        {3, "Z+Z", "0", "0", "0"},     {4, "Z", "Z", "Z", "Z"},    {5, "Z", "0", "0", "0"},
        {6, "Z", "0", "0", "0"},       {7, "Z+Z", "0", "0", "0"},
    };
    return rows[n % 8];
}

SignedPerm SignedPerm::identity(int n)
{
    SignedPerm s;
    s.perm.resize(static_cast<size_t>(n));
    s.sign.assign(static_cast<size_t>(n), 1);
    for (int i = 0; i < n; ++i) s.perm[static_cast<size_t>(i)] = i;
    return s;
}

SignedPerm SignedPerm::from_dense(const Mat& M)
{
    if (M.rows() != M.cols()) throw std::invalid_argument("from_dense: square matrix required");
    const int n = static_cast<int>(M.rows());
    SignedPerm s;
    s.perm.assign(static_cast<size_t>(n), -1);
    s.sign.assign(static_cast<size_t>(n), 0);
    std::vector<char> hit(static_cast<size_t>(n), 0);
    for (int j = 0; j < n; ++j) {
        int where = -1;
        for (int i = 0; i < n; ++i) {
            const double v = M(i, j);
            if (v == 0.0) continue;
            if (where >= 0 || std::abs(std::abs(v) - 1.0) > 1e-12)
                throw std::invalid_argument("from_dense: not a signed permutation");
            where = i;
        }
        if (where < 0 || hit[static_cast<size_t>(where)]) throw std::invalid_argument("from_dense: not a signed permutation");
        hit[static_cast<size_t>(where)] = 1;
        s.perm[static_cast<size_t>(j)] = where;
        s.sign[static_cast<size_t>(j)] = M(where, j) > 0 ? 1 : -1;
    }
    return s;
}

Mat SignedPerm::dense() const
{
    const int n = size();
    Mat M = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j) M(perm[static_cast<size_t>(j)], j) = sign[static_cast<size_t>(j)];
    return M;
}

Vec SignedPerm::apply(const Vec& w) const
{
    Vec out = Vec::Zero(w.size());
    apply_add(1.0, w, out);
    return out;
}

void SignedPerm::apply_add(double coef, const Vec& w, Vec& out) const
{
    if (w.size() != size() || out.size() != size()) throw std::invalid_argument("SignedPerm: dimension mismatch");
    for (int j = 0; j < size(); ++j) out(perm[static_cast<size_t>(j)]) += coef * sign[static_cast<size_t>(j)] * w(j);
}

SignedPerm compose(const SignedPerm& a, const SignedPerm& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("compose: size mismatch");
    SignedPerm c;
    c.perm.resize(b.perm.size());
    c.sign.resize(b.perm.size());
    for (size_t j = 0; j < b.perm.size(); ++j) {
        const auto mid = static_cast<size_t>(b.perm[j]);
        c.perm[j] = a.perm[mid];
        c.sign[j] = static_cast<std::int8_t>(a.sign[mid] * b.sign[j]);
    }
    return c;
}

SignedPerm tensor(const SignedPerm& a, const SignedPerm& b)
{
    const int nb = b.size();
    SignedPerm c;
    c.perm.resize(static_cast<size_t>(a.size() * nb));
    c.sign.resize(c.perm.size());
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < nb; ++j) {
            const auto k = static_cast<size_t>(i * nb + j);
            c.perm[k] = a.perm[static_cast<size_t>(i)] * nb + b.perm[static_cast<size_t>(j)];
            c.sign[k] = static_cast<std::int8_t>(a.sign[static_cast<size_t>(i)] * b.sign[static_cast<size_t>(j)]);
        }
    return c;
}

namespace {

SignedPerm left_unit(const CompAlgebra& A, int idx, double scale = 1.0)
{
    return SignedPerm::from_dense(scale * left_mult_operator(unit_element(A, idx)));
}

// [[0, -L_{x*}], [L_x, 0]] for a basis unit x of A.
SignedPerm doubled(const CompAlgebra& A, int idx)
{
    const int m = A.dim;
    const Mat L = left_mult_operator(unit_element(A, idx));
    const Mat Lc = left_mult_operator(conjugate(unit_element(A, idx)));
    Mat M = Mat::Zero(2 * m, 2 * m);
    M.topRightCorner(m, m) = -Lc;
    M.bottomLeftCorner(m, m) = L;
    return SignedPerm::from_dense(M);
}

CliffordRep base_model(int n)
{
    CliffordRep r;
    r.n = n;
    if (n == 1) {
        const auto C = algebra_by_name("C");
        r.generators = {left_unit(C, 1)};
        r.w0_mask = {1, 0};
    } else if (n <= 3) {
        const auto H = algebra_by_name("H");
        for (int i = 1; i <= n; ++i) r.generators.push_back(left_unit(H, i));
        if (n == 2) r.w0_mask = {1, 0, 0, 1};  // span{1, k}
    } else if (n == 4) {
        const auto H = algebra_by_name("H");
        for (int i = 0; i < 4; ++i) r.generators.push_back(doubled(H, i));
        r.w0_mask = {1, 1, 1, 1, 0, 0, 0, 0};
    } else if (n <= 7) {
        const auto O = algebra_by_name("O");
        for (int i = 1; i <= n; ++i) r.generators.push_back(left_unit(O, i));
    } else {
        const auto O = algebra_by_name("O");
        for (int i = 0; i < 8; ++i) r.generators.push_back(doubled(O, i));
        r.w0_mask.assign(16, 0);
        for (int i = 0; i < 8; ++i) r.w0_mask[static_cast<size_t>(i)] = 1;
    }
    r.D = r.generators.front().size();
    return r;
}

CliffordRep build_model(int n)
{
    if (n <= 8) return base_model(n);
    const CliffordRep inner = build_model(n - 8);
    const CliffordRep c8 = base_model(8);
    SignedPerm vol = c8.generators[0];
    for (int i = 1; i < 8; ++i) vol = compose(vol, c8.generators[static_cast<size_t>(i)]);
    CliffordRep r;
    r.n = n;
    r.D = inner.D * c8.D;
    for (const auto& g : inner.generators) r.generators.push_back(tensor(g, vol));
    const SignedPerm id = SignedPerm::identity(inner.D);
    for (const auto& g : c8.generators) r.generators.push_back(tensor(id, g));
    if (inner.graded()) {
        r.w0_mask.resize(static_cast<size_t>(r.D));
        for (int a = 0; a < inner.D; ++a)
            for (int b = 0; b < c8.D; ++b)
                r.w0_mask[static_cast<size_t>(a * c8.D + b)] =
                    inner.w0_mask[static_cast<size_t>(a)] == c8.w0_mask[static_cast<size_t>(b)];
    }
    return r;
}

}  // namespace

CliffordRep clifford_model(int n)
{
    if (n < 1 || n > kCliffordMax)
        throw std::invalid_argument("clifford_model: n must be in 1.." + std::to_string(kCliffordMax));
    static std::mutex mu;
    static std::map<int, CliffordRep> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_model(n)).first;
    return it->second;
}

Vec clifford_apply(const CliffordRep& rep, const Vec& v, const Vec& w)
{
    if (v.size() != rep.n || w.size() != rep.D) throw std::invalid_argument("clifford_apply: dimension mismatch");
    Vec out = Vec::Zero(rep.D);
    for (int i = 0; i < rep.n; ++i)
        if (v(i) != 0.0) rep.generators[static_cast<size_t>(i)].apply_add(v(i), w, out);
    return out;
}

Mat clifford_matrix(const CliffordRep& rep, const Vec& v)
{
    if (v.size() != rep.n) throw std::invalid_argument("clifford_matrix: dimension mismatch");
    Mat M = Mat::Zero(rep.D, rep.D);
    for (int i = 0; i < rep.n; ++i) {
        const auto& g = rep.generators[static_cast<size_t>(i)];
        for (int j = 0; j < rep.D; ++j) M(g.perm[static_cast<size_t>(j)], j) += v(i) * g.sign[static_cast<size_t>(j)];
    }
    return M;
}

double clifford_relation_residual(const CliffordRep& rep)
{
    double worst = 0.0;
    for (int i = 0; i < rep.n; ++i)
        for (int j = i; j < rep.n; ++j) {
            const SignedPerm a = compose(rep.generators[static_cast<size_t>(i)], rep.generators[static_cast<size_t>(j)]);
            const SignedPerm b = compose(rep.generators[static_cast<size_t>(j)], rep.generators[static_cast<size_t>(i)]);
            for (int k = 0; k < rep.D; ++k) {
                const auto kk = static_cast<size_t>(k);
                // column k of a + b + 2 delta_ij I has at most three nonzero rows
                const int rows[3] = {a.perm[kk], b.perm[kk], k};
                const double vals[3] = {double(a.sign[kk]), double(b.sign[kk]), i == j ? 2.0 : 0.0};
                for (int r = 0; r < 3; ++r) {
                    double s = 0.0;
                    for (int t = 0; t < 3; ++t)
                        if (rows[t] == rows[r]) s += vals[t];
                    worst = std::max(worst, std::abs(s));
                }
            }
        }
    return worst;
}

double clifford_relation_residual(const std::vector<Mat>& gens)
{
    double worst = 0.0;
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i; j < gens.size(); ++j) {
            Mat R = gens[i] * gens[j] + gens[j] * gens[i];
            if (i == j) R += 2.0 * Mat::Identity(R.rows(), R.cols());
            worst = std::max(worst, R.cwiseAbs().maxCoeff());
        }
    return worst;
}

double spin_metric_check(const CliffordRep& rep)
{
    // Signed permutations are orthogonal exactly; skewness needs c(e_{perm j}) = -sign_j e_j.
    double worst = 0.0;
    for (const auto& g : rep.generators)
        for (int j = 0; j < g.size(); ++j) {
            const auto jj = static_cast<size_t>(j);
            const auto t = static_cast<size_t>(g.perm[jj]);
            // entry (t, j) of c^T + c is c(j,t) + c(t,j)
            const double ctj = g.sign[jj];
            const double cjt = g.perm[t] == j ? g.sign[t] : 0.0;
            worst = std::max(worst, std::abs(ctj + cjt));
        }
    return worst;
}

double spin_metric_check(const std::vector<Mat>& gens, const Mat& metric)
{
    double worst = 0.0;
    for (const auto& c : gens) {
        worst = std::max(worst, (c.transpose() * metric * c - metric).cwiseAbs().maxCoeff());
        worst = std::max(worst, (c.transpose() * metric + metric * c).cwiseAbs().maxCoeff());
    }
    return worst;
}

static Mat mask_columns(const std::vector<char>& mask, bool want)
{
    int cnt = 0;
    for (char m : mask) cnt += (m != 0) == want;
    Mat B = Mat::Zero(static_cast<Eigen::Index>(mask.size()), cnt);
    int c = 0;
    for (size_t i = 0; i < mask.size(); ++i)
        if ((mask[i] != 0) == want) B(static_cast<Eigen::Index>(i), c++) = 1.0;
    return B;
}

Grading z2_grading(const CliffordRep& rep)
{
    if (!rep.graded())
        throw std::invalid_argument("z2_grading: n mod 8 must be in {0,1,2,4}, got n = " + std::to_string(rep.n));
    return {Subspace{mask_columns(rep.w0_mask, true)}, Subspace{mask_columns(rep.w0_mask, false)}};
}

double grading_exchange_residual(const CliffordRep& rep, const Grading& g)
{
    double worst = 0.0;
    for (int i = 0; i < rep.n; ++i) {
        const Mat C = rep.generator_dense(i);
        worst = std::max(worst, (g.W0.basis.transpose() * C * g.W0.basis).cwiseAbs().maxCoeff());
        worst = std::max(worst, (g.W1.basis.transpose() * C * g.W1.basis).cwiseAbs().maxCoeff());
    }
    return worst;
}

Mat SpinorModule::inclusion() const
{
    Mat B = Mat::Zero(parent.D, plus_dim());
    for (int k = 0; k < plus_dim(); ++k) B(coords[static_cast<size_t>(k)], k) = 1.0;
    return B;
}

Mat SpinorModule::projector() const
{
    const Mat B = inclusion();
    return B * B.transpose();
}

SpinorModule spin_submodule(int n, bool plus)
{
    SpinorModule sm;
    sm.parent = clifford_model(n);
    sm.plus = plus;
    if (sm.parent.graded()) {
        for (int i = 0; i < sm.parent.D; ++i)
            if ((sm.parent.w0_mask[static_cast<size_t>(i)] != 0) == plus) sm.coords.push_back(i);
    } else {
        for (int i = 0; i < sm.parent.D; ++i) sm.coords.push_back(i);
    }
    return sm;
}

Mat sphere_to_spin_op(const SpinorModule& sm, const Vec& x0, const Vec& x)
{
    const auto& rep = sm.parent;
    if (x0.size() != rep.n || x.size() != rep.n) throw std::invalid_argument("sphere_to_spin_op: dimension mismatch");
    if (std::abs(x0.norm() - 1.0) > 1e-9 || std::abs(x.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("sphere_to_spin_op: inputs must be unit vectors");
    std::vector<int> pos(static_cast<size_t>(rep.D), -1);
    for (int k = 0; k < sm.plus_dim(); ++k) pos[static_cast<size_t>(sm.coords[static_cast<size_t>(k)])] = k;
    const int d = sm.plus_dim();
    Mat out = Mat::Zero(d, d);
    for (int a = 0; a < rep.n; ++a) {
        if (x0(a) == 0.0) continue;
        for (int b = 0; b < rep.n; ++b) {
            if (x(b) == 0.0) continue;
            const SignedPerm p = compose(rep.generators[static_cast<size_t>(a)], rep.generators[static_cast<size_t>(b)]);
            const double coef = x0(a) * x(b);
            for (int k = 0; k < d; ++k) {
                const auto col = static_cast<size_t>(sm.coords[static_cast<size_t>(k)]);
                const int row = pos[static_cast<size_t>(p.perm[col])];
                if (row < 0) throw std::logic_error("sphere_to_spin_op: even product leaves the submodule");
                out(row, k) += coef * p.sign[col];
            }
        }
    }
    return out;
}

Mat sphere_to_spin_op(const SpinorModule& sm, const Vec& x)
{
    return sphere_to_spin_op(sm, Vec::Unit(sm.parent.n, 0), x);
}

}  // namespace flagtrans
