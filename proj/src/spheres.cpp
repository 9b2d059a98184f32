#include "flagtrans/spheres.hpp"

#include "flagtrans/algebra.hpp"
#include "flagtrans/clifford.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <random>
#include <stdexcept>

namespace flagtrans {

namespace {

void require_unit(const Vec& x, int n, const char* who)
{
    if (x.size() != n) throw std::invalid_argument(std::string(who) + ": sphere point has wrong dimension");
    if (std::abs(x.norm() - 1.0) > 1e-9) throw std::invalid_argument(std::string(who) + ": point is not a unit vector");
}

Mat gaussian(int rows, int cols, std::mt19937_64& rng)
{
    std::normal_distribution<double> nd;
    Mat M(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) M(i, j) = nd(rng);
    return M;
}

// Square orthogonal matrix with det +1; identity for seed 0.
Mat seeded_rotation(int m, std::uint64_t seed, std::uint64_t salt)
{
    if (seed == 0) return Mat::Identity(m, m);
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + salt);
    Mat Q = orthonormal_basis(gaussian(m, m, rng));
    if (Q.determinant() < 0) Q.col(0) = -Q.col(0);
    return Q;
}

// Fill target and theta by evaluating once.
SphereFamily finish(SphereFamily F)
{
    const Flag sample = F.evaluate(Vec::Unit(F.n, 0));
    F.target = sample.type;
    F.theta = sample.theta();
    return F;
}

// Spin operators x -> c(e_1) c(x) on S_n^+, stored per coordinate of x.
std::shared_ptr<const std::vector<Mat>> spin_ops(int n)
{
    const SpinorModule sm = spin_submodule(n);
    auto ops = std::make_shared<std::vector<Mat>>();
    for (int b = 0; b < n; ++b) ops->push_back(sphere_to_spin_op(sm, Vec::Unit(n, b)));
    return ops;
}

Mat combine(const std::vector<Mat>& ops, const Vec& x)
{
    Mat f = Mat::Zero(ops.front().rows(), ops.front().cols());
    for (size_t b = 0; b < ops.size(); ++b)
        if (x(static_cast<Eigen::Index>(b)) != 0.0) f += x(static_cast<Eigen::Index>(b)) * ops[b];
    return f;
}

// Isotropic chain spanned by the leading columns of [top; bottom] in a diagonal form.
Flag graph_flag(const BilinearForm& form, const Mat& top, const Mat& bottom, int r)
{
    Mat B(form.dim(), r);
    B.topRows(top.rows()) = top.leftCols(r);
    B.bottomRows(bottom.rows()) = bottom.leftCols(r);
    std::map<int, Subspace> chain;
    for (int i = 1; i <= r; ++i) chain[i] = Subspace{B.leftCols(i)};
    return make_isotropic_flag(form, chain);
}

}  // namespace

std::vector<Vec> sample_sphere(int n, int count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<Vec> out;
    out.reserve(static_cast<size_t>(count));
    while (static_cast<int>(out.size()) < count) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v(i) = nd(rng);
        const double r = v.norm();
        if (r < 1e-12) continue;
        out.push_back(v / r);
    }
    return out;
}

bool strictly_contracting(const LipschitzMap& phi, int samples, std::uint64_t seed, double margin)
{
    const auto xs = sample_sphere(phi.n, samples, seed);
    std::vector<Vec> ys;
    for (const auto& x : xs) ys.push_back(phi.evaluate(x));
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = i + 1; j < xs.size(); ++j)
            if (ys[i].dot(ys[j]) <= xs[i].dot(xs[j]) + margin) return false;
    return true;
}

SphereFamily spinor_sphere(int n, int p, std::uint64_t basepoint_seed)
{
    if (n < 2) throw std::invalid_argument("spinor_sphere: n must be at least 2");
    if (p < 1) throw std::invalid_argument("spinor_sphere: p must be positive");
    auto ops = spin_ops(n);
    const int d = static_cast<int>(ops->front().rows());
    const int r = std::min(p, d);
    const Mat E = seeded_rotation(p, basepoint_seed, 1);
    const Mat S = seeded_rotation(d, basepoint_seed, 2);
    const BilinearForm form = make_form(p, d, FormConvention::Diagonal);
    SphereFamily F;
    F.n = n;
    F.provenance = "spinor_sphere(n=" + std::to_string(n) + ", p=" + std::to_string(p) + ")";
    F.evaluate = [=](const Vec& x) {
        require_unit(x, n, "spinor_sphere");
        return graph_flag(form, E, combine(*ops, x) * S, r);
    };
    return finish(F);
}

DivisionAlgebra division_algebra_from_string(const std::string& s)
{
    if (s == "C") return DivisionAlgebra::C;
    if (s == "H") return DivisionAlgebra::H;
    if (s == "O") return DivisionAlgebra::O;
    throw std::invalid_argument("division algebra must be C, H or O");
}

SphereFamily division_algebra_sphere(DivisionAlgebra A, int epsilon, std::uint64_t basepoint_seed)
{
    if (epsilon != 0 && epsilon != -1) throw std::invalid_argument("division_algebra_sphere: epsilon must be 0 or -1");
    const CompAlgebra alg = algebra_by_name(A == DivisionAlgebra::C ? "C" : A == DivisionAlgebra::H ? "H" : "O");
    const int a = alg.dim;
    const int p = a + epsilon;
    const Mat E = seeded_rotation(p, basepoint_seed, 1);
    const Mat Z = seeded_rotation(a, basepoint_seed, 2);
    const BilinearForm form = make_form(p, a, FormConvention::Diagonal);
    SphereFamily F;
    F.n = a;
    F.provenance = "division_algebra_sphere(" + alg.name + ", eps=" + std::to_string(epsilon) + ")";
    F.evaluate = [=](const Vec& x) {
        require_unit(x, a, "division_algebra_sphere");
        return graph_flag(form, E, left_mult_operator(element(alg, x)) * Z, p);
    };
    return finish(F);
}

LipschitzMap constant_map(const Vec& value)
{
    return {static_cast<int>(value.size()), [value](const Vec&) { return value; }, "constant"};
}

LipschitzMap identity_map(int n) { return {n, [](const Vec& x) { return x; }, ""}; }

Vec hemisphere_contract(const Vec& x, int pole, double factor)
{
    Vec y = x;
    if (y(pole) < 0) y(pole) = -y(pole);
    const double c = std::clamp(y(pole), -1.0, 1.0);
    Vec rest = y;
    rest(pole) = 0.0;
    const double rn = rest.norm();
    Vec out = Vec::Zero(x.size());
    if (rn < 1e-15) {
        out(pole) = 1.0;
        return out;
    }
    const double half = factor * std::acos(c);
    out = std::sin(half) * rest / rn;
    out(pole) = std::cos(half);
    return out;
}

LipschitzMap hemisphere_contraction(int n, int pole)
{
    if (pole < 0 || pole >= n) throw std::invalid_argument("hemisphere_contraction: pole out of range");
    return {n, [pole](const Vec& x) { return hemisphere_contract(x, pole); },
            "reflection onto a closed hemisphere (1-Lipschitz, identifies mirror pairs) followed by radial "
            "halving toward its centre (Lipschitz <= 1/sqrt 2 on the hemisphere)"};
}

SphereFamily deformed_sphere(int n, const LipschitzMap& phi, std::uint64_t basepoint_seed)
{
    if (n < 2) throw std::invalid_argument("deformed_sphere: n must be at least 2");
    if (phi.n != n) throw std::invalid_argument("deformed_sphere: map has the wrong dimension");
    if (!strictly_contracting(phi)) throw std::invalid_argument("deformed_sphere: map is not strictly contracting");
    auto ops = spin_ops(n);
    const int d = static_cast<int>(ops->front().rows());
    const Mat E = seeded_rotation(d, basepoint_seed, 1);
    const Mat S = seeded_rotation(d, basepoint_seed, 2);
    const BilinearForm form = make_form(d, d, FormConvention::Diagonal);
    SphereFamily F;
    F.n = n;
    F.provenance = "deformed_sphere(n=" + std::to_string(n) + ")";
    auto map = phi.evaluate;
    F.evaluate = [=](const Vec& x) {
        require_unit(x, n, "deformed_sphere");
        return graph_flag(form, combine(*ops, map(x)) * E, combine(*ops, x) * S, d);
    };
    return finish(F);
}

FoldSystem make_fold_system(int n, int k)
{
    if (n < 2) throw std::invalid_argument("fold system: n must be at least 2");
    if (k < 1) throw std::invalid_argument("fold system: k must be positive");
    return {n, k};
}

double FoldSystem::wall_angle(int j) const
{
    if (j < 1 || j > k) throw std::invalid_argument("fold index out of range");
    return std::numbers::pi * std::ldexp(1.0, j - k);
}

double FoldSystem::alpha(int j, const Vec& x) const
{
    const double t = wall_angle(j);
    return std::sin(t) * x(0) - std::cos(t) * x(1);
}

Vec FoldSystem::reflect(int j, const Vec& x) const
{
    const double t = wall_angle(j);
    Vec out = x;
    const double a = alpha(j, x);
    out(0) -= 2 * a * std::sin(t);
    out(1) += 2 * a * std::cos(t);
    return out;
}

Vec FoldSystem::elementary_fold(int j, const Vec& x) const { return alpha(j, x) >= 0 ? x : reflect(j, x); }

Vec FoldSystem::folded(int i, const Vec& x) const
{
    if (i < 1 || i > k) throw std::invalid_argument("fold index out of range");
    Vec y = x;
    for (int j = k; j >= i; --j) y = elementary_fold(j, y);
    return y;
}

double FoldSystem::contraction(int i) const
{
    if (i < 1 || i > k) throw std::invalid_argument("fold index out of range");
    return 1.0 / (2 + k - i);
}

Vec FoldSystem::fold_map(int i, const Vec& x) const { return hemisphere_contract(folded(i, x), 1, contraction(i)); }

namespace {

struct Perturbation {
    Mat R;                 // rotation
    std::vector<Vec> amp;  // amplitude vectors
    std::vector<Vec> freq;
    std::vector<double> phase;

    Vec operator()(const Vec& x) const
    {
        Vec y = R * x;
        for (size_t t = 0; t < amp.size(); ++t) y += amp[t] * std::sin(freq[t].dot(x) + phase[t]);
        return y.normalized();
    }
};

Perturbation make_perturbation(int n, std::mt19937_64& rng, double budget)
{
    Perturbation p;
    p.R = orthonormal_basis(gaussian(n, n, rng));
    if (p.R.determinant() < 0) p.R.col(0) = -p.R.col(0);
    std::uniform_real_distribution<double> ud(0.0, 2 * std::numbers::pi);
    double lip = 0.0;
    for (int t = 0; t < 3; ++t) {
        p.amp.push_back(gaussian(n, 1, rng).col(0));
        p.freq.push_back(gaussian(n, 1, rng).col(0) * 1.5);
        p.phase.push_back(ud(rng));
        lip += p.amp.back().norm() * p.freq.back().norm();
    }
    for (auto& a : p.amp) a *= budget / lip;
    return p;
}

struct FullData {
    int n = 0, d = 0, k = 0;
    std::vector<Mat> ops;
    FoldSystem folds;
    std::vector<Perturbation> psi;  // psi[i-1] pairs with fold i
    Mat E;
};

Flag full_eval(const FullData& D, const Vec& x, bool deformed)
{
    Mat top = Mat::Zero(D.d, D.d), bottom = Mat::Zero(D.d, D.d);
    for (int b = 0; b < D.k; ++b) {
        const int i = D.k - b;  // block b carries F_i and psi_i
        const Vec fx = deformed ? D.folds.fold_map(i, x) : x;
        const Vec px = deformed ? D.psi[static_cast<size_t>(i - 1)](x) : Vec(-Vec::Unit(D.n, 0));
        top.block(b * D.n, b * D.n, D.n, D.n) = combine(D.ops, fx);
        bottom.block(b * D.n, b * D.n, D.n, D.n) = combine(D.ops, px);
    }
    const BilinearForm form = make_form(D.d, D.d, FormConvention::Diagonal);
    return graph_flag(form, top * D.E, bottom * D.E, D.d);
}

}  // namespace

static FullData full_data(int n, int d, std::uint64_t seed, double budget)
{
    if (n != 4 && n != 8) throw std::invalid_argument("full_sphere: n must be 4 or 8");
    if (d <= 0 || d % n != 0) throw std::invalid_argument("full_sphere: d must be a positive multiple of n");
    FullData D;
    D.n = n;
    D.d = d;
    D.k = d / n;
    D.ops = *spin_ops(n);
    D.folds = make_fold_system(n, D.k);
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 17);
    D.E = orthonormal_basis(gaussian(d, d, rng));
    for (int i = 0; i < D.k; ++i) D.psi.push_back(make_perturbation(n, rng, budget));
    return D;
}

FullSphere full_sphere(int n, int d, std::uint64_t seed, const FullSphereOptions& opt)
{
    for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(attempt) * 1000003ULL;
        auto D = std::make_shared<FullData>(full_data(n, d, s, opt.perturbation));

        // Per-block sufficient condition: <F_i x, F_i y> > <psi_i x, psi_i y>.
        const auto probes = sample_sphere(n, opt.probe_samples, s + 5);
        bool ok = true;
        for (int i = 1; i <= D->k && ok; ++i) {
            std::vector<Vec> fx, px;
            for (const auto& x : probes) {
                fx.push_back(D->folds.fold_map(i, x));
                px.push_back(D->psi[static_cast<size_t>(i - 1)](x));
            }
            for (size_t a = 0; a < probes.size() && ok; ++a)
                for (size_t b = a + 1; b < probes.size(); ++b)
                    if (fx[a].dot(fx[b]) <= px[a].dot(px[b]) + 1e-9) {
                        ok = false;
                        break;
                    }
        }
        if (!ok) continue;

        const int m = std::max(opt.span_samples, 4 * d);
        std::vector<Vec> pr1;
        for (const auto& x : sample_sphere(n, m, s + 9)) pr1.push_back(full_eval(*D, x, true).at(1).basis.col(0));
        const int rank = span_rank(pr1, 1e-9);
        if (rank != 2 * d) continue;

        FullSphere out;
        out.seed_used = s;
        out.attempts = attempt + 1;
        out.pr1_rank = rank;
        out.family.n = n;
        out.family.provenance = "full_sphere(n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")";
        out.family.evaluate = [D](const Vec& x) {
            require_unit(x, D->n, "full_sphere");
            return full_eval(*D, x, true);
        };
        out.family = finish(out.family);
        return out;
    }
    throw std::runtime_error("full_sphere: no certified instance after " + std::to_string(opt.max_attempts) +
                             " attempts");
}

SphereFamily undeformed_block_sphere(int n, int d, std::uint64_t seed)
{
    auto D = std::make_shared<FullData>(full_data(n, d, seed, 0.0));
    SphereFamily F;
    F.n = n;
    F.provenance = "undeformed_block_sphere(n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")";
    F.evaluate = [D](const Vec& x) {
        require_unit(x, D->n, "undeformed_block_sphere");
        return full_eval(*D, x, false);
    };
    return finish(F);
}

G2Fiber g2_fiber_sphere(std::uint64_t P_seed)
{
    G2Fiber out;
    const Mat R = seeded_rotation(3, P_seed, 3);
    out.u = Vec::Zero(7);
    out.v = Vec::Zero(7);
    out.u.head(3) = R.col(0);
    out.v.head(3) = R.col(1);
    out.w = cross_product(out.u, out.v);
    const Vec u = out.u, v = out.v, w = out.w;
    out.family.n = 4;
    out.family.provenance = "g2_fiber_sphere";
    out.family.evaluate = [=](const Vec& g) {
        require_unit(g, 4, "g2_fiber_sphere");
        Vec z = Vec::Zero(7);
        z.tail(4) = g;
        Mat l(7, 1);
        l.col(0) = u + z;
        Mat om(7, 2);
        om.col(0) = u + z;
        om.col(1) = v + cross_product(w, z);
        return g2_pointed_photon(Subspace{l}, Subspace{om});
    };
    out.family = finish(out.family);
    return out;
}

SphereFamily direct_sum_sphere(const std::vector<SphereFamily>& families, Combiner combiner, const FlagPath& path)
{
    if (families.empty()) throw std::invalid_argument("direct_sum_sphere: no families");
    for (const auto& f : families)
        if (f.n != families.front().n) throw std::invalid_argument("direct_sum_sphere: sphere dimensions differ");
    if (combiner == Combiner::Path && families.size() != 2)
        throw std::invalid_argument("direct_sum_sphere: a path combines exactly two families");
    SphereFamily F;
    F.n = families.front().n;
    F.provenance = "direct_sum(";
    for (size_t i = 0; i < families.size(); ++i) F.provenance += (i ? ", " : "") + families[i].provenance;
    F.provenance += combiner == Combiner::Path ? "; path " + format_flag_path(path) + ")" : ")";
    auto fams = std::make_shared<std::vector<SphereFamily>>(families);
    F.evaluate = [fams, combiner, path](const Vec& x) {
        Flag acc = (*fams)[0].evaluate(x);
        if (combiner == Combiner::Path) return flag_direct_sum(acc, (*fams)[1].evaluate(x), path);
        for (size_t i = 1; i < fams->size(); ++i) acc = iso_direct_sum(acc, (*fams)[i].evaluate(x));
        return acc;
    };
    return finish(F);
}

std::vector<Mat> inner_clifford_generators(int n)
{
    const SpinorModule sm = spin_submodule(n + 1);
    const Mat B = sm.inclusion();
    const Mat last = sm.parent.generator_dense(n);
    std::vector<Mat> gens;
    for (int i = 0; i < n; ++i) gens.push_back(B.transpose() * sm.parent.generator_dense(i) * last * B);
    return gens;
}

ContainingPair containing_sphere(int n, std::uint64_t basepoint_seed)
{
    const int r = n % 8;
    if (!(r == 3 || r == 5 || r == 6 || r == 7))
        throw std::invalid_argument("containing_sphere: n mod 8 must be 3, 5, 6 or 7");
    const int d = static_cast<int>(spinor_dim(n));
    if (spinor_dim(n + 1) != d) throw std::logic_error("containing_sphere: spinor dimensions differ");
    ContainingPair out;
    out.outer = spinor_sphere(n + 1, d, basepoint_seed);

    auto gens = std::make_shared<std::vector<Mat>>(inner_clifford_generators(n));
    const Mat E = seeded_rotation(d, basepoint_seed, 1);
    const Mat S = seeded_rotation(d, basepoint_seed, 2);
    const BilinearForm form = make_form(d, d, FormConvention::Diagonal);
    out.inner.n = n;
    out.inner.provenance = "containing_sphere inner (n=" + std::to_string(n) + ")";
    out.inner.evaluate = [=](const Vec& x) {
        require_unit(x, n, "containing_sphere");
        Mat cx = Mat::Zero(d, d);
        for (int i = 0; i < n; ++i) cx += x(i) * (*gens)[static_cast<size_t>(i)];
        return graph_flag(form, E, (*gens)[0] * cx * S, d);
    };
    out.inner = finish(out.inner);
    return out;
}

SphereFamily to_type_A(const SphereFamily& F)
{
    switch (F.target.kind) {
    case FlagKind::A: return F;
    case FlagKind::B: return embed_family(F, Embedding::Bn_A2n);
    case FlagKind::D:
        if (F.target.p % 2 == 0 && !F.theta.empty() && F.theta.back() == F.target.p)
            return embed_family(F, Embedding::D2n_A4n1);
        return embed_family(F, Embedding::Dn_A2n_minus_mid);
    case FlagKind::Iso: return map_family(F, [](const Flag& f) { return isotropic_to_A(f, false); }, "to_A");
    case FlagKind::G2: return to_type_A(embed_family(F, Embedding::G2_B3));
    }
    throw std::logic_error("to_type_A: unknown kind");
}

SpanFiltration span_filtration(const SphereFamily& family, int samples, std::uint64_t seed)
{
    if (samples < 2) throw std::invalid_argument("span_filtration: need at least two samples");
    const SphereFamily A = to_type_A(family);
    const auto xs = sample_sphere(A.n, samples, seed);
    std::vector<Flag> flags;
    for (const auto& x : xs) flags.push_back(A.evaluate(x));
    const int d = A.target.p;
    auto dims_for = [&](size_t count) {
        std::vector<std::pair<int, int>> out;
        for (const auto& [k, _] : flags.front().subspaces) {
            if (k == 0) continue;
            Mat M(d, 0);
            for (size_t s = 0; s < count; ++s) {
                const Mat& B = flags[s].at(k).basis;
                Mat next(d, M.cols() + B.cols());
                next << M, B;
                M = std::move(next);
            }
            out.emplace_back(k, span_rank(M, 1e-9));
        }
        return out;
    };
    SpanFiltration r;
    r.dims = dims_for(flags.size());
    r.stable = dims_for(flags.size() / 2) == r.dims;
    return r;
}

SphereFamily constant_family(int n, const Flag& F)
{
    SphereFamily out;
    out.n = n;
    out.provenance = "constant";
    out.evaluate = [F, n](const Vec& x) {
        require_unit(x, n, "constant_family");
        return F;
    };
    return finish(out);
}

SphereFamily ein_sphere(int p, int q)
{
    if (p < 1 || q < 1) throw std::invalid_argument("ein_sphere: need p, q >= 1");
    const BilinearForm form = make_form(p, q, FormConvention::Diagonal);
    SphereFamily out;
    out.n = q;
    out.provenance = "ein_sphere(" + std::to_string(p) + "," + std::to_string(q) + ")";
    out.evaluate = [=](const Vec& x) {
        require_unit(x, q, "ein_sphere");
        Mat l = Mat::Zero(p + q, 1);
        l(0, 0) = 1.0;
        l.block(p, 0, q, 1) = x;
        return make_isotropic_flag(form, {{1, Subspace{l}}});
    };
    return finish(out);
}

SphereFamily complex_line_sphere()
{
    SphereFamily out;
    out.n = 3;
    out.provenance = "complex_line_sphere";
    out.evaluate = [](const Vec& x) {
        require_unit(x, 3, "complex_line_sphere");
        using C = std::complex<double>;
        const C i(0, 1);
        Eigen::Matrix2cd P;
        P << 1.0 + x(2), x(0) - i * x(1), x(0) + i * x(1), 1.0 - x(2);
        P *= 0.5;
        const Eigen::Vector2cd v = P.col(0).norm() >= P.col(1).norm() ? P.col(0) : P.col(1);
        Mat B(4, 2);
        for (int k = 0; k < 2; ++k) {
            const C a = v(k), b = i * v(k);
            B(2 * k, 0) = a.real();
            B(2 * k + 1, 0) = a.imag();
            B(2 * k, 1) = b.real();
            B(2 * k + 1, 1) = b.imag();
        }
        return make_flag_A(4, {{2, Subspace{B}}});
    };
    return finish(out);
}

SphereFamily restrict_family(const SphereFamily& F, int m)
{
    if (m < 1 || m > F.n) throw std::invalid_argument("restrict_family: bad subsphere dimension");
    SphereFamily out;
    out.n = m;
    out.provenance = F.provenance + "|S^" + std::to_string(m - 1);
    auto ev = F.evaluate;
    const int n = F.n;
    out.evaluate = [ev, n, m](const Vec& x) {
        require_unit(x, m, "restrict_family");
        Vec y = Vec::Zero(n);
        y.head(m) = x;
        return ev(y);
    };
    return finish(out);
}

SphereFamily map_family(const SphereFamily& F, std::function<Flag(const Flag&)> f, const std::string& tag)
{
    SphereFamily out;
    out.n = F.n;
    out.provenance = tag + "(" + F.provenance + ")";
    auto ev = F.evaluate;
    out.evaluate = [ev, f](const Vec& x) { return f(ev(x)); };
    return finish(out);
}

SphereFamily embed_family(const SphereFamily& F, Embedding e)
{
    return map_family(F, [e](const Flag& f) { return embed(f, e); }, to_string(e));
}

double flag_distance(const Flag& F, const Flag& G)
{
    if (F.theta() != G.theta()) throw std::invalid_argument("flag_distance: index sets differ");
    double worst = 0.0;
    for (int k : F.theta()) worst = std::max(worst, principal_angle_distance(F.at(k), G.at(k)));
    return worst;
}

}  // namespace flagtrans
