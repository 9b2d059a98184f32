#include "flagtrans/flags.hpp"

#include "flagtrans/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace flagtrans {

std::string to_string(FlagKind k)
{
    switch (k) {
    case FlagKind::A: return "A";
    case FlagKind::B: return "B";
    case FlagKind::D: return "D";
    case FlagKind::G2: return "G2";
    case FlagKind::Iso: return "Iso";
    }
    return "?";
}

FlagKind flag_kind_from_string(const std::string& s)
{
    if (s == "A") return FlagKind::A;
    if (s == "B") return FlagKind::B;
    if (s == "D") return FlagKind::D;
    if (s == "G2") return FlagKind::G2;
    if (s == "Iso") return FlagKind::Iso;
    throw std::invalid_argument("unknown flag kind: " + s);
}

FlagKind isotropic_kind(int p, int q)
{
    if (p == q) return FlagKind::D;
    if (std::abs(p - q) == 1) return FlagKind::B;
    return FlagKind::Iso;
}

std::vector<int> Flag::theta() const
{
    std::vector<int> out;
    for (const auto& [k, _] : subspaces) {
        if (type.kind == FlagKind::A && (k == 0 || k == type.p)) continue;
        out.push_back(k);
    }
    return out;
}

const Subspace& Flag::at(int k) const
{
    auto it = subspaces.find(k);
    if (it == subspaces.end()) throw std::out_of_range("flag has no subspace at index " + std::to_string(k));
    return it->second;
}

static void check_nesting(const Flag& F, const FlagCheckTolerances& tol)
{
    const Subspace* prev = nullptr;
    int prev_k = 0;
    for (const auto& [k, S] : F.subspaces) {
        if (S.dim() != k)
            throw std::invalid_argument("flag: subspace at index " + std::to_string(k) + " has dimension " +
                                        std::to_string(S.dim()));
        if (S.ambient_dim() != F.type.ambient_dim())
            throw std::invalid_argument("flag: ambient dimension mismatch at index " + std::to_string(k));
        if (prev && containment_residual(*prev, S) > tol.nesting)
            throw std::invalid_argument("flag: index " + std::to_string(prev_k) + " not contained in " +
                                        std::to_string(k));
        prev = &S;
        prev_k = k;
    }
}

void validate_flag(const Flag& F, const FlagCheckTolerances& tol)
{
    check_nesting(F, tol);
    if (F.type.kind == FlagKind::A) {
        const int d = F.type.p;
        for (int k : F.theta())
            if (!F.has(d - k)) throw std::invalid_argument("type A flag: index set is not symmetric");
        return;
    }
    if (F.form.dim() != F.type.ambient_dim()) throw std::invalid_argument("flag: form does not match type");
    for (const auto& [k, S] : F.subspaces) {
        if (k > F.type.rank()) throw std::invalid_argument("flag: index beyond the maximal isotropic dimension");
        if (isotropy_residual(F.form, S) > tol.isotropy)
            throw std::invalid_argument("flag: subspace at index " + std::to_string(k) + " is not isotropic");
    }
    if (F.type.kind == FlagKind::D && F.has(F.type.p)) {
        if (F.top_sign != d_orbit_sign(F.form, F.at(F.type.p)))
            throw std::invalid_argument("type D flag: declared top sign disagrees with the orbit invariant");
    }
    if (F.type.kind == FlagKind::G2) {
        if (!F.has(1) || !F.has(2) || F.subspaces.size() != 2)
            throw std::invalid_argument("G2 flag: expected indices 1 and 2");
        const Mat& W = F.at(2).basis;
        const Vec c = cross_product(W.col(0), W.col(1));
        if (c.norm() > tol.isotropy * W.col(0).norm() * W.col(1).norm())
            throw std::invalid_argument("G2 flag: plane is not closed under the cross product");
    }
}

Flag make_flag_A(int d, const std::map<int, Subspace>& chain)
{
    Flag F;
    F.type = {FlagKind::A, d, 0};
    F.form = make_form(d, 0, FormConvention::Diagonal);
    F.subspaces = chain;
    F.subspaces[0] = zero_subspace(d);
    F.subspaces[d] = full_subspace(d);
    validate_flag(F);
    return F;
}

Flag make_isotropic_flag(const BilinearForm& form, const std::map<int, Subspace>& chain)
{
    Flag F;
    F.type = {isotropic_kind(form.p, form.q), form.p, form.q};
    F.form = form;
    F.subspaces = chain;
    if (F.type.kind == FlagKind::D && F.has(form.p)) F.top_sign = d_orbit_sign(form, F.at(form.p));
    validate_flag(F);
    return F;
}

static void require_compatible(const Flag& F, const Flag& G)
{
    if (!(F.type == G.type)) throw std::invalid_argument("transversality: flags of different types");
    if (F.theta() != G.theta()) throw std::invalid_argument("transversality: flags with different index sets");
    if (F.type.kind != FlagKind::A && !F.form.matrix.isApprox(G.form.matrix))
        throw std::invalid_argument("transversality: flags live in different forms");
}

// Indices compared for isotropic kinds; for type D the top plane of odd rank is
// skipped in favour of the (p-1)-plane that determines both parents.
static std::vector<int> compared_indices(const Flag& F)
{
    std::vector<int> idx = F.theta();
    if (F.type.kind == FlagKind::D && F.has(F.type.p) && F.type.p % 2 == 1) {
        if (!F.has(F.type.p - 1))
            throw std::invalid_argument("type D flag with a single top plane of odd rank is not self-opposite");
        idx.pop_back();
    }
    return idx;
}

double transversality_margin(const Flag& F, const Flag& G)
{
    require_compatible(F, G);
    double worst = 1.0;
    if (F.type.kind == FlagKind::A) {
        const int d = F.type.p;
        for (int k : F.theta()) {
            Mat M(d, d);
            M << orthonormal_basis(F.at(k).basis), orthonormal_basis(G.at(d - k).basis);
            worst = std::min(worst, Eigen::JacobiSVD<Mat>(M).singularValues().minCoeff());
        }
        return worst;
    }
    for (int k : compared_indices(F)) worst = std::min(worst, pairing_strength(F.form, F.at(k), G.at(k)));
    return worst;
}

bool is_transverse(const Flag& F, const Flag& G, const Tolerances& tol)
{
    return transversality_margin(F, G) > tol.det;
}

std::vector<double> signed_margins(const Flag& F, const Flag& G)
{
    require_compatible(F, G);
    std::vector<double> out;
    if (F.type.kind == FlagKind::A) {
        const int d = F.type.p;
        for (int k : F.theta()) {
            Mat M(d, d);
            M << orthonormal_basis(F.at(k).basis), orthonormal_basis(G.at(d - k).basis);
            out.push_back(M.partialPivLu().determinant());
        }
        return out;
    }
    for (int k : compared_indices(F)) out.push_back(pairing_margin(F.form, F.at(k), G.at(k)));
    return out;
}

ReferenceSplit reference_split(const BilinearForm& form)
{
    const Mat& S = form.matrix;
    const int n = form.dim();
    const bool diagonal = (S - Mat(S.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0 &&
                          (S.diagonal().cwiseAbs().array() == 1.0).all();
    ReferenceSplit r;
    if (diagonal) {
        r.P = Mat::Zero(n, form.p);
        r.N = Mat::Zero(n, form.q);
        int a = 0, b = 0;
        for (int i = 0; i < n; ++i) {
            if (S(i, i) > 0) r.P(i, a++) = 1.0;
            else r.N(i, b++) = 1.0;
        }
        return r;
    }
    if (form.p == form.q && S.isApprox(make_form(form.p, form.q, FormConvention::Antidiagonal).matrix)) {
        const int p = form.p;
        const double h = 1.0 / std::sqrt(2.0);
        r.P = Mat::Zero(n, p);
        r.N = Mat::Zero(n, p);
        for (int i = 0; i < p; ++i) {
            r.P(i, i) = h;
            r.P(n - 1 - i, i) = h;
            r.N(i, i) = h;
            r.N(n - 1 - i, i) = -h;
        }
        return r;
    }
    throw std::invalid_argument("reference_split: no frozen reference basis for this form");
}

int d_orbit_sign(const BilinearForm& form, const Subspace& T, const ReferenceSplit& ref)
{
    if (form.p != form.q) throw std::invalid_argument("d_orbit_sign: form must be split");
    if (T.dim() != form.p || T.ambient_dim() != form.dim())
        throw std::invalid_argument("d_orbit_sign: T must be a maximal isotropic subspace");
    if (isotropy_residual(form, T) > 1e-8) throw std::invalid_argument("d_orbit_sign: T is not isotropic");
    const Mat t = orthonormal_basis(T.basis);
    const Mat alpha = ref.P.transpose() * form.matrix * t;
    const Mat beta = -ref.N.transpose() * form.matrix * t;
    const double s = alpha.determinant() * beta.determinant();
    if (std::abs(s) < 1e-12) throw std::runtime_error("d_orbit_sign: degenerate graph matrix");
    return s > 0 ? 1 : -1;
}

int d_orbit_sign(const BilinearForm& form, const Subspace& T) { return d_orbit_sign(form, T, reference_split(form)); }

std::pair<Subspace, Subspace> two_parents(const BilinearForm& form, const Subspace& T)
{
    if (form.p != form.q) throw std::invalid_argument("two_parents: form must be split");
    const int p = form.p;
    if (T.dim() != p - 1) throw std::invalid_argument("two_parents: T must have dimension p-1");
    if (isotropy_residual(form, T) > 1e-8) throw std::invalid_argument("two_parents: T is not isotropic");
    const Subspace Tp = orthogonal_complement(form, T);
    Mat W = Tp.basis;
    if (T.dim() > 0) {
        const Mat Q = orthonormal_basis(T.basis);
        W -= Q * (Q.transpose() * W);
    }
    Eigen::JacobiSVD<Mat> svd(W, Eigen::ComputeThinU);
    const Mat W2 = svd.matrixU().leftCols(2);
    Eigen::SelfAdjointEigenSolver<Mat> es(W2.transpose() * form.matrix * W2);
    const double lm = es.eigenvalues()(0), lp = es.eigenvalues()(1);
    if (!(lm < 0 && lp > 0)) throw std::runtime_error("two_parents: quotient is not a hyperbolic plane");
    const Vec up = W2 * es.eigenvectors().col(1) / std::sqrt(lp);
    const Vec um = W2 * es.eigenvectors().col(0) / std::sqrt(-lm);
    Subspace out[2];
    int sgn[2];
    for (int s = 0; s < 2; ++s) {
        Mat B(form.dim(), p);
        B << T.basis, (s == 0 ? Vec(up + um) : Vec(up - um));
        out[s] = Subspace{B};
        sgn[s] = d_orbit_sign(form, out[s]);
    }
    if (sgn[0] == sgn[1]) throw std::logic_error("two_parents: both extensions carry the same sign");
    if (sgn[0] > 0) return {out[0], out[1]};
    return {out[1], out[0]};
}

Flag project_flag(const Flag& F, const std::vector<int>& theta_prime)
{
    Flag G = F;
    G.subspaces.clear();
    for (int k : theta_prime) {
        if (!F.has(k)) throw std::invalid_argument("project_flag: index " + std::to_string(k) + " not in theta");
        G.subspaces[k] = F.at(k);
    }
    if (F.type.kind == FlagKind::A) {
        G.subspaces[0] = F.at(0);
        G.subspaces[F.type.p] = F.at(F.type.p);
    }
    if (!G.has(F.type.p) || F.type.kind != FlagKind::D) G.top_sign = 0;
    validate_flag(G);
    return G;
}

std::string to_string(Embedding e)
{
    switch (e) {
    case Embedding::D2n_A4n1: return "D2n->A4n-1";
    case Embedding::D2n_B2n: return "D2n->B2n";
    case Embedding::Bn_Dn1: return "Bn->Dn+1";
    case Embedding::Bn_A2n: return "Bn->A2n";
    case Embedding::Dn_A2n_minus_mid: return "Dn->A2n_minus_mid";
    case Embedding::G2_B3: return "G2->B3";
    }
    return "?";
}

Embedding embedding_from_string(const std::string& s)
{
    for (Embedding e : {Embedding::D2n_A4n1, Embedding::D2n_B2n, Embedding::Bn_Dn1, Embedding::Bn_A2n,
                        Embedding::Dn_A2n_minus_mid, Embedding::G2_B3})
        if (to_string(e) == s) return e;
    throw std::invalid_argument("unknown embedding: " + s);
}

static Mat pad_rows(const Mat& B, int rows)
{
    Mat out = Mat::Zero(rows, B.cols());
    out.topRows(B.rows()) = B;
    return out;
}

Flag isotropic_to_A(const Flag& F, bool keep_top)
{
    if (F.type.kind == FlagKind::A) throw std::invalid_argument("isotropic_to_A: flag is already of type A");
    const int N = F.type.ambient_dim();
    const bool has_top = F.type.kind == FlagKind::D && F.has(F.type.p);
    if (keep_top && has_top && F.type.p % 2 == 1)
        throw std::invalid_argument("isotropic_to_A: the top plane of an odd-rank type D flag cannot be kept");
    std::map<int, Subspace> chain;
    for (const auto& [k, S] : F.subspaces) {
        if (has_top && k == F.type.p) {
            if (keep_top) chain[k] = S;
            continue;
        }
        chain[k] = S;
        chain[N - k] = orthogonal_complement(F.form, S);
    }
    return make_flag_A(N, chain);
}

Flag extend_ambient(const Flag& F, int extra_pos, int extra_neg)
{
    if (F.type.kind == FlagKind::A) throw std::invalid_argument("extend_ambient: needs an isotropic flag");
    if (extra_pos < 0 || extra_neg < 0) throw std::invalid_argument("extend_ambient: negative extension");
    if (extra_pos + extra_neg == 0) return F;
    const BilinearForm form = direct_sum(F.form, make_form(extra_pos, extra_neg, FormConvention::Diagonal));
    std::map<int, Subspace> chain;
    for (const auto& [k, S] : F.subspaces) chain[k] = Subspace{pad_rows(S.basis, form.dim())};
    return make_isotropic_flag(form, chain);
}

Flag swap_signature(const Flag& F)
{
    if (F.type.kind == FlagKind::A) throw std::invalid_argument("swap_signature: needs an isotropic flag");
    return make_isotropic_flag(negated(F.form), F.subspaces);
}

Flag embed(const Flag& F, Embedding target)
{
    const FlagKind k = F.type.kind;
    switch (target) {
    case Embedding::D2n_A4n1: {
        if (k != FlagKind::D || F.type.p % 2 != 0)
            throw std::invalid_argument("D2n->A4n-1: source must be type D of even rank");
        Flag G = F;
        if (!G.has(F.type.p)) {
            if (!G.has(F.type.p - 1)) throw std::invalid_argument("D2n->A4n-1: source needs index p or p-1");
            G.subspaces[F.type.p] = two_parents(F.form, F.at(F.type.p - 1)).first;
            G.top_sign = 1;
        }
        return isotropic_to_A(G, true);
    }
    case Embedding::D2n_B2n:
        if (k != FlagKind::D) throw std::invalid_argument("D2n->B2n: source must be type D");
        if (F.type.p % 2 != 0)
            throw std::invalid_argument("D2n->B2n: odd rank has no transversality-preserving embedding into B");
        return extend_ambient(F, 0, 1);
    case Embedding::Bn_Dn1:
        if (k != FlagKind::B) throw std::invalid_argument("Bn->Dn+1: source must be type B");
        return F.form.p < F.form.q ? extend_ambient(F, 1, 0) : extend_ambient(F, 0, 1);
    case Embedding::Bn_A2n:
        if (k != FlagKind::B) throw std::invalid_argument("Bn->A2n: source must be type B");
        return isotropic_to_A(F, false);
    case Embedding::Dn_A2n_minus_mid:
        if (k != FlagKind::D) throw std::invalid_argument("Dn->A2n_minus_mid: source must be type D");
        return isotropic_to_A(F, false);
    case Embedding::G2_B3: {
        if (k != FlagKind::G2) throw std::invalid_argument("G2->B3: source must be a G2 flag");
        std::map<int, Subspace> chain = {{1, F.at(1)}, {2, F.at(2)}};
        chain[3] = annihilator(F.at(1).basis.col(0).normalized());
        return make_isotropic_flag(F.form, chain);
    }
    }
    throw std::invalid_argument("embed: unsupported target");
}

Flag iso_direct_sum(const Flag& F1, const Flag& F2)
{
    for (const Flag* F : {&F1, &F2}) {
        if (F->type.kind == FlagKind::A) throw std::invalid_argument("iso_direct_sum: type A flags are not isotropic");
        if (F->form.p < 1 || F->form.q < 1)
            throw std::invalid_argument("iso_direct_sum: each factor must be strictly pseudo-Euclidean");
    }
    const BilinearForm form = direct_sum(F1.form, F2.form);
    const int n1 = F1.form.dim(), n2 = F2.form.dim();
    std::map<int, Subspace> chain;
    int top = 0;
    Mat top_basis(n1, 0);
    for (const auto& [k, S] : F1.subspaces) {
        chain[k] = Subspace{pad_rows(S.basis, n1 + n2)};
        top = k;
        top_basis = S.basis;
    }
    for (const auto& [k, S] : F2.subspaces) {
        Mat B = Mat::Zero(n1 + n2, top + k);
        B.topLeftCorner(n1, top) = top_basis;
        B.bottomRightCorner(n2, k) = S.basis;
        chain[top + k] = Subspace{B};
    }
    return make_isotropic_flag(form, chain);
}

bool flag_path_exists(int n, int m) { return n >= 0 && m >= 0 && (n % 2 == 0 || m % 2 == 0); }

bool validate_flag_path(const FlagPath& steps, int n, int m)
{
    if (!flag_path_exists(n, m)) return false;
    int x = 0, y = 0;
    for (const auto& [dx, dy] : steps) {
        if (!((dx == 1 && dy == 0) || (dx == 0 && dy == 1))) return false;
        x += dx;
        y += dy;
    }
    if (x != n || y != m) return false;
    // central symmetry of the lattice path = palindromic step sequence
    for (size_t i = 0; i < steps.size(); ++i)
        if (steps[i] != steps[steps.size() - 1 - i]) return false;
    return true;
}

FlagPath parse_flag_path(const std::string& s)
{
    FlagPath out;
    size_t i = 0;
    while (i < s.size()) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c) || c == ',') {
            ++i;
            continue;
        }
        int count = 1;
        if (std::isdigit(c)) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            count = std::stoi(s.substr(i, j - i));
            i = j;
            if (i >= s.size()) throw std::invalid_argument("parse_flag_path: count without a direction");
        }
        const char d = static_cast<char>(std::toupper(static_cast<unsigned char>(s[i])));
        if (d != 'R' && d != 'U') throw std::invalid_argument(std::string("parse_flag_path: bad step '") + s[i] + "'");
        for (int k = 0; k < count; ++k) out.push_back(d == 'R' ? std::pair{1, 0} : std::pair{0, 1});
        ++i;
    }
    return out;
}

std::string format_flag_path(const FlagPath& path)
{
    std::string s;
    for (const auto& st : path) s += st.first == 1 ? 'R' : 'U';
    return s;
}

Flag flag_direct_sum(const Flag& F1, const Flag& F2, const FlagPath& path)
{
    if (F1.type.kind != FlagKind::A || F2.type.kind != FlagKind::A)
        throw std::invalid_argument("flag_direct_sum: both flags must be of type A");
    std::vector<int> n1, n2;
    for (const auto& [k, _] : F1.subspaces) n1.push_back(k);
    for (const auto& [k, _] : F2.subspaces) n2.push_back(k);
    const int k1 = static_cast<int>(n1.size()) - 1, k2 = static_cast<int>(n2.size()) - 1;
    if (!validate_flag_path(path, k1, k2))
        throw std::invalid_argument("flag_direct_sum: not a valid (" + std::to_string(k1) + "," + std::to_string(k2) +
                                    ")-flag path");
    const int d1 = F1.type.p, d2 = F2.type.p;
    std::map<int, Subspace> chain;
    int x = 0, y = 0;
    auto add = [&] {
        const Subspace& A = F1.at(n1[static_cast<size_t>(x)]);
        const Subspace& B = F2.at(n2[static_cast<size_t>(y)]);
        Mat M = Mat::Zero(d1 + d2, A.dim() + B.dim());
        M.topLeftCorner(d1, A.dim()) = A.basis;
        M.bottomRightCorner(d2, B.dim()) = B.basis;
        chain[A.dim() + B.dim()] = Subspace{M};
    };
    add();
    for (const auto& [dx, dy] : path) {
        x += dx;
        y += dy;
        add();
    }
    return make_flag_A(d1 + d2, chain);
}

Flag g2_pointed_photon(const Subspace& l, const Subspace& omega, double tol)
{
    if (l.ambient_dim() != 7 || omega.ambient_dim() != 7) throw std::invalid_argument("G2 flag: expected R^{3,4}");
    if (l.dim() != 1 || omega.dim() != 2) throw std::invalid_argument("G2 flag: expected a line and a plane");
    const BilinearForm form = cross_form();
    if (isotropy_residual(form, l) > tol) throw std::invalid_argument("G2 flag: line is not null");
    if (isotropy_residual(form, omega) > tol) throw std::invalid_argument("G2 flag: plane is not isotropic");
    const Mat W = orthonormal_basis(omega.basis);
    if (cross_product(W.col(0), W.col(1)).norm() > tol)
        throw std::invalid_argument("G2 flag: plane is not an annihilator photon");
    if (containment_residual(l, omega) > tol) throw std::invalid_argument("G2 flag: line is not contained in the plane");
    Flag F;
    F.type = {FlagKind::G2, 3, 4};
    F.form = form;
    F.subspaces = {{1, l}, {2, omega}};
    validate_flag(F);
    return F;
}

}  // namespace flagtrans
