#pragma once

#include "flagtrans/forms.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace flagtrans {

// Iso covers isotropic flags in R^{p,q} with |p - q| > 1; they show up as
// intermediate pieces of direct sums and as sources for type A embeddings.
enum class FlagKind { A, B, D, G2, Iso };

std::string to_string(FlagKind k);
FlagKind flag_kind_from_string(const std::string& s);

struct FlagType {
    FlagKind kind = FlagKind::A;
    int p = 0;  // A: ambient dimension d
    int q = 0;

    int ambient_dim() const { return kind == FlagKind::A ? p : p + q; }
    // Largest isotropic dimension (types B, D, Iso, G2).
    int rank() const { return std::min(p, q); }
    bool operator==(const FlagType&) const = default;
};

// Kind for an isotropic flag living in a form of signature (p, q).
FlagKind isotropic_kind(int p, int q);

struct Flag {
    FlagType type;
    BilinearForm form;  // Euclidean identity for type A
    std::map<int, Subspace> subspaces;
    // Type D only: orbit sign of the maximal isotropic subspace stored at index p.
    int top_sign = 0;

    std::vector<int> theta() const;  // without 0 and d for type A
    bool has(int k) const { return subspaces.count(k) != 0; }
    const Subspace& at(int k) const;
};

struct FlagCheckTolerances {
    double nesting = 1e-8;
    double isotropy = 1e-8;
};

// Structural invariants: symmetric theta (A), nesting, isotropy, D top sign, G2 photon.
// Throws std::invalid_argument describing the first violation.
void validate_flag(const Flag& F, const FlagCheckTolerances& tol = {});

Flag make_flag_A(int d, const std::map<int, Subspace>& chain);
// B, D or Iso depending on the signature of form. Sets top_sign for type D.
Flag make_isotropic_flag(const BilinearForm& form, const std::map<int, Subspace>& chain);

// Smallest singular value over the compared indices: of [Q_F^k Q_G^{d-k}] for type A,
// of the orthonormal Gram otherwise.
double transversality_margin(const Flag& F, const Flag& G);
// transversality_margin > tol.det
bool is_transverse(const Flag& F, const Flag& G, const Tolerances& tol = {});
// Signed determinants per compared index (orientation of the stored bases matters).
std::vector<double> signed_margins(const Flag& F, const Flag& G);

// Positive / negative definite reference bases (columns) used by d_orbit_sign.
struct ReferenceSplit {
    Mat P;
    Mat N;
};
ReferenceSplit reference_split(const BilinearForm& form);

int d_orbit_sign(const BilinearForm& form, const Subspace& T, const ReferenceSplit& ref);
int d_orbit_sign(const BilinearForm& form, const Subspace& T);

// The two maximal isotropic planes through an isotropic (p-1)-plane, as (+, -).
std::pair<Subspace, Subspace> two_parents(const BilinearForm& form, const Subspace& T);

Flag project_flag(const Flag& F, const std::vector<int>& theta_prime);

enum class Embedding { D2n_A4n1, D2n_B2n, Bn_Dn1, Bn_A2n, Dn_A2n_minus_mid, G2_B3 };
std::string to_string(Embedding e);
Embedding embedding_from_string(const std::string& s);
Flag embed(const Flag& F, Embedding target);

// Any isotropic flag -> type A flag (F^k, (F^k)^perp). For type D the top plane
// is kept only when requested (p even), otherwise the middle index is dropped.
Flag isotropic_to_A(const Flag& F, bool keep_top);
// Same subspaces, form extended by extra positive and negative coordinates.
Flag extend_ambient(const Flag& F, int extra_pos, int extra_neg);
// Same subspaces, form negated.
Flag swap_signature(const Flag& F);

Flag iso_direct_sum(const Flag& F1, const Flag& F2);

using FlagPath = std::vector<std::pair<int, int>>;  // steps, each (1,0) or (0,1)

bool validate_flag_path(const FlagPath& steps, int n, int m);
bool flag_path_exists(int n, int m);
FlagPath parse_flag_path(const std::string& s);  // "R", "U" letters, optional counts: "3R U 3R"
std::string format_flag_path(const FlagPath& path);

Flag flag_direct_sum(const Flag& F1, const Flag& F2, const FlagPath& path);

// G2 flag (l, omega) in R^{3,4}; omega must be closed under the cross product.
Flag g2_pointed_photon(const Subspace& l, const Subspace& omega, double tol = 1e-9);

}  // namespace flagtrans
