#pragma once

#include "flagtrans/forms.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace flagtrans {

int radon_hurwitz(std::int64_t d);
std::int64_t spinor_dim(int n);
bool maximality_class(int n);

struct GrothendieckRow {
    int residue = 0;
    std::string M_n;
    std::string quotient;
    std::string KO_tilde;
    std::string stable_pi;
};
GrothendieckRow grothendieck_row(int n);

// M e_j = sign[j] e_{perm[j]}. Every generator we build has this shape, which keeps
// the periodic models sparse.
struct SignedPerm {
    std::vector<int> perm;
    std::vector<std::int8_t> sign;

    int size() const { return static_cast<int>(perm.size()); }
    static SignedPerm identity(int n);
    static SignedPerm from_dense(const Mat& M);  // throws unless M is a signed permutation
    Mat dense() const;
    Vec apply(const Vec& w) const;
    void apply_add(double coef, const Vec& w, Vec& out) const;
};

SignedPerm compose(const SignedPerm& a, const SignedPerm& b);  // a after b
SignedPerm tensor(const SignedPerm& a, const SignedPerm& b);   // index ia * |b| + ib

constexpr int kCliffordMax = 24;

// Cl(n) acting on R^D, Euclidean metric.
struct CliffordRep {
    int n = 0;
    int D = 0;
    std::vector<SignedPerm> generators;
    std::vector<char> w0_mask;  // empty for ungraded n

    Mat generator_dense(int i) const { return generators[static_cast<size_t>(i)].dense(); }
    bool graded() const { return !w0_mask.empty(); }
};

CliffordRep clifford_model(int n);

Vec clifford_apply(const CliffordRep& rep, const Vec& v, const Vec& w);
Mat clifford_matrix(const CliffordRep& rep, const Vec& v);

// max |c_i c_j + c_j c_i + 2 delta_ij I| over all pairs.
double clifford_relation_residual(const CliffordRep& rep);
double clifford_relation_residual(const std::vector<Mat>& gens);

// max over generators of |c^T G c - G| and |c^T G + G c|, G the Euclidean metric.
double spin_metric_check(const CliffordRep& rep);
double spin_metric_check(const std::vector<Mat>& gens, const Mat& metric);

struct Grading {
    Subspace W0;
    Subspace W1;
};
Grading z2_grading(const CliffordRep& rep);
// max |P_{W_k} c_i P_{W_k}| over generators, should vanish.
double grading_exchange_residual(const CliffordRep& rep, const Grading& g);

struct SpinorModule {
    CliffordRep parent;
    std::vector<int> coords;  // coordinates of R^D spanning S_n^+
    bool plus = true;

    int plus_dim() const { return static_cast<int>(coords.size()); }
    Mat projector() const;
    Mat inclusion() const;  // D x d
};

// plus=false selects the other summand where there is one.
SpinorModule spin_submodule(int n, bool plus = true);

// c(x0) c(x) restricted to S_n^+, in the coordinate basis of coords.
Mat sphere_to_spin_op(const SpinorModule& sm, const Vec& x0, const Vec& x);
Mat sphere_to_spin_op(const SpinorModule& sm, const Vec& x);  // x0 = e_1

}  // namespace flagtrans
