#pragma once

#include "flagtrans/flags.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace flagtrans {

// A map from the unit sphere of R^n into a flag manifold.
struct SphereFamily {
    int n = 0;
    FlagType target;
    std::vector<int> theta;
    std::function<Flag(const Vec&)> evaluate;
    std::string provenance;

    int sphere_dim() const { return n - 1; }
};

struct LipschitzMap {
    int n = 0;
    std::function<Vec(const Vec&)> evaluate;
    std::string certificate;  // empty when only the sampled check backs it
};

// Unit vectors from normalized Gaussians (mt19937_64).
std::vector<Vec> sample_sphere(int n, int count, std::uint64_t seed);

// Fails if <phi(x), phi(y)> <= <x, y> + margin for some sampled pair.
bool strictly_contracting(const LipschitzMap& phi, int samples = 200, std::uint64_t seed = 7, double margin = 1e-12);

SphereFamily spinor_sphere(int n, int p, std::uint64_t basepoint_seed = 0);

enum class DivisionAlgebra { C, H, O };
DivisionAlgebra division_algebra_from_string(const std::string& s);
// epsilon in {-1, 0}: ambient R^{a+epsilon, a}
SphereFamily division_algebra_sphere(DivisionAlgebra A, int epsilon, std::uint64_t basepoint_seed = 0);

SphereFamily deformed_sphere(int n, const LipschitzMap& phi, std::uint64_t basepoint_seed = 0);

LipschitzMap constant_map(const Vec& value);
LipschitzMap identity_map(int n);
// Fold onto the hemisphere <x, e_pole> >= 0, then halve the geodesic distance to e_pole.
LipschitzMap hemisphere_contraction(int n, int pole = 1);

// Walls in span{e_1, e_2} at angles pi * 2^{j-k}.
struct FoldSystem {
    int n = 0;
    int k = 0;
    double wall_angle(int j) const;
    double alpha(int j, const Vec& x) const;  // >= 0 on the kept side
    Vec reflect(int j, const Vec& x) const;
    Vec elementary_fold(int j, const Vec& x) const;
    Vec folded(int i, const Vec& x) const;  // f_i after ... after f_k
    // Geodesic scaling toward e_2 used by fold_map(i). F_k gets 1/2; the others
    // contract harder so the blocks of full_sphere stop being linearly tied.
    double contraction(int i) const;
    Vec fold_map(int i, const Vec& x) const;  // contraction after folded
};
FoldSystem make_fold_system(int n, int k);
Vec hemisphere_contract(const Vec& x, int pole, double factor = 0.5);

struct FullSphereOptions {
    int probe_samples = 48;
    int span_samples = 64;
    int max_attempts = 32;
    double perturbation = 0.15;  // Lipschitz budget of the perturbation part of psi_l
};

struct FullSphere {
    SphereFamily family;
    std::uint64_t seed_used = 0;
    int attempts = 0;
    int pr1_rank = 0;
};

FullSphere full_sphere(int n, int d, std::uint64_t seed = 0, const FullSphereOptions& opt = {});
// Same basepoint, identity folds and constant psi: block-diagonal spinor sphere.
SphereFamily undeformed_block_sphere(int n, int d, std::uint64_t seed = 0);

struct G2Fiber {
    SphereFamily family;
    Vec u, v, w;  // orthonormal frame of P, w = u x v
};
G2Fiber g2_fiber_sphere(std::uint64_t P_seed = 0);

enum class Combiner { Isotropic, Path };
SphereFamily direct_sum_sphere(const std::vector<SphereFamily>& families, Combiner combiner,
                               const FlagPath& path = {});

struct ContainingPair {
    SphereFamily inner;
    SphereFamily outer;
};
ContainingPair containing_sphere(int n, std::uint64_t basepoint_seed = 0);
// Generators c(e_i) c(e_{n+1}) restricted to S^+_{n+1}, as dense matrices.
std::vector<Mat> inner_clifford_generators(int n);

struct SpanFiltration {
    std::vector<std::pair<int, int>> dims;  // (k, dim V_k)
    bool stable = true;  // half the samples already give the same dimensions
};
SpanFiltration span_filtration(const SphereFamily& family, int samples = 64, std::uint64_t seed = 11);

// Auxiliary families used to fill classification instances.
SphereFamily constant_family(int n, const Flag& F);
SphereFamily ein_sphere(int p, int q);  // S^{q-1} -> null lines [u_1 + x] in R^{p,q}
SphereFamily complex_line_sphere();     // S^2 = CP^1 -> Gr_2(R^4)
SphereFamily restrict_family(const SphereFamily& F, int m);  // equatorial S^{m-1}
SphereFamily map_family(const SphereFamily& F, std::function<Flag(const Flag&)> f, const std::string& tag);
SphereFamily embed_family(const SphereFamily& F, Embedding e);
SphereFamily to_type_A(const SphereFamily& F);

// Max principal-angle distance over shared indices.
double flag_distance(const Flag& F, const Flag& G);

}  // namespace flagtrans
