#pragma once

#include "flagtrans/io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace flagtrans {

// FLAGTRANS_THREADS if set and positive, else the OpenMP default.
int thread_count();

enum class Kernel { Parallel, Serial };

std::vector<Flag> evaluate_samples(const SphereFamily& F, const std::vector<Vec>& xs, Kernel k = Kernel::Parallel);
// transversality_margin for every pair i < j, flattened row by row.
std::vector<double> pair_margins(const std::vector<Flag>& flags, Kernel k = Kernel::Parallel);

struct PairFailure {
    int i = 0;
    int j = 0;
    double margin = 0.0;
};

struct VerificationReport {
    std::string family;
    int sample_count = 0;
    long pair_count = 0;
    // Smallest pairwise margin: least singular value of the orthonormal Gram (or of
    // [Q_F Q_G] for type A). Failures are exactly the pairs with margin <= tol.det.
    double min_normalized_minor = 1.0;
    int worst_i = -1;
    int worst_j = -1;
    std::vector<PairFailure> failures;
    double wall_time = 0.0;
    int threads = 1;

    bool passed() const { return failures.empty(); }
};

// Pairwise check of already evaluated flags (e.g. read back from a construct file).
VerificationReport verify_flags(const std::string& label, const std::vector<Flag>& flags, const Tolerances& tol = {},
                                Kernel k = Kernel::Parallel);
VerificationReport verify_samples(const SphereFamily& F, const std::vector<Vec>& xs, const Tolerances& tol = {},
                                  Kernel k = Kernel::Parallel);
VerificationReport verify_family(const SphereFamily& F, int samples, std::uint64_t seed, const Tolerances& tol = {},
                                 Kernel k = Kernel::Parallel);

// Timing-free fields only unless with_time.
Json to_json(const VerificationReport& r, bool with_time = true);

// A uniformly-ish random flag of the same type: g F with g = Cayley(X), X in the Lie
// algebra of the form (type A: g = I + scale * Gaussian).
Flag random_flag_like(const Flag& F, std::uint64_t seed, double scale = 1.0);

struct ContainmentWitness {
    int n = 0;
    int samples = 0;
    double max_equator_distance = 0.0;
    bool holds = false;
};

// Inner spinor sphere on S^{n-1} against the outer one on the equator of S^n.
ContainmentWitness containment_witness(int n, int samples = 32, std::uint64_t seed = 5, double tol = 1e-10);

struct MaximalityOptions {
    int trials = 1000;
    std::uint64_t seed = 1;
    int samples = 64;
    // Candidates that survive the coarse samples are re-checked on this many points,
    // then by a local descent from the weakest ones.
    int refine_samples = 2048;
    double scale = 1.0;
    Tolerances tol;
};

struct MaximalityReport {
    std::string label = "evidence";
    int trials_run = 0;
    bool witness_found = false;
    int witness_trial = -1;
    double witness_margin = 0.0;
    std::optional<ContainmentWitness> containment;
};

// A random T counts as a non-maximality witness only if it is transverse to every sampled
// point and each signed margin keeps one sign over the samples, so the sampled sphere cannot
// cross the non-transverse locus between samples without us seeing a sign change.
MaximalityReport maximality_evidence(const SphereFamily& F, const MaximalityOptions& opt = {});
// Spinor descriptors with n mod 8 in {3,5,6,7} get the containing-sphere witness instead of trials.
MaximalityReport maximality_evidence(const FamilyDescriptor& d, const MaximalityOptions& opt = {});
Json to_json(const MaximalityReport& r);

// Table lines only; this is the golden-file part.
Json table_rows_json();
// Table lines plus, for each A/B/D instance with rank parameter <= cap, a verify run.
Json table1_report(int verify_cap, int samples = 40, std::uint64_t seed = 1);

}  // namespace flagtrans
