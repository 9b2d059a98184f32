#include "flagtrans/verify.hpp"

#include "flagtrans/classify.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <stdexcept>

namespace flagtrans {

int thread_count()
{
    if (const char* env = std::getenv("FLAGTRANS_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return std::max(1, omp_get_max_threads());
}

namespace {

// Exceptions may not leave an OpenMP region; keep the first one and rethrow outside.
struct ErrorSlot {
    std::mutex m;
    std::exception_ptr e;
    void set()
    {
        std::lock_guard<std::mutex> lock(m);
        if (!e) e = std::current_exception();
    }
    void rethrow()
    {
        if (e) std::rethrow_exception(e);
    }
};

}  // namespace

std::vector<Flag> evaluate_samples(const SphereFamily& F, const std::vector<Vec>& xs, Kernel k)
{
    const long m = static_cast<long>(xs.size());
    std::vector<Flag> out(xs.size());
    if (k == Kernel::Serial) {
        for (long i = 0; i < m; ++i) out[static_cast<size_t>(i)] = F.evaluate(xs[static_cast<size_t>(i)]);
        return out;
    }
    ErrorSlot err;
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
    for (long i = 0; i < m; ++i) {
        try {
            out[static_cast<size_t>(i)] = F.evaluate(xs[static_cast<size_t>(i)]);
        } catch (...) {
            err.set();
        }
    }
    err.rethrow();
    return out;
}

std::vector<double> pair_margins(const std::vector<Flag>& flags, Kernel k)
{
    const long m = static_cast<long>(flags.size());
    const long pairs = m * (m - 1) / 2;
    std::vector<double> out(static_cast<size_t>(std::max(0L, pairs)));
    if (k == Kernel::Serial) {
        size_t t = 0;
        for (long i = 0; i < m; ++i)
            for (long j = i + 1; j < m; ++j)
                out[t++] = transversality_margin(flags[static_cast<size_t>(i)], flags[static_cast<size_t>(j)]);
        return out;
    }
    ErrorSlot err;
    // Row i starts at i*m - i(i+1)/2; each row writes its own slice, so the order is fixed.
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
    for (long i = 0; i < m; ++i) {
        try {
            const long base = i * m - i * (i + 1) / 2;
            for (long j = i + 1; j < m; ++j)
                out[static_cast<size_t>(base + (j - i - 1))] =
                    transversality_margin(flags[static_cast<size_t>(i)], flags[static_cast<size_t>(j)]);
        } catch (...) {
            err.set();
        }
    }
    err.rethrow();
    return out;
}

VerificationReport verify_flags(const std::string& label, const std::vector<Flag>& flags, const Tolerances& tol,
                                Kernel k)
{
    const auto t0 = std::chrono::steady_clock::now();
    VerificationReport r;
    r.family = label;
    r.sample_count = static_cast<int>(flags.size());
    r.threads = k == Kernel::Serial ? 1 : thread_count();
    const auto margins = pair_margins(flags, k);
    r.pair_count = static_cast<long>(margins.size());
    size_t t = 0;
    for (int i = 0; i < r.sample_count; ++i)
        for (int j = i + 1; j < r.sample_count; ++j, ++t) {
            const double mg = margins[t];
            if (mg < r.min_normalized_minor || r.worst_i < 0) {
                r.min_normalized_minor = mg;
                r.worst_i = i;
                r.worst_j = j;
            }
            if (!(mg > tol.det)) r.failures.push_back({i, j, mg});
        }
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

VerificationReport verify_samples(const SphereFamily& F, const std::vector<Vec>& xs, const Tolerances& tol, Kernel k)
{
    const auto t0 = std::chrono::steady_clock::now();
    VerificationReport r = verify_flags(F.provenance, evaluate_samples(F, xs, k), tol, k);
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

VerificationReport verify_family(const SphereFamily& F, int samples, std::uint64_t seed, const Tolerances& tol,
                                 Kernel k)
{
    if (samples < 2) throw std::invalid_argument("verify_family: need at least 2 samples");
    return verify_samples(F, sample_sphere(F.n, samples, seed), tol, k);
}

Json to_json(const VerificationReport& r, bool with_time)
{
    Json fails = Json::array();
    for (size_t i = 0; i < r.failures.size() && i < 100; ++i)
        fails.push_back(Json{{"i", r.failures[i].i}, {"j", r.failures[i].j}, {"margin", r.failures[i].margin}});
    Json j{{"family", r.family},
           {"sample_count", r.sample_count},
           {"pair_count", r.pair_count},
           {"min_normalized_minor", r.min_normalized_minor},
           {"worst_pair", Json::array({r.worst_i, r.worst_j})},
           {"failure_count", r.failures.size()},
           {"failures", fails},
           {"passed", r.passed()}};
    if (with_time) {
        j["wall_time"] = r.wall_time;
        j["threads"] = r.threads;
    }
    return j;
}

Flag random_flag_like(const Flag& F, std::uint64_t seed, double scale)
{
    std::mt19937_64 rng(seed * 0xD1B54A32D192ED03ULL + 99);
    std::normal_distribution<double> nd;
    const int n = F.type.ambient_dim();
    if (F.type.kind == FlagKind::G2) throw std::invalid_argument("random_flag_like: G2 flags are not supported");
    Mat g(n, n);
    if (F.type.kind == FlagKind::A) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = (i == j ? 1.0 : 0.0) + scale * nd(rng);
        std::map<int, Subspace> chain;
        for (int k : F.theta()) chain[k] = Subspace{g * F.at(k).basis};
        return make_flag_A(n, chain);
    }
    // Cayley transform of X = S^{-1} K with K skew: g^T S g = S.
    Mat K(n, n);
    for (int i = 0; i < n; ++i) {
        K(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j) {
            K(i, j) = scale * nd(rng);
            K(j, i) = -K(i, j);
        }
    }
    const Mat X = F.form.matrix.inverse() * K;
    const Mat I = Mat::Identity(n, n);
    g = (I - X).partialPivLu().solve(I + X);
    std::map<int, Subspace> chain;
    for (const auto& [k, S] : F.subspaces) chain[k] = Subspace{g * S.basis};
    return make_isotropic_flag(F.form, chain);
}

ContainmentWitness containment_witness(int n, int samples, std::uint64_t seed, double tol)
{
    ContainmentWitness w;
    w.n = n;
    w.samples = samples;
    const ContainingPair cp = containing_sphere(n);
    for (const auto& x : sample_sphere(n, samples, seed)) {
        Vec y = Vec::Zero(n + 1);
        y.head(n) = x;
        w.max_equator_distance = std::max(w.max_equator_distance, flag_distance(cp.inner.evaluate(x), cp.outer.evaluate(y)));
    }
    w.holds = w.max_equator_distance <= tol;
    return w;
}

namespace {

int sign_of(double v) { return v > 0 ? 1 : -1; }

// Smallest margin of T against the flags, or -1 once some pair is not transverse or a
// signed margin leaves the sign pattern. Fills the pattern from the first flag if empty.
double sweep(const std::vector<Flag>& flags, const Flag& T, std::vector<int>& signs, double tol)
{
    double worst = 1.0;
    for (const auto& L : flags) {
        const double m = transversality_margin(L, T);
        if (!(m > tol)) return -1.0;
        const auto s = signed_margins(L, T);
        if (signs.empty())
            for (double v : s) signs.push_back(sign_of(v));
        for (size_t i = 0; i < s.size(); ++i)
            if (sign_of(s[i]) != signs[i]) return -1.0;
        worst = std::min(worst, m);
    }
    return worst;
}

// Random-walk descent on the margin from x, projected back to the sphere.
bool descent_breaks(const SphereFamily& F, const Flag& T, Vec x, const std::vector<int>& signs, double tol,
                    std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    double cur = transversality_margin(F.evaluate(x), T);
    double step = 0.2;
    for (int it = 0; it < 300 && step > 1e-7; ++it) {
        Vec y = x;
        for (int i = 0; i < y.size(); ++i) y(i) += step * nd(rng);
        y.normalize();
        const Flag L = F.evaluate(y);
        const double m = transversality_margin(L, T);
        if (!(m > tol)) return true;
        const auto s = signed_margins(L, T);
        for (size_t i = 0; i < s.size(); ++i)
            if (sign_of(s[i]) != signs[i]) return true;
        if (m < cur) {
            cur = m;
            x = y;
        } else {
            step *= 0.9;
        }
    }
    return false;
}

}  // namespace

MaximalityReport maximality_evidence(const SphereFamily& F, const MaximalityOptions& opt)
{
    MaximalityReport rep;
    const auto xs = sample_sphere(F.n, opt.samples, opt.seed + 17);
    const auto flags = evaluate_samples(F, xs);
    const Flag& base = flags.front();
    const auto dense_x = sample_sphere(F.n, opt.refine_samples, opt.seed + 23);
    std::vector<Flag> dense;  // filled on the first surviving candidate
    std::once_flag dense_once;
    std::vector<double> margin(static_cast<size_t>(opt.trials), -1.0);
    // Later trials cannot change the answer once an earlier one succeeded.
    std::atomic<int> first_hit{opt.trials};
    ErrorSlot err;
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
    for (int t = 0; t < opt.trials; ++t) {
        if (t > first_hit.load()) continue;
        try {
            const std::uint64_t ts = opt.seed * 1000003ULL + static_cast<std::uint64_t>(t);
            const Flag T = random_flag_like(base, ts, opt.scale);
            std::vector<int> signs;
            double worst = sweep(flags, T, signs, opt.tol.det);
            if (worst > 0 && !dense_x.empty()) {
                std::call_once(dense_once, [&] {
                    for (const auto& x : dense_x) dense.push_back(F.evaluate(x));
                });
                worst = std::min(worst, sweep(dense, T, signs, opt.tol.det));
            }
            if (worst > 0) {
                // restart the descent from the four weakest dense points
                std::vector<std::pair<double, size_t>> order;
                for (size_t i = 0; i < dense.size(); ++i) order.push_back({transversality_margin(dense[i], T), i});
                std::sort(order.begin(), order.end());
                for (size_t r = 0; r < order.size() && r < 4; ++r)
                    if (descent_breaks(F, T, dense_x[order[r].second], signs, opt.tol.det, ts + r)) {
                        worst = -1.0;
                        break;
                    }
            }
            if (worst > 0) {
                margin[static_cast<size_t>(t)] = worst;
                int cur = first_hit.load();
                while (t < cur && !first_hit.compare_exchange_weak(cur, t)) {
                }
            }
        } catch (...) {
            err.set();
        }
    }
    err.rethrow();
    rep.trials_run = std::min(opt.trials, first_hit.load() + 1);
    for (int t = 0; t < opt.trials; ++t)
        if (margin[static_cast<size_t>(t)] > 0) {
            rep.witness_found = true;
            rep.witness_trial = t;
            rep.witness_margin = margin[static_cast<size_t>(t)];
            break;
        }
    return rep;
}

MaximalityReport maximality_evidence(const FamilyDescriptor& d, const MaximalityOptions& opt)
{
    const int r = d.n % 8;
    if (d.construction == "spinor" && (r == 3 || r == 5 || r == 6 || r == 7)) {
        MaximalityReport rep;
        rep.containment = containment_witness(d.n);
        rep.witness_found = rep.containment->holds;
        return rep;
    }
    return maximality_evidence(resolve(d), opt);
}

Json to_json(const MaximalityReport& r)
{
    Json j{{"label", r.label}, {"trials_run", r.trials_run}, {"witness_found", r.witness_found}};
    if (r.witness_trial >= 0) {
        j["witness_trial"] = r.witness_trial;
        j["witness_margin"] = r.witness_margin;
    }
    if (r.containment) {
        j["containment"] = Json{{"n", r.containment->n},
                                {"outer_n", r.containment->n + 1},
                                {"samples", r.containment->samples},
                                {"max_equator_distance", r.containment->max_equator_distance},
                                {"holds", r.containment->holds}};
    }
    return j;
}

Json table_rows_json()
{
    Json rows = Json::array();
    for (const auto& l : table_lines())
        rows.push_back(Json{{"type", l.type},
                            {"type_range", l.type_range},
                            {"rank_condition", l.rank_condition},
                            {"positive_theta", l.positive_theta}});
    return rows;
}

Json table1_report(int verify_cap, int samples, std::uint64_t seed)
{
    Json inst = Json::array();
    bool all = true;
    for (const auto& I : table_instances(verify_cap)) {
        const SphereFamily F = I.build();
        const auto rep = verify_family(F, samples, seed);
        const bool match = theta_matches_family(I.query, F) && F.sphere_dim() == I.sphere_dim;
        all = all && rep.passed() && match;
        inst.push_back(Json{{"type", to_string(I.query.type)},
                            {"rank", I.query.rank_param},
                            {"theta", format_theta(I.query.theta, I.query.type, I.query.rank_param)},
                            {"sphere_dim", I.sphere_dim},
                            {"recipe", I.recipe},
                            {"family_matches_query", match},
                            {"verify", to_json(rep, false)}});
    }
    return Json{{"rows", table_rows_json()},
                {"instances", inst},
                {"verify_cap", verify_cap},
                {"samples", samples},
                {"seed", seed},
                {"all_passed", all}};
}

}  // namespace flagtrans
