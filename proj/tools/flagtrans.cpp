// Command-line front end. JSON to stdout (or --out); exit 0 pass, 1 check failed, 2 usage.
#include "flagtrans/classify.hpp"
#include "flagtrans/io.hpp"
#include "flagtrans/verify.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

using namespace flagtrans;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const Json& j, const std::string& out)
{
    const std::string text = canonical_dump(j);
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw UsageError("cannot write " + out);
    f << text;
}

Json read_json_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read " + path);
    try {
        return Json::parse(f);
    } catch (const Json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

struct FamilyArgs {
    std::string family;
    std::string params;
    int n = 0;
    std::uint64_t family_seed = 0;
    std::string in;
};

void add_family_options(CLI::App* sub, FamilyArgs& a)
{
    sub->add_option("--family", a.family, "construction tag (spinor, division, full, ...)");
    sub->add_option("--params", a.params, "key=value list, e.g. n=4,p=4");
    sub->add_option("--n", a.n, "sphere parameter n (may also be given in --params)");
    sub->add_option("--family-seed", a.family_seed, "basepoint / construction seed");
}

FamilyDescriptor descriptor_from_args(const FamilyArgs& a)
{
    if (a.family.empty()) throw UsageError("need --family or --in");
    FamilyDescriptor d;
    d.construction = a.family;
    d.params = a.params.empty() ? Json::object() : parse_params(a.params);
    d.n = a.n;
    if (d.params.contains("n")) {
        if (!d.params["n"].is_number_integer()) throw UsageError("n must be an integer");
        const int pn = d.params["n"].get<int>();
        if (d.n != 0 && d.n != pn) throw UsageError("--n and params n disagree");
        d.n = pn;
        d.params.erase("n");
    }
    d.seed = a.family_seed;
    return d;
}

// --in accepts a bare descriptor or a construct file {"descriptor", "samples"}.
FamilyDescriptor descriptor_from_file(const Json& j)
{
    return descriptor_from_json(j.contains("descriptor") ? j.at("descriptor") : j);
}

Json row_json(const ClassificationQuery& q, const ClassificationRow& r)
{
    Json j{{"type", to_string(q.type)},
           {"rank", q.rank_param},
           {"theta", format_theta(q.theta, q.type, q.rank_param)},
           {"circles_locally_max", r.circles_locally_max},
           {"sphere_maximal", r.sphere_maximal},
           {"rule", r.rule},
           {"citations", r.citations}};
    j["constructible_sphere_dim"] = r.sphere_dim ? Json(*r.sphere_dim) : Json(nullptr);
    return j;
}

std::vector<double> to_std(const Vec& x) { return std::vector<double>(x.data(), x.data() + x.size()); }

int cmd_classify(const std::string& type, int rank, const std::string& theta, const std::string& out)
{
    ClassificationQuery q;
    q.type = cartan_type_from_string(type);
    q.rank_param = rank;
    q.theta = parse_theta(theta, q.type, rank);
    check_query(q);
    emit(row_json(q, classify(q)), out);
    return 0;
}

int cmd_construct(const FamilyArgs& a, int samples, std::uint64_t sample_seed, const std::string& out)
{
    const FamilyDescriptor d = a.in.empty() ? descriptor_from_args(a) : descriptor_from_file(read_json_file(a.in));
    const SphereFamily F = resolve(d);
    Json pts = Json::array();
    for (const auto& x : sample_sphere(F.n, samples, sample_seed))
        pts.push_back(Json{{"x", to_std(x)}, {"flag", to_json(F.evaluate(x))}});
    emit(Json{{"descriptor", to_json(d)},
              {"provenance", F.provenance},
              {"sphere_dim", F.sphere_dim()},
              {"sample_seed", sample_seed},
              {"samples", pts}},
         out);
    return 0;
}

int cmd_verify(const FamilyArgs& a, int samples, std::uint64_t seed, double tol_det, bool serial, bool stored,
               const std::string& out)
{
    Tolerances tol;
    tol.det = tol_det;
    const Kernel k = serial ? Kernel::Serial : Kernel::Parallel;
    VerificationReport r;
    Json desc;
    if (!a.in.empty()) {
        const Json j = read_json_file(a.in);
        if (stored) {
            if (!j.contains("samples")) throw UsageError("--stored needs a construct file");
            std::vector<Flag> flags;
            for (const auto& s : j.at("samples")) flags.push_back(flag_from_json(s.at("flag")));
            r = verify_flags(j.value("provenance", std::string("stored")), flags, tol, k);
            desc = j.contains("descriptor") ? j.at("descriptor") : Json(nullptr);
        } else {
            const FamilyDescriptor d = descriptor_from_file(j);
            r = verify_family(resolve(d), samples, seed, tol, k);
            desc = to_json(d);
        }
    } else {
        const FamilyDescriptor d = descriptor_from_args(a);
        r = verify_family(resolve(d), samples, seed, tol, k);
        desc = to_json(d);
    }
    Json j = to_json(r);
    j["descriptor"] = desc;
    j["seed"] = seed;
    j["tol"] = tol_det;
    emit(j, out);
    return r.passed() ? 0 : 1;
}

int cmd_maximality(const FamilyArgs& a, const MaximalityOptions& opt, const std::string& out)
{
    const FamilyDescriptor d = a.in.empty() ? descriptor_from_args(a) : descriptor_from_file(read_json_file(a.in));
    Json j = to_json(maximality_evidence(d, opt));
    j["descriptor"] = to_json(d);
    j["seed"] = opt.seed;
    emit(j, out);
    return 0;
}

int cmd_table1(int cap, int samples, std::uint64_t seed, const std::string& out)
{
    const Json j = table1_report(cap, samples, seed);
    emit(j, out);
    return j.at("all_passed").get<bool>() ? 0 : 1;
}

int cmd_filtration(const FamilyArgs& a, int samples, std::uint64_t seed, const std::string& out)
{
    const FamilyDescriptor d = a.in.empty() ? descriptor_from_args(a) : descriptor_from_file(read_json_file(a.in));
    const SphereFamily F = resolve(d);
    const SpanFiltration s = span_filtration(F, samples, seed);
    Json dims = Json::array();
    for (const auto& [k, dim] : s.dims) dims.push_back(Json::array({k, dim}));
    emit(Json{{"descriptor", to_json(d)}, {"samples", samples}, {"dims", dims}, {"stable", s.stable}}, out);
    return s.stable ? 0 : 1;
}

Json check_clifford(int n, bool& ok)
{
    if (n < 1 || n > kCliffordMax) throw UsageError("clifford check needs 1 <= n <= " + std::to_string(kCliffordMax));
    const CliffordRep rep = clifford_model(n);
    const double rel = clifford_relation_residual(rep);
    const double spin = spin_metric_check(rep);
    ok = rel <= 1e-11 && spin <= 1e-11;
    return Json{{"check", "clifford"},
                {"n", n},
                {"module_dim", rep.D},
                {"spinor_dim", spinor_dim(n)},
                {"radon_hurwitz", radon_hurwitz(spinor_dim(n))},
                {"relation_residual", rel},
                {"spin_metric_residual", spin},
                {"passed", ok}};
}

// Norm multiplicativity q(xy) = q(x) q(y) for every sign tower of the given dimension.
Json check_cayley_dickson(int n, bool& ok)
{
    int steps = 0;
    while ((1 << steps) < n) ++steps;
    if (n < 1 || (1 << steps) != n || steps > 3) throw UsageError("cayley-dickson check needs n in {1,2,4,8}");
    std::mt19937_64 rng(42);
    std::normal_distribution<double> nd;
    Json algs = Json::array();
    ok = true;
    for (int mask = 0; mask < (1 << steps); ++mask) {
        std::vector<int> tower;
        for (int s = 0; s < steps; ++s) tower.push_back((mask >> s) & 1 ? 1 : -1);
        const CompAlgebra A = build_algebra(tower);
        double worst = 0.0;
        for (int t = 0; t < 50; ++t) {
            Vec a(n), b(n);
            for (int i = 0; i < n; ++i) {
                a(i) = nd(rng);
                b(i) = nd(rng);
            }
            const AlgebraElement x = element(A, a), y = element(A, b);
            const double lhs = norm(multiply(x, y)), rhs = norm(x) * norm(y);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
        const bool comp = worst <= 1e-10;
        ok = ok && comp;
        algs.push_back(Json{{"name", A.name}, {"tower", tower}, {"norm_defect", worst}, {"composition", comp}});
    }
    return Json{{"check", "cayley-dickson"}, {"n", n}, {"algebras", algs}, {"passed", ok}};
}

Json check_cross(bool& ok, const std::string& csv)
{
    const RCrossBasis B = r_cross_basis();
    const BilinearForm form = cross_form();
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    double skew = 0.0, quad = 0.0;
    for (int t = 0; t < 50; ++t) {
        Vec u(7), v(7);
        for (int i = 0; i < 7; ++i) {
            u(i) = nd(rng);
            v(i) = nd(rng);
        }
        skew = std::max(skew, (cross_product(u, v) + cross_product(v, u)).norm());
        const double b = form(u, v);
        quad = std::max(quad, std::abs(cross_q(cross_product(u, v)) - (cross_q(u) * cross_q(v) - b * b)));
    }
    const double grading = B.grading_residual();
    ok = skew <= 1e-10 && quad <= 1e-8 && grading <= 1e-10;
    if (!csv.empty()) {
        std::ofstream f(csv);
        if (!f) throw UsageError("cannot write " + csv);
        f << cross_constants_csv();
    }
    return Json{{"check", "cross-product"},
                {"antisymmetry_residual", skew},
                {"norm_identity_residual", quad},
                {"grading_residual", grading},
                {"passed", ok}};
}

int cmd_algebra(const std::string& check, int n, const std::string& csv, const std::string& out)
{
    bool ok = false;
    Json j;
    if (check == "clifford") j = check_clifford(n, ok);
    else if (check == "cayley-dickson") j = check_cayley_dickson(n, ok);
    else if (check == "cross-product") j = check_cross(ok, csv);
    else throw UsageError("--check must be clifford, cayley-dickson or cross-product");
    emit(j, out);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"flagtrans: transverse spheres in flag manifolds"};
    app.require_subcommand(1);
    std::string out;
    app.add_option("--out", out, "write JSON here instead of stdout");

    auto* classify_cmd = app.add_subcommand("classify", "classification verdict for a flag manifold");
    std::string ctype, ctheta = "full";
    int crank = 0;
    classify_cmd->add_option("--type", ctype, "A B C D G2 F4 E6 E7 E8")->required();
    classify_cmd->add_option("--rank", crank, "d for A, p for B/D, n for C; ignored for exceptional types");
    classify_cmd->add_option("--theta", ctheta, "full, or a comma list; D accepts p+ / p-");
    classify_cmd->add_option("--out", out);

    FamilyArgs fa;
    int samples = 100;
    std::uint64_t seed = 1;
    auto* construct_cmd = app.add_subcommand("construct", "sample a sphere family and dump its flags");
    add_family_options(construct_cmd, fa);
    construct_cmd->add_option("--seed", fa.family_seed, "construction seed (same as --family-seed)");
    construct_cmd->add_option("--in", fa.in, "descriptor JSON instead of --family");
    construct_cmd->add_option("--samples", samples, "points to sample")->capture_default_str();
    construct_cmd->add_option("--sample-seed", seed, "sampling seed")->capture_default_str();
    construct_cmd->add_option("--out", out);

    double tol_det = Tolerances{}.det;
    bool serial = false, stored = false;
    auto* verify_cmd = app.add_subcommand("verify", "pairwise transversality on sampled points");
    add_family_options(verify_cmd, fa);
    verify_cmd->add_option("--in", fa.in, "descriptor or construct file");
    verify_cmd->add_option("--samples", samples)->capture_default_str();
    verify_cmd->add_option("--seed", seed, "sampling seed")->capture_default_str();
    verify_cmd->add_option("--tol", tol_det, "margin threshold")->capture_default_str();
    verify_cmd->add_flag("--serial", serial, "use the single-threaded reference kernel");
    verify_cmd->add_flag("--stored", stored, "check the flags stored in a construct file as they are");
    verify_cmd->add_option("--out", out);

    MaximalityOptions mopt;
    auto* max_cmd = app.add_subcommand("maximality", "search for a flag transverse to the whole family (evidence only)");
    add_family_options(max_cmd, fa);
    max_cmd->add_option("--in", fa.in, "descriptor or construct file");
    max_cmd->add_option("--trials", mopt.trials)->capture_default_str();
    max_cmd->add_option("--seed", mopt.seed)->capture_default_str();
    max_cmd->add_option("--samples", mopt.samples, "sphere points per trial")->capture_default_str();
    max_cmd->add_option("--out", out);

    int cap = 8;
    int tsamples = 40;
    auto* table_cmd = app.add_subcommand("table1", "classification table plus verified instances");
    table_cmd->add_option("--verify-cap", cap, "verify instances with rank parameter up to this")->capture_default_str();
    table_cmd->add_option("--samples", tsamples)->capture_default_str();
    table_cmd->add_option("--seed", seed)->capture_default_str();
    table_cmd->add_option("--out", out);

    int fsamples = 64;
    auto* filt_cmd = app.add_subcommand("filtration", "dimensions of the span filtration");
    add_family_options(filt_cmd, fa);
    filt_cmd->add_option("--in", fa.in, "descriptor or construct file");
    filt_cmd->add_option("--samples", fsamples)->capture_default_str();
    filt_cmd->add_option("--seed", seed)->capture_default_str();
    filt_cmd->add_option("--out", out);

    std::string check, csv;
    int an = 8;
    auto* alg_cmd = app.add_subcommand("algebra", "algebraic self-checks");
    alg_cmd->add_option("--check", check, "clifford, cayley-dickson or cross-product")->required();
    alg_cmd->add_option("--n", an)->capture_default_str();
    alg_cmd->add_option("--csv", csv, "cross-product: also write the structure constants here");
    alg_cmd->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*classify_cmd) return cmd_classify(ctype, crank, ctheta, out);
        if (*construct_cmd) return cmd_construct(fa, samples, seed, out);
        if (*verify_cmd) return cmd_verify(fa, samples, seed, tol_det, serial, stored, out);
        if (*max_cmd) return cmd_maximality(fa, mopt, out);
        if (*table_cmd) return cmd_table1(cap, tsamples, seed, out);
        if (*filt_cmd) return cmd_filtration(fa, fsamples, seed, out);
        if (*alg_cmd) return cmd_algebra(check, an, csv, out);
    } catch (const std::exception& e) {
        // Bad queries, unknown constructions and unreadable files are all usage errors.
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
