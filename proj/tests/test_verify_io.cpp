#include "doctest.h"
#include "oracles.hpp"

#include "flagtrans/verify.hpp"

#include <fstream>
#include <sstream>

using namespace flagtrans;

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

FamilyDescriptor desc(const std::string& c, int n, Json params, std::uint64_t seed = 0)
{
    FamilyDescriptor d;
    d.construction = c;
    d.n = n;
    d.params = std::move(params);
    d.seed = seed;
    return d;
}

}  // namespace

TEST_SUITE("verify_io")
{
    TEST_CASE("spinor sphere n=4, p=4")
    {
        const auto r = verify_family(spinor_sphere(4, 4), 100, 1);
        CHECK(r.sample_count == 100);
        CHECK(r.pair_count == 4950);
        CHECK(r.failures.empty());
        CHECK(r.passed());
        CHECK(r.min_normalized_minor > 1e-8);
        CHECK(r.worst_i >= 0);
        CHECK(r.worst_i < r.worst_j);
    }

    TEST_CASE("a repeated sample is reported at that pair")
    {
        const SphereFamily F = spinor_sphere(4, 4);
        auto xs = sample_sphere(4, 30, 2);
        xs[17] = xs[5];
        const auto r = verify_samples(F, xs);
        REQUIRE(r.failures.size() == 1);
        CHECK(r.failures[0].i == 5);
        CHECK(r.failures[0].j == 17);
        CHECK_FALSE(r.passed());
        CHECK(r.min_normalized_minor <= 1e-9);
        const Json j = to_json(r, false);
        CHECK(j["passed"] == false);
        CHECK(j["failure_count"] == 1);
        CHECK_FALSE(j.contains("wall_time"));
    }

    TEST_CASE("octonion sphere")
    {
        const auto r = verify_family(division_algebra_sphere(DivisionAlgebra::O, 0), 60, 3);
        CHECK(r.pair_count == 1770);
        CHECK(r.failures.empty());
    }

    TEST_CASE("determinism and the serial reference")
    {
        const SphereFamily F = spinor_sphere(6, 8, 2);
        const auto a = verify_family(F, 50, 9), b = verify_family(F, 50, 9);
        const auto s = verify_family(F, 50, 9, {}, Kernel::Serial);
        CHECK(canonical_dump(to_json(a, false)) == canonical_dump(to_json(b, false)));
        CHECK(canonical_dump(to_json(a, false)) == canonical_dump(to_json(s, false)));

        const auto xs = sample_sphere(6, 40, 10);
        const auto fp = evaluate_samples(F, xs, Kernel::Parallel), fs = evaluate_samples(F, xs, Kernel::Serial);
        const auto mp = pair_margins(fp, Kernel::Parallel), ms = pair_margins(fs, Kernel::Serial);
        REQUIRE(mp.size() == 780);
        CHECK(mp == ms);
        // row-major layout: pair (i, j) sits at i*m - i(i+1)/2 + (j - i - 1)
        CHECK(mp[static_cast<size_t>(3 * 40 - 3 * 4 / 2 + (10 - 3 - 1))] == transversality_margin(fp[3], fp[10]));
        CHECK_THROWS(verify_family(F, 1, 1));
    }

    TEST_CASE("random flags of the same type")
    {
        for (const SphereFamily& F : {spinor_sphere(4, 4), spinor_sphere(4, 3), to_type_A(spinor_sphere(4, 3))}) {
            const Flag base = F.evaluate(Vec::Unit(4, 1));
            const Flag T = random_flag_like(base, 5);
            CHECK(T.type == base.type);
            CHECK(T.theta() == base.theta());
            CHECK_NOTHROW(validate_flag(T));
            CHECK(canonical_dump(to_json(T)) == canonical_dump(to_json(random_flag_like(base, 5))));
            CHECK(flag_distance(T, random_flag_like(base, 6)) > 1e-3);
        }
        CHECK_THROWS(random_flag_like(g2_fiber_sphere().family.evaluate(Vec::Unit(4, 0)), 1));
    }

    TEST_CASE("maximality evidence")
    {
        MaximalityOptions opt;
        opt.trials = 50;
        const auto point = maximality_evidence(desc("point", 4, Json{{"p", 4}}), opt);
        CHECK(point.witness_found);
        CHECK(point.witness_trial <= 3);
        CHECK(point.label == "evidence");

        opt.trials = 1000;
        const auto divh = maximality_evidence(desc("division", 4, Json{{"algebra", "H"}, {"eps", -1}}), opt);
        CHECK_FALSE(divh.witness_found);
        CHECK(divh.trials_run == 1000);

        const auto s7 = maximality_evidence(desc("spinor", 7, Json{{"p", 8}}), opt);
        REQUIRE(s7.containment);
        CHECK(s7.containment->holds);
        CHECK(s7.containment->max_equator_distance <= 1e-10);
        const Json j = to_json(s7);
        CHECK(j["label"] == "evidence");
        CHECK(j["containment"]["outer_n"] == 8);
        CHECK_THROWS(containment_witness(4));
    }

    TEST_CASE("table golden file")
    {
        CHECK(canonical_dump(table1_report(0)) == slurp(std::string(GOLDEN_DIR) + "/table1.json"));
        CHECK(canonical_dump(table1_report(0)) == canonical_dump(table1_report(0)));
        const Json small = table1_report(4, 20, 2);
        CHECK(small["all_passed"] == true);
        CHECK(small["instances"].size() == 5);  // A4, B2, B3, B4, D4
        for (const auto& inst : small["instances"]) {
            CHECK(inst["family_matches_query"] == true);
            CHECK(inst["verify"]["passed"] == true);
        }
    }

    TEST_CASE("cross constants golden file and an independent recomputation")
    {
        const std::string golden = slurp(std::string(GOLDEN_DIR) + "/cross_constants.csv");
        CHECK(cross_constants_csv() == golden);

        const RCrossBasis B = r_cross_basis();
        const Mat S = cross_form().matrix;
        std::map<std::pair<int, int>, double> listed;
        std::istringstream in(golden);
        std::string line;
        std::getline(in, line);
        CHECK(line == "i,j,k,c");
        while (std::getline(in, line)) {
            int i, j, k;
            double c;
            REQUIRE(std::sscanf(line.c_str(), "%d,%d,%d,%lf", &i, &j, &k, &c) == 4);
            CHECK(k == i + j);
            listed[{i, j}] = c;
        }
        int nonzero = 0;
        for (int i = -3; i <= 3; ++i)
            for (int j = -3; j <= 3; ++j) {
                const Vec p = cross_product(B.x(i), B.x(j));
                const int k = i + j;
                if (std::abs(k) > 3) {
                    CHECK(p.norm() < 1e-12);
                    continue;
                }
                // coefficient on x_k read off with the dual vector x_{-k}
                const double c = p.dot(S * B.x(-k)) / B.x(k).dot(S * B.x(-k));
                CHECK((p - c * B.x(k)).norm() < 1e-12);
                CAPTURE(i);
                CAPTURE(j);
                if (std::abs(c) > 1e-12) {
                    ++nonzero;
                    REQUIRE(listed.count({i, j}));
                    CHECK(listed[{i, j}] == doctest::Approx(c).epsilon(1e-11));
                } else {
                    CHECK_FALSE(listed.count({i, j}));
                }
            }
        CHECK(nonzero == static_cast<int>(listed.size()));
    }

    TEST_CASE("json round trips")
    {
        std::mt19937_64 rng(40);
        const BilinearForm f = make_form(3, 4, FormConvention::BSplit);
        const BilinearForm f2 = form_from_json(to_json(f));
        CHECK(f2.p == 3);
        CHECK(f2.q == 4);
        CHECK(f2.convention == FormConvention::BSplit);
        CHECK((f2.matrix - f.matrix).norm() == 0);

        const Subspace S{oracle::gaussian(6, 2, rng)};
        CHECK((subspace_from_json(to_json(S)).basis - S.basis).norm() == 0);

        for (const SphereFamily& F : {spinor_sphere(4, 4, 3), spinor_sphere(5, 3), g2_fiber_sphere(2).family,
                                      to_type_A(spinor_sphere(3, 4))}) {
            const Flag a = F.evaluate(oracle::unit(F.n, rng));
            const Flag b = flag_from_json(to_json(a));
            CHECK(b.type == a.type);
            CHECK(b.top_sign == a.top_sign);
            CHECK(flag_distance(a, b) < 1e-14);
            CHECK(canonical_dump(to_json(b)) == canonical_dump(to_json(a)));
        }

        const CompAlgebra O = algebra_by_name("O'");
        const AlgebraElement x = element(O, oracle::gaussian(8, 1, rng).col(0));
        const AlgebraElement y = algebra_element_from_json(to_json(x));
        CHECK(y.tower == x.tower);
        CHECK((y.coords - x.coords).norm() == 0);

        const FamilyDescriptor d = desc("spinor", 4, parse_params("p=4,phi=contraction"), 7);
        const FamilyDescriptor e = descriptor_from_json(to_json(d));
        CHECK(e.construction == "spinor");
        CHECK(e.n == 4);
        CHECK(e.seed == 7);
        CHECK(e.params["p"] == 4);
        CHECK(e.params["phi"] == "contraction");
        CHECK_THROWS(resolve(desc("nope", 4, Json::object())));
        CHECK_THROWS(resolve(desc("division", 5, Json{{"algebra", "H"}, {"eps", -1}})));
        CHECK_THROWS(parse_params("p"));

        // canonical dump: sorted keys, 17 significant digits, trailing newline
        const std::string s = canonical_dump(Json{{"b", 0.1}, {"a", 1}});
        CHECK(s.find("\"a\"") < s.find("\"b\""));
        CHECK(s.find("0.10000000000000001") != std::string::npos);
        CHECK(s.back() == '\n');
    }
}
