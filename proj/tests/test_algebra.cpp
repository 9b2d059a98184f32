#include "doctest.h"
#include "oracles.hpp"

#include "flagtrans/algebra.hpp"

using namespace flagtrans;

namespace {

const char* kNames[] = {"R", "C", "C'", "H", "H'", "O", "O'"};

Vec rand_vec(int n, std::mt19937_64& rng) { return oracle::gaussian(n, 1, rng).col(0); }

// Random null vector of R^{3,4}: unit positive part plus unit negative part.
Vec null_vector(std::mt19937_64& rng)
{
    Vec x(7);
    x.head(3) = oracle::unit(3, rng);
    x.tail(4) = oracle::unit(4, rng);
    return x * std::exp(std::normal_distribution<double>(0, 0.5)(rng));
}

}  // namespace

TEST_SUITE("algebra")
{
    TEST_CASE("towers and signatures")
    {
        CHECK(build_algebra({-1}).form_signature() == std::make_pair(2, 0));
        CHECK(build_algebra({1}).form_signature() == std::make_pair(1, 1));
        CHECK(build_algebra({-1, -1, 1}).form_signature() == std::make_pair(4, 4));
        CHECK(algebra_by_name("O'").form_signature() == std::make_pair(4, 4));
        CHECK(algebra_by_name("O").form_signature() == std::make_pair(8, 0));
        CHECK_THROWS(build_algebra({-1, -1, -1, -1}));

        // q_B = q_A + (-eps) q_A, recomputed from the tower
        for (const char* name : kNames) {
            const CompAlgebra A = algebra_by_name(name);
            CHECK(A.dim == (1 << A.tower.size()));
            std::vector<int> signs{1};
            for (int eps : A.tower) {
                std::vector<int> next = signs;
                for (int s : signs) next.push_back(-eps * s);
                signs = next;
            }
            CHECK(signs == A.form_signs);
        }
    }

    TEST_CASE("quaternion table against Hamilton")
    {
        const CompAlgebra H = algebra_by_name("H");
        const Vec ij = multiply(unit_element(H, 1), unit_element(H, 2)).coords;
        // i j = k; the sign tells us which coordinate vector plays k in the doubling basis
        REQUIRE(std::abs(std::abs(ij(3)) - 1.0) < 1e-15);
        const double s = ij(3);
        CHECK((ij - s * Vec::Unit(4, 3)).norm() < 1e-15);
        std::mt19937_64 rng(4);
        for (int t = 0; t < 100; ++t) {
            Vec a = rand_vec(4, rng), b = rand_vec(4, rng);
            Vec ah = a, bh = b;
            ah(3) *= s;
            bh(3) *= s;
            Vec c = oracle::hamilton(ah, bh);
            c(3) *= s;
            CHECK((multiply(element(H, a), element(H, b)).coords - c).norm() < 1e-12);
            CHECK(norm(element(H, a)) == doctest::Approx(a.squaredNorm()));
        }
    }

    TEST_CASE("unit, conjugate, norm of one")
    {
        std::mt19937_64 rng(1);
        for (const char* name : kNames) {
            const CompAlgebra A = algebra_by_name(name);
            const AlgebraElement one = unit_element(A, 0);
            const AlgebraElement x = element(A, rand_vec(A.dim, rng));
            CHECK((multiply(one, x).coords - x.coords).norm() < 1e-15);
            CHECK((multiply(x, one).coords - x.coords).norm() < 1e-15);
            CHECK((conjugate(one).coords - one.coords).norm() == 0);
            CHECK(norm(one) == 1.0);
            CHECK((left_mult_operator(one) - Mat::Identity(A.dim, A.dim)).norm() < 1e-15);
        }
        const CompAlgebra C = algebra_by_name("C");
        Mat rot(2, 2);
        rot << 0, -1, 1, 0;
        CHECK((left_mult_operator(unit_element(C, 1)) - rot).norm() < 1e-15);
    }

    TEST_CASE("property: Hurwitz norm multiplicativity in all seven algebras")
    {
        std::mt19937_64 rng(99);
        for (const char* name : kNames) {
            const CompAlgebra A = algebra_by_name(name);
            double worst = 0;
            for (int t = 0; t < 1000; ++t) {
                const AlgebraElement x = element(A, oracle::unit(A.dim, rng));
                const AlgebraElement y = element(A, oracle::unit(A.dim, rng));
                worst = std::max(worst, std::abs(norm(multiply(x, y)) - norm(x) * norm(y)));
            }
            CAPTURE(name);
            CHECK(worst <= 1e-12);
        }
    }

    TEST_CASE("property: conjugation reverses products, octonions are alternative")
    {
        std::mt19937_64 rng(7);
        for (const char* name : kNames) {
            const CompAlgebra A = algebra_by_name(name);
            for (int t = 0; t < 100; ++t) {
                const AlgebraElement x = element(A, rand_vec(A.dim, rng)), y = element(A, rand_vec(A.dim, rng));
                const Vec lhs = conjugate(multiply(x, y)).coords;
                const Vec rhs = multiply(conjugate(y), conjugate(x)).coords;
                CHECK((lhs - rhs).norm() < 1e-11);
                const Vec xxy = multiply(x, multiply(x, y)).coords;
                const Vec xx_y = multiply(multiply(x, x), y).coords;
                CHECK((xxy - xx_y).norm() < 1e-10);
            }
        }
    }

    TEST_CASE("octonions are not associative")
    {
        const CompAlgebra O = algebra_by_name("O");
        bool found = false;
        for (int a = 1; a < 8 && !found; ++a)
            for (int b = 1; b < 8 && !found; ++b)
                for (int c = 1; c < 8 && !found; ++c) {
                    const auto x = unit_element(O, a), y = unit_element(O, b), z = unit_element(O, c);
                    found = (multiply(multiply(x, y), z).coords - multiply(x, multiply(y, z)).coords).norm() > 1;
                }
        CHECK(found);
        // one concrete triple
        const auto e1 = unit_element(O, 1), e2 = unit_element(O, 2), e4 = unit_element(O, 4);
        CHECK((multiply(multiply(e1, e2), e4).coords - multiply(e1, multiply(e2, e4)).coords).norm() > 1);
    }

    TEST_CASE("property: unit elements act orthogonally, polarized antisymmetry")
    {
        std::mt19937_64 rng(12);
        for (const char* name : {"C", "H", "O"}) {
            const CompAlgebra A = algebra_by_name(name);
            for (int t = 0; t < 100; ++t) {
                const Mat L = left_mult_operator(element(A, oracle::unit(A.dim, rng)));
                CHECK((L.transpose() * L - Mat::Identity(A.dim, A.dim)).norm() < 1e-12);
                const AlgebraElement x = element(A, rand_vec(A.dim, rng)), y = element(A, rand_vec(A.dim, rng));
                Vec u = oracle::unit(A.dim, rng), w = rand_vec(A.dim, rng);
                w -= w.dot(u) * u;
                w.normalize();
                const auto U = element(A, u), W = element(A, w);
                const double l = multiply(x, U).coords.dot(multiply(y, W).coords);
                const double r = multiply(x, W).coords.dot(multiply(y, U).coords);
                CHECK(l == doctest::Approx(-r).epsilon(1e-9).scale(1.0));
            }
        }
    }

    TEST_CASE("cross product identities on R^{3,4}")
    {
        std::mt19937_64 rng(31);
        const BilinearForm q = cross_form();
        CHECK(signature(q.matrix) == std::make_pair(3, 4));
        double alt = 0, nrm = 0, dcp = 0;
        for (int t = 0; t < 1000; ++t) {
            const Vec u = oracle::unit(7, rng), v = oracle::unit(7, rng);
            alt = std::max(alt, cross_product(u, u).norm());
            const double b = q(u, v);
            nrm = std::max(nrm, std::abs(cross_q(cross_product(u, v)) - (cross_q(u) * cross_q(v) - b * b)));
            const Vec lhs = cross_product(u, cross_product(u, v));
            const Vec rhs = -cross_q(u) * v + b * u;
            dcp = std::max(dcp, (lhs - rhs).norm());
        }
        CHECK(alt < 1e-14);
        CHECK(nrm < 1e-11);
        CHECK(dcp < 1e-11);
        CHECK((cross_matrix(Vec::Unit(7, 0)) * Vec::Unit(7, 1) - cross_product(Vec::Unit(7, 0), Vec::Unit(7, 1))).norm() < 1e-15);
    }

    TEST_CASE("annihilators of null vectors")
    {
        std::mt19937_64 rng(44);
        const BilinearForm q = cross_form();
        for (int t = 0; t < 500; ++t) {
            const Vec x = null_vector(rng);
            const Subspace A = annihilator(x);
            REQUIRE(A.dim() == 3);
            CHECK(isotropy_residual(q, A) < 1e-10);
            CHECK((cross_matrix(x) * A.basis).norm() < 1e-10 * x.norm());
        }
        CHECK_THROWS(annihilator(Vec::Unit(7, 0)));
    }

    TEST_CASE("annihilator graph formula")
    {
        // x = u + z, u unit in the positive 3-space P, z unit negative; Ann(x) contains
        // v + phi(v) for v in P orthogonal to u, phi(v) = -z x (u x v), and x itself.
        std::mt19937_64 rng(45);
        for (int t = 0; t < 50; ++t) {
            Vec u = Vec::Zero(7), z = Vec::Zero(7);
            u.head(3) = oracle::unit(3, rng);
            z.tail(4) = oracle::unit(4, rng);
            const Subspace A = annihilator(u + z);
            Vec v = Vec::Zero(7);
            v.head(3) = oracle::unit(3, rng);
            v -= v.dot(u) * u;
            v.normalize();
            const Vec g = v - cross_product(z, cross_product(u, v));
            Mat m(7, 1);
            m.col(0) = g;
            CHECK(containment_residual(Subspace{m}, A) < 1e-10);
        }
    }

    TEST_CASE("graded basis")
    {
        const RCrossBasis B = r_cross_basis();
        const Mat G = B.gram();
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j)
                if (i + j != 6) CHECK(std::abs(G(i, j)) < 1e-12);
        for (int i = 0; i < 7; ++i) CHECK(std::abs(G(i, 6 - i)) > 0.1);
        CHECK(B.grading_residual() < 1e-12);
        CHECK(cross_product(B.x(3), B.x(2)).norm() < 1e-12);
        CHECK(B.coeff(3, 2) == 0.0);
        // x_1 x x_{-1} is a multiple of x_0
        const Vec p = cross_product(B.x(1), B.x(-1));
        CHECK(std::abs(std::abs(p.normalized().dot(B.x(0).normalized())) - 1) < 1e-12);

        Mat span3(7, 3);
        span3 << B.x(3), B.x(2), B.x(1);
        const Subspace A = annihilator(B.x(3));
        CHECK(containment_residual(A, Subspace{span3}) < 1e-10);
    }
}
