#include "doctest.h"
#include "oracles.hpp"

#include "flagtrans/clifford.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>

using namespace flagtrans;

namespace {

// Anticommutators straight from dense matrices.
double dense_relation_residual(const CliffordRep& rep)
{
    double worst = 0;
    for (int i = 0; i < rep.n; ++i)
        for (int j = i; j < rep.n; ++j) {
            const Mat a = rep.generator_dense(i), b = rep.generator_dense(j);
            Mat r = a * b + b * a;
            if (i == j) r += 2.0 * Mat::Identity(rep.D, rep.D);
            worst = std::max(worst, r.cwiseAbs().maxCoeff());
        }
    return worst;
}

std::vector<std::complex<double>> sorted_spectrum(const Mat& m)
{
    Eigen::EigenSolver<Mat> es(m);
    std::vector<std::complex<double>> ev(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
    std::sort(ev.begin(), ev.end(), [](auto a, auto b) {
        return std::abs(a.real() - b.real()) > 1e-9 ? a.real() < b.real() : a.imag() < b.imag();
    });
    return ev;
}

}  // namespace

TEST_SUITE("clifford")
{
    TEST_CASE("radon-hurwitz examples and oracle")
    {
        CHECK(radon_hurwitz(16) == 9);
        CHECK(radon_hurwitz(1) == 1);
        CHECK(radon_hurwitz(12) == 4);
        CHECK_THROWS(radon_hurwitz(0));
        for (int d = 1; d <= 1024; ++d) CHECK(radon_hurwitz(d) == oracle::rho(d));
    }

    TEST_CASE("spinor dimensions")
    {
        CHECK(spinor_dim(4) == 4);
        CHECK(spinor_dim(9) == 16);
        CHECK_THROWS(spinor_dim(0));
        for (int n = 1; n <= 40; ++n) {
            CHECK(spinor_dim(n) == oracle::spinor_dim(n));
            CHECK(radon_hurwitz(spinor_dim(n)) >= n);
        }
    }

    TEST_CASE("maximality residues and the K-theory table")
    {
        CHECK(maximality_class(4));
        CHECK_FALSE(maximality_class(7));
        CHECK(maximality_class(12));
        CHECK_THROWS(maximality_class(1));
        // rows copied from the published table: (M_n, quotient, KO, pi)
        const char* rows[8][4] = {{"Z", "Z", "Z", "Z"},   {"Z", "Z2", "Z2", "Z2"}, {"Z", "Z2", "Z2", "Z2"},
                                  {"Z+Z", "0", "0", "0"}, {"Z", "Z", "Z", "Z"},    {"Z", "0", "0", "0"},
                                  {"Z", "0", "0", "0"},   {"Z+Z", "0", "0", "0"}};
        for (int n = 0; n < 24; ++n) {
            const auto r = grothendieck_row(n);
            CHECK(r.residue == n % 8);
            CHECK(r.M_n == rows[n % 8][0]);
            CHECK(r.quotient == rows[n % 8][1]);
            CHECK(r.KO_tilde == rows[n % 8][2]);
            CHECK(r.stable_pi == rows[n % 8][3]);
            // the maximal residues are exactly the ones with a nonzero quotient
            if (n >= 2) CHECK(maximality_class(n) == (r.quotient != "0"));
        }
    }

    TEST_CASE("small models")
    {
        const CliffordRep c1 = clifford_model(1);
        CHECK(c1.D == 2);
        Mat rot(2, 2);
        rot << 0, -1, 1, 0;
        CHECK((c1.generator_dense(0) - rot).norm() == 0);
        CHECK(clifford_model(3).D == 4);
        const CliffordRep c9 = clifford_model(9);
        CHECK(c9.D == 32);
        CHECK(clifford_relation_residual(c9) < 1e-12);
        CHECK_THROWS(clifford_model(0));
        CHECK_THROWS(clifford_model(kCliffordMax + 1));
    }

    TEST_CASE("relation checked on dense matrices")
    {
        for (int n = 1; n <= 12; ++n) {
            const CliffordRep rep = clifford_model(n);
            CAPTURE(n);
            CHECK(dense_relation_residual(rep) < 1e-12);
            CHECK(clifford_relation_residual(rep) < 1e-12);
            CHECK(spin_metric_check(rep) < 1e-12);
        }
    }

    TEST_CASE("spin metric detector notices a perturbation")
    {
        const CliffordRep rep = clifford_model(4);
        std::vector<Mat> gens;
        for (int i = 0; i < rep.n; ++i) gens.push_back(rep.generator_dense(i));
        const Mat G = Mat::Identity(rep.D, rep.D);
        CHECK(spin_metric_check(gens, G) < 1e-14);
        gens[2](0, 1) += 1e-3;
        const double r = spin_metric_check(gens, G);
        CHECK(r > 5e-4);
        CHECK(r < 5e-3);
    }

    TEST_CASE("generated algebra dimension")
    {
        // Cl(n) has dimension 2^n; for n = 3 mod 4 it splits as A + A and an irreducible module sees one half.
        for (int n = 1; n <= 8; ++n) {
            const CliffordRep rep = clifford_model(n);
            Mat prods(rep.D * rep.D, 1 << n);
            for (int mask = 0; mask < (1 << n); ++mask) {
                Mat m = Mat::Identity(rep.D, rep.D);
                for (int i = 0; i < n; ++i)
                    if (mask >> i & 1) m = m * rep.generator_dense(i);
                prods.col(mask) = Eigen::Map<Vec>(m.data(), rep.D * rep.D);
            }
            const int expect = (n % 4 == 3) ? (1 << (n - 1)) : (1 << n);
            CAPTURE(n);
            CHECK(oracle::rank(prods) == expect);
        }
    }

    TEST_CASE("property: apply, square, inner products")
    {
        std::mt19937_64 rng(2);
        for (int n : {2, 3, 5, 8, 10}) {
            const CliffordRep rep = clifford_model(n);
            for (int t = 0; t < 50; ++t) {
                const Vec v = oracle::unit(n, rng), x = oracle::unit(n, rng), y = oracle::unit(n, rng);
                const Vec w = oracle::gaussian(rep.D, 1, rng).col(0);
                CHECK((clifford_apply(rep, Vec::Unit(n, 0), w) - rep.generator_dense(0) * w).norm() < 1e-12);
                CHECK((clifford_apply(rep, v, clifford_apply(rep, v, w)) + w).norm() < 1e-11);
                CHECK(clifford_apply(rep, x, w).dot(clifford_apply(rep, y, w)) ==
                      doctest::Approx(x.dot(y) * w.squaredNorm()));
                Vec u = oracle::gaussian(rep.D, 1, rng).col(0);
                u -= u.dot(w) / w.squaredNorm() * w;
                const double l = clifford_apply(rep, x, w).dot(clifford_apply(rep, y, u));
                const double r = clifford_apply(rep, y, w).dot(clifford_apply(rep, x, u));
                CHECK(l == doctest::Approx(-r).scale(1.0));
            }
        }
    }

    TEST_CASE("spinor submodules")
    {
        const SpinorModule s4 = spin_submodule(4);
        CHECK(s4.plus_dim() == 4);
        CHECK(s4.parent.D == 8);
        const SpinorModule s3 = spin_submodule(3);
        CHECK(s3.plus_dim() == 4);
        CHECK(s3.parent.D == 4);
        for (int n = 1; n <= 24; ++n) CHECK(spin_submodule(n).plus_dim() == spinor_dim(n));

        std::mt19937_64 rng(6);
        for (int n : {4, 5, 8, 9, 12}) {
            const SpinorModule sm = spin_submodule(n);
            const Mat P = sm.projector();
            CHECK((P * P - P).norm() < 1e-12);
            CHECK((P - P.transpose()).norm() < 1e-12);
            std::uniform_int_distribution<int> pick(0, n - 1);
            double worst = 0;
            for (int t = 0; t < 100; ++t) {
                const Mat e = sm.parent.generator_dense(pick(rng)) * sm.parent.generator_dense(pick(rng));
                worst = std::max(worst, (e * P - P * e).norm());
            }
            CHECK(worst < 1e-11);
            if (n % 8 == 0 || n % 8 == 4) {
                const SpinorModule minus = spin_submodule(n, false);
                CHECK(minus.plus_dim() == sm.plus_dim());
                CHECK((minus.projector() * P).norm() < 1e-12);
            }
        }
    }

    TEST_CASE("sphere to spin operators")
    {
        std::mt19937_64 rng(9);
        for (int n : {3, 4, 6, 9}) {
            const SpinorModule sm = spin_submodule(n);
            const Vec x0 = Vec::Unit(n, 0);
            CHECK((sphere_to_spin_op(sm, x0, Vec(-x0)) - Mat::Identity(sm.plus_dim(), sm.plus_dim())).norm() < 1e-12);
            CHECK((sphere_to_spin_op(sm, x0, x0) + Mat::Identity(sm.plus_dim(), sm.plus_dim())).norm() < 1e-12);
            for (int t = 0; t < 20; ++t) {
                const Mat f = sphere_to_spin_op(sm, oracle::unit(n, rng));
                CHECK((f.transpose() * f - Mat::Identity(f.rows(), f.rows())).norm() < 1e-11);
            }
        }
        CHECK_THROWS(sphere_to_spin_op(spin_submodule(3), Vec::Unit(3, 0), Vec(2 * Vec::Unit(3, 1))));

        // n = 3: same spectrum as left multiplication by the quaternion x0 x
        const SpinorModule s3 = spin_submodule(3);
        for (int t = 0; t < 20; ++t) {
            const Vec x = oracle::unit(3, rng);
            Vec q0(4), q(4);
            q0 << 0, 1, 0, 0;
            q << 0, x(0), x(1), x(2);
            const Vec prod = oracle::hamilton(q0, q);
            Mat L(4, 4);
            for (int j = 0; j < 4; ++j) L.col(j) = oracle::hamilton(prod, Vec::Unit(4, j));
            const auto a = sorted_spectrum(sphere_to_spin_op(s3, x));
            const auto b = sorted_spectrum(L);
            for (int i = 0; i < 4; ++i) CHECK(std::abs(a[static_cast<size_t>(i)] - b[static_cast<size_t>(i)]) < 1e-9);
        }
    }

    TEST_CASE("z2 gradings")
    {
        const CliffordRep c2 = clifford_model(2);
        const Grading g2 = z2_grading(c2);
        Mat w0(4, 2);
        w0 << 1, 0, 0, 0, 0, 0, 0, 1;  // span{1, k}
        CHECK(containment_residual(g2.W0, Subspace{w0}) < 1e-14);
        CHECK(g2.W1.dim() == 2);

        const CliffordRep c4 = clifford_model(4);
        const Grading g4 = z2_grading(c4);
        CHECK(containment_residual(g4.W0, Subspace{Mat::Identity(8, 8).leftCols(4)}) < 1e-14);

        for (int n : {1, 2, 4, 8, 9, 10, 12, 16, 17, 18}) {
            const CliffordRep rep = clifford_model(n);
            CAPTURE(n);
            CHECK(grading_exchange_residual(rep, z2_grading(rep)) < 1e-12);
        }
        CHECK_THROWS(z2_grading(clifford_model(3)));
        CHECK_THROWS(z2_grading(clifford_model(6)));
    }
}
