#pragma once

#include "flagtrans/forms.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace flagtrans {

// Real composition algebra built by repeated (split) Cayley-Dickson doubling.
// tower[k] is the epsilon used at step k; +1 is the split doubling.
struct CompAlgebra {
    std::vector<int> tower;
    int dim = 1;
    std::vector<int> form_signs;  // norm is sum form_signs[i] * x_i^2
    std::string name;

    std::pair<int, int> form_signature() const;
};

CompAlgebra build_algebra(const std::vector<int>& tower);
// "R", "C", "C'", "H", "H'", "O", "O'"
CompAlgebra algebra_by_name(const std::string& name);

struct AlgebraElement {
    std::vector<int> tower;
    Vec coords;
};

AlgebraElement element(const CompAlgebra& A, Vec coords);
AlgebraElement unit_element(const CompAlgebra& A, int index);

// Raw recursion on coordinate vectors.
Vec cd_multiply(const std::vector<int>& tower, const Vec& x, const Vec& y);
Vec cd_conjugate(const Vec& x);

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement conjugate(const AlgebraElement& x);
double norm(const AlgebraElement& x);  // q(x) = Re(x x*), may be negative in split algebras

Mat left_mult_operator(const AlgebraElement& x);
Mat right_mult_operator(const AlgebraElement& x);

// Im(O') with coordinates 1..7 of O', signs (+,+,+,-,-,-,-).
BilinearForm cross_form();
Vec cross_product(const Vec& u, const Vec& v);
Mat cross_matrix(const Vec& x);  // y -> x cross y
double cross_q(const Vec& u);    // quadratic form on R^{3,4}

Subspace annihilator(const Vec& x, double tol = 1e-10);

// Weight basis x_3..x_{-3} of R^{3,4}; vectors[k+3] is x_k.
struct RCrossBasis {
    std::array<Vec, 7> vectors;
    // c[i+3][j+3] with x_i x x_j = c_ij x_{i+j}; zero when |i+j| > 3.
    std::array<std::array<double, 7>, 7> c{};

    const Vec& x(int k) const { return vectors[static_cast<size_t>(k + 3)]; }
    double coeff(int i, int j) const { return c[static_cast<size_t>(i + 3)][static_cast<size_t>(j + 3)]; }
    Mat gram() const;
    // Largest deviation of x_i x x_j from c_ij x_{i+j}.
    double grading_residual() const;
};

RCrossBasis r_cross_basis();

}  // namespace flagtrans
