#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace flagtrans {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

struct Tolerances {
    double det = 1e-9;
    double rank = 1e-10;
    double residual = 1e-10;
};

enum class FormConvention { Diagonal, Antidiagonal, BSplit, Custom };

std::string to_string(FormConvention c);
FormConvention form_convention_from_string(const std::string& s);

struct BilinearForm {
    int p = 0;
    int q = 0;
    FormConvention convention = FormConvention::Diagonal;
    Mat matrix;

    int dim() const { return p + q; }
    double operator()(const Vec& u, const Vec& w) const { return u.dot(matrix * w); }
};

BilinearForm make_form(int p, int q, FormConvention convention);

// Block sum. Tagged Diagonal only when the result is diag(+1..,-1..).
BilinearForm direct_sum(const BilinearForm& a, const BilinearForm& b);

// The same space with the form negated, signature swapped.
BilinearForm negated(const BilinearForm& f);

// Count of positive / negative eigenvalues of a symmetric matrix.
std::pair<int, int> signature(const Mat& sym, double tol = 1e-10);

struct Subspace {
    Mat basis;  // columns span the subspace

    int ambient_dim() const { return static_cast<int>(basis.rows()); }
    int dim() const { return static_cast<int>(basis.cols()); }
};

Subspace make_subspace(Mat basis, double rank_tol = 1e-10);
Subspace zero_subspace(int ambient);
Subspace full_subspace(int ambient);

Mat gram(const BilinearForm& form, const Subspace& U, const Subspace& W);

// Euclidean orthonormal basis of the column span (thin QR, positive R diagonal).
Mat orthonormal_basis(const Mat& basis);

// det of the Gram matrix between Euclidean-orthonormal bases of U and W.
// Basis independent up to sign; bounded by ||S||^k, which is 1 for every form built here.
double pairing_margin(const BilinearForm& form, const Subspace& U, const Subspace& W);

// Smallest singular value of that Gram matrix. Unlike the det it does not shrink
// like a k-th power when several directions are only mildly tilted.
double pairing_strength(const BilinearForm& form, const Subspace& U, const Subspace& W);

// pairing_strength > tol.det
bool pairing_nondegenerate(const BilinearForm& form, const Subspace& U, const Subspace& W,
                           const Tolerances& tol = {});

std::vector<double> leading_minors(const Mat& M);

int span_rank(const std::vector<Vec>& vectors, double tol = 1e-10);
int span_rank(const Mat& columns, double tol = 1e-10);

std::vector<Vec> orthonormalize(const BilinearForm& form, const std::vector<Vec>& vectors,
                                const std::vector<int>& expected_signs, const Tolerances& tol = {});

// Form-orthogonal complement {v : <u, v> = 0 for all u in U}.
Subspace orthogonal_complement(const BilinearForm& form, const Subspace& U, double rank_tol = 1e-10);

Subspace subspace_sum(const Subspace& U, const Subspace& W, double rank_tol = 1e-10);

// Largest Euclidean residual of U's orthonormal basis after projection onto span(W).
double containment_residual(const Subspace& U, const Subspace& W);

// Largest principal angle between equal-dimensional subspaces.
double principal_angle_distance(const Subspace& U, const Subspace& W);

// Max |<u_i, u_j>| over an orthonormal basis of U.
double isotropy_residual(const BilinearForm& form, const Subspace& U);

}  // namespace flagtrans
