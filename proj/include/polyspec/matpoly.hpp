#pragma once

/*
 * Matrix polynomials P(z) = A_m z^m + ... + A_1 z + A_0 with square complex
 * coefficients, their block companion linearization, and the norms used to
 * compare coefficient tuples.
 *
 * The companion matrix of a monic P is the mn x mn block matrix with
 * identity blocks on the superdiagonal and (-A_0, -A_1, ..., -A_{m-1}) as
 * the last block row; its eigenvalue multiset equals the spectrum of P.
 */

#include <span>
#include <vector>

#include "polyspec/linalg.hpp"

namespace polyspec {

// Coefficients stored lowest degree first: coeffs[i] = A_i.
struct MatrixPolynomial {
  std::vector<ComplexMatrix> coeffs;

  MatrixPolynomial() = default;
  explicit MatrixPolynomial(std::vector<ComplexMatrix> c);

  int order() const { return coeffs.empty() ? 0 : coeffs.front().rows(); }  // n
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }        // m
};

// Eigenvalue multiset of a polynomial (or matrix); expected_size = m*n.
struct Spectrum {
  std::vector<Complex> values;
  int expected_size = 0;
};

// Companion linearization of a monic polynomial; block_order = n,
// block_degree = m, matrix is mn x mn.
struct CompanionMatrix {
  ComplexMatrix matrix;
  int block_order = 0;
  int block_degree = 0;
};

ComplexMatrix evaluate(const MatrixPolynomial& p, Complex z);

// A_m = I within an entrywise tolerance.
bool is_monic(const MatrixPolynomial& p, double tol = 1e-12);

// Throws NotMonic unless is_monic(p).  Entries are copied exactly; no
// floating arithmetic is performed.
CompanionMatrix companion(const MatrixPolynomial& p);

// Spectrum via companion linearization.  Non-monic polynomials are
// monicized by left multiplication with the inverse leading coefficient;
// a leading coefficient singular to working precision raises
// SingularLeadingCoefficient.
Spectrum polynomial_spectrum(const MatrixPolynomial& p, const EigenOptions& opts = {});

// Entrywise tuple norm: (sum_i |T_i|_p^p)^(1/p) for finite p, max_i |T_i|_inf
// for p = inf.  Computed as the entrywise norm of the block row
// [T_0 T_1 ... T_{k-1}] so that sums match the companion-difference norm
// floating operation for floating operation.
double tuple_matrix_p_norm(std::span<const ComplexMatrix> tuple, const PNorm& p);

// Induced tuple norm: operator p-norm of the block row [T_0 ... T_{k-1}].
// p in {1, 2, inf}.
double tuple_operator_p_norm(std::span<const ComplexMatrix> tuple, const PNorm& p);

// coefficient differences A_i - B_i for i = 0..count-1 (count defaults to
// all shared coefficients).
std::vector<ComplexMatrix> coefficient_differences(const MatrixPolynomial& p,
                                                   const MatrixPolynomial& q);

// True iff A_0 is unitary and A_1, ..., A_{m-1} all vanish at tol; the
// sufficient condition for the companion matrix to be normal.
bool companion_is_normal_predicate(const MatrixPolynomial& p, double tol = 1e-9);

// Radius R = 1 + |A_m^{-1}|_1 * max_{i<m} |A_i|_1 (induced 1-norms); every
// eigenvalue of P satisfies |lambda| < R.
double cauchy_eigenvalue_bound(const MatrixPolynomial& p);

// Scalar coefficients of det(P(z)), lowest degree first, by explicit
// determinant expansion.  Only for n <= 2 and m <= 3 (OracleSizeExceeded
// otherwise); serves as an independent cross-check of the companion path.
std::vector<Complex> char_poly_oracle(const MatrixPolynomial& p);

// Roots of char_poly_oracle(p) via the scalar companion matrix.
Spectrum oracle_spectrum(const MatrixPolynomial& p);

}  // namespace polyspec
