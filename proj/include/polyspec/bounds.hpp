#pragma once

/*
 * Spectral-variation bound checks.  Every check evaluates one inequality
 * lhs <= rhs on concrete inputs and reports the outcome together with the
 * constants that went into the right-hand side.
 *
 * Conventions shared by all checks:
 *   - holds means lhs <= rhs + 1e-9 * max(1, rhs)
 *   - hypothesis failures are recorded, never fatal; callers that want
 *     enforcement inspect hypotheses_met (CLI --strict)
 *   - constants keyed "sub_..." are secondary assertions (0 = failed,
 *     1 = held) that are expected to hold whenever the hypotheses do;
 *     keys "info_..." are purely informational
 */

#include <map>
#include <string>
#include <vector>

#include "polyspec/matching.hpp"
#include "polyspec/matpoly.hpp"

namespace polyspec {

inline constexpr double kHoldsSlack = 1e-9;

struct BoundReport {
  std::string bound_id;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
  double slack_ratio = 0.0;  // lhs / rhs, 0 when both vanish
  std::map<std::string, double> constants;
  bool hypotheses_met = true;
  std::vector<std::string> failed_hypotheses;

  void fail_hypothesis(const std::string& name);
  bool subassertions_ok() const;
};

// Spectrum of a plain matrix (the degree-1 monic pencil z*I - A).
Spectrum matrix_spectrum(const ComplexMatrix& a, const EigenOptions& opts = {});

// gamma(k) = (2/k) * sum_{j=1}^{floor(k/2)} cot((2j-1) pi / (2k));
// gamma(1) = 0, gamma(2) = 1, gamma(4) = sqrt(2).
double pokrzywa_gamma(int k);

// k for odd k, k-1 for even k.
int elsner_constant(int k);

// Checks gamma(k) <= log2(k) + 0.038.
BoundReport gamma_bounds_check(int k);

// Frobenius matching distance vs |A - B|_F for normal pairs.
BoundReport check_hoffman_wielandt(const ComplexMatrix& a, const ComplexMatrix& b);

// Same inequality lifted to monic polynomials with normal companions:
// dist_F vs entrywise tuple 2-norm of the coefficient differences.
BoundReport check_polynomial_hoffman_wielandt(const MatrixPolynomial& p,
                                              const MatrixPolynomial& q);

// Matching distance vs (2n-1) |A - B|_2 for normal A, arbitrary B.
BoundReport check_normal_vs_arbitrary(const ComplexMatrix& a, const ComplexMatrix& b);

// Matching distance vs (gamma(n) + 2) |A - B|_p for hermitian A.
BoundReport check_kahan(const ComplexMatrix& a, const ComplexMatrix& b, const PNorm& p);

// Universal-constant form for normal-companion polynomials: gates the inner
// inequality |[D_0 ... D_{m-1}]|_p <= sum_i |D_i|_p and reports the
// empirical ratio dist / |[D_0 ... D_{m-1}]|_p in the constants.
BoundReport check_polynomial_universal(const MatrixPolynomial& p,
                                       const MatrixPolynomial& q, const PNorm& norm);

// Matching distance vs (2mn-1) |A_0 - B_0|_p for polynomials of shape
// z^m I + A_0 with unitary constant term.
BoundReport check_unitary_2mn(const MatrixPolynomial& p, const MatrixPolynomial& q,
                              const PNorm& norm);

// Matching distance vs (gamma(mn) + 2) * tuple operator norm, for monic P
// with hermitian companion.
BoundReport check_polynomial_kahan(const MatrixPolynomial& p, const MatrixPolynomial& q,
                                   const PNorm& norm);

// Hoelder-type bound for arbitrary pairs of order k:
// dist <= c(k) k^{1/k} (2M)^{1-1/k} |A - B|_p^{1/k}, M = max of the norms.
BoundReport check_elsner(const ComplexMatrix& a, const ComplexMatrix& b,
                         const PNorm& norm);

// Elsner bound pushed through the companion linearization for monic pairs
// whose coefficient tuples have entrywise p-norm at most cap; checks the
// companion-norm majorant M' as a secondary assertion.
BoundReport check_nbounded(const MatrixPolynomial& p, const MatrixPolynomial& q,
                           const PNorm& norm, double cap);

// |det A - det B| <= n max(|A|_p, |B|_p)^{n-1} |A - B|_p.
BoundReport check_det_perturbation(const ComplexMatrix& a, const ComplexMatrix& b,
                                   const PNorm& norm);

// Perturbation bound for non-monic polynomials inside the invertibility
// ball around a reference abar (induced 1-norms throughout).  Also
// evaluates the eigenvalue localization |lambda| < 2 + t as a secondary
// assertion and reports the intermediate root-product inequality both as
// written and with the leading determinant factored in.
BoundReport check_nonmonic_ball(const MatrixPolynomial& p, const MatrixPolynomial& q,
                                const MatrixPolynomial& abar);

// |x* A y|^2 <= ((a-b)/(a+b))^2 (x* A x)(y* A y) for hermitian A with
// spectrum in [b, a], 0 < b <= a, and orthonormal x, y (n x 1 columns).
BoundReport check_wielandt_scalar(const ComplexMatrix& a, double upper, double lower,
                                  const ComplexMatrix& x, const ComplexMatrix& y);

// Polynomial version: |x* P(lambda) y|^2 vs
// ((a-b)/(a+b))^2 (x* P(|lambda|) x)(y* P(|lambda|) y) with every
// coefficient hermitian with spectrum in [b, a].
BoundReport check_wielandt_polynomial(const MatrixPolynomial& p, double upper,
                                      double lower, const ComplexMatrix& x,
                                      const ComplexMatrix& y, Complex lambda);

}  // namespace polyspec
