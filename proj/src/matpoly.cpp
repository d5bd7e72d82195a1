#include "polyspec/matpoly.hpp"

#include <algorithm>
#include <cmath>

namespace polyspec {

MatrixPolynomial::MatrixPolynomial(std::vector<ComplexMatrix> c) : coeffs(std::move(c)) {
  if (coeffs.empty()) throw SizeMismatch("polynomial needs at least one coefficient");
  const int n = coeffs.front().rows();
  for (const auto& a : coeffs)
    if (!a.is_square() || a.rows() != n)
      throw SizeMismatch("polynomial coefficients must be square and equally sized");
  if (n < 1) throw SizeMismatch("polynomial coefficients must be nonempty");
}

ComplexMatrix evaluate(const MatrixPolynomial& p, Complex z) {
  const int n = p.order();
  ComplexMatrix acc(n, n);
  // Horner evaluation, highest degree first.
  for (int i = p.degree(); i >= 0; --i) {
    acc = z * acc + p.coeffs[i];
  }
  return acc;
}

bool is_monic(const MatrixPolynomial& p, double tol) {
  const ComplexMatrix& lead = p.coeffs.back();
  const int n = lead.rows();
  double worst = 0.0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const Complex want = (r == c) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      worst = std::max(worst, std::abs(lead(r, c) - want));
    }
  return worst <= tol;
}

CompanionMatrix companion(const MatrixPolynomial& p) {
  if (!is_monic(p)) throw NotMonic("companion matrix requires a monic polynomial");
  const int n = p.order();
  const int m = p.degree();
  if (m < 1) throw OrderTooSmall("companion matrix requires degree >= 1");

  CompanionMatrix c;
  c.block_order = n;
  c.block_degree = m;
  c.matrix = ComplexMatrix(m * n, m * n);
  for (int b = 0; b + 1 < m; ++b)
    for (int i = 0; i < n; ++i) c.matrix(b * n + i, (b + 1) * n + i) = 1.0;
  for (int b = 0; b < m; ++b)
    for (int r = 0; r < n; ++r)
      for (int col = 0; col < n; ++col)
        c.matrix((m - 1) * n + r, b * n + col) = -p.coeffs[b](r, col);
  return c;
}

Spectrum polynomial_spectrum(const MatrixPolynomial& p, const EigenOptions& opts) {
  const int n = p.order();
  const int m = p.degree();
  if (m < 1) throw OrderTooSmall("spectrum requires degree >= 1");

  MatrixPolynomial monic = p;
  if (!is_monic(p)) {
    ComplexMatrix lead_inv;
    try {
      lead_inv = inverse(p.coeffs.back());
    } catch (const SingularMatrix&) {
      throw SingularLeadingCoefficient(
          "leading coefficient is singular to working precision");
    }
    for (int i = 0; i < m; ++i) monic.coeffs[i] = lead_inv * p.coeffs[i];
    monic.coeffs[m] = ComplexMatrix::identity(n);
  }

  const CompanionMatrix c = companion(monic);
  EigenResult eig = eigenvalues(c.matrix, opts);
  Spectrum s;
  s.values = std::move(eig.eigenvalues);
  s.expected_size = m * n;
  return s;
}

double tuple_matrix_p_norm(std::span<const ComplexMatrix> tuple, const PNorm& p) {
  return matrix_p_norm(hconcat(tuple), p);
}

double tuple_operator_p_norm(std::span<const ComplexMatrix> tuple, const PNorm& p) {
  return operator_p_norm(hconcat(tuple), p);
}

std::vector<ComplexMatrix> coefficient_differences(const MatrixPolynomial& p,
                                                   const MatrixPolynomial& q) {
  if (p.order() != q.order() || p.degree() != q.degree())
    throw SizeMismatch("polynomials differ in order or degree");
  std::vector<ComplexMatrix> out;
  out.reserve(p.coeffs.size());
  for (size_t i = 0; i < p.coeffs.size(); ++i) out.push_back(p.coeffs[i] - q.coeffs[i]);
  return out;
}

bool companion_is_normal_predicate(const MatrixPolynomial& p, double tol) {
  if (p.degree() < 1) return false;
  if (!is_unitary(p.coeffs.front(), tol)) return false;
  for (int i = 1; i < p.degree(); ++i)
    if (matrix_p_norm(p.coeffs[i], PNorm::infinity()) > tol) return false;
  return true;
}

double cauchy_eigenvalue_bound(const MatrixPolynomial& p) {
  const int m = p.degree();
  if (m < 1) throw OrderTooSmall("eigenvalue bound requires degree >= 1");
  ComplexMatrix lead_inv;
  try {
    lead_inv = inverse(p.coeffs.back());
  } catch (const SingularMatrix&) {
    throw SingularLeadingCoefficient(
        "leading coefficient is singular to working precision");
  }
  double worst = 0.0;
  for (int i = 0; i < m; ++i)
    worst = std::max(worst, operator_p_norm(p.coeffs[i], PNorm::finite(1.0)));
  return 1.0 + operator_p_norm(lead_inv, PNorm::finite(1.0)) * worst;
}

namespace {

std::vector<Complex> convolve(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> out(a.size() + b.size() - 1, Complex(0.0, 0.0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<Complex> entry_poly(const MatrixPolynomial& p, int r, int c) {
  std::vector<Complex> out(p.coeffs.size());
  for (size_t i = 0; i < p.coeffs.size(); ++i) out[i] = p.coeffs[i](r, c);
  return out;
}

}  // namespace

std::vector<Complex> char_poly_oracle(const MatrixPolynomial& p) {
  const int n = p.order();
  const int m = p.degree();
  if (n > 2 || m > 3)
    throw OracleSizeExceeded("determinant expansion oracle is limited to n <= 2, m <= 3");
  if (n == 1) return entry_poly(p, 0, 0);
  std::vector<Complex> det =
      convolve(entry_poly(p, 0, 0), entry_poly(p, 1, 1));
  const std::vector<Complex> off =
      convolve(entry_poly(p, 0, 1), entry_poly(p, 1, 0));
  for (size_t i = 0; i < det.size(); ++i) det[i] -= off[i];
  return det;
}

Spectrum oracle_spectrum(const MatrixPolynomial& p) {
  std::vector<Complex> coeffs = char_poly_oracle(p);
  double biggest = 0.0;
  for (Complex c : coeffs) biggest = std::max(biggest, std::abs(c));
  if (biggest == 0.0) throw SingularLeadingCoefficient("determinant is identically zero");
  while (coeffs.size() > 1 && std::abs(coeffs.back()) <= 1e-14 * biggest)
    coeffs.pop_back();
  const int deg = static_cast<int>(coeffs.size()) - 1;
  if (deg < 1) {
    Spectrum empty;
    empty.expected_size = 0;
    return empty;
  }

  // Scalar companion of the monicized polynomial.
  const Complex lead = coeffs.back();
  ComplexMatrix comp(deg, deg);
  for (int i = 0; i + 1 < deg; ++i) comp(i, i + 1) = 1.0;
  for (int j = 0; j < deg; ++j) comp(deg - 1, j) = -coeffs[j] / lead;

  EigenResult eig = eigenvalues(comp);
  Spectrum s;
  s.values = std::move(eig.eigenvalues);
  s.expected_size = deg;
  return s;
}

}  // namespace polyspec
