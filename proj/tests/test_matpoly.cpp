#include <cmath>
#include <span>
#include <vector>

#include "doctest.h"
#include "polyspec/genlab.hpp"
#include "polyspec/matpoly.hpp"
#include "test_helpers.hpp"

using namespace polyspec;
using namespace polyspec::testing;

namespace {

MatrixPolynomial monic(std::vector<ComplexMatrix> lower, int n) {
  lower.push_back(ComplexMatrix::identity(n));
  return MatrixPolynomial(std::move(lower));
}

std::span<const ComplexMatrix> drop_leading(const MatrixPolynomial& p) {
  return std::span<const ComplexMatrix>(p.coeffs.data(), p.coeffs.size() - 1);
}

}  // namespace

TEST_CASE("companion block layout is exact") {
  const ComplexMatrix a0 = mk(2, 2, {1.0, 2.0, 3.0, 4.0});
  const ComplexMatrix a1 = mk(2, 2, {5.0, 6.0, 7.0, 8.0});
  const MatrixPolynomial p = monic({a0, a1}, 2);
  const CompanionMatrix c = companion(p);
  CHECK(c.block_order == 2);
  CHECK(c.block_degree == 2);
  REQUIRE(c.matrix.rows() == 4);
  REQUIRE(c.matrix.cols() == 4);

  // top block row: [0 I]
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(c.matrix(i, j) == Complex(0.0));
      CHECK(c.matrix(i, 2 + j) == (i == j ? Complex(1.0) : Complex(0.0)));
    }
  // bottom block row: [-A_0 -A_1]
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(c.matrix(2 + i, j) == -a0(i, j));
      CHECK(c.matrix(2 + i, 2 + j) == -a1(i, j));
    }
}

TEST_CASE("companion requires a monic polynomial") {
  const MatrixPolynomial p({diag({1.0, 1.0}), diag({2.0, 2.0})});
  CHECK_THROWS_AS(companion(p), NotMonic);
  CHECK_FALSE(is_monic(p));
  CHECK(is_monic(monic({diag({1.0, 1.0})}, 2)));
}

TEST_CASE("spectrum of I z^2 - I is plus and minus one, twice each") {
  const MatrixPolynomial p =
      monic({diag({-1.0, -1.0}), ComplexMatrix(2, 2)}, 2);
  const Spectrum s = polynomial_spectrum(p);
  CHECK(s.expected_size == 4);
  CHECK(spectrum_gap(s, {1.0, 1.0, -1.0, -1.0}) <= 1e-9);
}

TEST_CASE("evaluate") {
  const MatrixPolynomial p = monic({diag({-1.0, -1.0}), ComplexMatrix(2, 2)}, 2);
  const ComplexMatrix at2 = evaluate(p, Complex(2.0));
  CHECK(std::abs(at2(0, 0) - Complex(3.0)) <= 1e-15);
  CHECK(std::abs(at2(1, 1) - Complex(3.0)) <= 1e-15);
  CHECK(std::abs(at2(0, 1)) <= 1e-15);
}

TEST_CASE("tuple entrywise norm of two identities") {
  const std::vector<ComplexMatrix> tuple = {ComplexMatrix::identity(2),
                                            ComplexMatrix::identity(2)};
  CHECK(tuple_matrix_p_norm(tuple, PNorm::finite(2.0)) ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK(tuple_matrix_p_norm(tuple, PNorm::finite(1.0)) ==
        doctest::Approx(4.0).epsilon(1e-15));
  CHECK(tuple_matrix_p_norm(tuple, PNorm::infinity()) ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("tuple norms equal companion difference norms") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 1 + static_cast<int>(seed % 4);
    const int m = 1 + static_cast<int>((seed / 4) % 4);
    const MatrixPolynomial p = gen_monic_arbitrary(n, m, derive_seed(5000, 2 * seed));
    const MatrixPolynomial q =
        gen_monic_arbitrary(n, m, derive_seed(5000, 2 * seed + 1));
    const ComplexMatrix cdiff = companion(p).matrix - companion(q).matrix;
    const std::vector<ComplexMatrix> diffs = coefficient_differences(p, q);
    const std::span<const ComplexMatrix> lower(diffs.data(), diffs.size() - 1);

    // entrywise norms agree bitwise: same sums in the same order
    for (const PNorm& pn : {PNorm::finite(1.0), PNorm::finite(2.0),
                            PNorm::finite(3.0), PNorm::infinity()}) {
      CHECK(tuple_matrix_p_norm(lower, pn) == matrix_p_norm(cdiff, pn));
    }
    // induced norms agree to rounding, and bitwise for p = 1
    CHECK(tuple_operator_p_norm(lower, PNorm::finite(1.0)) ==
          operator_p_norm(cdiff, PNorm::finite(1.0)));
    for (const PNorm& pn : {PNorm::finite(2.0), PNorm::infinity()}) {
      const double lhs = tuple_operator_p_norm(lower, pn);
      const double rhs = operator_p_norm(cdiff, pn);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + rhs));
    }
  }
}

TEST_CASE("companion norm identities") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 1 + static_cast<int>(seed % 3);
    const int m = 2 + static_cast<int>((seed / 3) % 3);
    const MatrixPolynomial p = gen_monic_arbitrary(n, m, derive_seed(6000, seed));
    const ComplexMatrix cm = companion(p).matrix;
    const auto lower = drop_leading(p);

    for (double pv : {1.0, 2.0, 3.0}) {
      const PNorm pn = PNorm::finite(pv);
      const double cn = matrix_p_norm(cm, pn);
      const double tn = tuple_matrix_p_norm(lower, pn);
      const double expected = std::pow(tn, pv) + (m - 1) * n;
      CHECK(std::pow(cn, pv) == doctest::Approx(expected).epsilon(1e-12));
    }
    const double cinf = matrix_p_norm(cm, PNorm::infinity());
    const double tinf = tuple_matrix_p_norm(lower, PNorm::infinity());
    CHECK(cinf == doctest::Approx(std::max(tinf, 1.0)).epsilon(1e-15));
  }
}

TEST_CASE("operator norm dominated by entrywise norm combinations") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ComplexMatrix a = gen_arbitrary(6, derive_seed(6100, seed));
    CHECK(operator_p_norm(a, PNorm::finite(2.0)) <=
          matrix_p_norm(a, PNorm::finite(2.0)) + 1e-12);
    CHECK(operator_p_norm(a, PNorm::finite(1.0)) <=
          matrix_p_norm(a, PNorm::finite(1.0)) + 1e-12);
    CHECK(operator_p_norm(a, PNorm::infinity()) <=
          6.0 * matrix_p_norm(a, PNorm::infinity()) + 1e-12);
  }
}

TEST_CASE("spectrum solves det P = 0") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 2;
    const int m = 2;
    const MatrixPolynomial p = gen_monic_arbitrary(n, m, derive_seed(6200, seed));
    const Spectrum s = polynomial_spectrum(p);
    REQUIRE(static_cast<int>(s.values.size()) == m * n);
    double scale = 1.0;
    for (const ComplexMatrix& c : p.coeffs)
      scale *= std::max(1.0, matrix_p_norm(c, PNorm::finite(2.0)));
    for (Complex z : s.values) {
      const double residual = std::abs(determinant(evaluate(p, z)));
      CHECK(residual <= 1e-6 * scale);
    }
  }
}

TEST_CASE("non-monic spectra via monicization") {
  // 2 z^2 - 2: same roots as z^2 - 1
  const MatrixPolynomial p({mk(1, 1, {-2.0}), mk(1, 1, {0.0}), mk(1, 1, {2.0})});
  const Spectrum s = polynomial_spectrum(p);
  CHECK(spectrum_gap(s, {1.0, -1.0}) <= 1e-10);

  const MatrixPolynomial bad(
      {mk(1, 1, {1.0}), mk(1, 1, {1.0}), mk(1, 1, {0.0})});
  CHECK_THROWS_AS(polynomial_spectrum(bad), SingularLeadingCoefficient);
}

TEST_CASE("oracle agrees on hand-built cases") {
  // scalar z^2: double root at zero
  const MatrixPolynomial zsq(
      {mk(1, 1, {0.0}), mk(1, 1, {0.0}), mk(1, 1, {1.0})});
  CHECK(spectrum_gap(oracle_spectrum(zsq), {0.0, 0.0}) <= 1e-9);
  CHECK(spectrum_gap(polynomial_spectrum(zsq), {0.0, 0.0}) <= 1e-7);

  // det(I z^2 - I) = (z^2 - 1)^2
  const MatrixPolynomial p(
      {diag({-1.0, -1.0}), ComplexMatrix(2, 2), diag({1.0, 1.0})});
  const std::vector<Complex> cp = char_poly_oracle(p);
  REQUIRE(cp.size() == 5);
  CHECK(std::abs(cp[0] - Complex(1.0)) <= 1e-12);
  CHECK(std::abs(cp[1]) <= 1e-12);
  CHECK(std::abs(cp[2] - Complex(-2.0)) <= 1e-12);
  CHECK(std::abs(cp[3]) <= 1e-12);
  CHECK(std::abs(cp[4] - Complex(1.0)) <= 1e-12);
  CHECK(spectrum_gap(oracle_spectrum(p), {1.0, 1.0, -1.0, -1.0}) <= 1e-7);

  const MatrixPolynomial big = gen_monic_arbitrary(3, 3, 1);
  CHECK_THROWS_AS(char_poly_oracle(big), OracleSizeExceeded);
}

TEST_CASE("companion spectra match the oracle on random small polynomials") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 1 + static_cast<int>(seed % 2);
    const int m = 1 + static_cast<int>((seed / 2) % 3);
    const MatrixPolynomial p = gen_monic_arbitrary(n, m, derive_seed(6300, seed));
    const Spectrum via_companion = polynomial_spectrum(p);
    const Spectrum via_oracle = oracle_spectrum(p);
    CHECK(optimal_matching_distance(via_companion, via_oracle).distance <= 1e-7);
  }
}

TEST_CASE("cauchy bound contains the spectrum") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MatrixPolynomial p = gen_monic_arbitrary(3, 3, derive_seed(6400, seed));
    const double radius = cauchy_eigenvalue_bound(p);
    for (Complex z : polynomial_spectrum(p).values)
      CHECK(std::abs(z) < radius + 1e-9);
  }
}

TEST_CASE("companion normality predicate") {
  const MatrixPolynomial normal_p = gen_monic_normal_companion(3, 2, 9);
  CHECK(companion_is_normal_predicate(normal_p));
  CHECK(is_normal(companion(normal_p).matrix));

  MatrixPolynomial off = normal_p;
  off.coeffs[1](0, 0) += 0.5;
  CHECK_FALSE(companion_is_normal_predicate(off));
  CHECK_FALSE(is_normal(companion(off).matrix));
}

TEST_CASE("polynomial shape validation") {
  CHECK_THROWS_AS(MatrixPolynomial({mk(1, 1, {1.0}), diag({1.0, 1.0})}),
                  SizeMismatch);
  CHECK_THROWS_AS(MatrixPolynomial({ComplexMatrix(2, 3)}), SizeMismatch);
}
