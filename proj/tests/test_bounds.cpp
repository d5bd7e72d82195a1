#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "polyspec/bounds.hpp"
#include "polyspec/genlab.hpp"
#include "test_helpers.hpp"

using namespace polyspec;
using namespace polyspec::testing;

namespace {

MatrixPolynomial monic(std::vector<ComplexMatrix> lower, int n) {
  lower.push_back(ComplexMatrix::identity(n));
  return MatrixPolynomial(std::move(lower));
}

ComplexMatrix column(std::initializer_list<Complex> entries) {
  return ComplexMatrix(static_cast<int>(entries.size()), 1,
                       std::vector<Complex>(entries));
}

}  // namespace

TEST_CASE("hoffman-wielandt equality at a diagonal shift") {
  const ComplexMatrix a(2, 2);
  const ComplexMatrix b = diag({1.0, 1.0});
  const BoundReport r = check_hoffman_wielandt(a, b);
  CHECK(r.bound_id == "hoffman-wielandt");
  CHECK(r.hypotheses_met);
  CHECK(r.holds);
  CHECK(r.lhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(r.rhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(r.slack_ratio == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("hoffman-wielandt with permuted spectra") {
  const BoundReport r = check_hoffman_wielandt(diag({1.0, 2.0}), diag({2.0, 1.0}));
  CHECK(r.holds);
  CHECK(r.lhs <= 1e-9);
  CHECK(r.rhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("hoffman-wielandt flags non-normal inputs") {
  const ComplexMatrix jordan = mk(2, 2, {0.0, 1.0, 0.0, 0.0});
  const BoundReport r = check_hoffman_wielandt(jordan, diag({0.0, 0.0}));
  CHECK_FALSE(r.hypotheses_met);
  CHECK(std::find(r.failed_hypotheses.begin(), r.failed_hypotheses.end(),
                  "a_normal") != r.failed_hypotheses.end());
  CHECK(std::find(r.failed_hypotheses.begin(), r.failed_hypotheses.end(),
                  "b_normal") == r.failed_hypotheses.end());
}

TEST_CASE("polynomial hoffman-wielandt equality at opposite constant terms") {
  const MatrixPolynomial p = monic({diag({1.0, 1.0}), ComplexMatrix(2, 2)}, 2);
  const MatrixPolynomial q = monic({diag({-1.0, -1.0}), ComplexMatrix(2, 2)}, 2);
  const BoundReport r = check_polynomial_hoffman_wielandt(p, q);
  CHECK(r.hypotheses_met);
  CHECK(r.holds);
  CHECK(r.rhs == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(r.lhs == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-7));
  CHECK(r.slack_ratio == doctest::Approx(1.0).epsilon(1e-7));

  const MatrixPolynomial nonmonic(
      {diag({1.0, 1.0}), diag({2.0, 2.0})});
  CHECK_THROWS_AS(check_polynomial_hoffman_wielandt(nonmonic, nonmonic), NotMonic);
}

TEST_CASE("normal versus arbitrary on a nilpotent perturbation") {
  const ComplexMatrix a(2, 2);
  const ComplexMatrix b = mk(2, 2, {0.0, 1.0, 0.0, 0.0});
  const BoundReport r = check_normal_vs_arbitrary(a, b);
  CHECK(r.hypotheses_met);
  CHECK(r.holds);
  CHECK(r.lhs <= 1e-12);
  CHECK(r.rhs == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.constants.at("factor") == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("kahan bound for scalars") {
  const BoundReport r =
      check_kahan(mk(1, 1, {5.0}), mk(1, 1, {3.0}), PNorm::finite(2.0));
  CHECK(r.hypotheses_met);
  CHECK(r.holds);
  CHECK(r.constants.at("gamma") == 0.0);
  CHECK(r.lhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(4.0).epsilon(1e-12));

  const ComplexMatrix skew = mk(2, 2, {0.0, 1.0, -1.0, 0.0});
  const BoundReport r2 = check_kahan(skew, diag({0.0, 0.0}), PNorm::finite(2.0));
  CHECK_FALSE(r2.hypotheses_met);
}

TEST_CASE("universal polynomial bound reports its empirical ratio") {
  const MatrixPolynomial p = gen_monic_normal_companion(2, 2, 5);
  const MatrixPolynomial q = gen_monic_normal_companion(2, 2, 6);
  const BoundReport r = check_polynomial_universal(p, q, PNorm::finite(2.0));
  CHECK(r.hypotheses_met);
  CHECK(r.constants.count("dist") == 1);
  CHECK(r.constants.count("mid") == 1);
  CHECK(r.constants.count("rhs_sum") == 1);
  CHECK(r.constants.count("empirical_c_ratio") == 1);
  CHECK(r.lhs == r.constants.at("mid"));
  CHECK(r.rhs == r.constants.at("rhs_sum"));
  // the inner inequality is plain norm subadditivity, so it always holds
  CHECK(r.holds);
}

TEST_CASE("unitary constant-term bound, scalar quadratic") {
  const MatrixPolynomial p(
      {mk(1, 1, {1.0}), mk(1, 1, {0.0}), mk(1, 1, {1.0})});
  const MatrixPolynomial q(
      {mk(1, 1, {-1.0}), mk(1, 1, {0.0}), mk(1, 1, {1.0})});
  const BoundReport r = check_unitary_2mn(p, q, PNorm::finite(2.0));
  CHECK(r.hypotheses_met);
  CHECK(r.holds);
  CHECK(r.lhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(r.rhs == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(r.constants.at("factor") == doctest::Approx(3.0).epsilon(1e-15));

  // non-unitary constant term is an advisory hypothesis failure, not fatal
  const MatrixPolynomial loose(
      {mk(1, 1, {0.5}), mk(1, 1, {0.0}), mk(1, 1, {1.0})});
  const BoundReport r2 = check_unitary_2mn(loose, q, PNorm::finite(2.0));
  CHECK_FALSE(r2.hypotheses_met);
}

TEST_CASE("polynomial kahan uses the companion order constant") {
  const MatrixPolynomial p = gen_monic_hermitian_companion(2, 2, 3);
  const MatrixPolynomial q = gen_monic_hermitian_companion(2, 2, 4);
  const BoundReport r = check_polynomial_kahan(p, q, PNorm::finite(2.0));
  CHECK(r.hypotheses_met);
  CHECK(r.constants.at("gamma") ==
        doctest::Approx(pokrzywa_gamma(4)).epsilon(1e-15));
  CHECK(r.constants.count("info_rhs_sum") == 1);

  const MatrixPolynomial skewed = gen_monic_arbitrary(2, 2, 11);
  const BoundReport r2 = check_polynomial_kahan(skewed, q, PNorm::finite(2.0));
  CHECK_FALSE(r2.hypotheses_met);
}

TEST_CASE("elsner bound is tight for scalars") {
  const BoundReport r =
      check_elsner(mk(1, 1, {2.0}), mk(1, 1, {5.0}), PNorm::finite(2.0));
  CHECK(r.hypotheses_met);
  CHECK(r.holds);
  CHECK(r.lhs == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.constants.at("c") == 1.0);
  CHECK(r.constants.at("M") == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(r.constants.at("k") == 1.0);
}

TEST_CASE("elsner constant alternates with parity") {
  CHECK(elsner_constant(1) == 1.0);
  CHECK(elsner_constant(2) == 1.0);
  CHECK(elsner_constant(3) == 3.0);
  CHECK(elsner_constant(4) == 3.0);
  CHECK(elsner_constant(7) == 7.0);
  CHECK(elsner_constant(8) == 7.0);
}

TEST_CASE("norm-capped companion bound, scalar quadratic at infinity norm") {
  const MatrixPolynomial p(
      {mk(1, 1, {0.5}), mk(1, 1, {0.0}), mk(1, 1, {1.0})});
  const MatrixPolynomial q(
      {mk(1, 1, {-0.5}), mk(1, 1, {0.0}), mk(1, 1, {1.0})});
  const BoundReport r = check_nbounded(p, q, PNorm::infinity(), 1.0);
  CHECK(r.hypotheses_met);
  CHECK(r.holds);
  CHECK(r.constants.at("N") == 1.0);
  CHECK(r.constants.at("M_prime") == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r.constants.at("c") ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-9));
  CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.subassertions_ok());

  // blowing the cap is an advisory hypothesis failure
  const BoundReport r2 = check_nbounded(p, q, PNorm::infinity(), 0.1);
  CHECK_FALSE(r2.hypotheses_met);
}

TEST_CASE("determinant perturbation bound") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const ComplexMatrix a = gen_arbitrary(4, derive_seed(700, 2 * seed));
    const ComplexMatrix b = gen_arbitrary(4, derive_seed(700, 2 * seed + 1));
    for (const PNorm& p :
         {PNorm::finite(1.0), PNorm::finite(2.0), PNorm::infinity()}) {
      const BoundReport r = check_det_perturbation(a, b, p);
      CHECK(r.hypotheses_met);
      CHECK(r.holds);
      CHECK(r.constants.at("n") == 4.0);
    }
  }
}

TEST_CASE("invertibility-ball bound, scalar pencil frozen values") {
  const MatrixPolynomial abar({mk(1, 1, {0.0}), mk(1, 1, {1.0})});
  const MatrixPolynomial p({mk(1, 1, {0.1}), mk(1, 1, {1.0})});
  const MatrixPolynomial q({mk(1, 1, {-0.1}), mk(1, 1, {1.0})});
  const BoundReport r = check_nonmonic_ball(p, q, abar);
  CHECK(r.hypotheses_met);
  CHECK(r.holds);
  CHECK(r.constants.at("t") == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.constants.at("L") == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(r.constants.at("c") == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.lhs == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(r.rhs == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(r.constants.at("sub_eigenvalue_localization") == 1.0);

  // perturbations outside the ball fail the in-ball hypotheses
  const MatrixPolynomial far({mk(1, 1, {5.0}), mk(1, 1, {1.0})});
  const BoundReport r2 = check_nonmonic_ball(far, q, abar);
  CHECK_FALSE(r2.hypotheses_met);

  const MatrixPolynomial degenerate({mk(1, 1, {1.0}), mk(1, 1, {0.0})});
  CHECK_THROWS_AS(check_nonmonic_ball(p, q, degenerate),
                  SingularLeadingCoefficient);
}

TEST_CASE("two-sided quadratic form bound, equality witness") {
  const ComplexMatrix a = diag({1.0, 3.0});
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const ComplexMatrix x = column({inv_sqrt2, inv_sqrt2});
  const ComplexMatrix y = column({inv_sqrt2, -inv_sqrt2});
  const BoundReport r = check_wielandt_scalar(a, 3.0, 1.0, x, y);
  CHECK(r.hypotheses_met);
  CHECK(r.holds);
  CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.constants.at("ratio_squared") == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(r.subassertions_ok());
}

TEST_CASE("two-sided quadratic form bound, standard basis and multiples of I") {
  const ComplexMatrix a = diag({1.0, 3.0});
  const ComplexMatrix x = column({1.0, 0.0});
  const ComplexMatrix y = column({0.0, 1.0});
  const BoundReport r = check_wielandt_scalar(a, 3.0, 1.0, x, y);
  CHECK(r.hypotheses_met);
  CHECK(r.holds);
  CHECK(r.lhs <= 1e-12);

  const ComplexMatrix two_i = diag({2.0, 2.0});
  const BoundReport r2 = check_wielandt_scalar(two_i, 2.0, 2.0, x, y);
  CHECK(r2.hypotheses_met);
  CHECK(r2.holds);
  CHECK(r2.lhs <= 1e-12);
  CHECK(r2.rhs <= 1e-12);
  CHECK(r2.slack_ratio == 0.0);

  CHECK_THROWS_AS(check_wielandt_scalar(a, 1.0, 3.0, x, y), BadInterval);
  CHECK_THROWS_AS(check_wielandt_scalar(a, 3.0, -1.0, x, y), BadInterval);

  const ComplexMatrix long_x = column({1.0, 1.0});
  const BoundReport r3 = check_wielandt_scalar(a, 3.0, 1.0, long_x, y);
  CHECK_FALSE(r3.hypotheses_met);
  CHECK(std::find(r3.failed_hypotheses.begin(), r3.failed_hypotheses.end(),
                  "x_unit_norm") != r3.failed_hypotheses.end());
}

TEST_CASE("two-sided quadratic form bound for polynomials") {
  const ComplexMatrix a0 = diag({1.0, 3.0});
  const ComplexMatrix a1 = diag({2.0, 2.0});
  const MatrixPolynomial p({a0, a1});
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const ComplexMatrix x = column({inv_sqrt2, inv_sqrt2});
  const ComplexMatrix y = column({inv_sqrt2, -inv_sqrt2});

  const BoundReport r =
      check_wielandt_polynomial(p, 3.0, 1.0, x, y, Complex(0.5, 0.5));
  CHECK(r.hypotheses_met);
  CHECK(r.holds);
  CHECK(r.constants.at("lambda_modulus") ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(r.subassertions_ok());

  const MatrixPolynomial bad({mk(2, 2, {1.0, 5.0, 0.0, 1.0}), a1});
  const BoundReport r2 =
      check_wielandt_polynomial(bad, 3.0, 1.0, x, y, Complex(0.5, 0.5));
  CHECK_FALSE(r2.hypotheses_met);
  CHECK(std::find(r2.failed_hypotheses.begin(), r2.failed_hypotheses.end(),
                  "coefficient_0_hermitian") != r2.failed_hypotheses.end());
}

TEST_CASE("cotangent sum constant, frozen values") {
  CHECK(pokrzywa_gamma(1) == 0.0);
  CHECK(pokrzywa_gamma(2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pokrzywa_gamma(4) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("cotangent sum constant stays under the logarithmic cap") {
  double prev = 0.0;
  for (int k = 1; k <= 1024; ++k) {
    const BoundReport r = gamma_bounds_check(k);
    CHECK(r.holds);
    CHECK(r.lhs >= prev - 1e-12);
    CHECK(r.rhs == doctest::Approx(std::log2(double(k)) + 0.038).epsilon(1e-15));
    prev = r.lhs;
  }
}

TEST_CASE("bound checks validate shapes") {
  CHECK_THROWS_AS(check_hoffman_wielandt(diag({1.0, 2.0}), mk(1, 1, {1.0})),
                  SizeMismatch);
  const MatrixPolynomial p1 = gen_monic_arbitrary(2, 2, 1);
  const MatrixPolynomial p2 = gen_monic_arbitrary(2, 3, 1);
  CHECK_THROWS_AS(check_polynomial_hoffman_wielandt(p1, p2), SizeMismatch);
}
