#include "polyspec/genlab.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace polyspec {

namespace {

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

ComplexMatrix gaussian_matrix(int rows, int cols, Xoshiro256pp& rng) {
  ComplexMatrix g(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) g(r, c) = rng.complex_gaussian();
  return g;
}

}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) {
  SplitMix64 sm(seed);
  for (auto& word : s_) word = sm.next();
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t Xoshiro256pp::next() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256pp::uniform01() { return double(next() >> 11) * 0x1.0p-53; }

double Xoshiro256pp::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

double Xoshiro256pp::gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_gaussian_ = radius * std::sin(angle);
  has_cached_gaussian_ = true;
  return radius * std::cos(angle);
}

Complex Xoshiro256pp::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex(re, im) * std::numbers::sqrt2 * 0.5;
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  return SplitMix64(root + (stream + 1) * 0x9E3779B97F4A7C15ULL).next();
}

ComplexMatrix gen_unitary(int n, std::uint64_t seed) {
  if (n < 1) throw SizeMismatch("unitary order must be positive");
  Xoshiro256pp rng(seed);
  ComplexMatrix q = gaussian_matrix(n, n, rng);
  for (int col = 0; col < n; ++col) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int prev = 0; prev < col; ++prev) {
        Complex proj = 0.0;
        for (int r = 0; r < n; ++r) proj += std::conj(q(r, prev)) * q(r, col);
        for (int r = 0; r < n; ++r) q(r, col) -= proj * q(r, prev);
      }
    }
    double norm_sq = 0.0;
    for (int r = 0; r < n; ++r) norm_sq += std::norm(q(r, col));
    if (norm_sq < 1e-24) {
      for (int r = 0; r < n; ++r) q(r, col) = rng.complex_gaussian();
      --col;
      continue;
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (int r = 0; r < n; ++r) q(r, col) *= inv;
  }
  return q;
}

ComplexMatrix gen_hermitian(int n, std::uint64_t seed) {
  Xoshiro256pp rng(seed);
  ComplexMatrix g = gaussian_matrix(n, n, rng);
  return (g + conjugate_transpose(g)) * 0.5;
}

ComplexMatrix gen_hermitian_in_interval(int n, double upper, double lower,
                                        std::uint64_t seed) {
  if (!(0.0 < lower && lower <= upper))
    throw BadInterval("interval must satisfy 0 < b <= a");
  ComplexMatrix u = gen_unitary(n, derive_seed(seed, 0));
  Xoshiro256pp rng(derive_seed(seed, 1));
  ComplexMatrix d(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = rng.uniform(lower, upper);
  return u * d * conjugate_transpose(u);
}

ComplexMatrix gen_normal(int n, std::uint64_t seed) {
  ComplexMatrix u = gen_unitary(n, derive_seed(seed, 0));
  Xoshiro256pp rng(derive_seed(seed, 1));
  ComplexMatrix d(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = rng.complex_gaussian();
  return u * d * conjugate_transpose(u);
}

ComplexMatrix gen_arbitrary(int n, std::uint64_t seed, double scale) {
  Xoshiro256pp rng(seed);
  return gaussian_matrix(n, n, rng) * scale;
}

MatrixPolynomial gen_monic_normal_companion(int n, int m, std::uint64_t seed) {
  std::vector<ComplexMatrix> coeffs(m + 1, ComplexMatrix(n, n));
  coeffs[0] = gen_unitary(n, seed) * -1.0;
  coeffs[m] = ComplexMatrix::identity(n);
  return MatrixPolynomial{std::move(coeffs)};
}

MatrixPolynomial gen_monic_hermitian_companion(int n, int m, std::uint64_t seed) {
  if (m < 1) throw SizeMismatch("degree must be positive");
  if (m > 2)
    throw UnsupportedFamily(
        "hermitian companion structure exists only for degree 1 or 2");
  std::vector<ComplexMatrix> coeffs(m + 1, ComplexMatrix(n, n));
  coeffs[m] = ComplexMatrix::identity(n);
  if (m == 1) {
    coeffs[0] = gen_hermitian(n, seed);
  } else {
    coeffs[0] = ComplexMatrix::identity(n) * -1.0;
    coeffs[1] = gen_hermitian(n, seed);
  }
  return MatrixPolynomial{std::move(coeffs)};
}

MatrixPolynomial gen_monic_arbitrary(int n, int m, std::uint64_t seed, double scale) {
  Xoshiro256pp rng(seed);
  std::vector<ComplexMatrix> coeffs;
  coeffs.reserve(m + 1);
  for (int i = 0; i < m; ++i) coeffs.push_back(gaussian_matrix(n, n, rng) * scale);
  coeffs.push_back(ComplexMatrix::identity(n));
  return MatrixPolynomial{std::move(coeffs)};
}

MatrixPolynomial gen_nonmonic_well_conditioned(int n, int m, std::uint64_t seed) {
  Xoshiro256pp rng(seed);
  std::vector<ComplexMatrix> coeffs;
  coeffs.reserve(m + 1);
  for (int i = 0; i < m; ++i) coeffs.push_back(gaussian_matrix(n, n, rng));
  for (;;) {
    ComplexMatrix lead =
        ComplexMatrix::identity(n) + gaussian_matrix(n, n, rng) * 0.25;
    try {
      inverse(lead);
    } catch (const SingularMatrix&) {
      continue;
    }
    coeffs.push_back(std::move(lead));
    break;
  }
  return MatrixPolynomial{std::move(coeffs)};
}

MatrixPolynomial gen_nonmonic_in_ball(const MatrixPolynomial& abar,
                                      double radius_fraction, std::uint64_t seed) {
  if (!(radius_fraction >= 0.0 && radius_fraction < 1.0))
    throw BadInterval("radius fraction must lie in [0, 1)");
  ComplexMatrix lead_inv;
  try {
    lead_inv = inverse(abar.coeffs.back());
  } catch (const SingularMatrix&) {
    throw SingularLeadingCoefficient(
        "reference leading coefficient is singular to working precision");
  }
  if (radius_fraction == 0.0) return abar;

  const int n = abar.order();
  Xoshiro256pp rng(seed);
  std::vector<ComplexMatrix> delta;
  delta.reserve(abar.coeffs.size());
  for (size_t i = 0; i < abar.coeffs.size(); ++i)
    delta.push_back(gaussian_matrix(n, n, rng));

  const double current = tuple_operator_p_norm(delta, PNorm::finite(1.0));
  if (current == 0.0) return abar;
  const double target =
      radius_fraction / operator_p_norm(lead_inv, PNorm::finite(1.0));
  const double factor = target / current;

  std::vector<ComplexMatrix> coeffs;
  coeffs.reserve(abar.coeffs.size());
  for (size_t i = 0; i < abar.coeffs.size(); ++i)
    coeffs.push_back(abar.coeffs[i] + delta[i] * factor);
  return MatrixPolynomial{std::move(coeffs)};
}

std::pair<ComplexMatrix, ComplexMatrix> gen_orthonormal_pair(int n,
                                                             std::uint64_t seed) {
  if (n < 2) throw OrderTooSmall("orthonormal pair requires order >= 2");
  ComplexMatrix u = gen_unitary(n, seed);
  ComplexMatrix x(n, 1), y(n, 1);
  for (int r = 0; r < n; ++r) {
    x(r, 0) = u(r, 0);
    y(r, 0) = u(r, 1);
  }
  return {std::move(x), std::move(y)};
}

bool genspec_is_polynomial(const std::string& family) {
  return family == "monic-normal-companion" || family == "monic-hermitian-companion" ||
         family == "monic-arbitrary" || family == "nonmonic-well-conditioned" ||
         family == "nonmonic-ball";
}

ComplexMatrix gen_matrix(const GenSpec& spec) {
  if (spec.family == "unitary") return gen_unitary(spec.n, spec.seed);
  if (spec.family == "hermitian") return gen_hermitian(spec.n, spec.seed);
  if (spec.family == "hermitian-in-interval")
    return gen_hermitian_in_interval(spec.n, spec.interval_max, spec.interval_min,
                                     spec.seed);
  if (spec.family == "normal") return gen_normal(spec.n, spec.seed);
  if (spec.family == "arbitrary") return gen_arbitrary(spec.n, spec.seed, spec.scale);
  if (spec.family == "orthonormal-pair") {
    auto [x, y] = gen_orthonormal_pair(spec.n, spec.seed);
    ComplexMatrix pair(spec.n, 2);
    for (int r = 0; r < spec.n; ++r) {
      pair(r, 0) = x(r, 0);
      pair(r, 1) = y(r, 0);
    }
    return pair;
  }
  throw UnsupportedFamily("unknown matrix family: " + spec.family);
}

MatrixPolynomial gen_polynomial(const GenSpec& spec, const MatrixPolynomial* abar) {
  if (spec.family == "monic-normal-companion")
    return gen_monic_normal_companion(spec.n, spec.m, spec.seed);
  if (spec.family == "monic-hermitian-companion")
    return gen_monic_hermitian_companion(spec.n, spec.m, spec.seed);
  if (spec.family == "monic-arbitrary")
    return gen_monic_arbitrary(spec.n, spec.m, spec.seed, spec.scale);
  if (spec.family == "nonmonic-well-conditioned")
    return gen_nonmonic_well_conditioned(spec.n, spec.m, spec.seed);
  if (spec.family == "nonmonic-ball") {
    if (abar != nullptr)
      return gen_nonmonic_in_ball(*abar, spec.radius_fraction, spec.seed);
    MatrixPolynomial reference =
        gen_nonmonic_well_conditioned(spec.n, spec.m, derive_seed(spec.seed, 0));
    return gen_nonmonic_in_ball(reference, spec.radius_fraction,
                                derive_seed(spec.seed, 1));
  }
  throw UnsupportedFamily("unknown polynomial family: " + spec.family);
}

}  // namespace polyspec
