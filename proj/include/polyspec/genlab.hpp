#pragma once

/*
 * Seeded instance generators.  Every generator is a pure function of its
 * arguments, so a (family, n, m, seed, ...) tuple pins the output bitwise;
 * parallel consumers split a root seed with derive_seed instead of sharing
 * a stream.
 */

#include <cstdint>
#include <string>
#include <utility>

#include "polyspec/matpoly.hpp"

namespace polyspec {

// SplitMix64, used for seeding and seed derivation.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

// xoshiro256++ with SplitMix64 state expansion.  Reimplemented from the
// reference algorithm so sequences are identical on every platform.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed);
  std::uint64_t next();
  double uniform01();  // [0, 1), 53-bit resolution
  double uniform(double lo, double hi);
  double gaussian();  // standard normal via Box-Muller
  Complex complex_gaussian();  // unit-variance complex normal

 private:
  std::uint64_t s_[4];
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

// Stream seed derived from a root seed; documented split used everywhere:
// SplitMix64(root + (stream + 1) * 0x9E3779B97F4A7C15).next().
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

// Haar-like unitary: QR of a complex Gaussian matrix by modified
// Gram-Schmidt with one re-orthogonalization pass; the implicit R diagonal
// is real positive by construction.
ComplexMatrix gen_unitary(int n, std::uint64_t seed);

// (G + G*) / 2 of a complex Gaussian G; hermitian by construction.
ComplexMatrix gen_hermitian(int n, std::uint64_t seed);

// U diag(uniform[lower, upper]) U*; spectrum inside [lower, upper].
// Requires 0 < lower <= upper.
ComplexMatrix gen_hermitian_in_interval(int n, double upper, double lower,
                                        std::uint64_t seed);

// U diag(complex Gaussian) U*; normal by construction.
ComplexMatrix gen_normal(int n, std::uint64_t seed);

// scale * complex Gaussian, no structure.
ComplexMatrix gen_arbitrary(int n, std::uint64_t seed, double scale = 1.0);

// Monic P = I z^m + A_0 with A_0 = -U for a generated unitary U; the
// companion's last block row is then unitary and the companion is normal.
MatrixPolynomial gen_monic_normal_companion(int n, int m, std::uint64_t seed);

// Monic polynomial whose companion matrix is hermitian.  The block layout
// forces m <= 2: for m = 1 any hermitian A_0 works, for m = 2 the
// subdiagonal block pins A_0 = -I and A_1 must be hermitian.  Degrees
// m >= 3 throw UnsupportedFamily.
MatrixPolynomial gen_monic_hermitian_companion(int n, int m, std::uint64_t seed);

// Monic polynomial with scale * Gaussian coefficients A_0 .. A_{m-1}.
MatrixPolynomial gen_monic_arbitrary(int n, int m, std::uint64_t seed,
                                     double scale = 1.0);

// Non-monic reference polynomial with Gaussian coefficients and leading
// coefficient I + 0.25 G, redrawn until nonsingular.
MatrixPolynomial gen_nonmonic_well_conditioned(int n, int m, std::uint64_t seed);

// abar + delta with the tuple operator 1-norm of delta rescaled to exactly
// radius_fraction / |abar_m^{-1}|_1, so the perturbation stays strictly
// inside the invertibility ball.  radius_fraction in [0, 1); 0 returns a
// copy of abar.
MatrixPolynomial gen_nonmonic_in_ball(const MatrixPolynomial& abar,
                                      double radius_fraction, std::uint64_t seed);

// First two columns of a generated unitary; unit vectors with
// |x* y| <= 1e-12.  Requires n >= 2.
std::pair<ComplexMatrix, ComplexMatrix> gen_orthonormal_pair(int n,
                                                             std::uint64_t seed);

// Declarative generator request, mirrors the JSON schema used by the CLI
// and campaign configs.
struct GenSpec {
  std::string family;
  int n = 0;
  int m = 1;
  std::uint64_t seed = 0;
  double scale = 1.0;
  double interval_max = 2.0;
  double interval_min = 1.0;
  double radius_fraction = 0.5;
};

// True when the family produces a MatrixPolynomial rather than a matrix.
bool genspec_is_polynomial(const std::string& family);

// Dispatch for matrix families; orthonormal-pair returns the two columns
// side by side as an n x 2 matrix.  Throws UnsupportedFamily otherwise.
ComplexMatrix gen_matrix(const GenSpec& spec);

// Dispatch for polynomial families.  nonmonic-ball perturbs abar when one
// is supplied and otherwise a well-conditioned reference generated from
// derive_seed(spec.seed, 0).  Throws UnsupportedFamily otherwise.
MatrixPolynomial gen_polynomial(const GenSpec& spec,
                                const MatrixPolynomial* abar = nullptr);

}  // namespace polyspec
