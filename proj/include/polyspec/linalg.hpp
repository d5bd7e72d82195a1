#pragma once

/*
 * Dense complex linear algebra for desk-scale problems (orders up to a few
 * hundred).  Provides the pieces the rest of the toolkit is built on:
 *
 *   - ComplexMatrix: row-major dense matrix over std::complex<double>
 *   - entrywise and induced p-norms
 *   - LU with partial pivoting (determinant, inverse)
 *   - a general complex eigensolver: balancing, unitary Hessenberg
 *     reduction, implicitly shifted QR with Wilkinson shifts
 *   - structural predicates (hermitian / normal / unitary)
 *
 * Everything is deterministic: identical inputs give bitwise identical
 * results on the same build.
 */

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "polyspec/errors.hpp"

namespace polyspec {

using Complex = std::complex<double>;

// Norm selector: a finite exponent p >= 1, or infinity.
class PNorm {
 public:
  static PNorm finite(double p);
  static PNorm infinity();
  // Accepts "1", "2", "3.5", "inf", "Inf", "INF".
  static PNorm parse(const std::string& text);

  bool is_infinite() const { return infinite_; }
  double value() const;  // throws UnsupportedPNorm when infinite
  std::string to_string() const;

  friend bool operator==(const PNorm& a, const PNorm& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.p_ == b.p_);
  }

 private:
  PNorm(bool infinite, double p) : infinite_(infinite), p_(p) {}
  bool infinite_;
  double p_;
};

// Dense complex matrix, row-major storage.  Constructors taking data
// validate that every component is finite; in-place writes through
// operator() are the caller's responsibility.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols);  // zero-filled
  ComplexMatrix(int rows, int cols, std::vector<Complex> data);
  static ComplexMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Complex& operator()(int r, int c) {
    return data_[static_cast<size_t>(r) * cols_ + c];
  }
  const Complex& operator()(int r, int c) const {
    return data_[static_cast<size_t>(r) * cols_ + c];
  }

  const std::vector<Complex>& data() const { return data_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
ComplexMatrix operator*(double s, const ComplexMatrix& a);
ComplexMatrix operator*(const ComplexMatrix& a, Complex s);
ComplexMatrix operator*(const ComplexMatrix& a, double s);

ComplexMatrix conjugate_transpose(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);

// Horizontal concatenation [B_0 B_1 ... B_{k-1}]; blocks must share a row
// count.
ComplexMatrix hconcat(std::span<const ComplexMatrix> blocks);

// Entrywise norm: (sum |a_ij|^p)^(1/p) for finite p >= 1, max |a_ij| for
// p = inf.  p = 2 is the Frobenius norm.
double matrix_p_norm(const ComplexMatrix& a, const PNorm& p);

// Induced operator norm; supports p in {1, 2, inf} and throws
// UnsupportedPNorm otherwise.  p = 1 is the max absolute column sum, p = inf
// the max absolute row sum, p = 2 the largest singular value (via the
// Gram matrix).  Non-square inputs are accepted.
double operator_p_norm(const ComplexMatrix& a, const PNorm& p);

// PA = LU with partial pivoting.  permutation[i] names the row of A that
// ended up in row i of PA; sign is the permutation parity.
struct LuDecomposition {
  ComplexMatrix lower;
  ComplexMatrix upper;
  std::vector<int> permutation;
  int sign = 1;
};

LuDecomposition lu_decompose(const ComplexMatrix& a);

// Determinant via LU; returns 0 for singular input, never throws on
// singularity.
Complex determinant(const ComplexMatrix& a);

// Inverse via LU.  Throws SingularMatrix when the smallest pivot magnitude
// is <= 1e-13 * max |a_ij|.
ComplexMatrix inverse(const ComplexMatrix& a);

struct EigenOptions {
  bool balance = true;             // diagonal similarity scaling first
  double deflation_eps = 1e-14;    // subdiagonal negligibility threshold
  int max_sweeps_per_order = 60;   // iteration cap = this * order
  int exceptional_interval = 15;   // stalled sweeps between phase kicks
};

struct EigenResult {
  std::vector<Complex> eigenvalues;  // multiset, unspecified order
  int iterations = 0;
  bool converged = true;  // false only when the iteration cap was hit
};

// All eigenvalues of a square complex matrix.  On cap exhaustion the
// result carries converged = false and the current diagonal as a partial
// answer.
EigenResult eigenvalues(const ComplexMatrix& a, const EigenOptions& opts = {});

// Predicates compare the defining residual against tol * (1 + |A|_F).
bool is_hermitian(const ComplexMatrix& a, double tol = 1e-10);
bool is_normal(const ComplexMatrix& a, double tol = 1e-10);
bool is_unitary(const ComplexMatrix& a, double tol = 1e-10);

}  // namespace polyspec
