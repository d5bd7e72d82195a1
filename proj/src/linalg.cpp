#include "polyspec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace polyspec {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw SizeMismatch(msg);
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

// ── PNorm ────────────────────────────────────────────────────────────────

PNorm PNorm::finite(double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw UnsupportedPNorm("finite p-norm requires p >= 1");
  return PNorm(false, p);
}

PNorm PNorm::infinity() { return PNorm(true, 0.0); }

PNorm PNorm::parse(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), ::tolower);
  if (t == "inf" || t == "infinity") return infinity();
  try {
    size_t pos = 0;
    double p = std::stod(t, &pos);
    if (pos != t.size()) throw std::invalid_argument(t);
    return finite(p);
  } catch (const std::logic_error&) {
    throw UnsupportedPNorm("cannot parse p-norm selector: " + text);
  }
}

double PNorm::value() const {
  if (infinite_) throw UnsupportedPNorm("infinite norm has no finite exponent");
  return p_;
}

std::string PNorm::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os << p_;
  return os.str();
}

// ── ComplexMatrix ────────────────────────────────────────────────────────

ComplexMatrix::ComplexMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {
  if (rows < 0 || cols < 0) throw SizeMismatch("negative matrix dimension");
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows < 0 || cols < 0) throw SizeMismatch("negative matrix dimension");
  if (data_.size() != static_cast<size_t>(rows) * cols)
    throw SizeMismatch("matrix data length does not match rows*cols");
  for (const Complex& z : data_)
    if (!finite(z)) throw SizeMismatch("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix addition shape mismatch");
  ComplexMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) + b(r, c);
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix subtraction shape mismatch");
  ComplexMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) - b(r, c);
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.cols() == b.rows(), "matrix product shape mismatch");
  ComplexMatrix out(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int k = 0; k < a.cols(); ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex(0.0, 0.0)) continue;
      for (int c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(r, c) = s * a(r, c);
  return out;
}

ComplexMatrix operator*(double s, const ComplexMatrix& a) {
  return Complex(s, 0.0) * a;
}

ComplexMatrix operator*(const ComplexMatrix& a, Complex s) { return s * a; }

ComplexMatrix operator*(const ComplexMatrix& a, double s) {
  return Complex(s, 0.0) * a;
}

ComplexMatrix conjugate_transpose(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
  return out;
}

Complex trace(const ComplexMatrix& a) {
  require(a.is_square(), "trace requires a square matrix");
  Complex t = 0.0;
  for (int i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

ComplexMatrix hconcat(std::span<const ComplexMatrix> blocks) {
  require(!blocks.empty(), "hconcat of zero blocks");
  const int rows = blocks[0].rows();
  int cols = 0;
  for (const auto& b : blocks) {
    require(b.rows() == rows, "hconcat blocks must share a row count");
    cols += b.cols();
  }
  ComplexMatrix out(rows, cols);
  int at = 0;
  for (const auto& b : blocks) {
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < b.cols(); ++c) out(r, at + c) = b(r, c);
    at += b.cols();
  }
  return out;
}

// ── Norms ────────────────────────────────────────────────────────────────

double matrix_p_norm(const ComplexMatrix& a, const PNorm& p) {
  require(!a.empty(), "norm of an empty matrix");
  if (p.is_infinite()) {
    double best = 0.0;
    for (const Complex& z : a.data()) best = std::max(best, std::abs(z));
    return best;
  }
  const double pv = p.value();
  double sum = 0.0;
  if (pv == 1.0) {
    for (const Complex& z : a.data()) sum += std::abs(z);
    return sum;
  }
  if (pv == 2.0) {
    for (const Complex& z : a.data()) {
      const double m = std::abs(z);
      sum += m * m;
    }
    return std::sqrt(sum);
  }
  for (const Complex& z : a.data()) sum += std::pow(std::abs(z), pv);
  return std::pow(sum, 1.0 / pv);
}

namespace {

double largest_hermitian_eigenvalue(const ComplexMatrix& h) {
  EigenResult r = eigenvalues(h);
  double best = 0.0;
  for (Complex ev : r.eigenvalues) best = std::max(best, ev.real());
  return best;
}

}  // namespace

double operator_p_norm(const ComplexMatrix& a, const PNorm& p) {
  require(!a.empty(), "norm of an empty matrix");
  if (p.is_infinite()) {
    double best = 0.0;
    for (int r = 0; r < a.rows(); ++r) {
      double s = 0.0;
      for (int c = 0; c < a.cols(); ++c) s += std::abs(a(r, c));
      best = std::max(best, s);
    }
    return best;
  }
  const double pv = p.value();
  if (pv == 1.0) {
    double best = 0.0;
    for (int c = 0; c < a.cols(); ++c) {
      double s = 0.0;
      for (int r = 0; r < a.rows(); ++r) s += std::abs(a(r, c));
      best = std::max(best, s);
    }
    return best;
  }
  if (pv == 2.0) {
    // Use the smaller Gram matrix; both share the nonzero spectrum.
    ComplexMatrix ah = conjugate_transpose(a);
    ComplexMatrix gram = (a.rows() <= a.cols()) ? a * ah : ah * a;
    double lam = largest_hermitian_eigenvalue(gram);
    return std::sqrt(std::max(lam, 0.0));
  }
  throw UnsupportedPNorm("operator norm supports p in {1, 2, inf} only");
}

// ── LU decomposition ─────────────────────────────────────────────────────

namespace {

struct PackedLu {
  ComplexMatrix w;  // multipliers below the diagonal, U on and above
  std::vector<int> perm;
  int sign = 1;
  double min_pivot = std::numeric_limits<double>::infinity();
};

PackedLu packed_lu(const ComplexMatrix& a) {
  require(a.is_square() && !a.empty(), "LU requires a nonempty square matrix");
  const int n = a.rows();
  PackedLu lu;
  lu.w = a;
  lu.perm.resize(n);
  for (int i = 0; i < n; ++i) lu.perm[i] = i;

  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(lu.w(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double m = std::abs(lu.w(i, k));
      if (m > best) {
        best = m;
        piv = i;
      }
    }
    if (piv != k) {
      for (int c = 0; c < n; ++c) std::swap(lu.w(k, c), lu.w(piv, c));
      std::swap(lu.perm[k], lu.perm[piv]);
      lu.sign = -lu.sign;
    }
    lu.min_pivot = std::min(lu.min_pivot, best);
    if (best == 0.0) continue;  // singular column, nothing to eliminate
    const Complex pivot = lu.w(k, k);
    for (int i = k + 1; i < n; ++i) {
      const Complex mult = lu.w(i, k) / pivot;
      lu.w(i, k) = mult;
      if (mult == Complex(0.0, 0.0)) continue;
      for (int c = k + 1; c < n; ++c) lu.w(i, c) -= mult * lu.w(k, c);
    }
  }
  return lu;
}

}  // namespace

LuDecomposition lu_decompose(const ComplexMatrix& a) {
  PackedLu p = packed_lu(a);
  const int n = a.rows();
  LuDecomposition out;
  out.lower = ComplexMatrix::identity(n);
  out.upper = ComplexMatrix(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      if (r > c)
        out.lower(r, c) = p.w(r, c);
      else
        out.upper(r, c) = p.w(r, c);
    }
  out.permutation = std::move(p.perm);
  out.sign = p.sign;
  return out;
}

Complex determinant(const ComplexMatrix& a) {
  PackedLu p = packed_lu(a);
  Complex det = static_cast<double>(p.sign);
  for (int i = 0; i < a.rows(); ++i) det *= p.w(i, i);
  return det;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  PackedLu p = packed_lu(a);
  const int n = a.rows();
  const double tol = 1e-13 * matrix_p_norm(a, PNorm::infinity());
  if (p.min_pivot <= tol)
    throw SingularMatrix("matrix is singular to working precision");

  ComplexMatrix out(n, n);
  std::vector<Complex> col(n);
  for (int j = 0; j < n; ++j) {
    // forward substitution with the unit lower factor applied to P e_j
    for (int i = 0; i < n; ++i) {
      Complex s = (p.perm[i] == j) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      for (int k = 0; k < i; ++k) s -= p.w(i, k) * col[k];
      col[i] = s;
    }
    // back substitution with U
    for (int i = n - 1; i >= 0; --i) {
      Complex s = col[i];
      for (int k = i + 1; k < n; ++k) s -= p.w(i, k) * col[k];
      col[i] = s / p.w(i, i);
    }
    for (int i = 0; i < n; ++i) out(i, j) = col[i];
  }
  return out;
}

// ── Eigenvalues ──────────────────────────────────────────────────────────

namespace {

// Iterative diagonal similarity scaling with radix-2 factors; leaves the
// spectrum unchanged while roughly equalizing row and column 1-norms.
void balance_in_place(ComplexMatrix& a) {
  const int n = a.rows();
  const double radix = 2.0;
  const double sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        const double gi = 1.0 / f;
        for (int j = 0; j < n; ++j) a(i, j) *= gi;
        for (int j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

Complex phase_of(Complex z) {
  const double m = std::abs(z);
  return (m == 0.0) ? Complex(1.0, 0.0) : z / m;
}

// Unitary reduction to upper Hessenberg form via Householder reflectors.
void hessenberg_in_place(ComplexMatrix& h) {
  const int n = h.rows();
  std::vector<Complex> v(n);
  for (int k = 0; k + 2 < n; ++k) {
    double norm2 = 0.0;
    for (int i = k + 1; i < n; ++i) norm2 += std::norm(h(i, k));
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) continue;
    const Complex alpha = -phase_of(h(k + 1, k)) * norm;

    double vnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) {
      v[i] = h(i, k);
      if (i == k + 1) v[i] -= alpha;
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 == 0.0) continue;
    const double tau = 2.0 / vnorm2;

    // left: H <- (I - tau v v*) H on rows k+1.., columns k..
    for (int c = k; c < n; ++c) {
      Complex dot = 0.0;
      for (int i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h(i, c);
      dot *= tau;
      for (int i = k + 1; i < n; ++i) h(i, c) -= dot * v[i];
    }
    // right: H <- H (I - tau v v*) on columns k+1.., all rows
    for (int r = 0; r < n; ++r) {
      Complex dot = 0.0;
      for (int c = k + 1; c < n; ++c) dot += h(r, c) * v[c];
      dot *= tau;
      for (int c = k + 1; c < n; ++c) h(r, c) -= dot * std::conj(v[c]);
    }

    h(k + 1, k) = alpha;
    for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

struct Givens {
  double c;   // real cosine
  Complex s;  // complex sine
};

// Rotation [c s; -conj(s) c] with G [f; g] = [r; 0].
Givens make_givens(Complex f, Complex g) {
  if (g == Complex(0.0, 0.0)) return {1.0, Complex(0.0, 0.0)};
  if (f == Complex(0.0, 0.0)) return {0.0, std::conj(g) / std::abs(g)};
  const double af = std::abs(f);
  const double ag = std::abs(g);
  const double r = std::hypot(af, ag);
  return {af / r, (f / af) * std::conj(g) / r};
}

void rotate_rows(ComplexMatrix& h, const Givens& g, int r1, int r2, int jlo, int jhi) {
  for (int j = jlo; j <= jhi; ++j) {
    const Complex t1 = h(r1, j);
    const Complex t2 = h(r2, j);
    h(r1, j) = g.c * t1 + g.s * t2;
    h(r2, j) = -std::conj(g.s) * t1 + g.c * t2;
  }
}

void rotate_cols(ComplexMatrix& h, const Givens& g, int c1, int c2, int ilo, int ihi) {
  for (int i = ilo; i <= ihi; ++i) {
    const Complex t1 = h(i, c1);
    const Complex t2 = h(i, c2);
    h(i, c1) = g.c * t1 + std::conj(g.s) * t2;
    h(i, c2) = -g.s * t1 + g.c * t2;
  }
}

// Eigenvalues of a 2x2 block, numerically stable quadratic.
std::pair<Complex, Complex> eig_2x2(Complex a, Complex b, Complex c, Complex d) {
  const Complex t = a + d;
  const Complex det = a * d - b * c;
  const Complex s = std::sqrt(t * t - 4.0 * det);
  const Complex l1 = (std::abs(t + s) >= std::abs(t - s)) ? 0.5 * (t + s) : 0.5 * (t - s);
  if (l1 == Complex(0.0, 0.0)) return {l1, t - l1};
  return {l1, det / l1};
}

Complex wilkinson_shift(const ComplexMatrix& h, int hi) {
  const Complex a = h(hi - 1, hi - 1);
  const Complex b = h(hi - 1, hi);
  const Complex c = h(hi, hi - 1);
  const Complex d = h(hi, hi);
  auto [l1, l2] = eig_2x2(a, b, c, d);
  return (std::abs(l1 - d) <= std::abs(l2 - d)) ? l1 : l2;
}

// One implicit single-shift QR sweep on the active window [lo, hi].
void qr_sweep(ComplexMatrix& h, int lo, int hi, Complex mu) {
  Complex x = h(lo, lo) - mu;
  Complex y = h(lo + 1, lo);
  for (int k = lo; k < hi; ++k) {
    const Givens g = make_givens(x, y);
    const int jlo = (k == lo) ? lo : k - 1;
    rotate_rows(h, g, k, k + 1, jlo, hi);
    rotate_cols(h, g, k, k + 1, lo, std::min(k + 2, hi));
    if (k > lo) h(k + 1, k - 1) = 0.0;  // chased bulge is exactly gone
    if (k < hi - 1) {
      x = h(k + 1, k);
      y = h(k + 2, k);
    }
  }
}

double window_frobenius(const ComplexMatrix& h, int lo, int hi) {
  double s = 0.0;
  for (int i = lo; i <= hi; ++i)
    for (int j = std::max(lo, i - 1); j <= hi; ++j) s += std::norm(h(i, j));
  return std::sqrt(s);
}

}  // namespace

EigenResult eigenvalues(const ComplexMatrix& a, const EigenOptions& opts) {
  require(a.is_square() && !a.empty(), "eigenvalues require a nonempty square matrix");
  const int n = a.rows();
  EigenResult result;
  result.eigenvalues.assign(n, Complex(0.0, 0.0));
  if (n == 1) {
    result.eigenvalues[0] = a(0, 0);
    return result;
  }

  ComplexMatrix h = a;
  if (opts.balance) balance_in_place(h);
  hessenberg_in_place(h);

  const int max_iter = opts.max_sweeps_per_order * n;
  int hi = n - 1;
  int stall = 0;
  int kicks = 0;

  while (hi >= 0) {
    // Find the active window [lo, hi]; negligible subdiagonals are zeroed
    // so the matrix stays exactly block triangular.
    int lo = hi;
    while (lo > 0) {
      const double sub = std::abs(h(lo, lo - 1));
      double thresh =
          opts.deflation_eps * (std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo)));
      if (thresh == 0.0) thresh = opts.deflation_eps * window_frobenius(h, lo - 1, hi);
      if (sub <= thresh) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }

    if (lo == hi) {
      result.eigenvalues[hi] = h(hi, hi);
      --hi;
      stall = 0;
      continue;
    }
    if (lo == hi - 1) {
      auto [l1, l2] = eig_2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi));
      result.eigenvalues[hi] = l1;
      result.eigenvalues[lo] = l2;
      hi -= 2;
      stall = 0;
      continue;
    }

    if (result.iterations >= max_iter) {
      result.converged = false;
      for (int i = hi; i >= 0; --i) result.eigenvalues[i] = h(i, i);
      return result;
    }

    ++result.iterations;
    ++stall;
    Complex mu;
    if (stall % opts.exceptional_interval == 0) {
      // Exceptional shift: kick with a deterministic pseudo-random phase to
      // break symmetric stalls.
      ++kicks;
      const double golden = 0.61803398874989485;
      const double phi = 2.0 * std::numbers::pi * std::fmod(golden * kicks, 1.0);
      double mag = std::abs(h(hi, hi - 1));
      if (hi - 1 > lo) mag += std::abs(h(hi - 1, hi - 2));
      if (mag == 0.0) mag = window_frobenius(h, lo, hi);
      mu = h(hi, hi) + 0.75 * mag * Complex(std::cos(phi), std::sin(phi));
    } else {
      mu = wilkinson_shift(h, hi);
    }
    qr_sweep(h, lo, hi, mu);
  }

  return result;
}

// ── Predicates ───────────────────────────────────────────────────────────

namespace {

double predicate_scale(const ComplexMatrix& a) {
  return 1.0 + matrix_p_norm(a, PNorm::finite(2.0));
}

}  // namespace

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (!a.is_square() || a.empty()) return false;
  double resid2 = 0.0;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) resid2 += std::norm(a(r, c) - std::conj(a(c, r)));
  return std::sqrt(resid2) <= tol * predicate_scale(a);
}

bool is_normal(const ComplexMatrix& a, double tol) {
  if (!a.is_square() || a.empty()) return false;
  const ComplexMatrix ah = conjugate_transpose(a);
  const ComplexMatrix lhs = a * ah;
  const ComplexMatrix rhs = ah * a;
  return matrix_p_norm(lhs - rhs, PNorm::finite(2.0)) <=
         tol * predicate_scale(a) * predicate_scale(a);
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  if (!a.is_square() || a.empty()) return false;
  const ComplexMatrix gram = conjugate_transpose(a) * a;
  return matrix_p_norm(gram - ComplexMatrix::identity(a.rows()), PNorm::finite(2.0)) <=
         tol * predicate_scale(a);
}

}  // namespace polyspec
