#pragma once

// Dense matrices over a finite field, minimal polynomials and eigenvalue data.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fitlab/common.hpp"
#include "fitlab/field.hpp"

namespace fitlab {

template <FiniteField F>
class Matrix {
 public:
  using value_type = typename F::value_type;
  using Vec = std::vector<value_type>;

  Matrix(F field, std::size_t rows, std::size_t cols) : f_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, f_.zero()) {}
  Matrix(F field, std::size_t rows, std::size_t cols, std::vector<value_type> entries)
      : f_(std::move(field)), rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols) throw std::invalid_argument("Matrix: entry count does not match dimensions");
  }

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }
  static Matrix scalar(const F& field, std::size_t n, value_type c) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
    return m;
  }
  /// Integer entries reduced into the field, row-major.
  static Matrix from_ints(const F& field, std::size_t rows, std::size_t cols, const std::vector<std::int64_t>& entries) {
    std::vector<value_type> v;
    for (auto e : entries) v.push_back(field.from_int(e));
    return Matrix(field, rows, cols, std::move(v));
  }

  const F& field() const { return f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  value_type& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<value_type>& entries() const { return a_; }

  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool operator<(const Matrix& o) const { return a_ < o.a_; }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [&](value_type v) { return v == f_.zero(); });
  }
  bool is_scalar() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((i == j && a_[i * cols_ + j] != a_[0]) || (i != j && a_[i * cols_ + j] != f_.zero())) return false;
    return true;
  }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    x.check_same(y);
    Matrix out = x;
    for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] = x.f_.add(x.a_[i], y.a_[i]);
    return out;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    x.check_same(y);
    Matrix out = x;
    for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] = x.f_.sub(x.a_[i], y.a_[i]);
    return out;
  }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("Matrix: dimension mismatch in product");
    Matrix out(x.f_, x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const value_type c = x(i, k);
        if (c == x.f_.zero()) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) out(i, j) = x.f_.add(out(i, j), x.f_.mul(c, y(k, j)));
      }
    return out;
  }
  Matrix scaled(value_type c) const {
    Matrix out = *this;
    for (auto& v : out.a_) v = f_.mul(v, c);
    return out;
  }

  Vec apply(const Vec& v) const {
    Vec out(rows_, f_.zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] = f_.add(out[i], f_.mul((*this)(i, j), v[j]));
    return out;
  }

  Matrix pow(BigInt e) const {
    if (!square()) throw std::invalid_argument("Matrix: power of a non-square matrix");
    Matrix result = identity(f_, rows_), base = *this;
    while (e > 0) {
      if ((e & 1) != 0) result = result * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return result;
  }

  /// Reduced row echelon form; returns the pivot columns.
  std::vector<std::size_t> row_reduce() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t pr = r;
      while (pr < rows_ && (*this)(pr, c) == f_.zero()) ++pr;
      if (pr == rows_) continue;
      for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(r, j), (*this)(pr, j));
      const value_type inv = f_.inv((*this)(r, c));
      for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = f_.mul((*this)(r, j), inv);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || (*this)(i, c) == f_.zero()) continue;
        const value_type m = (*this)(i, c);
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = f_.sub((*this)(i, j), f_.mul(m, (*this)(r, j)));
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    Matrix tmp = *this;
    return tmp.row_reduce().size();
  }

  /// Basis of the right null space {v : M v = 0}.
  std::vector<Vec> kernel() const {
    Matrix tmp = *this;
    const auto pivots = tmp.row_reduce();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vec> out;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      Vec v(cols_, f_.zero());
      v[free] = f_.one();
      for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f_.neg(tmp(i, free));
      out.push_back(std::move(v));
    }
    return out;
  }

  std::optional<Matrix> inverse() const {
    if (!square()) throw std::invalid_argument("Matrix: inverse of a non-square matrix");
    const std::size_t n = rows_;
    Matrix aug(f_, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
      aug(i, n + i) = f_.one();
    }
    const auto pivots = aug.row_reduce();
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    Matrix out(f_, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    return out;
  }

  bool invertible() const { return square() && rank() == rows_; }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: dimension mismatch");
  }

  F f_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<value_type> a_;
};

using MatrixFp = Matrix<PrimeField>;
/// Matrix over an explicit extension field F_{p^e} (e = 1 allowed).
using MatrixFq = Matrix<ExtensionField>;

template <FiniteField F>
std::ostream& operator<<(std::ostream& os, const Matrix<F>& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
  }
  return os << "]";
}

/// p(M) by Horner's rule.
template <FiniteField F>
Matrix<F> eval_at_matrix(const fpoly::Poly<F>& p, const Matrix<F>& m) {
  const F& f = m.field();
  Matrix<F> acc(f, m.rows(), m.cols());
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * m + Matrix<F>::scalar(f, m.rows(), p[i]);
  return acc;
}

template <FiniteField F>
typename Matrix<F>::Vec eval_at_vector(const fpoly::Poly<F>& p, const Matrix<F>& m, const typename Matrix<F>::Vec& v) {
  const F& f = m.field();
  typename Matrix<F>::Vec acc(v.size(), f.zero());
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = m.apply(acc);
    for (std::size_t j = 0; j < v.size(); ++j) acc[j] = f.add(acc[j], f.mul(p[i], v[j]));
  }
  return acc;
}

/// Monic annihilator of v under M of least degree (Krylov sequence with incremental elimination).
template <FiniteField F>
fpoly::Poly<F> local_min_poly(const Matrix<F>& m, const typename Matrix<F>::Vec& v) {
  const F& f = m.field();
  using P = fpoly::Poly<F>;
  struct Row {
    typename Matrix<F>::Vec row;
    P combo;
    std::size_t pivot;
  };
  std::vector<Row> basis;
  typename Matrix<F>::Vec w = v;
  for (std::size_t k = 0;; ++k) {
    auto r = w;
    P combo(k + 1, f.zero());
    combo[k] = f.one();
    for (const auto& b : basis) {
      const auto c = r[b.pivot];
      if (c == f.zero()) continue;
      for (std::size_t j = 0; j < r.size(); ++j) r[j] = f.sub(r[j], f.mul(c, b.row[j]));
      for (std::size_t j = 0; j < b.combo.size(); ++j) combo[j] = f.sub(combo[j], f.mul(c, b.combo[j]));
    }
    std::size_t pivot = 0;
    while (pivot < r.size() && r[pivot] == f.zero()) ++pivot;
    if (pivot == r.size()) return combo;
    const auto inv = f.inv(r[pivot]);
    for (auto& x : r) x = f.mul(x, inv);
    for (auto& x : combo) x = f.mul(x, inv);
    basis.push_back({std::move(r), std::move(combo), pivot});
    w = m.apply(w);
  }
}

/// Minimal polynomial: mu <- mu * (annihilator of mu(M) e_i) over the standard basis.
template <FiniteField F>
fpoly::Poly<F> min_poly_of(const Matrix<F>& m) {
  if (!m.square()) throw std::invalid_argument("min_poly: matrix must be square");
  const F& f = m.field();
  fpoly::Poly<F> mu{f.one()};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    typename Matrix<F>::Vec e(m.rows(), f.zero());
    e[i] = f.one();
    const auto w = eval_at_vector(mu, m, e);
    if (std::all_of(w.begin(), w.end(), [&](auto x) { return x == f.zero(); })) continue;
    mu = fpoly::mul(f, mu, local_min_poly(m, w));
  }
  return mu;
}

template <FiniteField F>
struct MinPolyResult {
  fpoly::Poly<F> poly;
  unsigned degree = 0;
  /// Number of distinct eigenvalues in an algebraic closure.
  unsigned distinct_eigenvalues = 0;
  /// Degree over the base field of the splitting field of the minimal polynomial.
  unsigned splitting_degree = 1;
};

template <FiniteField F>
MinPolyResult<F> min_poly(const Matrix<F>& m) {
  MinPolyResult<F> out;
  out.poly = min_poly_of(m);
  out.degree = static_cast<unsigned>(fpoly::degree(out.poly));
  out.distinct_eigenvalues = fpoly::distinct_root_count(m.field(), out.poly);
  out.splitting_degree = fpoly::splitting_degree(m.field(), out.poly);
  return out;
}

/// Companion matrix of a monic polynomial: ones on the subdiagonal, last column -c_i.
template <FiniteField F>
Matrix<F> companion(const F& f, const fpoly::Poly<F>& p) {
  if (p.size() < 2) throw std::invalid_argument("companion: degree must be at least 1");
  if (p.back() != f.one()) throw std::invalid_argument("companion: polynomial must be monic");
  const std::size_t n = p.size() - 1;
  Matrix<F> m(f, n, n);
  for (std::size_t i = 1; i < n; ++i) m(i, i - 1) = f.one();
  for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = f.neg(p[i]);
  return m;
}

inline MatrixFq embed_matrix(const ExtensionField& K, const MatrixFp& m) {
  std::vector<ExtensionField::value_type> v;
  for (auto x : m.entries()) v.push_back(K.embed(x));
  return MatrixFq(K, m.rows(), m.cols(), std::move(v));
}

/// Eigenvalue of a matrix over F_p, as an element of an explicit extension, with
/// the dimension of its eigenspace.
struct Eigenvalue {
  ExtensionField::value_type value;
  std::size_t eigenspace_dim;
};

struct EigenData {
  ExtensionField field;
  std::vector<Eigenvalue> eigenvalues;
};

/// Builds the splitting field F_{p^e} of the minimal polynomial and lists its roots
/// (found by exhaustive evaluation) with geometric multiplicities.
inline EigenData eigen_decomposition(const MatrixFp& m) {
  const auto mp = min_poly(m);
  const std::uint64_t p = m.field().characteristic();
  ExtensionField K = ExtensionField::with_degree(p, mp.splitting_degree);
  if (K.size() > 5'000'000) throw CapExceeded("eigen_decomposition: splitting field too large to enumerate");
  std::vector<ExtensionField::value_type> poly;
  for (auto c : mp.poly) poly.push_back(K.embed(c));
  const MatrixFq mk = embed_matrix(K, m);
  EigenData out{K, {}};
  for (std::uint64_t x = 0; x < K.size(); ++x) {
    if (fpoly::eval(K, poly, x) != K.zero()) continue;
    const auto shifted = mk - MatrixFq::scalar(K, m.rows(), x);
    out.eigenvalues.push_back({x, m.rows() - shifted.rank()});
  }
  return out;
}

/// Multiplicative order of an invertible square matrix, searched up to `cap`.
template <FiniteField F>
std::uint64_t matrix_order(const Matrix<F>& m, std::uint64_t cap = 1'000'000) {
  if (!m.invertible()) throw std::domain_error("matrix_order: singular matrix");
  const auto id = Matrix<F>::identity(m.field(), m.rows());
  Matrix<F> acc = m;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    if (acc == id) return k;
    acc = acc * m;
  }
  throw CapExceeded("matrix_order: order above cap");
}

}  // namespace fitlab
