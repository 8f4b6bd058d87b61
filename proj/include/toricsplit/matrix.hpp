#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

#include "toricsplit/error.hpp"
#include "toricsplit/numeric.hpp"

namespace toricsplit {

/// Dense row-major matrix. Sizes are small (desk scale), so no expression
/// templates or storage tricks.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      require(row.size() == cols_, ErrorKind::Input, "ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = T(1);
    return out;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix out(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == cols, ErrorKind::Input, "ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) out(i, j) = rows[i][j];
    }
    return out;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  void set_row(std::size_t i, const std::vector<T>& values) {
    require(values.size() == cols_, ErrorKind::Internal, "row length mismatch");
    std::copy(values.begin(), values.end(), data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  bool is_symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols_ == b.rows_, ErrorKind::Internal, "matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows_; ++i) {
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
      os << '\n';
    }
    return os;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = std::vector<Integer>;

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

inline IntVector row_times(const IntVector& v, const IntMatrix& m) {
  require(v.size() == m.rows(), ErrorKind::Internal, "vector/matrix shape mismatch");
  IntVector out(m.cols(), Integer(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

inline IntVector times_column(const IntMatrix& m, const IntVector& v) {
  require(v.size() == m.cols(), ErrorKind::Internal, "matrix/vector shape mismatch");
  IntVector out(m.rows(), Integer(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

/// u^T G v.
inline Integer bilinear(const IntMatrix& gram, const IntVector& u, const IntVector& v) {
  Integer out = 0;
  for (std::size_t i = 0; i < gram.rows(); ++i) {
    if (u[i] == 0) continue;
    Integer acc = 0;
    for (std::size_t j = 0; j < gram.cols(); ++j) acc += gram(i, j) * v[j];
    out += u[i] * acc;
  }
  return out;
}

/// B G B^T for a basis given as rows of B.
inline IntMatrix congruence(const IntMatrix& basis, const IntMatrix& gram) {
  return basis * gram * basis.transpose();
}

inline Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntMatrix m) {
  require(m.square(), ErrorKind::Internal, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Rank over Q.
template <typename T>
std::size_t rank(const Matrix<T>& input) {
  RatMatrix m(input.rows(), input.cols());
  for (std::size_t i = 0; i < input.rows(); ++i)
    for (std::size_t j = 0; j < input.cols(); ++j) m(i, j) = Rational(input(i, j));
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      const Rational f = m(i, c) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

/// Inverse over Q; throws on singular input.
inline RatMatrix inverse(const RatMatrix& input) {
  require(input.square(), ErrorKind::Internal, "inverse of non-square matrix");
  const std::size_t n = input.rows();
  RatMatrix a = input;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    require(p < n, ErrorKind::Internal, "inverse of singular matrix");
    a.swap_rows(c, p);
    inv.swap_rows(c, p);
    const Rational pivot = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= pivot;
      inv(c, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Inverse of a unimodular integer matrix.
inline IntMatrix unimodular_inverse(const IntMatrix& m) {
  const RatMatrix inv = inverse(to_rational(m));
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_integer(inv(i, j), "unimodular inverse");
  return out;
}

/// Basis (as rows) of the integer kernel {v in Z^n : M v = 0}. The result is
/// saturated: it comes from the trailing columns of a unimodular U with
/// M U = [H | 0].
inline IntMatrix integer_kernel(const IntMatrix& input) {
  const std::size_t n = input.cols();
  IntMatrix m = input;
  IntMatrix u = IntMatrix::identity(n);
  std::size_t pivot_col = 0;

  auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& f) {
    // column dst -= f * column src, applied to m and u.
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= f * m(i, src);
    for (std::size_t i = 0; i < n; ++i) u(i, dst) -= f * u(i, src);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    m.swap_cols(a, b);
    u.swap_cols(a, b);
  };

  for (std::size_t r = 0; r < m.rows() && pivot_col < n; ++r) {
    while (true) {
      // Smallest nonzero |entry| among the active columns of row r.
      std::size_t best = n;
      for (std::size_t c = pivot_col; c < n; ++c) {
        if (m(r, c) == 0) continue;
        if (best == n || abs(m(r, c)) < abs(m(r, best))) best = c;
      }
      if (best == n) break;
      col_swap(pivot_col, best);
      bool done = true;
      for (std::size_t c = pivot_col + 1; c < n; ++c) {
        if (m(r, c) == 0) continue;
        col_axpy(c, pivot_col, floor_div(m(r, c), m(r, pivot_col)));
        if (m(r, c) != 0) done = false;
      }
      if (done) {
        ++pivot_col;
        break;
      }
    }
  }

  IntMatrix kernel(n - pivot_col, n);
  for (std::size_t k = pivot_col; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) kernel(k - pivot_col, i) = u(i, k);
  return kernel;
}

/// Nonzero elementary divisors (Smith normal form diagonal), ascending.
inline std::vector<Integer> elementary_divisors(const IntMatrix& input) {
  IntMatrix m = input;
  std::vector<Integer> divisors;
  std::size_t t = 0;
  const std::size_t rows = m.rows(), cols = m.cols();
  while (t < rows && t < cols) {
    // Pivot: smallest nonzero |entry| in the trailing block.
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m(i, j) != 0 && (pr == rows || abs(m(i, j)) < abs(m(pr, pc)))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    m.swap_rows(t, pr);
    m.swap_cols(t, pc);
    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (m(i, t) == 0) continue;
      const Integer f = floor_div(m(i, t), m(t, t));
      for (std::size_t j = t; j < cols; ++j) m(i, j) -= f * m(t, j);
      if (m(i, t) != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (m(t, j) == 0) continue;
      const Integer f = floor_div(m(t, j), m(t, t));
      for (std::size_t i = t; i < rows; ++i) m(i, j) -= f * m(i, t);
      if (m(t, j) != 0) clean = false;
    }
    if (!clean) continue;
    // Divisibility: fold any trailing entry not divisible by the pivot into row t.
    bool divides = true;
    for (std::size_t i = t + 1; i < rows && divides; ++i)
      for (std::size_t j = t + 1; j < cols; ++j)
        if (m(i, j) % m(t, t) != 0) {
          for (std::size_t k = t; k < cols; ++k) m(t, k) += m(i, k);
          divides = false;
          break;
        }
    if (!divides) continue;
    divisors.push_back(abs(m(t, t)));
    ++t;
  }
  return divisors;
}

/// Z-basis (as rows, echelon form) of the lattice spanned by the rows.
inline IntMatrix lattice_basis(const IntMatrix& input) {
  IntMatrix m = input;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid down column c until a single nonzero entry remains at row r.
    for (;;) {
      std::size_t p = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (m(i, c) != 0 && (p == rows || abs(m(i, c)) < abs(m(p, c)))) p = i;
      if (p == rows) break;
      m.swap_rows(r, p);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (m(i, c) == 0) continue;
        const Integer f = floor_div(m(i, c), m(r, c));
        for (std::size_t j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
        if (m(i, c) != 0) done = false;
      }
      if (done) {
        ++r;
        break;
      }
    }
  }
  IntMatrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = m(i, j);
  return out;
}

/// True when the rows span a saturated (primitive) sublattice of Z^n.
inline bool is_saturated(const IntMatrix& rows) {
  const auto divisors = elementary_divisors(rows);
  if (divisors.size() != rows.rows()) return false;
  return std::all_of(divisors.begin(), divisors.end(), [](const Integer& d) { return d == 1; });
}

/// Some y with w . y = 1, via chained extended gcd; nullopt-like empty vector when gcd(w) != 1.
inline IntVector solve_unit_pairing(const IntVector& w) {
  const std::size_t n = w.size();
  IntVector y(n, Integer(0));
  if (n == 0) return {};
  Integer g = w[0];
  y[0] = 1;
  for (std::size_t i = 1; i < n; ++i) {
    auto [g2, s, t] = extended_gcd(g, w[i]);
    for (std::size_t k = 0; k < i; ++k) y[k] *= s;
    y[i] = t;
    g = g2;
  }
  if (g == -1) {
    for (auto& v : y) v = -v;
    g = 1;
  }
  if (g != 1) return {};
  return y;
}

}  // namespace toricsplit
