#include "rslat/matrix.hpp"

#include <cstdlib>

#include "rslat/error.hpp"

namespace rslat {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, "IntMatrix: ragged rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  if (rows.empty()) return IntMatrix();
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == m.cols(), "IntMatrix: ragged rows");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns) {
  if (columns.empty()) return IntMatrix();
  IntMatrix m(columns[0].size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    require(columns[j].size() == m.rows(), "IntMatrix: ragged columns");
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<IntVector> IntMatrix::row_list() const {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

std::vector<IntVector> IntMatrix::column_list() const {
  std::vector<IntVector> out;
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  require(cols_ == o.rows_, "IntMatrix: dimension mismatch in product");
  IntMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      std::int64_t a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
    }
  return out;
}

IntVector IntMatrix::operator*(std::span<const std::int64_t> v) const {
  require(v.size() == cols_, "IntMatrix: dimension mismatch in matrix-vector product");
  IntVector out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

IntMatrix IntMatrix::scaled(std::int64_t c) const {
  IntMatrix out = *this;
  for (auto& v : out.data_) v *= c;
  return out;
}

BigInt determinant(const IntMatrix& m) {
  require(m.rows() == m.cols(), "determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

namespace {

// Row-echelon form over Q; returns the pivot columns.
std::vector<std::size_t> echelon(std::vector<std::vector<Rational>>& a) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[r], a[p]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const IntMatrix& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  return echelon(a).size();
}

std::optional<IntVector> lattice_coordinates(const IntMatrix& basis,
                                             std::span<const std::int64_t> v) {
  require(v.size() == basis.rows(), "lattice_coordinates: dimension mismatch");
  const std::size_t rows = basis.rows();
  const std::size_t cols = basis.cols();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = basis(i, j);
    a[i][cols] = v[i];
  }
  auto pivots = echelon(a);
  require(pivots.size() == cols || (!pivots.empty() && pivots.back() == cols),
          "lattice_coordinates: basis columns are dependent");
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;  // inconsistent
  IntVector z(cols);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    Rational value = a[r][cols] / a[r][pivots[r]];
    if (boost::multiprecision::denominator(value) != 1) return std::nullopt;
    z[pivots[r]] = to_int64(boost::multiprecision::numerator(value));
  }
  return z;
}

std::vector<std::vector<Rational>> inverse(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  for (auto& row : m) {
    require(row.size() == n, "inverse: matrix not square");
    row.resize(2 * n, Rational(0));
  }
  for (std::size_t i = 0; i < n; ++i) m[i][n + i] = 1;
  auto pivots = echelon(m);
  require(pivots.size() == n && (n == 0 || pivots.back() == n - 1), "inverse: matrix is singular");
  std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = m[i][n + j] / m[i][i];
  return out;
}

std::vector<std::vector<Rational>> gram(const IntMatrix& basis) {
  const std::size_t n = basis.cols();
  std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      BigInt s = 0;
      for (std::size_t i = 0; i < basis.rows(); ++i) s += BigInt(basis(i, a)) * basis(i, b);
      g[a][b] = g[b][a] = Rational(s);
    }
  return g;
}

BigInt norm_pow(std::span<const std::int64_t> v, int p) {
  require(p >= 1, "norm_pow: p must be >= 1");
  BigInt total = 0;
  for (auto x : v) total += pow(BigInt(std::llabs(x)), static_cast<unsigned>(p));
  return total;
}

}  // namespace rslat
