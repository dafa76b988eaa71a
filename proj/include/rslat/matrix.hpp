#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "rslat/rational.hpp"

namespace rslat {

using IntVector = std::vector<std::int64_t>;

// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows);
  static IntMatrix from_columns(const std::vector<IntVector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  std::vector<IntVector> row_list() const;
  std::vector<IntVector> column_list() const;

  IntMatrix transposed() const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntVector operator*(std::span<const std::int64_t> v) const;
  IntMatrix scaled(std::int64_t c) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

// Exact determinant of a square matrix (fraction-free elimination).
BigInt determinant(const IntMatrix& m);

// Rank over the rationals.
std::size_t rank(const IntMatrix& m);

// Integer z with basis * z = v, if one exists (basis columns independent).
std::optional<IntVector> lattice_coordinates(const IntMatrix& basis, std::span<const std::int64_t> v);

// Exact inverse of a nonsingular rational matrix given as rows.
std::vector<std::vector<Rational>> inverse(std::vector<std::vector<Rational>> m);

// B^T B as rationals.
std::vector<std::vector<Rational>> gram(const IntMatrix& basis);

// ||v||_p^p for integer p >= 1.
BigInt norm_pow(std::span<const std::int64_t> v, int p);

}  // namespace rslat
