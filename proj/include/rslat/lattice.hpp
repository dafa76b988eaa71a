#pragma once

// Vandermonde parity checks H_q(k, S) and their Construction-A lattices.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rslat/config.hpp"
#include "rslat/field.hpp"
#include "rslat/kernels.hpp"
#include "rslat/matrix.hpp"
#include "rslat/rational.hpp"

namespace rslat {

class ParityCheckMatrix {
 public:
  ParityCheckMatrix(const PrimeField& field, std::size_t k, std::vector<std::uint64_t> points);

  const PrimeField& field() const { return field_; }
  std::uint64_t modulus() const { return field_.modulus(); }
  std::size_t row_count() const { return k_; }
  std::size_t length() const { return points_.size(); }
  const std::vector<std::uint64_t>& points() const { return points_; }

  // Entry (i, j) = S_j^i with 0^0 = 1.
  std::uint64_t entry(std::size_t i, std::size_t j) const { return columns_[j][i]; }
  const std::vector<std::uint64_t>& column(std::size_t j) const { return columns_[j]; }
  std::vector<std::vector<std::uint64_t>> rows() const;
  SyndromeSpace syndrome_space(std::uint64_t max_states = 1ULL << 32) const {
    return SyndromeSpace(modulus(), k_, max_states);
  }

  friend bool operator==(const ParityCheckMatrix&, const ParityCheckMatrix&) = default;

 private:
  PrimeField field_;
  std::size_t k_;
  std::vector<std::uint64_t> points_;
  std::vector<std::vector<std::uint64_t>> columns_;
};

// S = F_q in ascending order when points is empty.
ParityCheckMatrix build_parity_check(std::uint64_t q, std::size_t k,
                                     std::vector<std::uint64_t> points = {});

struct Syndrome {
  std::uint64_t modulus = 0;
  std::vector<std::uint64_t> values;
  bool is_zero() const;
  friend bool operator==(const Syndrome&, const Syndrome&) = default;
};

Syndrome syndrome(const ParityCheckMatrix& h, std::span<const std::int64_t> x);

struct LatticeBasis {
  IntMatrix columns;  // n x n, lower triangular when produced by lattice_basis
  std::optional<ParityCheckMatrix> source;
  bool rows_dependent = false;

  std::size_t dimension() const { return columns.rows(); }
  std::size_t rank() const { return columns.cols(); }
  BigInt abs_determinant() const;
};

// Hermite normal form of the generating set (lifted kernel | qI).
LatticeBasis lattice_basis(const ParityCheckMatrix& h);

// Column-style lower-triangular HNF of an integer generating set of full row rank.
IntMatrix hermite_normal_form(const std::vector<std::vector<BigInt>>& generators_by_column,
                              std::size_t n);

struct MinDistResult {
  int p = 1;
  Rational budget;
  std::optional<BigInt> value_pow_p;  // empty: exceeds budget
  IntVector witness;
};

MinDistResult min_dist_exact(const ParityCheckMatrix& h, int p, const Rational& budget,
                             const WorkLimits& limits = {},
                             ExecPolicy policy = ExecPolicy::Parallel);

Rational min_dist_certified_bound(const ParityCheckMatrix& h, int p);

// u = (k, 0, ..., 0) and the indicators of the cosets of the order-k subgroup
// of F_q^*, with S = F_q in natural order.
std::pair<Syndrome, std::vector<IntVector>> roots_of_unity_coset_vectors(std::uint64_t q,
                                                                         std::size_t k);

}  // namespace rslat
