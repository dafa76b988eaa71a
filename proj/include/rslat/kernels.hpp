#pragma once

// Data-parallel kernels over the syndrome space F_q^k.
//
// Every kernel has two implementations selected by ExecPolicy: a plain serial
// reference that decodes each state digit by digit, and a table-driven OpenMP
// version. Tests require the two to agree bit for bit.

#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "rslat/config.hpp"

namespace rslat {

using Cost = std::uint16_t;
inline constexpr Cost kInfCost = std::numeric_limits<Cost>::max();

inline Cost saturating_add(Cost a, Cost b) {
  std::uint32_t s = std::uint32_t{a} + b;
  return s >= kInfCost ? kInfCost : static_cast<Cost>(s);
}

// Mixed-radix indexing of F_q^k: index = sum_i u_i q^i.
class SyndromeSpace {
 public:
  SyndromeSpace(std::uint64_t q, std::size_t k, std::uint64_t max_states = 1ULL << 32);

  std::uint64_t modulus() const { return q_; }
  std::size_t dimension() const { return k_; }
  std::uint64_t size() const { return size_; }

  std::uint64_t encode(std::span<const std::uint64_t> digits) const;
  std::vector<std::uint64_t> decode(std::uint64_t index) const;
  // index(s + w) computed digit by digit.
  std::uint64_t add(std::uint64_t index, std::span<const std::uint64_t> w) const;
  // Residue r times a vector, reduced mod q.
  std::vector<std::uint64_t> scale(std::span<const std::uint64_t> w, std::uint64_t r) const;

 private:
  std::uint64_t q_;
  std::size_t k_;
  std::uint64_t size_;
};

namespace kernels {

// out[s] = min_r residue_cost[r] + next[s + r * column], saturating at kInfCost.
void min_plus_layer(const SyndromeSpace& space, std::span<const std::uint64_t> column,
                    std::span<const Cost> residue_cost, std::span<const Cost> next,
                    std::span<Cost> out, ExecPolicy policy);

// One coordinate of the binary-vector counting DP over (weight, syndrome):
// out[w][s] = in[w][s] + in[w-1][s - column]. Layers are stored weight-major.
void coset_count_layer(const SyndromeSpace& space, std::span<const std::uint64_t> column,
                       std::size_t max_weight, std::span<const std::uint64_t> in,
                       std::span<std::uint64_t> out, ExecPolicy policy);

// out[s] = sum over all columns c of in[s - c].
void sequence_count_step(const SyndromeSpace& space,
                         std::span<const std::vector<std::uint64_t>> columns,
                         std::span<const std::uint64_t> in, std::span<std::uint64_t> out,
                         ExecPolicy policy);

// sum_{a in F_q} exp(2 pi i poly(a) / q) for each coefficient vector u in
// F_q^k (polynomial sum_i u_i x^i), indexed like SyndromeSpace.
std::vector<std::complex<double>> character_sum_table(const SyndromeSpace& space,
                                                      ExecPolicy policy);

}  // namespace kernels
}  // namespace rslat
