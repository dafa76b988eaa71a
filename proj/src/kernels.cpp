#include "rslat/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rslat/error.hpp"

namespace rslat {

SyndromeSpace::SyndromeSpace(std::uint64_t q, std::size_t k, std::uint64_t max_states)
    : q_(q), k_(k), size_(1) {
  require(q >= 2, "SyndromeSpace: modulus must be >= 2");
  for (std::size_t i = 0; i < k; ++i) {
    if (size_ > max_states / q) {
      throw WorkLimitExceeded("syndrome space q^k exceeds " + std::to_string(max_states) +
                              " states");
    }
    size_ *= q;
  }
}

std::uint64_t SyndromeSpace::encode(std::span<const std::uint64_t> digits) const {
  require(digits.size() == k_, "SyndromeSpace::encode: wrong length");
  std::uint64_t index = 0;
  for (std::size_t i = k_; i-- > 0;) index = index * q_ + (digits[i] % q_);
  return index;
}

std::vector<std::uint64_t> SyndromeSpace::decode(std::uint64_t index) const {
  std::vector<std::uint64_t> digits(k_);
  for (std::size_t i = 0; i < k_; ++i) {
    digits[i] = index % q_;
    index /= q_;
  }
  return digits;
}

std::uint64_t SyndromeSpace::add(std::uint64_t index, std::span<const std::uint64_t> w) const {
  auto digits = decode(index);
  for (std::size_t i = 0; i < k_; ++i) digits[i] = (digits[i] + w[i]) % q_;
  return encode(digits);
}

std::vector<std::uint64_t> SyndromeSpace::scale(std::span<const std::uint64_t> w,
                                                std::uint64_t r) const {
  std::vector<std::uint64_t> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[i] = static_cast<std::uint64_t>((static_cast<unsigned __int128>(w[i]) * r) % q_);
  }
  return out;
}

namespace kernels {
namespace {

// Per-digit lookup: contribution of digit d of (s + w) to the target index.
struct Translation {
  std::vector<std::uint64_t> table;  // k * q entries

  Translation(const SyndromeSpace& space, std::span<const std::uint64_t> w) {
    const auto q = space.modulus();
    const auto k = space.dimension();
    table.resize(k * q);
    std::uint64_t place = 1;
    for (std::size_t d = 0; d < k; ++d) {
      for (std::uint64_t a = 0; a < q; ++a) table[d * q + a] = ((a + w[d]) % q) * place;
      place *= q;
    }
  }
};

// Calls fn(source_index, target_index) for every state, in index order within
// each outer block. Outer blocks (all digits but the lowest) are independent.
template <typename Fn>
inline void for_each_in_block(const SyndromeSpace& space, const Translation& t,
                              std::uint64_t outer, Fn&& fn) {
  const auto q = space.modulus();
  const auto k = space.dimension();
  if (k == 0) {
    fn(0, 0);
    return;
  }
  std::uint64_t base = 0;
  std::uint64_t rest = outer;
  for (std::size_t d = 1; d < k; ++d) {
    base += t.table[d * q + rest % q];
    rest /= q;
  }
  const std::uint64_t first = outer * q;
  for (std::uint64_t a = 0; a < q; ++a) fn(first + a, base + t.table[a]);
}

inline std::uint64_t outer_blocks(const SyndromeSpace& space) {
  return space.dimension() == 0 ? 1 : space.size() / space.modulus();
}

}  // namespace

void min_plus_layer(const SyndromeSpace& space, std::span<const std::uint64_t> column,
                    std::span<const Cost> residue_cost, std::span<const Cost> next,
                    std::span<Cost> out, ExecPolicy policy) {
  const auto q = space.modulus();
  const auto size = space.size();
  require(residue_cost.size() == q && next.size() == size && out.size() == size,
          "min_plus_layer: size mismatch");

  if (policy == ExecPolicy::Serial) {
    for (std::uint64_t s = 0; s < size; ++s) {
      Cost best = kInfCost;
      for (std::uint64_t r = 0; r < q; ++r) {
        if (residue_cost[r] == kInfCost) continue;
        auto w = space.scale(column, r);
        best = std::min(best, saturating_add(residue_cost[r], next[space.add(s, w)]));
      }
      out[s] = best;
    }
    return;
  }

  std::vector<std::uint64_t> residues;
  std::vector<Translation> shifts;
  for (std::uint64_t r = 0; r < q; ++r) {
    if (residue_cost[r] == kInfCost) continue;
    residues.push_back(r);
    shifts.emplace_back(space, space.scale(column, r));
  }
  const auto blocks = static_cast<std::int64_t>(outer_blocks(space));
#pragma omp parallel for schedule(static)
  for (std::int64_t o = 0; o < blocks; ++o) {
    const auto outer = static_cast<std::uint64_t>(o);
    const std::uint64_t first = space.dimension() == 0 ? 0 : outer * q;
    const std::uint64_t width = space.dimension() == 0 ? 1 : q;
    std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(first), width, kInfCost);
    for (std::size_t i = 0; i < residues.size(); ++i) {
      const Cost c = residue_cost[residues[i]];
      for_each_in_block(space, shifts[i], outer, [&](std::uint64_t s, std::uint64_t target) {
        Cost v = saturating_add(c, next[target]);
        if (v < out[s]) out[s] = v;
      });
    }
  }
}

void coset_count_layer(const SyndromeSpace& space, std::span<const std::uint64_t> column,
                       std::size_t max_weight, std::span<const std::uint64_t> in,
                       std::span<std::uint64_t> out, ExecPolicy policy) {
  const auto size = space.size();
  require(in.size() == (max_weight + 1) * size && out.size() == in.size(),
          "coset_count_layer: size mismatch");
  std::vector<std::uint64_t> minus(column.size());
  for (std::size_t i = 0; i < column.size(); ++i) {
    minus[i] = (space.modulus() - column[i] % space.modulus()) % space.modulus();
  }

  if (policy == ExecPolicy::Serial) {
    for (std::size_t w = 0; w <= max_weight; ++w) {
      for (std::uint64_t s = 0; s < size; ++s) {
        std::uint64_t v = in[w * size + s];
        if (w > 0) v += in[(w - 1) * size + space.add(s, minus)];
        out[w * size + s] = v;
      }
    }
    return;
  }

  const Translation back(space, minus);
  const auto blocks = static_cast<std::int64_t>(outer_blocks(space));
  for (std::size_t w = 0; w <= max_weight; ++w) {
    const std::uint64_t* cur = in.data() + w * size;
    const std::uint64_t* prev = w > 0 ? in.data() + (w - 1) * size : nullptr;
    std::uint64_t* dst = out.data() + w * size;
#pragma omp parallel for schedule(static)
    for (std::int64_t o = 0; o < blocks; ++o) {
      for_each_in_block(space, back, static_cast<std::uint64_t>(o),
                        [&](std::uint64_t s, std::uint64_t source) {
                          dst[s] = cur[s] + (prev ? prev[source] : 0);
                        });
    }
  }
}

void sequence_count_step(const SyndromeSpace& space,
                         std::span<const std::vector<std::uint64_t>> columns,
                         std::span<const std::uint64_t> in, std::span<std::uint64_t> out,
                         ExecPolicy policy) {
  const auto size = space.size();
  const auto q = space.modulus();
  require(in.size() == size && out.size() == size, "sequence_count_step: size mismatch");
  std::vector<std::vector<std::uint64_t>> minus;
  for (const auto& c : columns) {
    std::vector<std::uint64_t> m(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) m[i] = (q - c[i] % q) % q;
    minus.push_back(std::move(m));
  }

  if (policy == ExecPolicy::Serial) {
    for (std::uint64_t s = 0; s < size; ++s) {
      std::uint64_t total = 0;
      for (const auto& m : minus) total += in[space.add(s, m)];
      out[s] = total;
    }
    return;
  }

  std::vector<Translation> shifts;
  for (const auto& m : minus) shifts.emplace_back(space, m);
  const auto blocks = static_cast<std::int64_t>(outer_blocks(space));
#pragma omp parallel for schedule(static)
  for (std::int64_t o = 0; o < blocks; ++o) {
    const auto outer = static_cast<std::uint64_t>(o);
    const std::uint64_t first = space.dimension() == 0 ? 0 : outer * q;
    const std::uint64_t width = space.dimension() == 0 ? 1 : q;
    for (std::uint64_t a = 0; a < width; ++a) out[first + a] = 0;
    for (const auto& t : shifts) {
      for_each_in_block(space, t, outer,
                        [&](std::uint64_t s, std::uint64_t source) { out[s] += in[source]; });
    }
  }
}

std::vector<std::complex<double>> character_sum_table(const SyndromeSpace& space,
                                                      ExecPolicy policy) {
  const auto q = space.modulus();
  const auto k = space.dimension();
  const auto size = space.size();
  require(k <= 64, "character_sum_table: dimension too large");
  std::vector<std::complex<double>> roots(q);
  for (std::uint64_t j = 0; j < q; ++j) {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(q);
    roots[j] = {std::cos(angle), std::sin(angle)};
  }
  std::vector<std::complex<double>> out(size);

  auto eval = [&](std::span<const std::uint64_t> u, std::uint64_t a) {
    std::uint64_t acc = 0;
    for (std::size_t i = k; i-- > 0;) acc = (acc * a + u[i]) % q;
    return acc;
  };

  if (policy == ExecPolicy::Serial) {
    for (std::uint64_t idx = 0; idx < size; ++idx) {
      auto u = space.decode(idx);
      std::complex<double> total = 0;
      for (std::uint64_t a = 0; a < q; ++a) total += roots[eval(u, a)];
      out[idx] = total;
    }
    return out;
  }

  // Powers table a^i mod q so each term is a dot product.
  std::vector<std::uint64_t> powers(q * std::max<std::size_t>(k, 1));
  for (std::uint64_t a = 0; a < q; ++a) {
    std::uint64_t p = 1;
    for (std::size_t i = 0; i < k; ++i) {
      powers[a * k + i] = p;
      p = (p * a) % q;
    }
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(size); ++i) {
    auto idx = static_cast<std::uint64_t>(i);
    std::uint64_t digits[64];
    std::uint64_t rest = idx;
    for (std::size_t d = 0; d < k; ++d) {
      digits[d] = rest % q;
      rest /= q;
    }
    std::complex<double> total = 0;
    for (std::uint64_t a = 0; a < q; ++a) {
      std::uint64_t acc = 0;
      for (std::size_t d = 0; d < k; ++d) acc += digits[d] * powers[a * k + d];
      total += roots[acc % q];
    }
    out[idx] = total;
  }
  return out;
}

}  // namespace kernels
}  // namespace rslat
