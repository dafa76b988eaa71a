#pragma once

// Exhaustive enumerators used as exact oracles.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rslat/config.hpp"
#include "rslat/lattice.hpp"
#include "rslat/matrix.hpp"
#include "rslat/rational.hpp"

namespace rslat {

// Visits every x in Z^n with Hx = target and ||x||_p^p <= budget, in
// lexicographic order. Pruned by a cost-to-go table so that every visited
// prefix extends to at least one solution. Returns the number of vectors.
std::uint64_t for_each_coset_vector(
    const ParityCheckMatrix& h, const Syndrome& target, int p, std::int64_t budget_pow_p,
    const std::function<void(const IntVector&, std::int64_t norm_pow_p)>& visit,
    const WorkLimits& limits = {}, ExecPolicy policy = ExecPolicy::Parallel);

std::vector<IntVector> enumerate_coset_ball(const ParityCheckMatrix& h, const Syndrome& target,
                                            int p, std::int64_t budget_pow_p,
                                            const WorkLimits& limits = {},
                                            ExecPolicy policy = ExecPolicy::Parallel);

struct CloseVectorResult {
  std::optional<BigInt> min_pow_p;  // empty: nothing within the radius
  IntVector coefficients;
  IntVector vector;                  // basis * coefficients - target
  double l2_radius = 0;              // search radius actually used
  std::uint64_t nodes = 0;
};

// Minimum of ||B c - t||_p^p over integer c (c != 0 when exclude_zero) among
// points with ||B c - t||_p^p <= radius_pow_p. Fincke-Pohst enumeration on an
// l2 ball that contains the l_p ball; candidate norms are compared exactly.
// Ties go to the lexicographically smallest coefficient vector.
CloseVectorResult close_vector_search(const IntMatrix& basis, std::span<const std::int64_t> target,
                                      int p, const Rational& radius_pow_p, bool exclude_zero,
                                      const WorkLimits& limits = {},
                                      ExecPolicy policy = ExecPolicy::Parallel);

// Plain box enumeration |c_i| <= box over the same objective; independent
// second route for testing close_vector_search.
CloseVectorResult box_vector_search(const IntMatrix& basis, std::span<const std::int64_t> target,
                                    int p, const Rational& radius_pow_p, bool exclude_zero,
                                    std::int64_t box, const WorkLimits& limits = {});

// Squared Euclidean distance from t to the real span of the basis columns.
Rational distance_sq_to_span(const IntMatrix& basis, std::span<const std::int64_t> target);

}  // namespace rslat
