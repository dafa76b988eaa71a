#pragma once

// Dense cosets, the biased Sauer projection and locally dense gadgets.

#include <cstdint>
#include <optional>
#include <vector>

#include "rslat/config.hpp"
#include "rslat/lattice.hpp"
#include "rslat/matrix.hpp"
#include "rslat/rational.hpp"
#include "rslat/rng.hpp"

namespace rslat {

struct CosetCount {
  Syndrome u;
  std::size_t h = 0;
  BigInt count;
};

CosetCount count_binary_coset_vectors(const ParityCheckMatrix& h, const Syndrome& u,
                                      std::size_t weight, const WorkLimits& limits = {},
                                      ExecPolicy policy = ExecPolicy::Parallel);

// Number of weight-h binary vectors in every coset, indexed like SyndromeSpace.
std::vector<std::uint64_t> coset_count_table(const ParityCheckMatrix& h, std::size_t weight,
                                             const WorkLimits& limits = {},
                                             ExecPolicy policy = ExecPolicy::Parallel);

// Uniform element of B_{n,h}.
IntVector sample_dense_shift(std::size_t n, std::size_t weight, std::uint64_t seed);

struct PigeonholeBound {
  Rational ratio;  // C(n,h) / q^k
  BigInt floor;
  BigInt ceil;
};

PigeonholeBound pigeonhole_bound(std::uint64_t q, std::size_t k, std::size_t weight,
                                 std::size_t n);

inline Rational sauer_bias(std::size_t weight, std::size_t r) {
  return Rational(BigInt(1), BigInt(4 * weight * r));
}

// Binary r x n matrix with i.i.d. entries equal to 1 with probability 1/(4hr).
IntMatrix sample_sauer_matrix(std::size_t r, std::size_t n, std::size_t weight,
                              std::uint64_t seed);

// For each target mask in {0,1}^r (bit i = coordinate i), the index of the
// first w in W with T w equal to it; empty if some target is missed.
std::optional<std::vector<std::size_t>> hypercube_cover(const IntMatrix& t,
                                                        const std::vector<IntVector>& w);

bool check_hypercube_cover(const IntMatrix& t, const std::vector<IntVector>& w);

struct LocallyDenseGadget {
  int p = 1;
  Rational alpha;
  std::uint64_t q = 0;
  std::size_t k = 0;
  std::size_t r = 0;
  std::size_t h = 0;
  std::int64_t ell = 0;
  LatticeBasis basis;
  IntVector x;
  IntMatrix t;
  // cover[mask] is a coset vector v with ||v||_p^p <= alpha^p ell and T v = mask.
  std::vector<IntVector> cover;
  std::size_t attempts = 0;
};

struct GadgetOptions {
  std::size_t retry_limit = 10;
  WorkLimits limits;
  ExecPolicy policy = ExecPolicy::Parallel;
};

// eps = 2 alpha^p - 1; rejects eps <= 0.
Rational gadget_epsilon(int p, const Rational& alpha);

// Desk mode: H_q(k, F_q), ell = 2k, h = floor((1+eps) k), sampled x and T,
// verified against the enumerated set V. Throws VerificationFailed after the
// retry limit.
LocallyDenseGadget generate_gadget(int p, const Rational& alpha, std::size_t r, std::uint64_t q,
                                   std::size_t k, std::uint64_t seed,
                                   const GadgetOptions& options = {});

struct GadgetParameterReport {
  int p = 1;
  Rational alpha;
  Rational epsilon;
  std::size_t r = 0;
  Rational delta;
  BigInt k;
  BigInt q_lower;               // least integer >= k^{3(1+eps)/eps}
  std::optional<std::uint64_t> q;  // least prime >= q_lower, when searchable
  BigInt h;
  BigInt ell;
  // log2 of both sides of C(q,h)/(10 q^k) >= h! q^{240 r sqrt(h)}.
  double lhs_log2 = 0;
  double rhs_log2 = 0;
  bool sauer_condition_holds = false;
};

GadgetParameterReport gadget_parameter_report(int p, const Rational& alpha, std::size_t r,
                                              const Rational& delta);

struct GadgetCheck {
  bool min_distance = false;  // lambda_1^p >= ell, by the certified bound and the DP
  bool cover = false;         // {0,1}^r inside T(V)
  std::size_t v_size = 0;
  bool ok() const { return min_distance && cover; }
};

// Exhaustive re-verification of both items of the definition.
GadgetCheck verify_gadget(const LocallyDenseGadget& gadget, const WorkLimits& limits = {},
                          ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace rslat
