#include "rslat/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "rslat/enumeration.hpp"
#include "rslat/error.hpp"
#include "rslat/field.hpp"
#include "rslat/kernels.hpp"

namespace rslat {

std::vector<std::uint64_t> coset_count_table(const ParityCheckMatrix& h, std::size_t weight,
                                             const WorkLimits& limits, ExecPolicy policy) {
  const std::size_t n = h.length();
  require(weight <= n, "coset count: weight exceeds the length");
  require(binomial(static_cast<unsigned>(n), static_cast<unsigned>(weight)) <
              (BigInt(1) << 63),
          "coset count: C(n,h) does not fit in 64 bits");
  const auto space = h.syndrome_space();
  const BigInt work = BigInt(space.size()) * (weight + 1) * n;
  if (work > limits.max_work) {
    throw WorkLimitExceeded("coset count: q^k * (h+1) * n = " + work.str() +
                            " exceeds the work limit");
  }
  const auto size = space.size();
  std::vector<std::uint64_t> a((weight + 1) * size, 0), b(a.size(), 0);
  a[0] = 1;
  for (std::size_t j = 0; j < n; ++j) {
    kernels::coset_count_layer(space, h.column(j), weight, a, b, policy);
    std::swap(a, b);
  }
  return std::vector<std::uint64_t>(a.begin() + static_cast<std::ptrdiff_t>(weight * size),
                                    a.end());
}

CosetCount count_binary_coset_vectors(const ParityCheckMatrix& h, const Syndrome& u,
                                      std::size_t weight, const WorkLimits& limits,
                                      ExecPolicy policy) {
  require(u.values.size() == h.row_count() && u.modulus == h.modulus(),
          "coset count: syndrome does not match the parity check");
  auto table = coset_count_table(h, weight, limits, policy);
  auto space = h.syndrome_space();
  return CosetCount{u, weight, BigInt(table[space.encode(u.values)])};
}

IntVector sample_dense_shift(std::size_t n, std::size_t weight, std::uint64_t seed) {
  require(weight <= n, "sample_dense_shift: weight exceeds the length");
  SeededRng rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Partial Fisher-Yates: the first `weight` positions form a uniform subset.
  for (std::size_t i = 0; i < weight; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(order[i], order[pick(rng)]);
  }
  IntVector x(n, 0);
  for (std::size_t i = 0; i < weight; ++i) x[order[i]] = 1;
  return x;
}

PigeonholeBound pigeonhole_bound(std::uint64_t q, std::size_t k, std::size_t weight,
                                 std::size_t n) {
  require(weight <= n, "pigeonhole_bound: weight exceeds the length");
  Rational ratio(binomial(static_cast<unsigned>(n), static_cast<unsigned>(weight)),
                 pow(BigInt(q), static_cast<unsigned>(k)));
  return {ratio, floor(ratio), ceil(ratio)};
}

IntMatrix sample_sauer_matrix(std::size_t r, std::size_t n, std::size_t weight,
                              std::uint64_t seed) {
  require(r >= 1 && weight >= 1, "sample_sauer_matrix: r and h must be positive");
  SeededRng rng(seed);
  std::uniform_int_distribution<std::uint64_t> draw(0, 4 * weight * r - 1);
  IntMatrix t(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) t(i, j) = draw(rng) == 0 ? 1 : 0;
  return t;
}

std::optional<std::vector<std::size_t>> hypercube_cover(const IntMatrix& t,
                                                        const std::vector<IntVector>& w) {
  const std::size_t r = t.rows();
  require(r <= 20, "hypercube cover: r must be at most 20");
  const std::size_t targets = std::size_t{1} << r;
  const std::size_t none = w.size();
  std::vector<std::size_t> hit(targets, none);
  std::size_t missing = targets;
  for (std::size_t idx = 0; idx < w.size() && missing > 0; ++idx) {
    auto image = t * std::span<const std::int64_t>(w[idx]);
    std::size_t mask = 0;
    bool binary = true;
    for (std::size_t i = 0; i < r; ++i) {
      if (image[i] == 1) {
        mask |= std::size_t{1} << i;
      } else if (image[i] != 0) {
        binary = false;
        break;
      }
    }
    if (binary && hit[mask] == none) {
      hit[mask] = idx;
      --missing;
    }
  }
  if (missing > 0) return std::nullopt;
  return hit;
}

bool check_hypercube_cover(const IntMatrix& t, const std::vector<IntVector>& w) {
  return hypercube_cover(t, w).has_value();
}

Rational gadget_epsilon(int p, const Rational& alpha) {
  require(p >= 1, "gadget: p must be >= 1");
  Rational eps = 2 * pow(alpha, static_cast<unsigned>(p)) - 1;
  require(eps > 0, "gadget: alpha^p must exceed 1/2");
  return eps;
}

namespace {

std::int64_t v_budget(const LocallyDenseGadget& g) {
  return to_int64(floor(pow(g.alpha, static_cast<unsigned>(g.p)) * g.ell));
}

std::vector<IntVector> enumerate_v(const LocallyDenseGadget& g, const ParityCheckMatrix& h,
                                   const WorkLimits& limits, ExecPolicy policy) {
  return enumerate_coset_ball(h, syndrome(h, g.x), g.p, v_budget(g), limits, policy);
}

}  // namespace

LocallyDenseGadget generate_gadget(int p, const Rational& alpha, std::size_t r, std::uint64_t q,
                                   std::size_t k, std::uint64_t seed,
                                   const GadgetOptions& options) {
  const Rational eps = gadget_epsilon(p, alpha);
  require(r >= 1, "gadget: r must be positive");
  require(k >= 1 && 2 * k <= q, "gadget: desk mode needs 1 <= k <= q/2");
  require(options.retry_limit >= 1, "gadget: retry limit must be positive");
  const auto weight = static_cast<std::size_t>(floor((1 + eps) * k));
  require(weight <= q, "gadget: h = floor((1+eps)k) exceeds q");

  auto h = build_parity_check(q, k);
  LocallyDenseGadget g;
  g.p = p;
  g.alpha = alpha;
  g.q = q;
  g.k = k;
  g.r = r;
  g.h = weight;
  g.ell = static_cast<std::int64_t>(2 * k);
  g.basis = lattice_basis(h);
  if (min_dist_certified_bound(h, p) < g.ell) {
    throw VerificationFailed("gadget: certified minimum distance below ell");
  }

  SeededRng root(seed);
  for (std::size_t attempt = 0; attempt < options.retry_limit; ++attempt) {
    g.attempts = attempt + 1;
    g.x = sample_dense_shift(q, weight, root.split(2 * attempt).seed());
    g.t = sample_sauer_matrix(r, q, weight, root.split(2 * attempt + 1).seed());
    auto v = enumerate_v(g, h, options.limits, options.policy);
    auto hit = hypercube_cover(g.t, v);
    if (!hit) continue;
    g.cover.clear();
    for (auto idx : *hit) g.cover.push_back(v[idx]);
    return g;
  }
  throw VerificationFailed("gadget: hypercube cover failed after " +
                           std::to_string(options.retry_limit) + " attempts");
}

GadgetParameterReport gadget_parameter_report(int p, const Rational& alpha, std::size_t r,
                                              const Rational& delta) {
  GadgetParameterReport rep;
  rep.p = p;
  rep.alpha = alpha;
  rep.epsilon = gadget_epsilon(p, alpha);
  rep.r = r;
  rep.delta = delta;
  require(r >= 1, "parameter report: r must be positive");
  require(delta > 0 && delta < Rational(1, 2), "parameter report: delta must lie in (0, 1/2)");

  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const Rational k_exp = 1 / (Rational(1, 2) - delta);
  rep.k = iroot_ceil(pow(BigInt(r), static_cast<unsigned>(numerator(k_exp))),
                     static_cast<unsigned>(denominator(k_exp)));
  const Rational q_exp = 3 * (1 + rep.epsilon) / rep.epsilon;
  rep.q_lower = iroot_ceil(pow(rep.k, static_cast<unsigned>(numerator(q_exp))),
                           static_cast<unsigned>(denominator(q_exp)));
  if (rep.q_lower < (BigInt(1) << 62)) {
    rep.q = find_prime_at_least(static_cast<std::uint64_t>(std::max<BigInt>(rep.q_lower, 2)));
  }
  rep.h = floor((1 + rep.epsilon) * rep.k);
  rep.ell = 2 * rep.k;

  const double q = rep.q ? static_cast<double>(*rep.q) : rep.q_lower.convert_to<double>();
  const double hd = rep.h.convert_to<double>();
  const double kd = rep.k.convert_to<double>();
  double log_binom = 0;
  for (double i = 0; i < hd; ++i) log_binom += std::log2(q - i) - std::log2(i + 1);
  rep.lhs_log2 = log_binom - std::log2(10.0) - kd * std::log2(q);
  rep.rhs_log2 = std::lgamma(hd + 1) / std::log(2.0) +
                 240.0 * static_cast<double>(r) * std::sqrt(hd) * std::log2(q);
  rep.sauer_condition_holds = rep.lhs_log2 >= rep.rhs_log2;
  return rep;
}

GadgetCheck verify_gadget(const LocallyDenseGadget& g, const WorkLimits& limits,
                          ExecPolicy policy) {
  GadgetCheck check;
  auto h = build_parity_check(g.q, g.k);
  bool certified = 2 * g.k <= g.q && min_dist_certified_bound(h, g.p) >= g.ell;
  auto exact = min_dist_exact(h, g.p, Rational(g.ell - 1), limits, policy);
  bool basis_matches = g.basis.columns == lattice_basis(h).columns;
  check.min_distance = certified && !exact.value_pow_p && basis_matches;

  auto v = enumerate_v(g, h, limits, policy);
  check.v_size = v.size();
  bool covered = check_hypercube_cover(g.t, v);
  bool witnesses = g.cover.size() == (std::size_t{1} << g.r);
  for (std::size_t mask = 0; witnesses && mask < g.cover.size(); ++mask) {
    const auto& w = g.cover[mask];
    if (!std::binary_search(v.begin(), v.end(), w)) witnesses = false;
    auto image = g.t * std::span<const std::int64_t>(w);
    for (std::size_t i = 0; witnesses && i < g.r; ++i) {
      if (image[i] != static_cast<std::int64_t>((mask >> i) & 1)) witnesses = false;
    }
  }
  check.cover = covered && witnesses;
  return check;
}

}  // namespace rslat
