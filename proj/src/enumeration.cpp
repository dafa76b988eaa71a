#include "rslat/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "rslat/error.hpp"
#include "rslat/kernels.hpp"

namespace rslat {

std::uint64_t for_each_coset_vector(
    const ParityCheckMatrix& h, const Syndrome& target, int p, std::int64_t budget_pow_p,
    const std::function<void(const IntVector&, std::int64_t norm_pow_p)>& visit,
    const WorkLimits& limits, ExecPolicy policy) {
  require(p >= 1, "coset enumeration: p must be >= 1");
  require(target.values.size() == h.row_count() && target.modulus == h.modulus(),
          "coset enumeration: syndrome does not match the parity check");
  if (budget_pow_p < 0) return 0;
  if (budget_pow_p >= kInfCost) {
    throw WorkLimitExceeded("coset enumeration: budget exceeds the 16-bit cost range");
  }
  const auto space = h.syndrome_space();
  const std::size_t n = h.length();
  const auto q = h.modulus();
  const BigInt work = BigInt(space.size()) * n * q;
  if (work > limits.max_work) {
    throw WorkLimitExceeded("coset enumeration: cost-to-go table exceeds the work limit");
  }

  std::int64_t zmax = 0;
  while (pow(BigInt(zmax + 1), static_cast<unsigned>(p)) <= budget_pow_p) ++zmax;
  std::vector<std::int64_t> cost(2 * zmax + 1);
  for (std::int64_t z = -zmax; z <= zmax; ++z) {
    cost[z + zmax] = static_cast<std::int64_t>(pow(BigInt(std::llabs(z)), static_cast<unsigned>(p)));
  }
  std::vector<Cost> residue_cost(q, kInfCost);
  for (std::int64_t z = -zmax; z <= zmax; ++z) {
    auto r = h.field().reduce(z);
    residue_cost[r] = std::min<Cost>(residue_cost[r], static_cast<Cost>(cost[z + zmax]));
  }

  std::vector<std::vector<Cost>> g(n + 1, std::vector<Cost>(space.size(), kInfCost));
  g[n][space.encode(target.values)] = 0;
  for (std::size_t j = n; j-- > 0;) {
    kernels::min_plus_layer(space, h.column(j), residue_cost, g[j + 1], g[j], policy);
  }
  if (g[0][0] == kInfCost || g[0][0] > budget_pow_p) return 0;

  IntVector x(n, 0);
  std::uint64_t found = 0;
  std::uint64_t nodes = 0;

  std::function<void(std::size_t, std::uint64_t, std::int64_t)> walk =
      [&](std::size_t j, std::uint64_t state, std::int64_t remaining) {
        if (++nodes > limits.max_work) {
          throw WorkLimitExceeded("coset enumeration: node count exceeds the work limit");
        }
        if (j == n) {
          ++found;
          visit(x, budget_pow_p - remaining);
          return;
        }
        for (std::int64_t z = -zmax; z <= zmax; ++z) {
          std::int64_t c = cost[z + zmax];
          if (c > remaining) continue;
          auto next = space.add(state, space.scale(h.column(j), h.field().reduce(z)));
          if (g[j + 1][next] == kInfCost || g[j + 1][next] > remaining - c) continue;
          x[j] = z;
          walk(j + 1, next, remaining - c);
          x[j] = 0;
        }
      };
  walk(0, 0, budget_pow_p);
  return found;
}

std::vector<IntVector> enumerate_coset_ball(const ParityCheckMatrix& h, const Syndrome& target,
                                            int p, std::int64_t budget_pow_p,
                                            const WorkLimits& limits, ExecPolicy policy) {
  std::vector<IntVector> out;
  for_each_coset_vector(
      h, target, p, budget_pow_p, [&](const IntVector& v, std::int64_t) { out.push_back(v); },
      limits, policy);
  return out;
}

Rational distance_sq_to_span(const IntMatrix& basis, std::span<const std::int64_t> target) {
  require(target.size() == basis.rows(), "distance_sq_to_span: dimension mismatch");
  const std::size_t r = basis.cols();
  auto ginv = inverse(gram(basis));
  std::vector<Rational> bt(r);
  for (std::size_t j = 0; j < r; ++j) {
    BigInt s = 0;
    for (std::size_t i = 0; i < basis.rows(); ++i) s += BigInt(basis(i, j)) * target[i];
    bt[j] = Rational(s);
  }
  Rational total = 0;
  for (auto v : target) total += Rational(BigInt(v) * v);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) total -= bt[a] * ginv[a][b] * bt[b];
  return total;
}

namespace {

bool lex_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Keeps the better of two candidates: smaller norm, then smaller coefficients.
void merge_best(CloseVectorResult& into, const CloseVectorResult& other) {
  into.nodes += other.nodes;
  if (!other.min_pow_p) return;
  if (!into.min_pow_p || *other.min_pow_p < *into.min_pow_p ||
      (*other.min_pow_p == *into.min_pow_p && lex_less(other.coefficients, into.coefficients))) {
    into.min_pow_p = other.min_pow_p;
    into.coefficients = other.coefficients;
    into.vector = other.vector;
  }
}

double l2_radius_sq(const Rational& radius_pow_p, int p, std::size_t d) {
  // ||x||_2 <= d^{max(0, 1/2 - 1/p)} ||x||_p.
  double rp = std::pow(to_double(radius_pow_p), 2.0 / p);
  double factor = std::pow(static_cast<double>(d), std::max(0.0, 1.0 - 2.0 / p));
  return rp * factor;
}

struct FinckePohst {
  const IntMatrix& basis;
  std::span<const std::int64_t> target;
  int p;
  bool exclude_zero;
  std::uint64_t max_work;
  std::size_t r;
  std::vector<std::vector<double>> chol;  // upper triangular R with G = R^T R
  std::vector<double> center;             // real coefficients of the projection of t
  double perp_sq;
  std::atomic<bool>* aborted;

  struct State {
    Rational radius;
    double budget_sq;
    IntVector c;
    CloseVectorResult best;
  };

  void leaf(State& s) const {
    if (exclude_zero && std::all_of(s.c.begin(), s.c.end(), [](auto v) { return v == 0; })) return;
    IntVector v = basis * std::span<const std::int64_t>(s.c);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= target[i];
    BigInt norm = norm_pow(v, p);
    if (Rational(norm) > s.radius) return;
    if (!s.best.min_pow_p || norm < *s.best.min_pow_p ||
        (norm == *s.best.min_pow_p && lex_less(s.c, s.best.coefficients))) {
      s.best.min_pow_p = norm;
      s.best.coefficients = s.c;
      s.best.vector = v;
      s.radius = Rational(norm);
      s.budget_sq = budget_for(s.radius);
    }
  }

  double budget_for(const Rational& radius) const {
    double b = l2_radius_sq(radius, p, basis.rows()) - perp_sq;
    return b * (1 + 1e-9) + 1e-9;
  }

  // Level i is being chosen; partial is the squared length contributed by levels > i.
  void search(State& s, std::size_t i, double partial) const {
    if (aborted->load(std::memory_order_relaxed)) return;
    if (++s.best.nodes > max_work) {
      aborted->store(true);
      return;
    }
    double offset = 0;
    for (std::size_t j = i + 1; j < r; ++j) offset += chol[i][j] * (s.c[j] - center[j]);
    double mid = center[i] - offset / chol[i][i];
    double rem = s.budget_sq - partial;
    if (rem < 0) return;
    double half = std::sqrt(rem) / chol[i][i] + 1e-9;
    auto lo = static_cast<std::int64_t>(std::ceil(mid - half));
    auto hi = static_cast<std::int64_t>(std::floor(mid + half));
    for (std::int64_t v = lo; v <= hi; ++v) {
      double y = chol[i][i] * (v - mid);
      double next = partial + y * y;
      if (next > s.budget_sq) continue;
      s.c[i] = v;
      if (i == 0) {
        leaf(s);
      } else {
        search(s, i - 1, next);
      }
      s.c[i] = 0;
    }
  }
};

}  // namespace

CloseVectorResult close_vector_search(const IntMatrix& basis, std::span<const std::int64_t> target,
                                      int p, const Rational& radius_pow_p, bool exclude_zero,
                                      const WorkLimits& limits, ExecPolicy policy) {
  require(p >= 1, "close_vector_search: p must be >= 1");
  require(target.size() == basis.rows(), "close_vector_search: dimension mismatch");
  const std::size_t r = basis.cols();
  require(r >= 1, "close_vector_search: empty basis");
  require(rank(basis) == r, "close_vector_search: basis columns are dependent");

  auto g = gram(basis);
  std::vector<std::vector<double>> chol(r, std::vector<double>(r, 0.0));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i; j < r; ++j) {
      double s = to_double(g[i][j]);
      for (std::size_t k = 0; k < i; ++k) s -= chol[k][i] * chol[k][j];
      if (i == j) {
        if (s <= 0) throw VerificationFailed("close_vector_search: Gram matrix not positive");
        chol[i][i] = std::sqrt(s);
      } else {
        chol[i][j] = s / chol[i][i];
      }
    }
  }
  auto ginv = inverse(g);
  std::vector<Rational> bt(r);
  for (std::size_t j = 0; j < r; ++j) {
    BigInt s = 0;
    for (std::size_t i = 0; i < basis.rows(); ++i) s += BigInt(basis(i, j)) * target[i];
    bt[j] = Rational(s);
  }
  std::vector<double> center(r, 0.0);
  for (std::size_t a = 0; a < r; ++a) {
    Rational s = 0;
    for (std::size_t b = 0; b < r; ++b) s += ginv[a][b] * bt[b];
    center[a] = to_double(s);
  }

  std::atomic<bool> aborted{false};
  FinckePohst fp{basis, target, p, exclude_zero, limits.max_work, r, chol, center,
                 to_double(distance_sq_to_span(basis, target)), &aborted};
  CloseVectorResult result;
  result.l2_radius = std::sqrt(std::max(0.0, l2_radius_sq(radius_pow_p, p, basis.rows())));

  const double top_budget = fp.budget_for(radius_pow_p);
  if (top_budget < 0) return result;
  const std::size_t top = r - 1;
  double half = std::sqrt(top_budget) / chol[top][top] + 1e-9;
  auto lo = static_cast<std::int64_t>(std::ceil(center[top] - half));
  auto hi = static_cast<std::int64_t>(std::floor(center[top] + half));
  const std::int64_t count = hi >= lo ? hi - lo + 1 : 0;

  std::vector<CloseVectorResult> partials(static_cast<std::size_t>(count));
  auto run = [&](std::int64_t idx) {
    FinckePohst::State s{radius_pow_p, top_budget, IntVector(r, 0), {}};
    std::int64_t v = lo + idx;
    double y = chol[top][top] * (v - center[top]);
    if (y * y <= top_budget) {
      s.c[top] = v;
      if (top == 0) {
        fp.leaf(s);
      } else {
        fp.search(s, top - 1, y * y);
      }
    }
    partials[static_cast<std::size_t>(idx)] = std::move(s.best);
  };
  if (policy == ExecPolicy::Serial) {
    for (std::int64_t idx = 0; idx < count; ++idx) run(idx);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t idx = 0; idx < count; ++idx) run(idx);
  }
  if (aborted.load()) {
    throw WorkLimitExceeded("close_vector_search: node count exceeds the work limit");
  }
  for (const auto& part : partials) merge_best(result, part);
  return result;
}

CloseVectorResult box_vector_search(const IntMatrix& basis, std::span<const std::int64_t> target,
                                    int p, const Rational& radius_pow_p, bool exclude_zero,
                                    std::int64_t box, const WorkLimits& limits) {
  require(target.size() == basis.rows(), "box_vector_search: dimension mismatch");
  require(box >= 0, "box_vector_search: negative box");
  const std::size_t r = basis.cols();
  BigInt total = pow(BigInt(2 * box + 1), static_cast<unsigned>(r));
  if (total > limits.max_work) {
    throw WorkLimitExceeded("box_vector_search: box has " + total.str() + " points");
  }
  CloseVectorResult result;
  IntVector c(r, -box);
  while (true) {
    ++result.nodes;
    bool zero = std::all_of(c.begin(), c.end(), [](auto v) { return v == 0; });
    if (!(exclude_zero && zero)) {
      IntVector v = basis * std::span<const std::int64_t>(c);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= target[i];
      BigInt norm = norm_pow(v, p);
      if (Rational(norm) <= radius_pow_p &&
          (!result.min_pow_p || norm < *result.min_pow_p ||
           (norm == *result.min_pow_p && lex_less(c, result.coefficients)))) {
        result.min_pow_p = norm;
        result.coefficients = c;
        result.vector = v;
      }
    }
    std::size_t i = 0;
    while (i < r && c[i] == box) c[i++] = -box;
    if (i == r) break;
    ++c[i];
  }
  return result;
}

}  // namespace rslat
