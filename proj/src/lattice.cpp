#include "rslat/lattice.hpp"

#include <algorithm>
#include <set>

#include "rslat/error.hpp"

namespace rslat {

ParityCheckMatrix::ParityCheckMatrix(const PrimeField& field, std::size_t k,
                                     std::vector<std::uint64_t> points)
    : field_(field), k_(k), points_(std::move(points)) {
  require(k >= 1, "parity check: k must be >= 1");
  std::set<std::uint64_t> seen;
  for (auto& s : points_) {
    require(s < field_.modulus(), "parity check: point is not a residue");
    require(seen.insert(s).second, "parity check: duplicate evaluation point");
  }
  columns_.reserve(points_.size());
  for (auto s : points_) {
    std::vector<std::uint64_t> col(k_);
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < k_; ++i) {
      col[i] = v;
      v = field_.mul(v, s);
    }
    columns_.push_back(std::move(col));
  }
}

std::vector<std::vector<std::uint64_t>> ParityCheckMatrix::rows() const {
  std::vector<std::vector<std::uint64_t>> out(k_, std::vector<std::uint64_t>(points_.size()));
  for (std::size_t j = 0; j < points_.size(); ++j)
    for (std::size_t i = 0; i < k_; ++i) out[i][j] = columns_[j][i];
  return out;
}

ParityCheckMatrix build_parity_check(std::uint64_t q, std::size_t k,
                                     std::vector<std::uint64_t> points) {
  PrimeField field(q);
  if (points.empty()) {
    points.resize(q);
    for (std::uint64_t i = 0; i < q; ++i) points[i] = i;
  }
  return ParityCheckMatrix(field, k, std::move(points));
}

bool Syndrome::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](auto v) { return v == 0; });
}

Syndrome syndrome(const ParityCheckMatrix& h, std::span<const std::int64_t> x) {
  require(x.size() == h.length(), "syndrome: vector length does not match |S|");
  const auto& f = h.field();
  Syndrome out{h.modulus(), std::vector<std::uint64_t>(h.row_count(), 0)};
  for (std::size_t j = 0; j < x.size(); ++j) {
    auto xj = f.reduce(x[j]);
    if (xj == 0) continue;
    for (std::size_t i = 0; i < h.row_count(); ++i) {
      out.values[i] = f.add(out.values[i], f.mul(h.entry(i, j), xj));
    }
  }
  return out;
}

BigInt LatticeBasis::abs_determinant() const { return abs(determinant(columns)); }

namespace {

// Extended gcd: returns g >= 0 with x*a + y*b = g.
BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
  BigInt old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    BigInt quotient = old_r / r;
    BigInt tmp = old_r - quotient * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quotient * s;
    old_s = s;
    s = tmp;
    tmp = old_t - quotient * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// Kernel basis of H mod q from its reduced row-echelon form.
std::pair<std::vector<std::vector<std::uint64_t>>, std::size_t> kernel_mod_q(
    const ParityCheckMatrix& h) {
  const auto& f = h.field();
  auto a = h.rows();
  const std::size_t rows = a.size();
  const std::size_t n = h.length();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[r], a[p]);
    auto inv = f.inv(a[r][c]);
    for (auto& v : a[r]) v = f.mul(v, inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      auto factor = a[i][c];
      for (std::size_t j = 0; j < n; ++j) a[i][j] = f.sub(a[i][j], f.mul(factor, a[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint64_t>> kernel;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint64_t> v(n, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(a[i][free]);
    kernel.push_back(std::move(v));
  }
  return {kernel, pivots.size()};
}

}  // namespace

IntMatrix hermite_normal_form(const std::vector<std::vector<BigInt>>& generators_by_column,
                              std::size_t n) {
  auto a = generators_by_column;
  const std::size_t m = a.size();
  require(m >= n, "hermite_normal_form: fewer generators than the dimension");
  for (const auto& c : a) require(c.size() == n, "hermite_normal_form: ragged generators");

  auto combine = [&](std::size_t i, std::size_t j, const BigInt& x, const BigInt& y,
                     const BigInt& u, const BigInt& v) {
    // (col_i, col_j) <- (x col_i + y col_j, u col_i + v col_j)
    for (std::size_t row = 0; row < n; ++row) {
      BigInt ci = a[i][row], cj = a[j][row];
      a[i][row] = x * ci + y * cj;
      a[j][row] = u * ci + v * cj;
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (a[i][i] == 0) {
      std::size_t j = i + 1;
      while (j < m && a[j][i] == 0) ++j;
      require(j < m, "hermite_normal_form: generators do not span full rank");
      std::swap(a[i], a[j]);
    }
    for (std::size_t j = i + 1; j < m; ++j) {
      if (a[j][i] == 0) continue;
      BigInt x, y;
      BigInt g = ext_gcd(a[i][i], a[j][i], x, y);
      BigInt ai = a[i][i] / g, aj = a[j][i] / g;
      combine(i, j, x, y, -aj, ai);
    }
    if (a[i][i] < 0) {
      for (auto& v : a[i]) v = -v;
    }
    for (std::size_t j = 0; j < i; ++j) {
      BigInt factor = floor_div(a[j][i], a[i][i]);
      if (factor == 0) continue;
      for (std::size_t row = 0; row < n; ++row) a[j][row] -= factor * a[i][row];
    }
  }
  IntMatrix out(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t row = 0; row < n; ++row) out(row, j) = to_int64(a[j][row]);
  return out;
}

LatticeBasis lattice_basis(const ParityCheckMatrix& h) {
  const std::size_t n = h.length();
  auto [kernel, rank] = kernel_mod_q(h);
  std::vector<std::vector<BigInt>> generators;
  for (const auto& v : kernel) generators.emplace_back(v.begin(), v.end());
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<BigInt> e(n, 0);
    e[i] = h.modulus();
    generators.push_back(std::move(e));
  }
  LatticeBasis basis;
  basis.columns = hermite_normal_form(generators, n);
  basis.source = h;
  basis.rows_dependent = rank < h.row_count();
  return basis;
}

MinDistResult min_dist_exact(const ParityCheckMatrix& h, int p, const Rational& budget,
                             const WorkLimits& limits, ExecPolicy policy) {
  require(p >= 1, "min_dist_exact: p must be >= 1");
  require(budget >= 0, "min_dist_exact: budget must be non-negative");
  MinDistResult result;
  result.p = p;
  result.budget = budget;

  const BigInt bound_big = floor(budget);
  if (bound_big >= kInfCost) {
    throw WorkLimitExceeded("min_dist_exact: budget exceeds the 16-bit cost range");
  }
  const auto bound = static_cast<std::int64_t>(bound_big);
  const auto q = h.modulus();
  const std::size_t n = h.length();
  const auto space = h.syndrome_space();
  const BigInt work = BigInt(space.size()) * n * std::max<std::int64_t>(bound, 1);
  if (work > limits.max_work) {
    throw WorkLimitExceeded("min_dist_exact: q^k * |S| * budget = " + work.str() +
                            " exceeds the work limit");
  }
  if (bound < 1) return result;

  // Largest |z| with |z|^p <= bound.
  std::int64_t zmax = 0;
  while (pow(BigInt(zmax + 1), static_cast<unsigned>(p)) <= bound) ++zmax;
  auto cost_of = [&](std::int64_t z) {
    return static_cast<Cost>(pow(BigInt(std::llabs(z)), static_cast<unsigned>(p)));
  };

  // Cheapest nonzero integer in each residue class; z = +-q realises class 0.
  std::vector<Cost> nonzero(q, kInfCost);
  for (std::int64_t z = -zmax; z <= zmax; ++z) {
    if (z == 0) continue;
    auto r = h.field().reduce(z);
    nonzero[r] = std::min(nonzero[r], cost_of(z));
  }
  std::vector<Cost> with_zero = nonzero;
  with_zero[0] = 0;

  const auto size = space.size();
  std::vector<std::vector<Cost>> g(n + 1, std::vector<Cost>(size, kInfCost));
  g[n][0] = 0;
  std::vector<Cost> head(n + 1, kInfCost);  // still all-zero before coordinate j
  for (std::size_t j = n; j-- > 0;) {
    kernels::min_plus_layer(space, h.column(j), with_zero, g[j + 1], g[j], policy);
    Cost best = head[j + 1];
    for (std::uint64_t r = 0; r < q; ++r) {
      if (nonzero[r] == kInfCost) continue;
      auto target = space.encode(space.scale(h.column(j), r));
      best = std::min(best, saturating_add(nonzero[r], g[j + 1][target]));
    }
    head[j] = best;
  }
  if (head[0] == kInfCost || head[0] > bound) return result;
  result.value_pow_p = BigInt(head[0]);

  // Lexicographically smallest optimal vector.
  result.witness.assign(n, 0);
  std::uint64_t state = 0;
  bool started = false;
  Cost remaining = head[0];
  for (std::size_t j = 0; j < n; ++j) {
    bool found = false;
    for (std::int64_t z = -zmax; z <= zmax && !found; ++z) {
      Cost c = cost_of(z);
      if (c > remaining) continue;
      Cost rest;
      std::uint64_t next_state = state;
      if (!started && z == 0) {
        rest = head[j + 1];
      } else {
        next_state = space.add(state, space.scale(h.column(j), h.field().reduce(z)));
        rest = g[j + 1][next_state];
      }
      if (rest != kInfCost && c + rest == remaining) {
        result.witness[j] = z;
        remaining = static_cast<Cost>(remaining - c);
        state = next_state;
        started = started || z != 0;
        found = true;
      }
    }
    if (!found) throw VerificationFailed("min_dist_exact: witness reconstruction failed");
  }
  return result;
}

Rational min_dist_certified_bound(const ParityCheckMatrix& h, int p) {
  require(p >= 1, "min_dist_certified_bound: p must be >= 1");
  require(2 * h.row_count() <= h.length(), "min_dist_certified_bound: requires k <= |S|/2");
  return Rational(2 * h.row_count());
}

std::pair<Syndrome, std::vector<IntVector>> roots_of_unity_coset_vectors(std::uint64_t q,
                                                                         std::size_t k) {
  PrimeField field(q);
  require(k >= 1 && (q - 1) % k == 0, "roots_of_unity_coset_vectors: k must divide q-1");
  std::vector<std::uint64_t> subgroup;
  for (std::uint64_t a = 1; a < q; ++a) {
    if (field.pow(a, k) == 1) subgroup.push_back(a);
  }
  Syndrome u{q, std::vector<std::uint64_t>(k, 0)};
  u.values[0] = k % q;
  std::vector<bool> covered(q, false);
  std::vector<IntVector> vectors;
  for (std::uint64_t a = 1; a < q; ++a) {
    if (covered[a]) continue;
    IntVector v(q, 0);
    for (auto s : subgroup) {
      auto e = field.mul(a, s);
      covered[e] = true;
      v[e] = 1;
    }
    vectors.push_back(std::move(v));
  }
  return {u, vectors};
}

}  // namespace rslat
