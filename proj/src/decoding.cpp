#include "rslat/decoding.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rslat/error.hpp"

namespace rslat {

namespace {

// Reduced row echelon form mod q in place; returns pivot column per row.
std::vector<std::size_t> rref(const PrimeField& f, std::vector<std::vector<std::uint64_t>>& a,
                              std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t sel = row;
    while (sel < a.size() && a[sel][col] == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[sel], a[row]);
    const std::uint64_t inv = f.inv(a[row][col]);
    for (auto& v : a[row]) v = f.mul(v, inv);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      const std::uint64_t factor = a[r][col];
      for (std::size_t c = col; c < a[r].size(); ++c) {
        if (a[row][c] != 0) a[r][c] = f.sub(a[r][c], f.mul(factor, a[row][c]));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Solves A x = b (b stored as the last column of each row) with free variables zero.
std::optional<std::vector<std::uint64_t>> solve_affine(const PrimeField& f,
                                                       std::vector<std::vector<std::uint64_t>> a,
                                                       std::size_t unknowns) {
  auto pivots = rref(f, a, unknowns + 1);
  std::vector<std::uint64_t> x(unknowns, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == unknowns) return std::nullopt;
    x[pivots[r]] = a[r][unknowns];
  }
  return x;
}

std::vector<std::uint64_t> poly_trim(std::vector<std::uint64_t> p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

// Quotient and remainder of n / d over F_q; d nonzero.
std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>> poly_divmod(
    const PrimeField& f, std::vector<std::uint64_t> n, std::vector<std::uint64_t> d) {
  n = poly_trim(std::move(n));
  d = poly_trim(std::move(d));
  if (n.size() < d.size()) return {{}, n};
  std::vector<std::uint64_t> quot(n.size() - d.size() + 1, 0);
  const std::uint64_t lead_inv = f.inv(d.back());
  for (std::size_t i = n.size(); i-- >= d.size();) {
    const std::uint64_t c = f.mul(n[i], lead_inv);
    const std::size_t shift = i + 1 - d.size();
    quot[shift] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < d.size(); ++j) n[shift + j] = f.sub(n[shift + j], f.mul(c, d[j]));
  }
  n.resize(d.size() - 1);
  return {poly_trim(std::move(quot)), poly_trim(std::move(n))};
}

std::uint64_t residue_of(const BigInt& v, std::uint64_t q) {
  BigInt r = v % q;
  if (r < 0) r += q;
  return static_cast<std::uint64_t>(r);
}

bool item_less(const DecodeItem& a, const DecodeItem& b) {
  if (a.distance_sq != b.distance_sq) return a.distance_sq < b.distance_sq;
  if (a.codeword != b.codeword) return a.codeword < b.codeword;
  return a.lattice < b.lattice;
}

DecodeItem make_item(Codeword c, const Rational& dist_sq) {
  DecodeItem item;
  item.codeword = std::move(c);
  item.distance_sq = dist_sq;
  item.distance = std::sqrt(to_double(dist_sq));
  return item;
}

// Bivariate polynomial: by_y[l] holds the X-coefficients of Y^l.
using BiPoly = std::vector<std::vector<std::uint64_t>>;

struct RothRuckenstein {
  const PrimeField& f;
  std::size_t dimension;
  std::vector<std::vector<std::uint64_t>> binom;  // mod q
  std::set<std::vector<std::uint64_t>> found;
  std::uint64_t budget;

  std::uint64_t choose(std::size_t n, std::size_t k) {
    while (binom.size() <= n) {
      std::vector<std::uint64_t> row(binom.size() + 1, 1);
      const auto& prev = binom.back();
      for (std::size_t i = 1; i + 1 < row.size(); ++i) row[i] = f.add(prev[i - 1], prev[i]);
      binom.push_back(std::move(row));
    }
    return k > n ? 0 : binom[n][k];
  }

  void run(BiPoly q, std::vector<std::uint64_t>& prefix) {
    if (budget-- == 0) throw WorkLimitExceeded("list decoding: root search exceeded work limit");
    std::size_t strip = SIZE_MAX;
    for (auto& xs : q) {
      xs = poly_trim(std::move(xs));
      for (std::size_t j = 0; j < xs.size(); ++j) {
        if (xs[j] != 0) {
          strip = std::min(strip, j);
          break;
        }
      }
    }
    while (!q.empty() && q.back().empty()) q.pop_back();
    if (q.empty()) return;
    for (auto& xs : q) {
      if (xs.size() > strip) {
        xs.erase(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(strip));
      } else {
        xs.clear();
      }
    }
    std::vector<std::uint64_t> at_zero(q.size());
    for (std::size_t l = 0; l < q.size(); ++l) at_zero[l] = q[l].empty() ? 0 : q[l][0];
    FieldPoly r(f, at_zero);
    for (std::uint64_t gamma = 0; gamma < f.modulus(); ++gamma) {
      if (r.eval(gamma) != 0) continue;
      prefix.push_back(gamma);
      if (prefix.size() == dimension) {
        found.insert(prefix);
      } else {
        run(substitute(q, gamma), prefix);
      }
      prefix.pop_back();
    }
  }

  // Q(X, X Y + gamma).
  BiPoly substitute(const BiPoly& q, std::uint64_t gamma) {
    BiPoly out(q.size());
    for (std::size_t l = 0; l < q.size(); ++l) {
      if (q[l].empty()) continue;
      std::uint64_t gpow = 1;
      for (std::size_t b = l + 1; b-- > 0;) {
        // Term C(l, b) gamma^(l - b) X^b Q_l(X) Y^b, with gpow = gamma^(l - b).
        const std::uint64_t c = f.mul(choose(l, b), gpow);
        gpow = f.mul(gpow, gamma);
        if (c == 0) continue;
        auto& dst = out[b];
        if (dst.size() < q[l].size() + b) dst.resize(q[l].size() + b, 0);
        for (std::size_t j = 0; j < q[l].size(); ++j) {
          dst[j + b] = f.add(dst[j + b], f.mul(c, q[l][j]));
        }
      }
    }
    return out;
  }
};

DecodeList finish(DecodeList list) {
  std::sort(list.items.begin(), list.items.end(), item_less);
  return list;
}

}  // namespace

RSCode::RSCode(std::uint64_t q, std::size_t dimension, std::vector<std::uint64_t> points)
    : field_(q), dimension_(dimension), points_(std::move(points)) {
  if (points_.empty()) {
    points_.resize(q);
    for (std::uint64_t i = 0; i < q; ++i) points_[i] = i;
  }
  std::set<std::uint64_t> seen;
  for (auto s : points_) {
    require(s < q, "RSCode: evaluation points must be residues in [0, q)");
    require(seen.insert(s).second, "RSCode: evaluation points must be distinct");
  }
  require(dimension_ <= points_.size(), "RSCode: dimension exceeds the number of points");
}

Codeword rs_encode(const RSCode& code, const FieldPoly& poly) {
  require(poly.field() == code.field(), "rs_encode: polynomial over a different field");
  require(poly.degree() < static_cast<int>(code.dimension()), "rs_encode: degree must be < dimension");
  Codeword c(code.length());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = poly.eval(code.points()[i]);
  return c;
}

std::optional<Codeword> rs_unique_decode(const RSCode& code,
                                         std::span<const std::uint64_t> received) {
  const auto& f = code.field();
  const std::size_t n = code.length(), dim = code.dimension();
  require(received.size() == n, "rs_unique_decode: received word has the wrong length");
  const std::size_t e = (n - dim) / 2;
  if (dim == 0) {
    std::size_t weight = 0;
    for (auto v : received) weight += f.reduce(static_cast<std::int64_t>(v)) != 0;
    if (weight <= e) return Codeword(n, 0);
    return std::nullopt;
  }
  // Unknowns: E_0..E_{e-1} (E monic of degree e), N_0..N_{e+dim-1}.
  const std::size_t unknowns = e + e + dim;
  std::vector<std::vector<std::uint64_t>> a(n, std::vector<std::uint64_t>(unknowns + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t s = code.points()[i];
    const std::uint64_t y = f.reduce(static_cast<std::int64_t>(received[i] % f.modulus()));
    std::uint64_t sp = 1;
    for (std::size_t j = 0; j < e + dim; ++j) {
      if (j < e) a[i][j] = f.neg(f.mul(y, sp));
      a[i][e + j] = sp;
      if (j == e) a[i][unknowns] = f.mul(y, sp);
      sp = f.mul(sp, s);
    }
  }
  auto sol = solve_affine(f, a, unknowns);
  if (!sol) return std::nullopt;
  std::vector<std::uint64_t> err(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(e));
  err.push_back(1);
  std::vector<std::uint64_t> num(sol->begin() + static_cast<std::ptrdiff_t>(e), sol->end());
  auto [quot, rem] = poly_divmod(f, num, err);
  if (!rem.empty() || quot.size() > dim) return std::nullopt;
  Codeword c = rs_encode(code, FieldPoly(f, quot));
  std::size_t dist = 0;
  for (std::size_t i = 0; i < n; ++i) dist += c[i] != received[i] % f.modulus();
  if (dist > e) return std::nullopt;
  return c;
}

TorusVector::TorusVector(std::uint64_t q, std::vector<Rational> coordinates)
    : q_(q), coords_(std::move(coordinates)) {
  require(q >= 2, "TorusVector: modulus must be >= 2");
  const Rational half(static_cast<std::int64_t>(q), 2);
  for (auto& c : coords_) {
    // c - q * floor((c + q/2) / q) lies in [-q/2, q/2).
    BigInt wraps = floor((c + half) / Rational(static_cast<std::int64_t>(q)));
    c -= Rational(wraps * q);
  }
}

Rational TorusVector::coordinate_distance_sq(std::size_t i, std::uint64_t a) const {
  const Rational qr(static_cast<std::int64_t>(q_));
  Rational diff = coords_.at(i) - Rational(static_cast<std::int64_t>(a % q_));
  diff -= Rational(floor((diff + qr / 2) / qr)) * qr;
  return diff * diff;
}

Rational TorusVector::distance_sq(std::span<const std::uint64_t> codeword) const {
  require(codeword.size() == coords_.size(), "TorusVector: length mismatch");
  Rational total = 0;
  for (std::size_t i = 0; i < coords_.size(); ++i) total += coordinate_distance_sq(i, codeword[i]);
  return total;
}

Rational list_decode_radius_sq(const RSCode& code, const Rational& epsilon) {
  require(epsilon > 0 && epsilon < 1, "list decoding: epsilon must lie in (0, 1)");
  const auto k = static_cast<std::int64_t>(code.length() - code.dimension());
  return (1 - epsilon) * Rational(k + 1) / 2;
}

DecodeList rs_list_decode_l2_enumerate(const RSCode& code, const Rational& epsilon,
                                       const TorusVector& yhat, const WorkLimits& limits) {
  require(yhat.modulus() == code.modulus() && yhat.size() == code.length(),
          "list decoding: received vector does not match the code");
  DecodeList list;
  list.radius_sq = list_decode_radius_sq(code, epsilon);
  list.certified = true;
  const std::uint64_t q = code.modulus();
  const std::size_t dim = code.dimension(), n = code.length();
  double work = std::pow(static_cast<double>(q), static_cast<double>(dim)) * static_cast<double>(n);
  if (work > static_cast<double>(limits.max_work)) {
    throw WorkLimitExceeded("list decoding enumeration: q^dim * n exceeds the work limit");
  }
  // Every digit that steps, wrap-around included, moves by +1 mod q, so the
  // codeword gains the column x^i for each of them.
  std::vector<Codeword> columns(dim, Codeword(n));
  std::vector<std::vector<double>> cost(n, std::vector<double>(q));
  for (std::size_t j = 0; j < n; ++j) {
    std::uint64_t power = 1;
    for (std::size_t i = 0; i < dim; ++i) {
      columns[i][j] = power;
      power = code.field().mul(power, code.points()[j]);
    }
    for (std::uint64_t a = 0; a < q; ++a) cost[j][a] = to_double(yhat.coordinate_distance_sq(j, a));
  }
  const double screen = to_double(list.radius_sq) + 1e-9;
  std::vector<std::uint64_t> msg(dim, 0);
  Codeword c(n, 0);
  while (true) {
    double approx = 0;
    for (std::size_t j = 0; j < n && approx <= screen; ++j) approx += cost[j][c[j]];
    if (approx <= screen) {
      Rational d = yhat.distance_sq(c);
      if (d <= list.radius_sq) list.items.push_back(make_item(Codeword(c), d));
    }
    std::size_t i = 0;
    while (i < dim && ++msg[i] == q) msg[i++] = 0;
    if (i == dim) break;
    for (std::size_t t = 0; t <= i; ++t)
      for (std::size_t j = 0; j < n; ++j) c[j] = code.field().add(c[j], columns[t][j]);
  }
  return finish(std::move(list));
}

namespace {

// Floor/ceil residues per coordinate and the squared distances of the three
// residue classes (floor, ceil, anything else).
struct NearResidues {
  std::vector<std::uint64_t> lo, hi;
  std::vector<Rational> frac, cost_lo, cost_hi, cost_other;
};

NearResidues near_residues(const TorusVector& yhat, const Rational& radius_sq) {
  const std::uint64_t q = yhat.modulus();
  const std::size_t n = yhat.size();
  NearResidues nr;
  nr.lo.resize(n);
  nr.hi.resize(n);
  nr.frac.resize(n);
  nr.cost_lo.resize(n);
  nr.cost_hi.resize(n);
  nr.cost_other.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational& y = yhat.coordinates()[i];
    BigInt fl = floor(y);
    nr.frac[i] = y - Rational(fl);
    nr.lo[i] = residue_of(fl, q);
    nr.hi[i] = residue_of(fl + 1, q);
    nr.cost_lo[i] = yhat.coordinate_distance_sq(i, nr.lo[i]);
    nr.cost_hi[i] = yhat.coordinate_distance_sq(i, nr.hi[i]);
    std::optional<Rational> other;
    for (BigInt cand : {BigInt(fl - 1), BigInt(fl + 2)}) {
      std::uint64_t a = residue_of(cand, q);
      if (a == nr.lo[i] || a == nr.hi[i]) continue;
      Rational c = yhat.coordinate_distance_sq(i, a);
      if (!other || c < *other) other = c;
    }
    // q = 2 leaves no third residue; an unreachable cost disables the option.
    nr.cost_other[i] = other ? *other : radius_sq + 1;
  }
  return nr;
}

struct InterpolationPoint {
  std::uint64_t x, y, multiplicity;
};

// Koetter's algorithm: the nonzero Q of least (1, v)-weighted degree with
// Y-degree <= max_y vanishing to the given multiplicity at every point.
class Interpolator {
 public:
  Interpolator(const PrimeField& f, std::size_t v, std::uint64_t max_mult, std::uint64_t budget)
      : f_(f), v_(v), cols_(max_mult + 1), budget_(budget) {}

  BiPoly run(const std::vector<InterpolationPoint>& points, std::size_t max_y) {
    std::vector<BiPoly> g(max_y + 1);
    for (std::size_t l = 0; l <= max_y; ++l) {
      g[l].resize(l + 1);
      g[l][l] = {1};
    }
    std::vector<std::uint64_t> delta(g.size());
    for (const auto& pt : points) {
      // (r, s) with r ascending inside each s keeps every partial kernel
      // closed under multiplication by (X - x).
      for (std::size_t s = 0; s < pt.multiplicity; ++s) {
        for (std::size_t r = 0; r + s < pt.multiplicity; ++r) {
          std::optional<std::size_t> best;
          for (std::size_t l = 0; l < g.size(); ++l) {
            delta[l] = hasse(g[l], pt.x, pt.y, r, s);
            if (delta[l] != 0 && (!best || lead(g[l]) < lead(g[*best]))) best = l;
          }
          if (!best) continue;
          const std::size_t b = *best;
          for (std::size_t l = 0; l < g.size(); ++l) {
            if (l == b || delta[l] == 0) continue;
            combine(g[l], delta[b], g[b], f_.neg(delta[l]));
          }
          times_x_minus(g[b], pt.x);
        }
      }
    }
    std::size_t best = 0;
    for (std::size_t l = 1; l < g.size(); ++l) {
      if (lead(g[l]) < lead(g[best])) best = l;
    }
    return g[best];
  }

  // (weighted degree, Y-degree) of the leading monomial.
  std::pair<std::size_t, std::size_t> lead(const BiPoly& g) const {
    std::pair<std::size_t, std::size_t> out{0, 0};
    for (std::size_t l = 0; l < g.size(); ++l) {
      for (std::size_t j = g[l].size(); j-- > 0;) {
        if (g[l][j] != 0) {
          out = std::max(out, std::pair<std::size_t, std::size_t>{j + l * v_, l});
          break;
        }
      }
    }
    return out;
  }

 private:
  std::uint64_t choose(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    while (binom_.size() <= n) {
      std::vector<std::uint64_t> row(cols_, 0);
      row[0] = 1;
      if (!binom_.empty()) {
        const auto& prev = binom_.back();
        for (std::size_t i = 1; i < cols_; ++i) row[i] = f_.add(prev[i - 1], prev[i]);
      }
      binom_.push_back(std::move(row));
    }
    return binom_[n][k];
  }

  void charge(std::uint64_t units) {
    if (units > budget_) throw WorkLimitExceeded("list decoding: interpolation exceeded the work limit");
    budget_ -= units;
  }

  // Coefficient of (X - x)^r (Y - y)^s in g.
  std::uint64_t hasse(const BiPoly& g, std::uint64_t x, std::uint64_t y, std::size_t r,
                      std::size_t s) {
    std::uint64_t total = 0, ypow = 1;
    for (std::size_t l = s; l < g.size(); ++l) {
      const auto& xs = g[l];
      charge(xs.size() + 1);
      std::uint64_t inner = 0;
      for (std::size_t j = xs.size(); j-- > r;) {
        inner = f_.add(f_.mul(inner, x), f_.mul(xs[j], choose(j, r)));
      }
      total = f_.add(total, f_.mul(f_.mul(inner, choose(l, s)), ypow));
      ypow = f_.mul(ypow, y);
    }
    return total;
  }

  // a <- scale_a * a + scale_b * b.
  void combine(BiPoly& a, std::uint64_t scale_a, const BiPoly& b, std::uint64_t scale_b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t l = 0; l < a.size(); ++l) {
      auto& xs = a[l];
      const std::size_t bl = l < b.size() ? b[l].size() : 0;
      if (xs.size() < bl) xs.resize(bl, 0);
      charge(xs.size() + 1);
      for (std::size_t j = 0; j < xs.size(); ++j) {
        std::uint64_t v = f_.mul(xs[j], scale_a);
        if (j < bl) v = f_.add(v, f_.mul(b[l][j], scale_b));
        xs[j] = v;
      }
    }
  }

  void times_x_minus(BiPoly& g, std::uint64_t x) {
    const std::uint64_t nx = f_.neg(x);
    for (auto& xs : g) {
      if (xs.empty()) continue;
      charge(xs.size() + 1);
      xs.push_back(0);
      for (std::size_t j = xs.size() - 1; j > 0; --j) xs[j] = f_.add(xs[j - 1], f_.mul(nx, xs[j]));
      xs[0] = f_.mul(nx, xs[0]);
    }
  }

  const PrimeField& f_;
  std::size_t v_;
  std::size_t cols_;
  std::uint64_t budget_;
  std::vector<std::vector<std::uint64_t>> binom_;
};

// Least D with more than `constraints` monomials of (1, v)-weighted degree <= D.
std::size_t degree_bound(std::uint64_t constraints, std::size_t v) {
  for (std::size_t d = 0;; ++d) {
    std::uint64_t count = 0;
    for (std::size_t l = 0; l * v <= d; ++l) count += d - l * v + 1;
    if (count > constraints) return d;
  }
}

}  // namespace

DecodeList rs_list_decode_l2(const RSCode& code, const Rational& epsilon, const TorusVector& yhat,
                             const ListDecodeOptions& options) {
  require(yhat.modulus() == code.modulus() && yhat.size() == code.length(),
          "list decoding: received vector does not match the code");
  const auto& f = code.field();
  const std::size_t n = code.length(), dim = code.dimension();
  const Rational radius_sq = list_decode_radius_sq(code, epsilon);
  // Constant codes: the q candidates are checked directly.
  if (dim <= 1) return rs_list_decode_l2_enumerate(code, epsilon, yhat, options.limits);

  const NearResidues nr = near_residues(yhat, radius_sq);
  const std::size_t v = dim - 1;
  DecodeList list;
  list.radius_sq = radius_sq;
  for (std::uint64_t mult = 1; mult <= options.max_multiplicity; ++mult) {
    // Multiplicities round M (1 - d) on the floor residue and M d on the ceil.
    std::vector<std::uint64_t> m_lo(n), m_hi(n);
    std::uint64_t constraints = 0;
    std::vector<InterpolationPoint> points;
    for (std::size_t i = 0; i < n; ++i) {
      const Rational scaled = Rational(static_cast<std::int64_t>(mult)) * nr.frac[i];
      m_hi[i] = static_cast<std::uint64_t>(floor(scaled + Rational(1, 2)));
      m_lo[i] = mult - m_hi[i];
      if (nr.lo[i] == nr.hi[i]) m_hi[i] = 0;
      if (m_lo[i] > 0) points.push_back({code.points()[i], nr.lo[i], m_lo[i]});
      if (m_hi[i] > 0) points.push_back({code.points()[i], nr.hi[i], m_hi[i]});
      constraints += m_lo[i] * (m_lo[i] + 1) / 2 + m_hi[i] * (m_hi[i] + 1) / 2;
    }
    if (constraints > options.max_constraints) break;

    // Least score a codeword inside the ball can have.
    const std::uint64_t max_score = mult * n;
    std::vector<std::optional<Rational>> best(max_score + 1);
    best[0] = Rational(0);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::optional<Rational>> next(max_score + 1);
      auto relax = [&](std::size_t s, std::uint64_t gain, const Rational& cost) {
        Rational c = *best[s] + cost;
        auto& slot = next[s + gain];
        if (!slot || c < *slot) slot = c;
      };
      for (std::size_t s = 0; s <= max_score; ++s) {
        if (!best[s]) continue;
        relax(s, m_lo[i], nr.cost_lo[i]);
        if (nr.lo[i] != nr.hi[i]) relax(s, m_hi[i], nr.cost_hi[i]);
        relax(s, 0, nr.cost_other[i]);
      }
      best = std::move(next);
    }
    std::uint64_t min_score = max_score + 1;
    for (std::size_t s = 0; s <= max_score; ++s) {
      if (best[s] && *best[s] <= radius_sq) {
        min_score = s;
        break;
      }
    }

    // Interpolation never needs weighted degree above the monomial-count bound.
    const std::size_t bound = degree_bound(constraints, v);
    const bool last = mult == options.max_multiplicity;
    if (min_score <= bound && !last) continue;

    Interpolator interp(f, v, mult, options.limits.max_work);
    BiPoly qpoly = interp.run(points, bound / v);
    const std::uint64_t wdeg = interp.lead(qpoly).first;
    // Every codeword in the ball scores above wdeg, so Q(X, p(X)) has more
    // zeros than its degree and (Y - p(X)) divides Q.
    const bool certified = min_score > wdeg;
    if (!certified && !last) continue;

    RothRuckenstein rr{f, dim, {{1}}, {}, options.limits.max_work};
    std::vector<std::uint64_t> prefix;
    rr.run(qpoly, prefix);
    for (const auto& msg : rr.found) {
      Codeword c = rs_encode(code, FieldPoly(f, msg));
      Rational d = yhat.distance_sq(c);
      if (d <= radius_sq) list.items.push_back(make_item(std::move(c), d));
    }
    list.certified = certified;
    list.multiplicity = mult;
    list.interpolation_degree = wdeg;
    return finish(std::move(list));
  }
  throw WorkLimitExceeded("list decoding: interpolation constraints exceed the configured cap");
}

DecodeList rs_list_decode_l2_patterns(const RSCode& code, const Rational& epsilon,
                                      const TorusVector& yhat, const WorkLimits& limits) {
  require(yhat.modulus() == code.modulus() && yhat.size() == code.length(),
          "list decoding: received vector does not match the code");
  const auto& f = code.field();
  const std::size_t n = code.length(), dim = code.dimension();
  DecodeList list;
  list.radius_sq = list_decode_radius_sq(code, epsilon);
  list.certified = true;
  const NearResidues nr = near_residues(yhat, list.radius_sq);
  std::set<Codeword> seen;
  std::uint64_t work = 0;
  std::vector<bool> off(n, false);

  auto try_patterns = [&]() {
    std::vector<std::size_t> info;
    for (std::size_t i = 0; i < n && info.size() < dim; ++i) {
      if (!off[i]) info.push_back(i);
    }
    if (info.size() < dim) {
      throw WorkLimitExceeded("pattern search: too few near coordinates to pin down a codeword");
    }
    for (std::uint64_t mask = 0; mask < (1ULL << dim); ++mask) {
      bool skip = false;
      std::vector<std::vector<std::uint64_t>> rows(dim, std::vector<std::uint64_t>(dim + 1));
      for (std::size_t r = 0; r < dim; ++r) {
        const std::size_t i = info[r];
        const bool up = mask >> r & 1;
        if (up && nr.lo[i] == nr.hi[i]) skip = true;
        std::uint64_t sp = 1;
        for (std::size_t c = 0; c < dim; ++c) {
          rows[r][c] = sp;
          sp = f.mul(sp, code.points()[i]);
        }
        rows[r][dim] = up ? nr.hi[i] : nr.lo[i];
      }
      if (skip) continue;
      work += dim * dim * dim + n * dim;
      if (work > limits.max_work) throw WorkLimitExceeded("pattern search: work limit exceeded");
      auto msg = solve_affine(f, rows, dim);
      Codeword c = rs_encode(code, FieldPoly(f, *msg));
      Rational d = yhat.distance_sq(c);
      if (d <= list.radius_sq && seen.insert(c).second) {
        list.items.push_back(make_item(std::move(c), d));
      }
    }
  };
  // Coordinates off both near residues cost at least cost_other each.
  auto walk = [&](auto&& self, std::size_t from, const Rational& spent) -> void {
    try_patterns();
    for (std::size_t i = from; i < n; ++i) {
      Rational next = spent + nr.cost_other[i];
      if (next > list.radius_sq) continue;
      off[i] = true;
      self(self, i + 1, next);
      off[i] = false;
    }
  };
  walk(walk, 0, Rational(0));
  return finish(std::move(list));
}

std::size_t default_decoding_k(std::uint64_t q) {
  require(q >= 3, "default_decoding_k: q must be >= 3");
  return static_cast<std::size_t>(
      std::floor(static_cast<double>(q) / (2 * std::log2(static_cast<double>(q)))));
}

DecodeList lattice_decode_minkowski(std::uint64_t q, std::size_t k, const Rational& epsilon,
                                    std::span<const Rational> y,
                                    const ListDecodeOptions& options) {
  require(y.size() == q, "lattice decoding: y must have length q");
  require(k <= q, "lattice decoding: k must be <= q");
  RSCode code(q, q - k);
  const Rational radius_sq = list_decode_radius_sq(code, epsilon);
  const Rational half_q(static_cast<std::int64_t>(q), 2);
  require(radius_sq < half_q * half_q, "lattice decoding: radius must be below q/2");
  TorusVector yhat(q, std::vector<Rational>(y.begin(), y.end()));
  DecodeList words = rs_list_decode_l2(code, epsilon, yhat, options);
  DecodeList out;
  out.radius_sq = words.radius_sq;
  out.certified = words.certified;
  out.multiplicity = words.multiplicity;
  out.interpolation_degree = words.interpolation_degree;
  const Rational qr(static_cast<std::int64_t>(q));
  for (auto& item : words.items) {
    IntVector v(q);
    Rational dist_sq = 0;
    for (std::size_t i = 0; i < q; ++i) {
      // Nearest lift c_i + q z to y_i.
      const Rational c(static_cast<std::int64_t>(item.codeword[i]));
      BigInt z = floor((y[i] - c) / qr + Rational(1, 2));
      v[i] = to_int64(z * q + static_cast<std::int64_t>(item.codeword[i]));
      Rational diff = y[i] - Rational(v[i]);
      dist_sq += diff * diff;
    }
    if (dist_sq != item.distance_sq) {
      throw VerificationFailed("lattice decoding: lift does not realize the torus distance");
    }
    DecodeItem lifted = make_item({}, dist_sq);
    lifted.lattice = std::move(v);
    out.items.push_back(std::move(lifted));
  }
  return finish(std::move(out));
}

MinkowskiReport minkowski_report(std::uint64_t q) {
  require(q >= 3, "minkowski_report: q must be >= 3");
  MinkowskiReport r;
  r.q = q;
  r.k = default_decoding_k(q);
  const double qd = static_cast<double>(q);
  const double lg = std::log2(qd);
  r.lower = std::sqrt(std::max(0.0, qd / lg - 2));
  r.sqrt_2k = std::sqrt(2.0 * static_cast<double>(r.k));
  r.minkowski = std::sqrt(qd) * std::pow(qd, static_cast<double>(r.k) / qd);
  r.cap = std::sqrt(2 * qd);
  r.chain_holds = qd / lg - 2 <= 2.0 * static_cast<double>(r.k) && r.sqrt_2k <= r.minkowski &&
                  r.minkowski <= r.cap;
  return r;
}

}  // namespace rslat
