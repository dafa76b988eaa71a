#include "rslat/derand.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "rslat/enumeration.hpp"
#include "rslat/error.hpp"
#include "rslat/kernels.hpp"

namespace rslat {

std::vector<std::uint64_t> received_word_from_syndrome(const ParityCheckMatrix& h_matrix,
                                                       std::size_t h, const Syndrome& u) {
  const auto& f = h_matrix.field();
  const std::uint64_t q = f.modulus();
  const std::size_t k = h_matrix.row_count();
  const std::size_t n = h_matrix.length();
  require(k >= 1 && k <= q, "received_word_from_syndrome: need 1 <= k <= q");
  require(n >= k, "received_word_from_syndrome: need |S| >= k");
  require(h >= k && h <= n, "received_word_from_syndrome: need k <= h <= |S|");
  require(u.modulus == q && u.values.size() == k, "received_word_from_syndrome: syndrome shape");
  require(u.values[0] % q == h % q,
          "received_word_from_syndrome: u_0 != h mod q, so no weight-h binary vector has this syndrome");

  std::vector<FieldElem> sums;
  for (auto v : u.values) sums.emplace_back(f, static_cast<std::int64_t>(v % q));
  auto e = elementary_from_power_sums(f, sums, k);

  std::vector<std::uint64_t> coeffs(h + 1, 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::uint64_t c = e[i].value();
    coeffs[h - i] = i % 2 == 0 ? c : f.neg(c);
  }
  FieldPoly r(f, coeffs);
  std::vector<std::uint64_t> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = f.neg(r.eval(h_matrix.points()[j]));
  return out;
}

std::uint64_t count_agreeing_codewords(std::uint64_t q, std::span<const std::uint64_t> points,
                                       std::size_t dimension, std::span<const std::uint64_t> r,
                                       std::size_t agreement, const WorkLimits& limits) {
  const PrimeField f(q);
  require(points.size() == r.size(), "count_agreeing_codewords: length mismatch");
  const double work = std::pow(static_cast<double>(q), static_cast<double>(dimension)) *
                      static_cast<double>(points.size());
  if (work > static_cast<double>(limits.max_work)) {
    throw WorkLimitExceeded("count_agreeing_codewords: q^dimension * n exceeds the work limit");
  }
  std::vector<std::uint64_t> msg(dimension, 0);
  std::uint64_t count = 0;
  while (true) {
    FieldPoly poly(f, msg);
    std::size_t agree = 0;
    for (std::size_t j = 0; j < points.size(); ++j) agree += poly.eval(points[j]) == r[j] % q;
    count += agree >= agreement;
    std::size_t i = 0;
    while (i < dimension && ++msg[i] == q) msg[i++] = 0;
    if (i == dimension) break;
  }
  return count;
}

CharacterSumResult character_sum(const FieldPoly& poly, std::optional<std::size_t> k) {
  const auto& f = poly.field();
  const std::uint64_t q = f.modulus();
  require(poly.degree() < static_cast<int>(q), "character_sum: degree must be < q");
  CharacterSumResult out;
  out.polynomial = poly;
  out.k = k.value_or(static_cast<std::size_t>(std::max(poly.degree(), 0)) + 1);
  require(poly.degree() < static_cast<int>(out.k), "character_sum: degree must be < k");
  std::complex<double> total = 0;
  for (std::uint64_t a = 0; a < q; ++a) {
    const double angle =
        -2.0 * std::numbers::pi * static_cast<double>(poly.eval(a)) / static_cast<double>(q);
    total += std::polar(1.0, angle);
  }
  out.value = total;
  out.magnitude = std::abs(total);
  out.weil_bound = static_cast<double>(out.k >= 2 ? out.k - 2 : 0) * std::sqrt(static_cast<double>(q));
  const bool constant = poly.degree() <= 0;
  out.weil_holds = constant || out.magnitude <= out.weil_bound + 1e-9;
  return out;
}

std::vector<std::uint64_t> sequence_count_table(std::uint64_t q, std::size_t k, std::size_t h,
                                                const WorkLimits& limits, ExecPolicy policy) {
  auto hm = build_parity_check(q, k);
  SyndromeSpace space(q, k);
  require(static_cast<double>(h) * std::log2(static_cast<double>(q)) < 63,
          "sequence_count_table: q^h must fit in 63 bits");
  const double work = static_cast<double>(space.size()) * static_cast<double>(q) * static_cast<double>(h);
  if (work > static_cast<double>(limits.max_work)) {
    throw WorkLimitExceeded("sequence_count_table: q^k * q * h exceeds the work limit");
  }
  std::vector<std::vector<std::uint64_t>> columns;
  for (std::size_t j = 0; j < hm.length(); ++j) columns.push_back(hm.column(j));
  std::vector<std::uint64_t> cur(space.size(), 0), next(space.size(), 0);
  cur[0] = 1;
  for (std::size_t step = 0; step < h; ++step) {
    kernels::sequence_count_step(space, columns, cur, next, policy);
    std::swap(cur, next);
  }
  return cur;
}

BigInt exact_sequence_count(std::uint64_t q, std::size_t k, std::size_t h, const Syndrome& s,
                            const WorkLimits& limits, ExecPolicy policy) {
  require(s.modulus == q && s.values.size() == k, "exact_sequence_count: syndrome shape");
  SyndromeSpace space(q, k);
  auto table = sequence_count_table(q, k, h, limits, policy);
  return BigInt(table[space.encode(s.values)]);
}

std::vector<FourierCountDecomposition> fourier_count_table(std::uint64_t q, std::size_t k,
                                                           std::size_t h,
                                                           const WorkLimits& limits,
                                                           ExecPolicy policy) {
  SyndromeSpace space(q, k);
  const std::uint64_t size = space.size();
  const double work = static_cast<double>(size) * static_cast<double>(size) * static_cast<double>(k);
  if (work > static_cast<double>(limits.max_work)) {
    throw WorkLimitExceeded("fourier_count_table: q^(2k) * k exceeds the work limit");
  }
  auto counts = sequence_count_table(q, k, h, limits, policy);
  auto sums = kernels::character_sum_table(space, policy);
  // S(u) = sum_a Psi(-p_u(a)) is the conjugate of the kernel's sum.
  std::vector<std::complex<double>> powered(size);
  std::vector<bool> constant(size);
  for (std::uint64_t u = 0; u < size; ++u) {
    powered[u] = std::pow(std::conj(sums[u]), static_cast<int>(h));
    constant[u] = u < q;  // only u_0 may be nonzero
  }
  std::vector<std::complex<double>> roots(q);
  for (std::uint64_t j = 0; j < q; ++j) {
    roots[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(q));
  }
  const double qk = std::pow(static_cast<double>(q), static_cast<double>(k));
  const double weil = static_cast<double>(k >= 2 ? k - 2 : 0) * std::sqrt(static_cast<double>(q));
  const double bound = (qk - static_cast<double>(q)) / qk * std::pow(weil, static_cast<double>(h));

  std::vector<std::vector<std::uint64_t>> digits(size);
  for (std::uint64_t u = 0; u < size; ++u) digits[u] = space.decode(u);

  std::vector<FourierCountDecomposition> out(size);
  auto fill = [&](std::uint64_t s) {
    const auto& sd = digits[s];
    std::complex<double> corr = 0;
    for (std::uint64_t u = 0; u < size; ++u) {
      if (constant[u]) continue;
      std::uint64_t dot = 0;
      for (std::size_t i = 0; i < k; ++i) dot += digits[u][i] * sd[i];
      corr += powered[u] * roots[dot % q];
    }
    auto& d = out[s];
    d.correction = corr / qk;
    d.exact_count = counts[s];
    const bool aligned = sd[0] == h % q;
    d.main_term = aligned ? pow(Rational(static_cast<std::int64_t>(q)), static_cast<unsigned>(h + 1)) /
                                pow(Rational(static_cast<std::int64_t>(q)), static_cast<unsigned>(k))
                          : Rational(0);
    d.paper_main_term = aligned ? pow(BigInt(q), static_cast<unsigned>(h + 1)) : BigInt(0);
    d.correction_bound = bound;
    const double exact = static_cast<double>(counts[s]);
    d.reconciliation_error =
        std::abs(to_double(d.main_term) + d.correction - exact) / std::max(1.0, exact);
  };
  if (policy == ExecPolicy::Serial) {
    for (std::uint64_t s = 0; s < size; ++s) fill(s);
  } else {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(size); ++s) fill(static_cast<std::uint64_t>(s));
  }
  return out;
}

FourierCountDecomposition fourier_count_identity(std::uint64_t q, std::size_t k, std::size_t h,
                                                 const Syndrome& s, const WorkLimits& limits,
                                                 ExecPolicy policy) {
  require(s.modulus == q && s.values.size() == k, "fourier_count_identity: syndrome shape");
  SyndromeSpace space(q, k);
  auto table = fourier_count_table(q, k, h, limits, policy);
  return table[space.encode(s.values)];
}

FourierBarrier fourier_barrier(std::uint64_t q, std::size_t k) {
  require(is_prime(q) && k >= 1, "fourier_barrier: need a prime q and k >= 1");
  FourierBarrier b;
  b.q = q;
  b.k = k;
  const double lq = std::log(static_cast<double>(q));
  const double weil = static_cast<double>(k >= 2 ? k - 2 : 0) * std::sqrt(static_cast<double>(q));
  for (std::size_t h = 1;; ++h) {
    const double lhs = (static_cast<double>(h) + 1 - static_cast<double>(k)) * lq;
    const double rhs = weil > 0 ? static_cast<double>(h) * std::log(weil)
                                : -std::numeric_limits<double>::infinity();
    if (lhs > rhs) {
      b.smallest_h = h;
      break;
    }
    if (h > 1'000'000) throw WorkLimitExceeded("fourier_barrier: no h up to 10^6");
  }
  b.eps_prime = std::log(static_cast<double>(k)) / lq;
  b.predicted = b.eps_prime < 0.5 ? static_cast<double>(k) / (0.5 - b.eps_prime)
                                  : std::numeric_limits<double>::infinity();
  return b;
}

ThetaCoset ThetaCoset::line(double spacing, double offset) {
  require(spacing > 0, "ThetaCoset::line: spacing must be positive");
  ThetaCoset c;
  c.spacing = spacing;
  c.offset = offset;
  return c;
}

ThetaCoset ThetaCoset::parity(const ParityCheckMatrix& h, IntVector shift) {
  require(shift.size() == h.length(), "ThetaCoset::parity: shift length mismatch");
  ThetaCoset c;
  c.h = h;
  c.shift = std::move(shift);
  return c;
}

namespace {

// Values ||v||_p^p of every coset point with ||v||_p^p <= bound.
std::vector<double> coset_norms(int p, const ThetaCoset& coset, double bound, const WorkLimits& limits) {
  std::vector<double> norms;
  if (coset.is_line()) {
    const double rho = std::pow(bound, 1.0 / p);
    const double lo = std::ceil((-rho - coset.offset) / coset.spacing);
    const double hi = std::floor((rho - coset.offset) / coset.spacing);
    if (hi - lo > static_cast<double>(limits.max_work)) {
      throw WorkLimitExceeded("theta: too many line points");
    }
    for (double m = lo; m <= hi; m += 1) {
      const double v = std::pow(std::abs(coset.spacing * m + coset.offset), p);
      if (v <= bound) norms.push_back(v);
    }
    return norms;
  }
  const auto target = syndrome(*coset.h, coset.shift);
  for_each_coset_vector(
      *coset.h, target, p, static_cast<std::int64_t>(std::floor(bound + 1e-9)),
      [&](const IntVector&, std::int64_t norm) {
        norms.push_back(static_cast<double>(norm));
        if (norms.size() > limits.max_work) throw WorkLimitExceeded("theta: too many coset points");
      },
      limits, ExecPolicy::Serial);
  return norms;
}

// Bound on sum over omitted points of ||v||^(pm) exp(-tau ||v||^p), m = 0, 1, 2.
std::array<double, 3> tail_bounds(int p, double tau, const ThetaCoset& coset, double bound) {
  std::array<double, 3> out{};
  if (coset.is_line()) {
    // t^m e^{-tau t} <= C_m e^{-tau t / 2} with C_m = (2m / (tau e))^m, and
    // (a + b)^p >= a^p + b^p turns each side into a geometric series.
    const double ratio = std::exp(-tau * std::pow(coset.spacing, p) / 2);
    for (int m = 0; m < 3; ++m) {
      const double cm = m == 0 ? 1.0 : std::pow(2.0 * m / (tau * std::numbers::e), m);
      out[static_cast<std::size_t>(m)] = 2 * cm * std::exp(-tau * bound / 2) / (1 - ratio);
    }
    return out;
  }
  // Integer vectors with ||v||_p^p = t number at most 2^n C(t + n, n) when
  // p = 1 and (2 t^{1/p} + 1)^n otherwise. Sum shells until the term ratio,
  // decreasing in t, certifies a geometric tail.
  const double n = static_cast<double>(coset.dimension());
  auto log_shell = [&](double t) {
    if (p == 1) {
      return n * std::log(2.0) + std::lgamma(t + n + 1) - std::lgamma(t + 1) - std::lgamma(n + 1);
    }
    return n * std::log(2 * std::pow(t, 1.0 / p) + 1);
  };
  for (int m = 0; m < 3; ++m) {
    auto term = [&](double t) { return std::exp(log_shell(t) + m * std::log(t) - tau * t); };
    double total = 0;
    for (double t = std::floor(bound) + 1;; t += 1) {
      const double cur = term(t);
      const double ratio = term(t + 1) / cur;
      total += cur;
      if (ratio < 0.5 && cur < 1e-300) break;
      if (ratio < 0.9 && cur * ratio / (1 - ratio) < total * 1e-6) {
        total += cur * ratio / (1 - ratio);
        break;
      }
    }
    out[static_cast<std::size_t>(m)] = total;
  }
  return out;
}

struct ThetaSums {
  long double s0 = 0, s1 = 0, s2 = 0, largest = 0;
};

ThetaSums sum_terms(const std::vector<double>& norms, double tau) {
  std::vector<double> sorted(norms);
  // Small terms first.
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  ThetaSums s;
  for (double t : sorted) {
    const long double w = std::exp(-static_cast<long double>(tau) * t);
    s.s0 += w;
    s.s1 += w * t;
    s.s2 += w * t * t;
    s.largest = std::max(s.largest, w);
  }
  return s;
}

ThetaProfile profile_from(int p, double tau, const std::vector<double>& norms, double bound,
                          const std::array<double, 3>& tails) {
  auto s = sum_terms(norms, tau);
  ThetaProfile out;
  out.p = p;
  out.tau = tau;
  out.truncation = bound;
  out.points = norms.size();
  out.theta = static_cast<double>(s.s0);
  out.mu = s.s0 > 0 ? static_cast<double>(s.s1 / s.s0) : 0;
  out.second_moment = s.s0 > 0 ? static_cast<double>(s.s2 / s.s0) : 0;
  out.largest_term = static_cast<double>(s.largest);
  out.tail_bound = s.s0 > 0 ? std::max({tails[0] / out.theta,
                                        tails[1] / (out.theta * std::max(out.mu, 1.0)),
                                        tails[2] / (out.theta * std::max(out.second_moment, 1.0))})
                            : std::numeric_limits<double>::infinity();
  return out;
}

// Truncation level meeting the tolerance at the given tau. A small ball gives
// a lower bound on theta, then the tails alone fix the radius.
double choose_truncation(int p, double tau, const ThetaCoset& coset, double tolerance,
                         const WorkLimits& limits) {
  double start = std::pow(coset.spacing, p);
  if (!coset.is_line()) {
    start = 0;
    for (auto v : coset.shift) start += std::pow(std::abs(static_cast<double>(v)), p);
  }
  start = std::max(start, 1.0);
  const auto lower = sum_terms(coset_norms(p, coset, start, limits), tau).s0;
  double bound = start;
  for (int iter = 0; iter < 400; ++iter) {
    const auto tails = tail_bounds(p, tau, coset, bound);
    if (*std::max_element(tails.begin(), tails.end()) < tolerance * static_cast<double>(lower)) {
      return bound;
    }
    bound = bound * 1.05 + 1;
  }
  throw WorkLimitExceeded("theta: could not reach the tail tolerance");
}

}  // namespace

ThetaProfile theta(int p, double tau, const ThetaCoset& coset, double tolerance,
                   const WorkLimits& limits) {
  require(p >= 1, "theta: p must be >= 1");
  require(tau > 0, "theta: tau must be positive");
  require(tolerance > 0, "theta: tolerance must be positive");
  const double bound = choose_truncation(p, tau, coset, tolerance, limits);
  auto norms = coset_norms(p, coset, bound, limits);
  return profile_from(p, tau, norms, bound, tail_bounds(p, tau, coset, bound));
}

std::vector<ThetaDerivativePoint> theta_derivative_checks(int p, std::span<const double> taus,
                                                          const ThetaCoset& coset, double step,
                                                          double tolerance) {
  require(step > 0, "theta_derivative_checks: step must be positive");
  std::vector<ThetaDerivativePoint> out;
  for (double tau : taus) {
    require(tau - step > 0, "theta_derivative_checks: tau - step must be positive");
    // One truncation for all three evaluations keeps the differences smooth.
    const double bound = choose_truncation(p, tau - step, coset, tolerance, {});
    auto norms = coset_norms(p, coset, bound, {});
    auto lo = sum_terms(norms, tau - step);
    auto mid = sum_terms(norms, tau);
    auto hi = sum_terms(norms, tau + step);
    const long double l0 = std::log(lo.s0), l1 = std::log(mid.s0), l2 = std::log(hi.s0);
    ThetaDerivativePoint pt;
    pt.tau = tau;
    pt.first_difference = static_cast<double>((l2 - l0) / (2 * step));
    pt.second_difference = static_cast<double>((l2 - 2 * l1 + l0) / (static_cast<long double>(step) * step));
    const long double mu = mid.s1 / mid.s0;
    pt.minus_mu = static_cast<double>(-mu);
    pt.variance = static_cast<double>(mid.s2 / mid.s0 - mu * mu);
    out.push_back(pt);
  }
  return out;
}

std::uint64_t coset_point_count(int p, double r, const ThetaCoset& coset, const WorkLimits& limits) {
  require(p >= 1 && r >= 0, "coset_point_count: need p >= 1 and r >= 0");
  const double bound = std::pow(r, p);
  return coset_norms(p, coset, bound * (1 + 1e-12), limits).size();
}

NpBounds np_bounds(int p, double r, const ThetaCoset& coset, double tau, double delta,
                   double tolerance, const WorkLimits& limits) {
  require(delta > 0, "np_bounds: delta must be positive");
  NpBounds b;
  b.r = r;
  b.count = coset_point_count(p, r, coset, limits);
  const auto t0 = theta(p, tau, coset, tolerance, limits);
  const auto t1 = theta(p, tau + delta, coset, tolerance, limits);
  const auto t2 = theta(p, tau + 2 * delta, coset, tolerance, limits);
  b.upper = std::exp(tau * std::pow(r, p)) * t0.theta;
  b.upper_holds = static_cast<double>(b.count) <= b.upper * (1 + 1e-12);
  b.mu_radius = std::pow(t0.mu, 1.0 / p);
  b.count_at_mu = coset_point_count(p, b.mu_radius, coset, limits);
  b.h_p = t1.theta - std::exp(-delta * t0.mu) * t0.theta - std::exp(delta * t2.mu) * t2.theta;
  b.lower = std::exp((tau + delta) * t2.mu) * b.h_p;
  b.lower_holds = b.h_p <= 0 || static_cast<double>(b.count_at_mu) >= b.lower * (1 - 1e-9);
  return b;
}

}  // namespace rslat
