#include "rslat/reduction.hpp"

#include <cmath>
#include <random>

#include "rslat/enumeration.hpp"
#include "rslat/error.hpp"

namespace rslat {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "YES";
    case Verdict::No:
      return "NO";
    case Verdict::Neither:
      return "NEITHER";
    case Verdict::Boundary:
      return "BOUNDARY";
  }
  return "NEITHER";
}

BetaInterval admissible_beta_interval(int p, const Rational& alpha, const Rational& gamma,
                                      const Rational& gamma_prime, const Rational& s_pow_p,
                                      const Rational& ell) {
  require(p >= 1, "beta interval: p must be >= 1");
  require(alpha > 0 && s_pow_p > 0 && ell > 0, "beta interval: alpha, s and ell must be positive");
  require(gamma_prime >= 1 && alpha * gamma_prime < 1, "beta interval: need 1/alpha > gamma' >= 1");
  const auto e = static_cast<unsigned>(p);
  const Rational alpha_p = pow(alpha, e);
  const Rational gp_p = pow(gamma_prime, e);
  const Rational a = alpha_p * gp_p;
  BetaInterval iv;
  iv.lo = gp_p * s_pow_p / (ell * (1 - a));
  iv.hi = (pow(gamma, e) * s_pow_p / gp_p - s_pow_p) / (alpha_p * ell);
  require(iv.lo <= iv.hi,
          "beta interval: empty, gamma is below gamma' (1 / (1 - (alpha gamma')^p))^(1/p)");
  return iv;
}

Rational choose_beta(int p, const BetaInterval& interval, bool strict_lower) {
  require(p >= 1, "choose_beta: p must be >= 1");
  require(interval.lo > 0 && interval.lo <= interval.hi, "choose_beta: invalid interval");
  if (strict_lower && interval.lo == interval.hi) {
    throw InvalidArgument("choose_beta: interval has no interior");
  }
  const auto e = static_cast<unsigned>(p);
  // Stern-Brocot descent: the first mediant inside the interval is the simplest.
  BigInt a = 0, b = 1, c = 1, d = 0;
  for (int step = 0; step < 10'000'000; ++step) {
    BigInt num = a + c, den = b + d;
    Rational m(num, den);
    Rational mp = pow(m, e);
    bool below = strict_lower ? mp <= interval.lo : mp < interval.lo;
    if (below) {
      a = num;
      b = den;
    } else if (mp > interval.hi) {
      c = num;
      d = den;
    } else {
      return m;
    }
  }
  throw WorkLimitExceeded("choose_beta: search did not terminate");
}

GapSVPInstance build_svp_instance(const GapCVPPrimeInstance& cvp, const LocallyDenseGadget& gadget,
                                  const Rational& gamma_prime, const Rational& beta) {
  require(cvp.p == gadget.p, "build_svp_instance: norm exponents differ");
  require(beta > 0, "build_svp_instance: beta must be positive");
  const std::size_t d = cvp.b.rows();
  const std::size_t r = cvp.b.cols();
  require(cvp.t.size() == d, "build_svp_instance: target length mismatch");
  require(gadget.t.rows() == r, "build_svp_instance: gadget T must have r rows");
  const auto e = static_cast<unsigned>(cvp.p);
  auto interval = admissible_beta_interval(cvp.p, gadget.alpha, cvp.gamma, gamma_prime,
                                           cvp.s_pow_p, Rational(gadget.ell));
  const Rational beta_p = pow(beta, e);
  require(beta_p >= interval.lo && beta_p <= interval.hi,
          "build_svp_instance: beta outside the admissible interval");

  GapSVPInstance out;
  out.p = cvp.p;
  out.gamma_prime = gamma_prime;
  bool zero = std::all_of(cvp.t.begin(), cvp.t.end(), [](auto v) { return v == 0; });
  if (zero) {
    out.b = IntMatrix::identity(1);
    out.s_prime_pow_p = 1;
    return out;
  }

  const auto& a = gadget.basis.columns;  // n x R
  const std::size_t n = a.rows();
  const std::size_t rank = a.cols();
  require(gadget.t.cols() == n && gadget.x.size() == n, "build_svp_instance: gadget shapes");
  const std::int64_t beta_num = to_int64(numerator(beta));
  const std::int64_t beta_den = to_int64(denominator(beta));

  IntMatrix bt = cvp.b * gadget.t;  // d x n
  IntMatrix bta = bt * a;           // d x R
  IntVector btx = bt * std::span<const std::int64_t>(gadget.x);
  out.b = IntMatrix(d + n, rank + 1);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < rank; ++j) out.b(i, j) = beta_den * bta(i, j);
    out.b(i, rank) = beta_den * (btx[i] - cvp.t[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < rank; ++j) out.b(d + i, j) = beta_num * a(i, j);
    out.b(d + i, rank) = beta_num * gadget.x[i];
  }
  const Rational scale = pow(Rational(beta_den), e);
  out.s_prime_pow_p =
      scale * (cvp.s_pow_p + pow(gadget.alpha, e) * beta_p * Rational(gadget.ell));
  return out;
}

IntVector svp_yes_witness(const LocallyDenseGadget& gadget, const IntVector& c) {
  require(c.size() == gadget.r, "svp_yes_witness: c must have length r");
  std::size_t mask = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    require(c[i] == 0 || c[i] == 1, "svp_yes_witness: c must be binary");
    mask |= static_cast<std::size_t>(c[i]) << i;
  }
  require(mask < gadget.cover.size(), "svp_yes_witness: gadget has no cover map");
  const auto& v = gadget.cover[mask];
  IntVector diff(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) diff[i] = v[i] - gadget.x[i];
  auto z = lattice_coordinates(gadget.basis.columns, diff);
  if (!z) throw VerificationFailed("svp_yes_witness: cover vector is not in the coset x + L(A)");
  z->push_back(1);
  return *z;
}

PromiseVerdict verify_cvp_instance(const GapCVPPrimeInstance& cvp, const WorkLimits& limits,
                                   ExecPolicy policy) {
  const std::size_t d = cvp.b.rows();
  const std::size_t r = cvp.b.cols();
  require(r >= 1 && r <= 12, "verify_cvp_instance: rank must be in [1, 12]");
  require(cvp.t.size() == d, "verify_cvp_instance: target length mismatch");
  require(rank(cvp.b) == r, "verify_cvp_instance: columns of B are dependent");
  PromiseVerdict out;

  IntVector c(r, 0);
  for (std::uint64_t mask = 0; mask < (1ULL << r); ++mask) {
    for (std::size_t i = 0; i < r; ++i) c[i] = static_cast<std::int64_t>(mask >> i & 1);
    IntVector v = cvp.b * std::span<const std::int64_t>(c);
    for (std::size_t i = 0; i < d; ++i) v[i] -= cvp.t[i];
    BigInt norm = norm_pow(v, cvp.p);
    if (!out.min_pow_p || norm < *out.min_pow_p) {
      out.min_pow_p = norm;
      out.witness = c;
    }
  }
  out.nodes = 1ULL << r;
  if (Rational(*out.min_pow_p) <= cvp.s_pow_p) {
    out.verdict = Verdict::Yes;
    out.note = "binary combination within s";
    return out;
  }
  out.witness.clear();
  out.min_pow_p.reset();

  const Rational radius = pow(cvp.gamma, static_cast<unsigned>(cvp.p)) * cvp.s_pow_p;
  const Rational perp = distance_sq_to_span(cvp.b, cvp.t);
  if (perp == 0) {
    out.verdict = Verdict::Neither;
    out.note = "t lies in the rational span of B, so some multiple of t is a lattice vector";
    return out;
  }
  // dist_p(w t, L(B)) >= w * dist_2(t, span) * d^{min(0, 1/p - 1/2)}.
  const double cp = std::pow(static_cast<double>(d), std::min(0.0, 1.0 / cvp.p - 0.5));
  const double gs = std::pow(to_double(radius), 1.0 / cvp.p);
  out.w_max = static_cast<std::int64_t>(std::floor(gs / (std::sqrt(to_double(perp)) * cp))) + 1;
  for (std::int64_t w = 1; w <= out.w_max; ++w) {
    IntVector wt(d);
    for (std::size_t i = 0; i < d; ++i) wt[i] = w * cvp.t[i];
    auto res = close_vector_search(cvp.b, wt, cvp.p, radius, false, limits, policy);
    out.nodes += res.nodes;
    out.l2_radius = res.l2_radius;
    if (res.min_pow_p) {
      out.verdict = Verdict::Neither;
      out.min_pow_p = res.min_pow_p;
      out.witness = res.coefficients;
      out.note = "multiple w=" + std::to_string(w) + " of t within gamma s of the lattice";
      return out;
    }
  }
  out.verdict = Verdict::No;
  out.note = "every multiple w in [1, w_max] is farther than gamma s; larger w by the span bound";
  return out;
}

PromiseVerdict verify_svp_instance(const GapSVPInstance& svp, const WorkLimits& limits,
                                   ExecPolicy policy, std::int64_t box) {
  const std::size_t r = svp.b.cols();
  require(r >= 1 && r <= 8, "verify_svp_instance: rank must be in [1, 8]");
  require(svp.gamma_prime >= 1, "verify_svp_instance: gamma' must be >= 1");
  require(rank(svp.b) == r, "verify_svp_instance: columns are dependent");
  const Rational threshold =
      pow(svp.gamma_prime, static_cast<unsigned>(svp.p)) * svp.s_prime_pow_p;
  const IntVector zero(svp.b.rows(), 0);
  CloseVectorResult res =
      box > 0 ? box_vector_search(svp.b, zero, svp.p, threshold, true, box, limits)
              : close_vector_search(svp.b, zero, svp.p, threshold, true, limits, policy);
  PromiseVerdict out;
  out.nodes = res.nodes;
  out.l2_radius = res.l2_radius;
  out.min_pow_p = res.min_pow_p;
  out.witness = res.coefficients;
  if (box > 0) out.note = "box |c_i| <= " + std::to_string(box);
  if (!res.min_pow_p) {
    out.verdict = Verdict::No;
  } else if (Rational(*res.min_pow_p) <= svp.s_prime_pow_p) {
    out.verdict = Verdict::Yes;
  } else if (Rational(*res.min_pow_p) == threshold) {
    out.verdict = Verdict::Boundary;
  } else {
    out.verdict = Verdict::Neither;
  }
  return out;
}

GapCVPPrimeInstance sample_cvp_instance(std::size_t d, std::size_t r, std::int64_t bound, int p,
                                        const Rational& s_pow_p, const Rational& gamma,
                                        std::uint64_t seed) {
  require(d >= r && r >= 1, "sample_cvp_instance: need d >= r >= 1");
  SeededRng rng(seed);
  std::uniform_int_distribution<std::int64_t> entry(-bound, bound);
  GapCVPPrimeInstance cvp;
  cvp.p = p;
  cvp.s_pow_p = s_pow_p;
  cvp.gamma = gamma;
  do {
    cvp.b = IntMatrix(d, r);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < r; ++j) cvp.b(i, j) = entry(rng);
  } while (rank(cvp.b) < r);
  cvp.t.resize(d);
  do {
    for (auto& v : cvp.t) v = entry(rng);
  } while (std::all_of(cvp.t.begin(), cvp.t.end(), [](auto v) { return v == 0; }));
  return cvp;
}

}  // namespace rslat
