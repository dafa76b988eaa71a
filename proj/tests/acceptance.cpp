// Acceptance suite: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "rslat/decoding.hpp"
#include "rslat/density.hpp"
#include "rslat/derand.hpp"
#include "rslat/enumeration.hpp"
#include "rslat/error.hpp"
#include "rslat/field.hpp"
#include "rslat/lattice.hpp"
#include "rslat/reduction.hpp"

using namespace rslat;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > budget_s) {
    out.pass = false;
    out.detail += " [over time budget]";
  }
  failures += !out.pass;
  std::printf("%s %2d %-28s %8.2fs / %4.0fs  %s\n", out.pass ? "PASS" : "FAIL", id, name, secs,
              budget_s, out.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

// Squared-distance box walk over all lattice vectors near y (independent of the decoders).
std::vector<IntVector> lattice_ball(const ParityCheckMatrix& h, std::span<const Rational> y,
                                    const Rational& radius_sq) {
  const std::size_t n = y.size();
  const double r = std::sqrt(to_double(radius_sq));
  IntVector lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = static_cast<std::int64_t>(std::ceil(to_double(y[i]) - r - 1e-9));
    hi[i] = static_cast<std::int64_t>(std::floor(to_double(y[i]) + r + 1e-9));
  }
  std::vector<IntVector> out;
  IntVector v(lo);
  while (true) {
    Rational d = 0;
    for (std::size_t i = 0; i < n; ++i) d += (y[i] - v[i]) * (y[i] - v[i]);
    if (d <= radius_sq && syndrome(h, v).is_zero()) out.push_back(v);
    std::size_t i = 0;
    while (i < n && ++v[i] > hi[i]) v[i] = lo[i], ++i;
    if (i == n) break;
  }
  return out;
}

// CVP' classification by direct enumeration: binary combinations for YES, then
// a coefficient box for every multiple w of t up to the span bound.
Verdict direct_cvp_verdict(const GapCVPPrimeInstance& cvp) {
  const std::size_t d = cvp.b.rows(), r = cvp.b.cols();
  for (std::uint64_t mask = 0; mask < (1ULL << r); ++mask) {
    IntVector c(r);
    for (std::size_t i = 0; i < r; ++i) c[i] = mask >> i & 1;
    auto v = cvp.b * std::span<const std::int64_t>(c);
    for (std::size_t i = 0; i < d; ++i) v[i] -= cvp.t[i];
    if (Rational(norm_pow(v, cvp.p)) <= cvp.s_pow_p) return Verdict::Yes;
  }
  Rational radius = pow(cvp.gamma, static_cast<unsigned>(cvp.p)) * cvp.s_pow_p;
  double perp = to_double(distance_sq_to_span(cvp.b, cvp.t));
  if (perp < 1e-12) return Verdict::Neither;
  double gs = std::pow(to_double(radius), 1.0 / cvp.p);
  auto wmax = static_cast<std::int64_t>(gs / std::sqrt(perp)) + 2;
  auto ginv = inverse(gram(cvp.b));
  double worst = 0, tnorm = 0;
  for (std::size_t i = 0; i < r; ++i) worst = std::max(worst, to_double(ginv[i][i]));
  for (auto v : cvp.t) tnorm += static_cast<double>(v * v);
  for (std::int64_t w = 1; w <= wmax; ++w) {
    IntVector wt(d);
    for (std::size_t i = 0; i < d; ++i) wt[i] = w * cvp.t[i];
    double l2 = gs * std::sqrt(static_cast<double>(d)) + static_cast<double>(w) * std::sqrt(tnorm);
    auto box = static_cast<std::int64_t>(std::ceil(std::sqrt(worst) * l2)) + 1;
    if (box_vector_search(cvp.b, wt, cvp.p, radius, false, box).min_pow_p) return Verdict::Neither;
  }
  return Verdict::No;
}

Codeword random_codeword(const RSCode& code, std::mt19937_64& rng) {
  std::vector<std::uint64_t> msg(code.dimension());
  for (auto& m : msg) m = rng() % code.modulus();
  return rs_encode(code, FieldPoly(code.field(), msg));
}

// Codeword plus a real error of squared norm at most radius_sq, on a 1/1000 grid.
std::vector<Rational> noisy(const Codeword& c, const Rational& radius_sq, std::mt19937_64& rng) {
  const std::size_t n = c.size();
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> shrink(0.3, 1.0);
  std::vector<double> e(n);
  double total = 0;
  for (auto& v : e) {
    v = gauss(rng);
    total += v * v;
  }
  const double scale = std::sqrt(to_double(radius_sq) / total) * shrink(rng);
  std::vector<Rational> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto num = static_cast<std::int64_t>(e[i] * scale * 1000);
    y[i] = Rational(static_cast<std::int64_t>(c[i])) + Rational(num, 1000);
  }
  return y;
}

std::set<Codeword> words(const DecodeList& list) {
  std::set<Codeword> out;
  for (const auto& item : list.items) out.insert(item.codeword);
  return out;
}

Outcome min_distance() {
  int cases = 0, bad = 0, converse = 0;
  std::string detail;
  for (std::uint64_t q : {3, 5, 7, 11, 13}) {
    for (std::size_t k = 1; 2 * k <= q; ++k) {
      ++cases;
      auto hm = build_parity_check(q, k);
      auto res = min_dist_exact(hm, 1, Rational(static_cast<std::int64_t>(q)));
      const bool tight = (q - 1) % k == 0 && k < q - 1;
      const bool sound = res.value_pow_p && *res.value_pow_p >= 2 * k &&
                         norm_pow(res.witness, 1) == *res.value_pow_p &&
                         syndrome(hm, res.witness).is_zero() && (!tight || *res.value_pow_p == 2 * k);
      if (!sound) {
        ++bad;
        detail += " bad q=" + std::to_string(q) + ",k=" + std::to_string(k);
      } else if (!tight && *res.value_pow_p == 2 * k) {
        ++converse;
        detail += " q=" + std::to_string(q) + ",k=" + std::to_string(k);
      }
    }
  }
  return {bad == 0 && converse == 0,
          std::to_string(cases - bad) + "/" + std::to_string(cases) +
              " satisfy >= 2k and equality when k | q-1, k < q-1; equality without k | q-1"
              " (verified witnesses):" + (converse ? detail : std::string(" none"))};
}

Outcome determinants() {
  int cases = 0, bad = 0;
  for (std::uint64_t q : {3, 5, 7, 11, 13}) {
    for (std::size_t k = 1; 2 * k <= q; ++k) {
      ++cases;
      auto basis = lattice_basis(build_parity_check(q, k));
      const BigInt expect = pow(BigInt(q), static_cast<unsigned>(k));
      bad += basis.abs_determinant() != expect || abs(determinant(basis.columns)) != expect;
    }
  }
  return {bad == 0, std::to_string(cases - bad) + "/" + std::to_string(cases) +
                        " cases with |det| = q^k (HNF diagonal and elimination)"};
}

Outcome dense_cosets() {
  auto h = build_parity_check(11, 2);
  auto table = coset_count_table(h, 3);
  auto direct = coset_count_table(h, 3, {}, ExecPolicy::Serial);
  auto space = h.syndrome_space();
  const double average = 165.0 / 121.0;
  const int seeds = 1000;
  bool pass = table == direct;
  std::string detail = pass ? "" : "serial/parallel tables differ; ";
  for (double delta : {0.25, 0.5}) {
    int violations = 0;
    for (int s = 0; s < seeds; ++s) {
      auto x = sample_dense_shift(11, 3, static_cast<std::uint64_t>(s));
      auto count = static_cast<double>(table[space.encode(syndrome(h, x).values)]);
      violations += count < delta * average;
    }
    const double rate = static_cast<double>(violations) / seeds;
    const double upper = rate + 3 * std::sqrt(std::max(rate * (1 - rate), 1.0 / seeds) / seeds);
    pass = pass && upper < delta;
    detail += "delta=" + fmt(delta) + " rate=" + fmt(rate) + " (+3sigma " + fmt(upper) + ") ";
  }
  return {pass, detail};
}

Outcome gadgets() {
  bool all_verify = true, rate_ok = true;
  std::string detail;
  int emitted = 0;
  for (std::uint64_t q : {5, 7, 11, 13}) {
    for (std::size_t r = 1; r <= 3; ++r) {
      int failed = 0;
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        try {
          auto g = generate_gadget(1, Rational(3, 4), r, q, 2, seed);
          ++emitted;
          all_verify = all_verify && verify_gadget(g).ok();
        } catch (const VerificationFailed&) {
          ++failed;
        }
      }
      rate_ok = rate_ok && failed < 50;
      detail += " q" + std::to_string(q) + "r" + std::to_string(r) + ":" + std::to_string(failed) + "%";
    }
  }
  return {all_verify && rate_ok, std::to_string(emitted) + " emitted, all re-verify: " +
                                     (all_verify ? "yes" : "NO") + "; failure rates" + detail};
}

Outcome reduction_round_trip() {
  int yes = 0, no = 0, mismatches = 0, seed_base = 0;
  std::vector<LocallyDenseGadget> gs;
  GadgetOptions options;
  options.retry_limit = 1000;
  for (std::size_t r = 1; r <= 2; ++r) {
    gs.push_back(generate_gadget(1, Rational(3, 4), r, 5, 2, 21, options));
    if (!verify_gadget(gs.back()).ok()) return {false, "gadget failed re-verification"};
  }
  for (std::uint64_t seed = 0; (yes < 20 || no < 20) && seed < 5000; ++seed) {
    const std::size_t r = 1 + seed % 2;
    const auto& g = gs[r - 1];
    auto cvp = sample_cvp_instance(r + 1, r, 3, 1, Rational(1, 2), 5, 7000 + seed);
    if (seed % 3 == 0) {
      IntVector c(r);
      for (std::size_t i = 0; i < r; ++i) c[i] = (seed >> (i + 1)) & 1;
      cvp.t = cvp.b * std::span<const std::int64_t>(c);
    }
    if (std::any_of(cvp.t.begin(), cvp.t.end(), [](auto v) { return std::abs(v) > 3; })) continue;
    if (std::all_of(cvp.t.begin(), cvp.t.end(), [](auto v) { return v == 0; })) continue;
    auto src = verify_cvp_instance(cvp);
    if (src.verdict != direct_cvp_verdict(cvp)) {
      ++mismatches;
      continue;
    }
    if (src.verdict == Verdict::Yes ? yes >= 20 : src.verdict == Verdict::No ? no >= 20 : true)
      continue;
    auto iv = admissible_beta_interval(1, g.alpha, cvp.gamma, 1, cvp.s_pow_p, g.ell);
    auto svp = build_svp_instance(cvp, g, 1, choose_beta(1, iv, true));
    auto mapped = verify_svp_instance(svp);
    mismatches += mapped.verdict != src.verdict;
    (src.verdict == Verdict::Yes ? yes : no) += 1;
    seed_base = static_cast<int>(seed);
  }
  return {yes == 20 && no == 20 && mismatches == 0,
          std::to_string(yes) + " YES, " + std::to_string(no) + " NO, " +
              std::to_string(mismatches) + " mismatches (CVP ranks 1-2, q=5 gadgets; last seed " +
              std::to_string(seed_base) + ")"};
}

Outcome beta_example() {
  auto iv = admissible_beta_interval(1, Rational(3, 5), Rational(5, 2), 1, 2, 2);
  Rational beta = choose_beta(1, iv);
  Rational s_prime = 2 + Rational(3, 5) * beta * 2;
  auto wide = admissible_beta_interval(1, Rational(3, 5), 3, 1, 2, 2);
  const bool ok = iv.lo == Rational(5, 2) && iv.hi == Rational(5, 2) && beta == Rational(5, 2) &&
                  s_prime == 5 && wide.lo == Rational(5, 2) && wide.hi == Rational(10, 3);
  return {ok, "beta=" + beta.str() + " s'=" + s_prime.str() + " wide=[" + wide.lo.str() + ", " +
                  wide.hi.str() + "]"};
}

Outcome list_decoding() {
  int trials = 0, agree = 0, multi = 0;
  std::string detail;
  for (std::uint64_t q : {5, 7, 11}) {
    for (std::size_t k : {1, 2}) {
      RSCode code(q, q - k);
      const Rational eps(1, 10);
      const Rational radius = list_decode_radius_sq(code, eps);
      std::mt19937_64 rng(31 * q + k);
      for (int t = 0; t < 200; ++t) {
        auto c = random_codeword(code, rng);
        TorusVector y(q, noisy(c, radius, rng));
        auto list = rs_list_decode_l2(code, eps, y);
        auto oracle = q <= 7 ? rs_list_decode_l2_enumerate(code, eps, y)
                             : rs_list_decode_l2_patterns(code, eps, y);
        ++trials;
        const bool ok = words(list) == words(oracle) && words(list).count(c) == 1;
        agree += ok;
        multi += oracle.items.size() > 1;
      }
    }
  }
  detail = std::to_string(agree) + "/" + std::to_string(trials) +
           " trials match the oracle (codeword enumeration q<=7, error patterns q=11); " +
           std::to_string(multi) + " multi-element lists";
  return {agree == trials, detail};
}

Outcome minkowski() {
  auto r = minkowski_report(127);
  auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
  const double mk = std::sqrt(127.0) * std::pow(127.0, 9.0 / 127.0);
  bool values = r.k == 9 && rel(r.sqrt_2k, std::sqrt(18.0)) < 1e-9 && rel(r.minkowski, mk) < 1e-9 &&
                rel(r.cap, std::sqrt(254.0)) < 1e-9 && std::floor(r.minkowski * 100) == 1588 &&
                std::floor(r.cap * 1000) == 15937;
  int primes = 0, chain = 0, ratio_ok = 0;
  double worst = 0;
  std::uint64_t worst_q = 0;
  for (std::uint64_t q = 3; q <= 10000; ++q) {
    if (!is_prime(q)) continue;
    ++primes;
    auto m = minkowski_report(q);
    chain += m.chain_holds;
    if (m.k == 0) {
      ++ratio_ok;
      continue;
    }
    const double excess = m.minkowski / m.sqrt_2k / std::sqrt(2 * std::log2(static_cast<double>(q)));
    ratio_ok += excess <= 1;
    if (excess > worst) worst = excess, worst_q = q;
  }
  std::string detail = std::string("q=127 values ") + (values ? "ok" : "WRONG") + "; chain " +
                       std::to_string(chain) + "/" + std::to_string(primes) + "; ratio bound " +
                       std::to_string(ratio_ok) + "/" + std::to_string(primes) +
                       " (max ratio/sqrt(2 log2 q) = " + fmt(worst, 6) + " at q=" +
                       std::to_string(worst_q) + ")";
  return {values && chain == primes && ratio_ok == primes, detail};
}

Outcome beyond_unique() {
  const std::uint64_t q = 5;
  const std::size_t k = 2;
  auto h = build_parity_check(q, k);
  auto shorts = enumerate_coset_ball(h, Syndrome{q, std::vector<std::uint64_t>(k, 0)}, 2, 4);
  for (const auto& v : shorts) {
    if (norm_pow(v, 2) != 4) continue;
    std::vector<Rational> y(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) y[i] = Rational(v[i], 2);
    auto list = lattice_decode_minkowski(q, k, Rational(1, 3), y);
    auto oracle = lattice_ball(h, y, list.radius_sq);
    std::set<IntVector> got;
    for (const auto& item : list.items) got.insert(item.lattice);
    if (list.items.size() >= 2 && got == std::set<IntVector>(oracle.begin(), oracle.end())) {
      std::string pt;
      for (const auto& c : y) pt += (pt.empty() ? "" : ",") + c.str();
      return {true, "y=(" + pt + ") decodes to " + std::to_string(list.items.size()) +
                        " lattice vectors at radius^2 " + list.radius_sq.str() + ", oracle agrees"};
    }
  }
  return {false, "no midpoint of a norm^2 4 vector gave a 2-element list"};
}

Outcome lemma_guarantee() {
  auto hm5 = build_parity_check(5, 2);
  bool example =
      received_word_from_syndrome(hm5, 2, Syndrome{5, {2, 0}}) == std::vector<std::uint64_t>{0, 4, 1, 1, 4};
  int cases = 0, ok = 0;
  for (std::uint64_t q : {5, 7, 11}) {
    auto hm = build_parity_check(q, 2);
    for (std::size_t h : {2u, 3u}) {
      for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto x = sample_dense_shift(q, h, 5000 * q + 10 * h + seed);
        auto u = syndrome(hm, x);
        auto r = received_word_from_syndrome(hm, h, u);
        const auto agree = count_agreeing_codewords(q, hm.points(), h - 1, r, h);
        ++cases;
        ok += BigInt(agree) >= count_binary_coset_vectors(hm, u, h).count;
      }
    }
  }
  return {example && ok == cases, std::string("worked example ") + (example ? "ok" : "WRONG") +
                                      "; " + std::to_string(ok) + "/" + std::to_string(cases) +
                                      " shifts satisfy agree >= coset count"};
}

Outcome weil() {
  std::mt19937_64 rng(2024);
  std::size_t violations = 0, total = 0;
  double worst = 0;
  for (std::uint64_t q : {5, 7, 11, 13}) {
    PrimeField f(q);
    std::uniform_int_distribution<std::uint64_t> coeff(0, q - 1);
    for (std::size_t k : {3u, 4u, 5u}) {
      for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::uint64_t> cs(k - 1);
        do {
          for (auto& v : cs) v = coeff(rng);
        } while (std::all_of(cs.begin() + 1, cs.end(), [](auto v) { return v == 0; }));
        auto res = character_sum(FieldPoly(f, cs), k);
        ++total;
        violations += !res.weil_holds;
        worst = std::max(worst, res.magnitude / res.weil_bound);
      }
    }
  }
  auto gauss = character_sum(FieldPoly(PrimeField(5), {0, 0, 1}), 3);
  const bool eq = std::abs(gauss.magnitude - std::sqrt(5.0)) < 1e-9 &&
                  std::abs(gauss.magnitude - gauss.weil_bound) < 1e-9;
  return {violations == 0 && eq, std::to_string(violations) + " violations in " +
                                     std::to_string(total) + " sums (max |S|/bound " + fmt(worst) +
                                     "); Gauss sum |S| = " + fmt(gauss.magnitude, 12)};
}

Outcome fourier() {
  double worst = 0;
  bool totals = true;
  int cases = 0;
  for (std::uint64_t q : {2, 3, 5, 7, 11}) {
    for (std::size_t k = 1; k <= 3 && k <= q; ++k) {
      for (std::size_t h = 1; h <= 4; ++h) {
        ++cases;
        BigInt total = 0;
        for (const auto& row : fourier_count_table(q, k, h)) {
          worst = std::max(worst, row.reconciliation_error);
          total += row.exact_count;
        }
        totals = totals && total == pow(BigInt(q), static_cast<unsigned>(h));
      }
    }
  }
  auto d = fourier_count_identity(5, 2, 3, Syndrome{5, {3, 0}});
  const bool example = d.exact_count == 25 && d.main_term == 25;
  return {worst <= 1e-6 && totals && example,
          std::to_string(cases) + " (q,k,h) tables, worst relative error " + fmt(worst, 3) +
              "; totals = q^h: " + (totals ? "yes" : "NO") + "; q=5,k=2,h=3 count " +
              d.exact_count.str()};
}

Outcome theta_calculus() {
  auto z = ThetaCoset::line(1, 0);
  auto t = theta(1, std::log(2.0), z);
  const bool closed = std::abs(t.theta - 3) < 1e-9 && std::abs(t.mu - 4.0 / 3) < 1e-9;

  const std::vector<double> taus{0.5, 1.0, 2.0};
  auto hm3 = build_parity_check(3, 1);
  const std::vector<ThetaCoset> cosets{ThetaCoset::line(1, 0), ThetaCoset::line(1, 0.3),
                                       ThetaCoset::parity(hm3, {1, 0, 0})};
  double worst_first = 0, worst_second = 0;
  for (int p : {1, 2}) {
    for (const auto& coset : cosets) {
      for (const auto& pt : theta_derivative_checks(p, taus, coset, 1e-4, 1e-12)) {
        worst_first = std::max(worst_first, std::abs(pt.first_difference - pt.minus_mu));
        worst_second = std::max(worst_second, std::abs(pt.second_difference - pt.variance));
      }
    }
  }

  int instances = 0, upper_bad = 0, lower_bad = 0, positive = 0;
  auto record = [&](const NpBounds& nb) {
    ++instances;
    upper_bad += !nb.upper_holds;
    if (nb.h_p > 0) {
      ++positive;
      lower_bad += !(static_cast<double>(nb.count_at_mu) >= nb.lower);
    }
  };
  // Large tau: the points concentrate near the origin and H_p stays negative.
  auto hm5 = build_parity_check(5, 1);
  for (const auto& coset : {ThetaCoset::line(1, 0), ThetaCoset::line(1, 0.3),
                            ThetaCoset::parity(hm5, {1, 1, 0, 0, 0})}) {
    for (double tau : {1.5, 2.0, 3.0})
      for (double delta : {0.05, 0.2, 0.5})
        for (double r : {1.0, 2.0, 3.0}) record(np_bounds(1, r, coset, tau, delta, 1e-6));
  }
  // Small tau with wide delta, where H_p > 0 does occur.
  for (const auto& coset : cosets) {
    for (int p : {1, 2})
      for (double tau : {0.2, 0.3, 0.5})
        for (double delta : {0.5, 1.0})
          for (double r : {1.0, 2.0, 3.0}) record(np_bounds(p, r, coset, tau, delta, 1e-6));
  }
  const bool derivs = worst_first <= 1e-5 && worst_second <= 1e-5;
  return {closed && derivs && upper_bad == 0 && lower_bad == 0,
          "Theta=" + fmt(t.theta, 12) + " mu=" + fmt(t.mu, 12) + "; derivative errors " +
              fmt(worst_first, 3) + ", " + fmt(worst_second, 3) + "; N_p upper violations " +
              std::to_string(upper_bad) + "/" + std::to_string(instances) + "; H_p>0 in " +
              std::to_string(positive) + " instances, lower violations " +
              std::to_string(lower_bad)};
}

}  // namespace

int main() {
  criterion(1, "minimum distance", 60, min_distance);
  criterion(2, "determinant", 10, determinants);
  criterion(3, "dense coset sampling", 60, dense_cosets);
  criterion(4, "gadget verification", 300, gadgets);
  criterion(5, "reduction round-trip", 600, reduction_round_trip);
  criterion(6, "beta interval", 1, beta_example);
  criterion(7, "l2 list decoding", 600, list_decoding);
  criterion(8, "Minkowski chain", 60, minkowski);
  criterion(9, "beyond-unique list", 60, beyond_unique);
  criterion(10, "agreeing codewords", 300, lemma_guarantee);
  criterion(11, "Weil bound", 60, weil);
  criterion(12, "Fourier identity", 300, fourier);
  criterion(13, "theta calculus", 300, theta_calculus);
  std::printf("%d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
