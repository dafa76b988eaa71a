#include <cmath>
#include <random>

#include "doctest.h"
#include "rslat/density.hpp"
#include "rslat/derand.hpp"
#include "rslat/error.hpp"
#include "rslat/lattice.hpp"

using namespace rslat;

TEST_CASE("received word from a syndrome") {
  auto hm = build_parity_check(5, 2);
  auto r = received_word_from_syndrome(hm, 2, Syndrome{5, {2, 0}});
  CHECK(r == std::vector<std::uint64_t>{0, 4, 1, 1, 4});
  // Constants 4 and 1 each agree on two coordinates.
  CHECK(count_agreeing_codewords(5, hm.points(), 1, r, 2) == 2);
  CHECK(count_binary_coset_vectors(hm, Syndrome{5, {2, 0}}, 2).count == 2);

  CHECK_THROWS_AS(received_word_from_syndrome(hm, 2, Syndrome{5, {3, 0}}), InvalidArgument);
  CHECK_THROWS_AS(received_word_from_syndrome(hm, 1, Syndrome{5, {1, 0}}), InvalidArgument);
}

TEST_CASE("agreeing codewords dominate the binary coset count") {
  for (std::uint64_t q : {5ULL, 7ULL, 11ULL}) {
    auto hm = build_parity_check(q, 2);
    for (std::size_t h : {2u, 3u}) {
      for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto x = sample_dense_shift(q, h, 1000 * q + 10 * h + seed);
        auto u = syndrome(hm, x);
        auto r = received_word_from_syndrome(hm, h, u);
        const auto agree = count_agreeing_codewords(q, hm.points(), h - 2 + 1, r, h);
        const auto coset = count_binary_coset_vectors(hm, u, h).count;
        CHECK(BigInt(agree) >= coset);
      }
    }
  }
}

TEST_CASE("character sums") {
  PrimeField f5(5);
  auto c = character_sum(FieldPoly(f5, {3}));
  CHECK(c.magnitude == doctest::Approx(5.0).epsilon(1e-12));
  auto lin = character_sum(FieldPoly(f5, {0, 1}));
  CHECK(lin.magnitude < 1e-12);
  auto gauss = character_sum(FieldPoly(f5, {0, 0, 1}), 3);
  CHECK(std::abs(gauss.magnitude - std::sqrt(5.0)) < 1e-9);
  CHECK(std::abs(gauss.magnitude - gauss.weil_bound) < 1e-9);
  CHECK(gauss.weil_holds);
  CHECK(std::abs(std::abs(gauss.value) - gauss.magnitude) < 1e-12);
  CHECK_THROWS_AS(character_sum(FieldPoly(f5, {0, 0, 1}), 2), InvalidArgument);
}

TEST_CASE("Weil bound over random polynomials") {
  std::mt19937_64 rng(11);
  for (std::uint64_t q : {5ULL, 7ULL, 11ULL, 13ULL}) {
    PrimeField f(q);
    std::uniform_int_distribution<std::uint64_t> coeff(0, q - 1);
    for (std::size_t k : {3u, 4u, 5u}) {
      std::size_t violations = 0;
      for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::uint64_t> cs(k - 1);
        do {
          for (auto& v : cs) v = coeff(rng);
        } while (std::all_of(cs.begin() + 1, cs.end(), [](auto v) { return v == 0; }));
        violations += !character_sum(FieldPoly(f, cs), k).weil_holds;
      }
      CHECK(violations == 0);
    }
  }
}

TEST_CASE("sequence counts") {
  CHECK(exact_sequence_count(5, 2, 3, Syndrome{5, {3, 0}}) == 25);
  CHECK(exact_sequence_count(5, 2, 3, Syndrome{5, {2, 1}}) == 0);
  auto hm = build_parity_check(7, 3);
  for (std::size_t j = 0; j < hm.length(); ++j) {
    CHECK(exact_sequence_count(7, 3, 1, Syndrome{7, hm.column(j)}) == 1);
  }
  for (std::uint64_t q : {3ULL, 5ULL, 7ULL}) {
    for (std::size_t k = 1; k <= 3; ++k) {
      for (std::size_t h = 1; h <= 4; ++h) {
        auto serial = sequence_count_table(q, k, h, {}, ExecPolicy::Serial);
        auto parallel = sequence_count_table(q, k, h, {}, ExecPolicy::Parallel);
        CHECK(serial == parallel);
        BigInt total = 0;
        for (auto v : serial) total += v;
        CHECK(total == pow(BigInt(q), static_cast<unsigned>(h)));
      }
    }
  }
}

TEST_CASE("Fourier count identity") {
  auto d = fourier_count_identity(5, 2, 3, Syndrome{5, {3, 0}});
  CHECK(d.exact_count == 25);
  CHECK(d.main_term == Rational(25));
  CHECK(std::abs(d.correction) < 1e-9);
  CHECK(d.paper_main_term == 625);

  auto e = fourier_count_identity(5, 3, 2, Syndrome{5, {2, 0, 0}});
  CHECK(e.main_term == Rational(1));
  CHECK(e.reconciliation_error <= 1e-6);

  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL}) {
    for (std::size_t k = 1; k <= 3 && k <= q; ++k) {
      for (std::size_t h = 1; h <= 4; ++h) {
        double worst = 0;
        for (const auto& row : fourier_count_table(q, k, h)) {
          worst = std::max(worst, row.reconciliation_error);
        }
        CHECK_MESSAGE(worst <= 1e-6, "q=" << q << " k=" << k << " h=" << h);
      }
    }
  }
}

TEST_CASE("Fourier barrier") {
  for (std::uint64_t q : {101ULL, 1009ULL, 10007ULL}) {
    std::size_t prev = 0;
    for (std::size_t k = 3; k <= 6; ++k) {
      auto b = fourier_barrier(q, k);
      const double lq = std::log(static_cast<double>(q));
      const double weil = (static_cast<double>(k) - 2) * std::sqrt(static_cast<double>(q));
      const double h = static_cast<double>(b.smallest_h);
      CHECK((h + 1 - static_cast<double>(k)) * lq > h * std::log(weil));
      CHECK((h - static_cast<double>(k)) * lq <= (h - 1) * std::log(weil));
      CHECK(b.smallest_h >= prev);
      prev = b.smallest_h;
      if (b.eps_prime < 0.5) CHECK(h <= b.predicted + 1);
    }
  }
}

TEST_CASE("theta closed forms") {
  auto z = ThetaCoset::line(1, 0);
  auto t = theta(1, std::log(2.0), z);
  CHECK(std::abs(t.theta - 3) < 1e-9);
  CHECK(std::abs(t.mu - 4.0 / 3) < 1e-9);
  CHECK(t.theta >= t.largest_term);
  CHECK(t.tail_bound < 1e-14);
  CHECK(std::abs(theta(1, 50, z).theta - 1) < 1e-15);
  CHECK_THROWS_AS(theta(1, 0, z), InvalidArgument);
}

TEST_CASE("theta is decreasing and log-convex") {
  const std::vector<double> taus{0.5, 1.0, 2.0};
  auto hm = build_parity_check(3, 1);
  const std::vector<ThetaCoset> cosets{ThetaCoset::line(1, 0), ThetaCoset::line(1, 0.3),
                                       ThetaCoset::parity(hm, {1, 0, 0})};
  for (int p : {1, 2}) {
    for (const auto& coset : cosets) {
      double prev = std::numeric_limits<double>::infinity();
      for (double tau = 0.5; tau <= 3.0; tau += 0.25) {
        const double v = theta(p, tau, coset, 1e-10).theta;
        CHECK(v < prev);
        prev = v;
      }
      for (const auto& pt : theta_derivative_checks(p, taus, coset, 1e-4, 1e-12)) {
        CHECK(std::abs(pt.first_difference - pt.minus_mu) <= 1e-6);
        CHECK(pt.second_difference > 0);
        CHECK(std::abs(pt.second_difference - pt.variance) <= 1e-5);
      }
    }
  }
}

TEST_CASE("N_p bounds") {
  auto z = ThetaCoset::line(1, 0);
  auto b = np_bounds(1, 1, z, std::log(2.0), 0.1);
  CHECK(b.count == 3);
  CHECK(std::abs(b.upper - 6) < 1e-9);
  CHECK(b.upper_holds);

  auto off = ThetaCoset::line(1, 0.5);
  CHECK(coset_point_count(1, 0.25, off) == 0);
  auto c = np_bounds(1, 0.25, off, 1.0, 0.1);
  CHECK(c.upper > 0);
  CHECK(c.upper_holds);

  auto hm = build_parity_check(5, 1);
  auto coset = ThetaCoset::parity(hm, {1, 1, 0, 0, 0});
  for (double tau : {1.5, 2.0, 3.0}) {
    for (double delta : {0.05, 0.2, 0.5}) {
      for (double r : {1.0, 2.0, 3.0}) {
        auto nb = np_bounds(1, r, coset, tau, delta, 1e-6);
        CHECK(nb.upper_holds);
        CHECK(nb.lower_holds);
      }
    }
  }
}
