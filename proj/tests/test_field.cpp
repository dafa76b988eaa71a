#include <map>
#include <random>

#include "doctest.h"
#include "rslat/error.hpp"
#include "rslat/field.hpp"

using namespace rslat;

namespace {

std::vector<std::uint64_t> values(const std::vector<FieldElem>& v) {
  std::vector<std::uint64_t> out;
  for (const auto& e : v) out.push_back(e.value());
  return out;
}

FieldMultiset multiset(std::uint64_t q, std::vector<std::int64_t> xs) {
  return FieldMultiset(PrimeField(q), xs);
}

using U = std::vector<std::uint64_t>;

// e_i as a sum over all index subsets of size i.
U elementary_by_subsets(const PrimeField& f, const std::vector<std::uint64_t>& xs,
                        std::size_t count) {
  U e(count, 0);
  const std::size_t n = xs.size();
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size >= count) continue;
    std::uint64_t prod = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) prod = f.mul(prod, xs[i]);
    e[size] = f.add(e[size], prod);
  }
  return e;
}

void all_multisets(std::uint64_t q, std::size_t max_size, std::vector<std::int64_t>& cur,
                   std::int64_t from, std::vector<std::vector<std::int64_t>>& out) {
  out.push_back(cur);
  if (cur.size() == max_size) return;
  for (auto v = from; v < static_cast<std::int64_t>(q); ++v) {
    cur.push_back(v);
    all_multisets(q, max_size, cur, v, out);
    cur.pop_back();
  }
}

}  // namespace

TEST_CASE("prime field basics") {
  CHECK(is_prime(2));
  CHECK(is_prime(13));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK_THROWS_AS(PrimeField(12), InvalidArgument);
  PrimeField f(7);
  CHECK(f.reduce(-1) == 6);
  CHECK(f.pow(0, 0) == 1);
  CHECK(f.mul(f.inv(3), 3) == 1);
  CHECK(f.centered(6) == -1);
  CHECK_THROWS_AS(f.div_by_integer(3, 14), InvalidArgument);
  CHECK(f.div_by_integer(4, 2) == 2);
  FieldElem a(f, 5), b(f, 4);
  CHECK((a + b).value() == 2);
  CHECK((a * b).value() == 6);
  CHECK((-a).value() == 2);
}

TEST_CASE("find_prime_at_least") {
  CHECK(find_prime_at_least(5) == 5);
  CHECK(find_prime_at_least(24) == 29);
  CHECK(find_prime_at_least(100) == 101);
  CHECK_THROWS_AS(find_prime_at_least(1), InvalidArgument);
  CHECK_THROWS_AS(find_prime_at_least(100, 50), InvalidArgument);
}

TEST_CASE("power sums") {
  CHECK(values(power_sums(multiset(5, {1, 4}), 3)) == U{2, 0, 2});
  CHECK(values(power_sums(multiset(5, {}), 2)) == U{0, 0});
  CHECK(values(power_sums(multiset(5, {0}), 2)) == U{1, 0});
}

TEST_CASE("elementary symmetric polynomials") {
  PrimeField f5(5);
  std::vector<FieldElem> p{FieldElem(f5, 2), FieldElem(f5, 0), FieldElem(f5, 2)};
  CHECK(values(elementary_from_power_sums(f5, p, 3)) == U{1, 0, 4});
  CHECK(values(elementary_from_power_sums(f5, p, 1)) == U{1});
  CHECK(values(elementary_direct(multiset(5, {1, 4}), 3)) == U{1, 0, 4});
  CHECK(values(elementary_direct(multiset(5, {}), 2)) == U{1, 0});
  CHECK(values(elementary_direct(multiset(5, {2, 2}), 3)) == U{1, 4, 4});

  std::vector<FieldElem> six(6, FieldElem(f5, 1));
  CHECK_THROWS_AS(elementary_from_power_sums(f5, six, 6), InvalidArgument);
  CHECK_THROWS_AS(elementary_from_power_sums(f5, p, 4), InvalidArgument);
}

TEST_CASE("Newton recursion agrees with the subset oracle on random multisets") {
  std::mt19937_64 rng(20240611);
  int checked = 0;
  for (std::uint64_t q : {5, 7, 11}) {
    PrimeField f(q);
    for (int trial = 0; trial < 500; ++trial) {
      std::size_t size = rng() % 7;
      std::vector<std::int64_t> xs;
      U raw;
      for (std::size_t i = 0; i < size; ++i) {
        xs.push_back(static_cast<std::int64_t>(rng() % q));
        raw.push_back(static_cast<std::uint64_t>(xs.back()));
      }
      FieldMultiset t(f, xs);
      std::size_t limit = std::min<std::size_t>(size + 1, q);
      for (std::size_t c = 1; c <= limit; ++c) {
        auto oracle = elementary_by_subsets(f, raw, c);
        CHECK(values(elementary_direct(t, c)) == oracle);
        if (size <= std::min<std::size_t>(6, q - 1)) {
          auto ps = power_sums(t, c);
          CHECK(values(elementary_from_power_sums(f, ps, c)) == oracle);
        }
        ++checked;
      }
    }
  }
  CHECK(checked > 1500);
}

TEST_CASE("power sums are injective on small multisets") {
  for (std::uint64_t q : {5, 7}) {
    for (std::size_t k = 1; k <= q / 2; ++k) {
      std::vector<std::vector<std::int64_t>> sets;
      std::vector<std::int64_t> cur;
      all_multisets(q, 2 * k - 1, cur, 0, sets);
      std::map<U, std::vector<std::size_t>> by_sums;
      for (std::size_t i = 0; i < sets.size(); ++i) {
        by_sums[values(power_sums(multiset(q, sets[i]), k))].push_back(i);
      }
      for (const auto& [sums, idx] : by_sums) {
        for (std::size_t a = 0; a < idx.size(); ++a)
          for (std::size_t b = a + 1; b < idx.size(); ++b) {
            INFO("q=" << q << " k=" << k);
            CHECK(sets[idx[a]].size() + sets[idx[b]].size() >= 2 * k);
          }
      }
    }
  }
}

TEST_CASE("root polynomial") {
  PrimeField f5(5);
  CHECK(root_polynomial(multiset(5, {1, 4})).coefficients() == U{4, 0, 1});
  CHECK(root_polynomial(multiset(5, {2, 3})).coefficients() == U{1, 0, 1});
  CHECK(root_polynomial(multiset(5, {})).coefficients() == U{1});

  std::mt19937_64 rng(7);
  for (std::uint64_t q : {5, 7, 11}) {
    PrimeField f(q);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<std::int64_t> xs;
      for (std::size_t i = 0, n = rng() % 6; i < n; ++i)
        xs.push_back(static_cast<std::int64_t>(rng() % q));
      FieldMultiset t(f, xs);
      auto poly = root_polynomial(t);
      REQUIRE(poly.degree() == static_cast<int>(xs.size()));
      CHECK(poly.coefficient(xs.size()) == 1);
      for (auto x : xs) CHECK(poly.eval(static_cast<std::uint64_t>(x)) == 0);
      auto e = elementary_direct(t, xs.size() + 1);
      for (std::size_t i = 0; i <= xs.size(); ++i) {
        auto expected = i % 2 == 0 ? e[i].value() : f.neg(e[i].value());
        CHECK(poly.coefficient(xs.size() - i) == expected);
      }
    }
  }
}

TEST_CASE("polynomial arithmetic") {
  PrimeField f(7);
  FieldPoly a(f, {1, 2});     // 1 + 2x
  FieldPoly b(f, {6, 0, 1});  // -1 + x^2
  CHECK((a * b).coefficients() == U{6, 5, 1, 2});
  CHECK((a + b).coefficients() == U{0, 2, 1});
  CHECK((b - b).is_zero());
  CHECK((b - b).degree() == -1);
  CHECK(a.eval(3) == 0);
  CHECK(FieldPoly::monomial(f, 3, 2).degree() == 3);
}
