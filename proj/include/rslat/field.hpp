#pragma once

// Prime-field arithmetic and the symmetric-polynomial toolkit.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace rslat {

bool is_prime(std::uint64_t n);

// Smallest prime >= lower, found by trial division.
std::uint64_t find_prime_at_least(std::uint64_t lower,
                                  std::uint64_t ceiling = (1ULL << 62));

// A prime modulus q, certified at construction.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t q);

  std::uint64_t modulus() const { return q_; }

  std::uint64_t reduce(std::int64_t v) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + q_ - b; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : q_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % q_);
  }
  // 0^0 = 1.
  std::uint64_t pow(std::uint64_t base, std::uint64_t exponent) const;
  std::uint64_t inv(std::uint64_t a) const;

  // Division by the literal integer i; rejects i = 0 mod q.
  std::uint64_t div_by_integer(std::uint64_t a, std::int64_t i) const;

  // Centered representative in (-q/2, q/2].
  std::int64_t centered(std::uint64_t a) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t q_;
};

class FieldElem {
 public:
  FieldElem(const PrimeField& field, std::int64_t value)
      : value_(field.reduce(value)), modulus_(field.modulus()) {}

  std::uint64_t value() const { return value_; }
  std::uint64_t modulus() const { return modulus_; }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator-() const;

  friend bool operator==(const FieldElem&, const FieldElem&) = default;

 private:
  FieldElem(std::uint64_t value, std::uint64_t modulus, int) : value_(value), modulus_(modulus) {}
  std::uint64_t value_;
  std::uint64_t modulus_;
};

// Multiset over F_q, kept canonical as sorted (residue, multiplicity) pairs.
class FieldMultiset {
 public:
  explicit FieldMultiset(const PrimeField& field) : field_(field) {}
  FieldMultiset(const PrimeField& field, std::span<const std::int64_t> values);

  void add(std::int64_t value, std::uint64_t multiplicity = 1);

  const PrimeField& field() const { return field_; }
  const std::map<std::uint64_t, std::uint64_t>& entries() const { return entries_; }
  std::uint64_t total_size() const { return total_; }

  // Elements in ascending order, repeated by multiplicity.
  std::vector<std::uint64_t> elements() const;

  friend bool operator==(const FieldMultiset&, const FieldMultiset&) = default;

 private:
  PrimeField field_;
  std::map<std::uint64_t, std::uint64_t> entries_;
  std::uint64_t total_ = 0;
};

// Univariate polynomial over F_q, coefficients lowest degree first.
class FieldPoly {
 public:
  explicit FieldPoly(const PrimeField& field) : field_(field) {}
  FieldPoly(const PrimeField& field, std::vector<std::uint64_t> coefficients);

  static FieldPoly constant(const PrimeField& field, std::int64_t c);
  static FieldPoly monomial(const PrimeField& field, std::size_t degree, std::int64_t c = 1);

  const PrimeField& field() const { return field_; }
  const std::vector<std::uint64_t>& coefficients() const { return coeffs_; }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::uint64_t coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }

  std::uint64_t eval(std::uint64_t x) const;

  FieldPoly operator+(const FieldPoly& o) const;
  FieldPoly operator-(const FieldPoly& o) const;
  FieldPoly operator*(const FieldPoly& o) const;
  FieldPoly scaled(std::uint64_t c) const;

  friend bool operator==(const FieldPoly&, const FieldPoly&) = default;

  std::string to_string() const;

 private:
  void trim();
  PrimeField field_;
  std::vector<std::uint64_t> coeffs_;
};

// Entry i is p_i(T) with multiplicity; entry 0 is |T| mod q.
std::vector<FieldElem> power_sums(const FieldMultiset& multiset, std::size_t count);

// e_0..e_{count-1} from power sums via Newton's identities.
std::vector<FieldElem> elementary_from_power_sums(const PrimeField& field,
                                                  std::span<const FieldElem> power_sums,
                                                  std::size_t count);

// e_0..e_{count-1} by expanding prod_t (1 + t z); e_i = 0 beyond |T|.
std::vector<FieldElem> elementary_direct(const FieldMultiset& multiset, std::size_t count);

// prod_{t in T} (x - t).
FieldPoly root_polynomial(const FieldMultiset& multiset);

}  // namespace rslat
