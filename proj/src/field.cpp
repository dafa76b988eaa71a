#include "rslat/field.hpp"

#include <sstream>

#include "rslat/error.hpp"

namespace rslat {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t find_prime_at_least(std::uint64_t lower, std::uint64_t ceiling) {
  require(lower >= 2, "find_prime_at_least: lower bound must be >= 2");
  for (std::uint64_t n = lower; n <= ceiling; ++n) {
    if (is_prime(n)) return n;
  }
  throw InvalidArgument("find_prime_at_least: no prime below search ceiling " +
                        std::to_string(ceiling));
}

PrimeField::PrimeField(std::uint64_t q) : q_(q) {
  require(q < (1ULL << 62), "PrimeField: modulus too large");
  require(is_prime(q), "PrimeField: modulus " + std::to_string(q) + " is not prime");
}

std::uint64_t PrimeField::reduce(std::int64_t v) const {
  std::int64_t m = static_cast<std::int64_t>(q_);
  std::int64_t r = v % m;
  return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

std::uint64_t PrimeField::pow(std::uint64_t base, std::uint64_t exponent) const {
  std::uint64_t result = 1 % q_;
  base %= q_;
  while (exponent > 0) {
    if (exponent & 1) result = mul(result, base);
    base = mul(base, base);
    exponent >>= 1;
  }
  return result;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  a %= q_;
  require(a != 0, "PrimeField: inverse of zero");
  return pow(a, q_ - 2);
}

std::uint64_t PrimeField::div_by_integer(std::uint64_t a, std::int64_t i) const {
  std::uint64_t r = reduce(i);
  require(r != 0, "division by an integer divisible by the field modulus");
  return mul(a, inv(r));
}

std::int64_t PrimeField::centered(std::uint64_t a) const {
  a %= q_;
  return a > q_ / 2 ? static_cast<std::int64_t>(a) - static_cast<std::int64_t>(q_)
                    : static_cast<std::int64_t>(a);
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  require(modulus_ == o.modulus_, "FieldElem: modulus mismatch");
  std::uint64_t s = value_ + o.value_;
  return FieldElem(s >= modulus_ ? s - modulus_ : s, modulus_, 0);
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  require(modulus_ == o.modulus_, "FieldElem: modulus mismatch");
  return FieldElem(value_ >= o.value_ ? value_ - o.value_ : value_ + modulus_ - o.value_,
                   modulus_, 0);
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  require(modulus_ == o.modulus_, "FieldElem: modulus mismatch");
  auto prod = static_cast<unsigned __int128>(value_) * o.value_;
  return FieldElem(static_cast<std::uint64_t>(prod % modulus_), modulus_, 0);
}

FieldElem FieldElem::operator-() const {
  return FieldElem(value_ == 0 ? 0 : modulus_ - value_, modulus_, 0);
}

FieldMultiset::FieldMultiset(const PrimeField& field, std::span<const std::int64_t> values)
    : field_(field) {
  for (auto v : values) add(v);
}

void FieldMultiset::add(std::int64_t value, std::uint64_t multiplicity) {
  if (multiplicity == 0) return;
  entries_[field_.reduce(value)] += multiplicity;
  total_ += multiplicity;
}

std::vector<std::uint64_t> FieldMultiset::elements() const {
  std::vector<std::uint64_t> out;
  out.reserve(total_);
  for (const auto& [value, mult] : entries_) out.insert(out.end(), mult, value);
  return out;
}

FieldPoly::FieldPoly(const PrimeField& field, std::vector<std::uint64_t> coefficients)
    : field_(field), coeffs_(std::move(coefficients)) {
  for (auto& c : coeffs_) c %= field_.modulus();
  trim();
}

FieldPoly FieldPoly::constant(const PrimeField& field, std::int64_t c) {
  return FieldPoly(field, {field.reduce(c)});
}

FieldPoly FieldPoly::monomial(const PrimeField& field, std::size_t degree, std::int64_t c) {
  std::vector<std::uint64_t> coeffs(degree + 1, 0);
  coeffs[degree] = field.reduce(c);
  return FieldPoly(field, std::move(coeffs));
}

void FieldPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::uint64_t FieldPoly::eval(std::uint64_t x) const {
  std::uint64_t acc = 0;
  x %= field_.modulus();
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = field_.add(field_.mul(acc, x), *it);
  }
  return acc;
}

FieldPoly FieldPoly::operator+(const FieldPoly& o) const {
  require(field_ == o.field_, "FieldPoly: modulus mismatch");
  std::vector<std::uint64_t> out(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = field_.add(coefficient(i), o.coefficient(i));
  return FieldPoly(field_, std::move(out));
}

FieldPoly FieldPoly::operator-(const FieldPoly& o) const {
  require(field_ == o.field_, "FieldPoly: modulus mismatch");
  std::vector<std::uint64_t> out(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = field_.sub(coefficient(i), o.coefficient(i));
  return FieldPoly(field_, std::move(out));
}

FieldPoly FieldPoly::operator*(const FieldPoly& o) const {
  require(field_ == o.field_, "FieldPoly: modulus mismatch");
  if (is_zero() || o.is_zero()) return FieldPoly(field_);
  std::vector<std::uint64_t> out(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
      out[i + j] = field_.add(out[i + j], field_.mul(coeffs_[i], o.coeffs_[j]));
    }
  }
  return FieldPoly(field_, std::move(out));
}

FieldPoly FieldPoly::scaled(std::uint64_t c) const {
  std::vector<std::uint64_t> out(coeffs_);
  for (auto& v : out) v = field_.mul(v, c);
  return FieldPoly(field_, std::move(out));
}

std::string FieldPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    auto c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (c != 1 || i == 0) os << c;
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::vector<FieldElem> power_sums(const FieldMultiset& multiset, std::size_t count) {
  require(count >= 1, "power_sums: count must be positive");
  const auto& f = multiset.field();
  std::vector<std::uint64_t> sums(count, 0);
  for (const auto& [value, mult] : multiset.entries()) {
    std::uint64_t m = mult % f.modulus();
    std::uint64_t power = 1;  // value^0, including 0^0
    for (std::size_t i = 0; i < count; ++i) {
      sums[i] = f.add(sums[i], f.mul(m, power));
      power = f.mul(power, value);
    }
  }
  std::vector<FieldElem> out;
  out.reserve(count);
  for (auto s : sums) out.emplace_back(f, static_cast<std::int64_t>(s));
  return out;
}

std::vector<FieldElem> elementary_from_power_sums(const PrimeField& field,
                                                  std::span<const FieldElem> power_sums,
                                                  std::size_t count) {
  require(count >= 1, "elementary_from_power_sums: count must be positive");
  require(count <= field.modulus(),
          "elementary_from_power_sums: count exceeds q, Newton recursion would divide by zero");
  require(power_sums.size() >= count, "elementary_from_power_sums: too few power sums");
  std::vector<std::uint64_t> e(count, 0);
  e[0] = 1 % field.modulus();
  for (std::size_t i = 1; i < count; ++i) {
    // i e_i = sum_{j=1}^{i} (-1)^{j-1} e_{i-j} p_j
    std::uint64_t acc = 0;
    for (std::size_t j = 1; j <= i; ++j) {
      require(power_sums[j].modulus() == field.modulus(), "elementary_from_power_sums: modulus mismatch");
      std::uint64_t term = field.mul(e[i - j], power_sums[j].value());
      acc = (j % 2 == 1) ? field.add(acc, term) : field.sub(acc, term);
    }
    e[i] = field.div_by_integer(acc, static_cast<std::int64_t>(i));
  }
  std::vector<FieldElem> out;
  out.reserve(count);
  for (auto v : e) out.emplace_back(field, static_cast<std::int64_t>(v));
  return out;
}

std::vector<FieldElem> elementary_direct(const FieldMultiset& multiset, std::size_t count) {
  require(count >= 1, "elementary_direct: count must be positive");
  const auto& f = multiset.field();
  // Coefficients of prod (1 + t z), truncated at z^{count-1}.
  std::vector<std::uint64_t> e(count, 0);
  e[0] = 1 % f.modulus();
  for (auto t : multiset.elements()) {
    for (std::size_t i = count - 1; i >= 1; --i) e[i] = f.add(e[i], f.mul(e[i - 1], t));
  }
  std::vector<FieldElem> out;
  out.reserve(count);
  for (auto v : e) out.emplace_back(f, static_cast<std::int64_t>(v));
  return out;
}

FieldPoly root_polynomial(const FieldMultiset& multiset) {
  const auto& f = multiset.field();
  FieldPoly result = FieldPoly::constant(f, 1);
  for (auto t : multiset.elements()) {
    result = result * FieldPoly(f, {f.neg(t), 1});
  }
  return result;
}

}  // namespace rslat
