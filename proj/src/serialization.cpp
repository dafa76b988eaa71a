#include "rslat/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "rslat/error.hpp"

namespace nlohmann {

void adl_serializer<rslat::BigInt>::to_json(json& j, const rslat::BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    j = v.convert_to<std::int64_t>();
  } else {
    j = v.str();
  }
}

void adl_serializer<rslat::BigInt>::from_json(const json& j, rslat::BigInt& v) {
  if (j.is_number_integer()) {
    v = j.get<std::int64_t>();
  } else if (j.is_string()) {
    try {
      v = rslat::BigInt(j.get<std::string>());
    } catch (const std::exception&) {
      throw rslat::InvalidArgument("json: not an integer: " + j.dump());
    }
  } else {
    throw rslat::InvalidArgument("json: not an integer: " + j.dump());
  }
}

void adl_serializer<rslat::Rational>::to_json(json& j, const rslat::Rational& v) {
  j = json::array({rslat::BigInt(boost::multiprecision::numerator(v)),
                   rslat::BigInt(boost::multiprecision::denominator(v))});
}

void adl_serializer<rslat::Rational>::from_json(const json& j, rslat::Rational& v) {
  if (j.is_array()) {
    if (j.size() != 2) throw rslat::InvalidArgument("json: rational must be [num, den]");
    const auto num = j[0].get<rslat::BigInt>();
    const auto den = j[1].get<rslat::BigInt>();
    if (den == 0) throw rslat::InvalidArgument("json: zero denominator");
    v = rslat::Rational(num, den);
  } else {
    v = rslat::Rational(j.get<rslat::BigInt>());
  }
}

}  // namespace nlohmann

namespace rslat {

namespace {

Json complex_json(std::complex<double> z) { return Json::array({round12(z.real()), round12(z.imag())}); }

std::complex<double> complex_from(const Json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace

double round12(double value) {
  if (!std::isfinite(value)) return value;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::strtod(buf, nullptr);
}

void to_json(Json& j, const IntMatrix& m) { j = m.row_list(); }

void from_json(const Json& j, IntMatrix& m) {
  auto rows = j.get<std::vector<IntVector>>();
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw InvalidArgument("json: ragged matrix");
  }
  m = IntMatrix::from_rows(rows);
}

void to_json(Json& j, const Syndrome& s) { j = {{"q", s.modulus}, {"values", s.values}}; }

void from_json(const Json& j, Syndrome& s) {
  s.modulus = j.at("q").get<std::uint64_t>();
  s.values = j.at("values").get<std::vector<std::uint64_t>>();
}

void to_json(Json& j, const ParityCheckMatrix& h) {
  j = {{"q", h.modulus()}, {"k", h.row_count()}, {"points", h.points()}, {"rows", h.rows()}};
}

ParityCheckMatrix parity_check_from_json(const Json& j) {
  return build_parity_check(j.at("q").get<std::uint64_t>(), j.at("k").get<std::size_t>(),
                            j.value("points", std::vector<std::uint64_t>{}));
}

void to_json(Json& j, const LatticeBasis& b) {
  j = {{"columns", b.columns.column_list()},
       {"rank", b.rank()},
       {"abs_determinant", b.abs_determinant()},
       {"rows_dependent", b.rows_dependent}};
  if (b.source) j["source"] = *b.source;
}

void from_json(const Json& j, LatticeBasis& b) {
  b.columns = IntMatrix::from_columns(j.at("columns").get<std::vector<IntVector>>());
  b.rows_dependent = j.value("rows_dependent", false);
  b.source.reset();
  if (j.contains("source")) b.source = parity_check_from_json(j.at("source"));
}

void to_json(Json& j, const MinDistResult& r) {
  j = {{"p", r.p}, {"budget", r.budget}, {"witness", r.witness}};
  j["lambda1_pow_p"] = r.value_pow_p ? Json(*r.value_pow_p) : Json(nullptr);
}

void from_json(const Json& j, MinDistResult& r) {
  r.p = j.at("p").get<int>();
  r.budget = j.at("budget").get<Rational>();
  r.witness = j.at("witness").get<IntVector>();
  r.value_pow_p.reset();
  if (!j.at("lambda1_pow_p").is_null()) r.value_pow_p = j.at("lambda1_pow_p").get<BigInt>();
}

void to_json(Json& j, const CosetCount& c) { j = {{"u", c.u}, {"h", c.h}, {"count", c.count}}; }

void from_json(const Json& j, CosetCount& c) {
  c.u = j.at("u").get<Syndrome>();
  c.h = j.at("h").get<std::size_t>();
  c.count = j.at("count").get<BigInt>();
}

void to_json(Json& j, const LocallyDenseGadget& g) {
  j = {{"p", g.p},          {"alpha", g.alpha}, {"q", g.q},         {"k", g.k},
       {"r", g.r},          {"h", g.h},         {"ell", g.ell},     {"basis", g.basis},
       {"x", g.x},          {"T", g.t},         {"cover", g.cover}, {"attempts", g.attempts}};
}

void from_json(const Json& j, LocallyDenseGadget& g) {
  g.p = j.at("p").get<int>();
  g.alpha = j.at("alpha").get<Rational>();
  g.q = j.at("q").get<std::uint64_t>();
  g.k = j.at("k").get<std::size_t>();
  g.r = j.at("r").get<std::size_t>();
  g.h = j.at("h").get<std::size_t>();
  g.ell = j.at("ell").get<std::int64_t>();
  g.basis = j.at("basis").get<LatticeBasis>();
  g.x = j.at("x").get<IntVector>();
  g.t = j.at("T").get<IntMatrix>();
  g.cover = j.at("cover").get<std::vector<IntVector>>();
  g.attempts = j.value("attempts", std::size_t{0});
  if (!g.basis.source) g.basis.source = build_parity_check(g.q, g.k);
}

void to_json(Json& j, const GadgetCheck& c) {
  j = {{"min_distance", c.min_distance}, {"cover", c.cover}, {"v_size", c.v_size}, {"ok", c.ok()}};
}

void from_json(const Json& j, GadgetCheck& c) {
  c.min_distance = j.at("min_distance").get<bool>();
  c.cover = j.at("cover").get<bool>();
  c.v_size = j.at("v_size").get<std::size_t>();
}

void to_json(Json& j, const GapCVPPrimeInstance& c) {
  j = {{"p", c.p}, {"b", c.b}, {"t", c.t}, {"s_pow_p", c.s_pow_p}, {"gamma", c.gamma}};
}

void from_json(const Json& j, GapCVPPrimeInstance& c) {
  c.p = j.at("p").get<int>();
  c.b = j.at("b").get<IntMatrix>();
  c.t = j.at("t").get<IntVector>();
  c.s_pow_p = j.at("s_pow_p").get<Rational>();
  c.gamma = j.at("gamma").get<Rational>();
  require(c.t.size() == c.b.rows(), "json: CVP target length must match the basis rows");
}

void to_json(Json& j, const GapSVPInstance& s) {
  j = {{"p", s.p}, {"b", s.b}, {"s_prime_pow_p", s.s_prime_pow_p}, {"gamma_prime", s.gamma_prime}};
}

void from_json(const Json& j, GapSVPInstance& s) {
  s.p = j.at("p").get<int>();
  s.b = j.at("b").get<IntMatrix>();
  s.s_prime_pow_p = j.at("s_prime_pow_p").get<Rational>();
  s.gamma_prime = j.at("gamma_prime").get<Rational>();
}

Verdict verdict_from_string(const std::string& s) {
  for (auto v : {Verdict::Yes, Verdict::No, Verdict::Neither, Verdict::Boundary}) {
    if (to_string(v) == s) return v;
  }
  throw InvalidArgument("json: unknown verdict " + s);
}

void to_json(Json& j, const PromiseVerdict& v) {
  j = {{"verdict", to_string(v.verdict)}, {"witness", v.witness}, {"w_max", v.w_max},
       {"l2_radius", round12(v.l2_radius)}, {"nodes", v.nodes},   {"note", v.note}};
  j["min_pow_p"] = v.min_pow_p ? Json(*v.min_pow_p) : Json(nullptr);
}

void from_json(const Json& j, PromiseVerdict& v) {
  v.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  v.witness = j.at("witness").get<IntVector>();
  v.w_max = j.at("w_max").get<std::int64_t>();
  v.l2_radius = j.at("l2_radius").get<double>();
  v.nodes = j.at("nodes").get<std::uint64_t>();
  v.note = j.at("note").get<std::string>();
  v.min_pow_p.reset();
  if (!j.at("min_pow_p").is_null()) v.min_pow_p = j.at("min_pow_p").get<BigInt>();
}

void to_json(Json& j, const DecodeList& d) {
  Json items = Json::array();
  for (const auto& item : d.items) {
    Json e = {{"distance_sq", item.distance_sq}, {"distance", round12(item.distance)}};
    if (!item.codeword.empty()) e["codeword"] = item.codeword;
    if (!item.lattice.empty()) e["lattice"] = item.lattice;
    items.push_back(e);
  }
  j = {{"radius_sq", d.radius_sq},
       {"items", items},
       {"certified", d.certified},
       {"multiplicity", d.multiplicity},
       {"interpolation_degree", d.interpolation_degree}};
}

void from_json(const Json& j, DecodeList& d) {
  d.radius_sq = j.at("radius_sq").get<Rational>();
  d.certified = j.at("certified").get<bool>();
  d.multiplicity = j.at("multiplicity").get<std::uint64_t>();
  d.interpolation_degree = j.at("interpolation_degree").get<std::uint64_t>();
  d.items.clear();
  for (const auto& e : j.at("items")) {
    DecodeItem item;
    item.distance_sq = e.at("distance_sq").get<Rational>();
    item.distance = e.at("distance").get<double>();
    if (e.contains("codeword")) item.codeword = e.at("codeword").get<Codeword>();
    if (e.contains("lattice")) item.lattice = e.at("lattice").get<IntVector>();
    d.items.push_back(std::move(item));
  }
}

void to_json(Json& j, const MinkowskiReport& m) {
  j = {{"q", m.q},
       {"k", m.k},
       {"lower", round12(m.lower)},
       {"sqrt_2k", round12(m.sqrt_2k)},
       {"minkowski", round12(m.minkowski)},
       {"cap", round12(m.cap)},
       {"chain_holds", m.chain_holds}};
}

void from_json(const Json& j, MinkowskiReport& m) {
  m.q = j.at("q").get<std::uint64_t>();
  m.k = j.at("k").get<std::size_t>();
  m.lower = j.at("lower").get<double>();
  m.sqrt_2k = j.at("sqrt_2k").get<double>();
  m.minkowski = j.at("minkowski").get<double>();
  m.cap = j.at("cap").get<double>();
  m.chain_holds = j.at("chain_holds").get<bool>();
}

void to_json(Json& j, const CharacterSumResult& c) {
  j = {{"q", c.polynomial.field().modulus()},
       {"polynomial", c.polynomial.coefficients()},
       {"k", c.k},
       {"value", complex_json(c.value)},
       {"magnitude", round12(c.magnitude)},
       {"weil_bound", round12(c.weil_bound)},
       {"weil_holds", c.weil_holds}};
}

void from_json(const Json& j, CharacterSumResult& c) {
  c.polynomial = FieldPoly(PrimeField(j.at("q").get<std::uint64_t>()),
                           j.at("polynomial").get<std::vector<std::uint64_t>>());
  c.k = j.at("k").get<std::size_t>();
  c.value = complex_from(j.at("value"));
  c.magnitude = j.at("magnitude").get<double>();
  c.weil_bound = j.at("weil_bound").get<double>();
  c.weil_holds = j.at("weil_holds").get<bool>();
}

void to_json(Json& j, const FourierCountDecomposition& d) {
  j = {{"main_term", d.main_term},
       {"correction", complex_json(d.correction)},
       {"exact_count", d.exact_count},
       {"paper_main_term", d.paper_main_term},
       {"reconciliation_error", round12(d.reconciliation_error)},
       {"correction_bound", round12(d.correction_bound)}};
}

void from_json(const Json& j, FourierCountDecomposition& d) {
  d.main_term = j.at("main_term").get<Rational>();
  d.correction = complex_from(j.at("correction"));
  d.exact_count = j.at("exact_count").get<BigInt>();
  d.paper_main_term = j.at("paper_main_term").get<BigInt>();
  d.reconciliation_error = j.at("reconciliation_error").get<double>();
  d.correction_bound = j.at("correction_bound").get<double>();
}

void to_json(Json& j, const FourierBarrier& b) {
  j = {{"q", b.q},
       {"k", b.k},
       {"smallest_h", b.smallest_h},
       {"eps_prime", round12(b.eps_prime)},
       {"predicted", std::isfinite(b.predicted) ? Json(round12(b.predicted)) : Json(nullptr)}};
}

void from_json(const Json& j, FourierBarrier& b) {
  b.q = j.at("q").get<std::uint64_t>();
  b.k = j.at("k").get<std::size_t>();
  b.smallest_h = j.at("smallest_h").get<std::size_t>();
  b.eps_prime = j.at("eps_prime").get<double>();
  b.predicted = j.at("predicted").is_null() ? std::numeric_limits<double>::infinity()
                                            : j.at("predicted").get<double>();
}

void to_json(Json& j, const ThetaProfile& t) {
  j = {{"p", t.p},
       {"tau", round12(t.tau)},
       {"truncation", round12(t.truncation)},
       {"theta", round12(t.theta)},
       {"mu", round12(t.mu)},
       {"second_moment", round12(t.second_moment)},
       {"largest_term", round12(t.largest_term)},
       {"tail_bound", round12(t.tail_bound)},
       {"points", t.points}};
}

void from_json(const Json& j, ThetaProfile& t) {
  t.p = j.at("p").get<int>();
  t.tau = j.at("tau").get<double>();
  t.truncation = j.at("truncation").get<double>();
  t.theta = j.at("theta").get<double>();
  t.mu = j.at("mu").get<double>();
  t.second_moment = j.at("second_moment").get<double>();
  t.largest_term = j.at("largest_term").get<double>();
  t.tail_bound = j.at("tail_bound").get<double>();
  t.points = j.at("points").get<std::uint64_t>();
}

void to_json(Json& j, const ThetaDerivativePoint& t) {
  j = {{"tau", round12(t.tau)},
       {"first_difference", round12(t.first_difference)},
       {"minus_mu", round12(t.minus_mu)},
       {"second_difference", round12(t.second_difference)},
       {"variance", round12(t.variance)}};
}

void from_json(const Json& j, ThetaDerivativePoint& t) {
  t.tau = j.at("tau").get<double>();
  t.first_difference = j.at("first_difference").get<double>();
  t.minus_mu = j.at("minus_mu").get<double>();
  t.second_difference = j.at("second_difference").get<double>();
  t.variance = j.at("variance").get<double>();
}

void to_json(Json& j, const NpBounds& b) {
  j = {{"r", round12(b.r)},
       {"count", b.count},
       {"upper", round12(b.upper)},
       {"mu_radius", round12(b.mu_radius)},
       {"count_at_mu", b.count_at_mu},
       {"lower", round12(b.lower)},
       {"h_p", round12(b.h_p)},
       {"upper_holds", b.upper_holds},
       {"lower_holds", b.lower_holds}};
}

void from_json(const Json& j, NpBounds& b) {
  b.r = j.at("r").get<double>();
  b.count = j.at("count").get<std::uint64_t>();
  b.upper = j.at("upper").get<double>();
  b.mu_radius = j.at("mu_radius").get<double>();
  b.count_at_mu = j.at("count_at_mu").get<std::uint64_t>();
  b.lower = j.at("lower").get<double>();
  b.h_p = j.at("h_p").get<double>();
  b.upper_holds = j.at("upper_holds").get<bool>();
  b.lower_holds = j.at("lower_holds").get<bool>();
}

}  // namespace rslat
