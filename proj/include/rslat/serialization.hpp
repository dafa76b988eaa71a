#pragma once

// JSON schemas for instances and reports. Rationals are [numerator,
// denominator] pairs; integers too large for int64 become decimal strings.
// Doubles are rounded to 12 significant digits.

#include <json.hpp>

#include "rslat/decoding.hpp"
#include "rslat/density.hpp"
#include "rslat/derand.hpp"
#include "rslat/lattice.hpp"
#include "rslat/matrix.hpp"
#include "rslat/rational.hpp"
#include "rslat/reduction.hpp"

namespace nlohmann {

template <>
struct adl_serializer<rslat::BigInt> {
  static void to_json(json& j, const rslat::BigInt& v);
  static void from_json(const json& j, rslat::BigInt& v);
};

template <>
struct adl_serializer<rslat::Rational> {
  static void to_json(json& j, const rslat::Rational& v);
  static void from_json(const json& j, rslat::Rational& v);
};

}  // namespace nlohmann

namespace rslat {

using Json = nlohmann::json;

double round12(double value);

void to_json(Json& j, const IntMatrix& m);  // array of rows
void from_json(const Json& j, IntMatrix& m);

void to_json(Json& j, const Syndrome& s);
void from_json(const Json& j, Syndrome& s);

void to_json(Json& j, const ParityCheckMatrix& h);  // {q, k, points}
ParityCheckMatrix parity_check_from_json(const Json& j);

void to_json(Json& j, const LatticeBasis& b);
void from_json(const Json& j, LatticeBasis& b);

void to_json(Json& j, const MinDistResult& r);
void from_json(const Json& j, MinDistResult& r);

void to_json(Json& j, const CosetCount& c);
void from_json(const Json& j, CosetCount& c);

void to_json(Json& j, const LocallyDenseGadget& g);
void from_json(const Json& j, LocallyDenseGadget& g);

void to_json(Json& j, const GadgetCheck& c);
void from_json(const Json& j, GadgetCheck& c);

void to_json(Json& j, const GapCVPPrimeInstance& c);
void from_json(const Json& j, GapCVPPrimeInstance& c);

void to_json(Json& j, const GapSVPInstance& s);
void from_json(const Json& j, GapSVPInstance& s);

void to_json(Json& j, const PromiseVerdict& v);
void from_json(const Json& j, PromiseVerdict& v);

void to_json(Json& j, const DecodeList& d);
void from_json(const Json& j, DecodeList& d);

void to_json(Json& j, const MinkowskiReport& m);
void from_json(const Json& j, MinkowskiReport& m);

void to_json(Json& j, const CharacterSumResult& c);
void from_json(const Json& j, CharacterSumResult& c);

void to_json(Json& j, const FourierCountDecomposition& d);
void from_json(const Json& j, FourierCountDecomposition& d);

void to_json(Json& j, const FourierBarrier& b);
void from_json(const Json& j, FourierBarrier& b);

void to_json(Json& j, const ThetaProfile& t);
void from_json(const Json& j, ThetaProfile& t);

void to_json(Json& j, const ThetaDerivativePoint& t);
void from_json(const Json& j, ThetaDerivativePoint& t);

void to_json(Json& j, const NpBounds& b);
void from_json(const Json& j, NpBounds& b);

Verdict verdict_from_string(const std::string& s);

}  // namespace rslat
