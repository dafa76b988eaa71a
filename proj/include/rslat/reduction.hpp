#pragma once

// GapCVP' -> GapSVP instance transformation and exhaustive promise verifiers.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "rslat/config.hpp"
#include "rslat/density.hpp"
#include "rslat/matrix.hpp"
#include "rslat/rational.hpp"

namespace rslat {

struct GapCVPPrimeInstance {
  int p = 1;
  IntMatrix b;  // d x r, independent columns
  IntVector t;
  Rational s_pow_p;
  Rational gamma;
};

struct GapSVPInstance {
  int p = 1;
  IntMatrix b;
  Rational s_prime_pow_p;
  Rational gamma_prime;
};

enum class Verdict { Yes, No, Neither, Boundary };

std::string to_string(Verdict v);

struct PromiseVerdict {
  Verdict verdict = Verdict::Neither;
  IntVector witness;                  // coefficients of the deciding vector, if any
  std::optional<BigInt> min_pow_p;    // smallest norm seen within the search radius
  // Search certificate: the w range (CVP) and l2 radius actually enumerated.
  std::int64_t w_max = 0;
  double l2_radius = 0;
  std::uint64_t nodes = 0;
  std::string note;
};

struct BetaInterval {
  Rational lo;  // bounds on beta^p
  Rational hi;
};

// [ (g' s)^p / (ell (1 - (alpha g')^p)),  ((g s)^p / g'^p - s^p) / (alpha^p ell) ].
BetaInterval admissible_beta_interval(int p, const Rational& alpha, const Rational& gamma,
                                      const Rational& gamma_prime, const Rational& s_pow_p,
                                      const Rational& ell);

// Smallest-denominator positive rational beta with beta^p in the interval;
// with strict_lower, beta^p must exceed the lower end.
Rational choose_beta(int p, const BetaInterval& interval, bool strict_lower = false);

// B' = [[B T A, B T x - t], [beta A, beta x]] with beta = a/b and the whole
// matrix scaled by b; s'^p = b^p (s^p + alpha^p beta^p ell). t = 0 gives the
// canonical YES instance ([1], 1).
GapSVPInstance build_svp_instance(const GapCVPPrimeInstance& cvp, const LocallyDenseGadget& gadget,
                                  const Rational& gamma_prime, const Rational& beta);

// Coefficients (z, 1) with T(x + A z) = c, from the gadget's cover map.
IntVector svp_yes_witness(const LocallyDenseGadget& gadget, const IntVector& c);

PromiseVerdict verify_cvp_instance(const GapCVPPrimeInstance& cvp, const WorkLimits& limits = {},
                                   ExecPolicy policy = ExecPolicy::Parallel);

// Fincke-Pohst by default; a positive box switches to plain |c_i| <= box enumeration.
PromiseVerdict verify_svp_instance(const GapSVPInstance& svp, const WorkLimits& limits = {},
                                   ExecPolicy policy = ExecPolicy::Parallel,
                                   std::int64_t box = 0);

// Random d x r instance with entries in [-bound, bound] and independent columns.
GapCVPPrimeInstance sample_cvp_instance(std::size_t d, std::size_t r, std::int64_t bound, int p,
                                        const Rational& s_pow_p, const Rational& gamma,
                                        std::uint64_t seed);

}  // namespace rslat
