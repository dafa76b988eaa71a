#pragma once

// Experiments around deterministic constructions: the syndrome to received
// word transform, character sums and the Fourier count identity, and
// theta-function point-counting proxies.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rslat/config.hpp"
#include "rslat/field.hpp"
#include "rslat/lattice.hpp"
#include "rslat/rational.hpp"

namespace rslat {

// r = (-r(s))_{s in S} with r(x) = sum_{i<k} (-1)^i e_i x^(h-i), e_i from the
// syndrome's power sums. Throws InvalidArgument when u_0 != h mod q.
std::vector<std::uint64_t> received_word_from_syndrome(const ParityCheckMatrix& h_matrix,
                                                       std::size_t h, const Syndrome& u);

// Codewords of RS_q[dimension, S] agreeing with r on at least `agreement`
// coordinates, by walking all q^dimension messages.
std::uint64_t count_agreeing_codewords(std::uint64_t q, std::span<const std::uint64_t> points,
                                       std::size_t dimension, std::span<const std::uint64_t> r,
                                       std::size_t agreement, const WorkLimits& limits = {});

struct CharacterSumResult {
  std::complex<double> value;
  double magnitude = 0;
  double weil_bound = 0;  // (k - 2) sqrt(q)
  std::size_t k = 0;
  bool weil_holds = true;  // vacuous for constant polynomials
  FieldPoly polynomial{PrimeField(2)};
};

// sum_a exp(-2 pi i p(a) / q). k defaults to deg(p) + 1.
CharacterSumResult character_sum(const FieldPoly& poly, std::optional<std::size_t> k = {});

// Ordered h-tuples of columns of H_q(k, F_q) summing to s.
BigInt exact_sequence_count(std::uint64_t q, std::size_t k, std::size_t h, const Syndrome& s,
                            const WorkLimits& limits = {}, ExecPolicy policy = ExecPolicy::Parallel);

// The count for every syndrome at once, indexed like SyndromeSpace.
std::vector<std::uint64_t> sequence_count_table(std::uint64_t q, std::size_t k, std::size_t h,
                                                const WorkLimits& limits = {},
                                                ExecPolicy policy = ExecPolicy::Parallel);

struct FourierCountDecomposition {
  Rational main_term;              // q^(h+1-k) when s_0 = h mod q, else 0
  std::complex<double> correction; // q^-k sum over non-constant u of S(u)^h Psi_u(s)
  BigInt exact_count;
  BigInt paper_main_term;          // the displayed q^(h+1), for comparison
  double reconciliation_error = 0; // |main + correction - exact| / max(1, exact)
  double correction_bound = 0;     // (q^k - q) q^-k ((k - 2) sqrt q)^h
};

FourierCountDecomposition fourier_count_identity(std::uint64_t q, std::size_t k, std::size_t h,
                                                 const Syndrome& s, const WorkLimits& limits = {},
                                                 ExecPolicy policy = ExecPolicy::Parallel);

// All syndromes at once; entry order follows SyndromeSpace.
std::vector<FourierCountDecomposition> fourier_count_table(std::uint64_t q, std::size_t k,
                                                           std::size_t h,
                                                           const WorkLimits& limits = {},
                                                           ExecPolicy policy = ExecPolicy::Parallel);

struct FourierBarrier {
  std::uint64_t q = 0;
  std::size_t k = 0;
  std::size_t smallest_h = 0;   // least h with q^(h+1-k) > ((k - 2) sqrt q)^h
  double eps_prime = 0;         // log k / log q
  double predicted = 0;         // k / (1/2 - eps'), infinite when eps' >= 1/2
};

FourierBarrier fourier_barrier(std::uint64_t q, std::size_t k);

// A coset for theta computations: c Z + x on the line, or x + the parity
// lattice of a parity-check matrix.
struct ThetaCoset {
  static ThetaCoset line(double spacing, double offset);
  static ThetaCoset parity(const ParityCheckMatrix& h, IntVector shift);

  bool is_line() const { return !h.has_value(); }
  std::size_t dimension() const { return is_line() ? 1 : h->length(); }

  double spacing = 1;
  double offset = 0;
  std::optional<ParityCheckMatrix> h;
  IntVector shift;
};

struct ThetaProfile {
  int p = 1;
  double tau = 0;
  double truncation = 0;    // every point with ||v||_p^p <= truncation is summed
  double theta = 0;
  double mu = 0;            // E ||v||_p^p
  double second_moment = 0; // E ||v||_p^(2p)
  double largest_term = 0;
  double tail_bound = 0;    // bound on the omitted mass, relative to theta
  std::uint64_t points = 0;
};

ThetaProfile theta(int p, double tau, const ThetaCoset& coset, double tolerance = 1e-14,
                   const WorkLimits& limits = {});

struct ThetaDerivativePoint {
  double tau = 0;
  double first_difference = 0;   // d/dtau ln Theta by central difference
  double minus_mu = 0;
  double second_difference = 0;
  double variance = 0;           // E ||v||^2p - mu^2
};

std::vector<ThetaDerivativePoint> theta_derivative_checks(int p, std::span<const double> taus,
                                                          const ThetaCoset& coset,
                                                          double step = 1e-4,
                                                          double tolerance = 1e-14);

struct NpBounds {
  double r = 0;
  std::uint64_t count = 0;         // N_p(r)
  double upper = 0;                // exp(tau r^p) Theta(tau)
  double mu_radius = 0;            // mu_p(tau)^(1/p)
  std::uint64_t count_at_mu = 0;   // N_p(mu_radius)
  double lower = 0;                // exp((tau + delta) mu(tau + 2 delta)) H_p
  double h_p = 0;
  bool upper_holds = false;
  bool lower_holds = false;        // also true when H_p <= 0 makes it vacuous
};

NpBounds np_bounds(int p, double r, const ThetaCoset& coset, double tau, double delta,
                   double tolerance = 1e-12, const WorkLimits& limits = {});

// N_p(r): coset points with ||v||_p^p <= r^p.
std::uint64_t coset_point_count(int p, double r, const ThetaCoset& coset,
                                const WorkLimits& limits = {});

}  // namespace rslat
