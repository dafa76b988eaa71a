#pragma once

// Reed-Solomon encoding, unique decoding, l2 soft list decoding and the
// mod-q lift-and-decode lattice decoder.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rslat/config.hpp"
#include "rslat/field.hpp"
#include "rslat/matrix.hpp"
#include "rslat/rational.hpp"

namespace rslat {

class RSCode {
 public:
  // Empty points means all of F_q in ascending order.
  RSCode(std::uint64_t q, std::size_t dimension, std::vector<std::uint64_t> points = {});

  const PrimeField& field() const { return field_; }
  std::uint64_t modulus() const { return field_.modulus(); }
  std::size_t dimension() const { return dimension_; }
  std::size_t length() const { return points_.size(); }
  const std::vector<std::uint64_t>& points() const { return points_; }

 private:
  PrimeField field_;
  std::size_t dimension_;
  std::vector<std::uint64_t> points_;
};

using Codeword = std::vector<std::uint64_t>;

Codeword rs_encode(const RSCode& code, const FieldPoly& poly);

// Berlekamp-Welch; none when no codeword lies within floor((n - dim) / 2).
std::optional<Codeword> rs_unique_decode(const RSCode& code, std::span<const std::uint64_t> received);

// Point of (R / qZ)^n with exact rational coordinates kept in [-q/2, q/2).
class TorusVector {
 public:
  TorusVector(std::uint64_t q, std::vector<Rational> coordinates);

  std::uint64_t modulus() const { return q_; }
  const std::vector<Rational>& coordinates() const { return coords_; }
  std::size_t size() const { return coords_.size(); }

  // Squared distance to the residue a at coordinate i, over all lifts a + qZ.
  Rational coordinate_distance_sq(std::size_t i, std::uint64_t a) const;
  Rational distance_sq(std::span<const std::uint64_t> codeword) const;

 private:
  std::uint64_t q_;
  std::vector<Rational> coords_;
};

struct DecodeItem {
  Codeword codeword;     // residues (list decoder) or empty (lattice decoder)
  IntVector lattice;     // lifted vector, lattice decoder only
  Rational distance_sq;
  double distance = 0;
};

struct DecodeList {
  Rational radius_sq;
  std::vector<DecodeItem> items;  // by distance, then lexicographically
  // True when the interpolation certificate proves no codeword in the ball was missed.
  bool certified = false;
  std::uint64_t multiplicity = 0;
  std::uint64_t interpolation_degree = 0;
};

struct ListDecodeOptions {
  std::uint64_t max_multiplicity = 16;
  std::uint64_t max_constraints = 4000;
  WorkLimits limits{};
};

// (1 - eps)(k + 1) / 2 with k = n - dim.
Rational list_decode_radius_sq(const RSCode& code, const Rational& epsilon);

// Every codeword c with |yhat - c|^2 <= (1 - eps)(k + 1) / 2, k = n - dim.
DecodeList rs_list_decode_l2(const RSCode& code, const Rational& epsilon, const TorusVector& yhat,
                             const ListDecodeOptions& options = {});

// The same list by walking all q^dim codewords; the test oracle.
DecodeList rs_list_decode_l2_enumerate(const RSCode& code, const Rational& epsilon,
                                       const TorusVector& yhat, const WorkLimits& limits = {});

// The same list by interpolating every assignment of floor/ceil residues on
// an information set, for each affordable set of far coordinates.
DecodeList rs_list_decode_l2_patterns(const RSCode& code, const Rational& epsilon,
                                      const TorusVector& yhat, const WorkLimits& limits = {});

// floor(q / (2 log2 q)).
std::size_t default_decoding_k(std::uint64_t q);

// All v in the parity-check lattice of H_q(k, F_q) with |y - v|^2 <= (1 - eps)(k + 1) / 2.
DecodeList lattice_decode_minkowski(std::uint64_t q, std::size_t k, const Rational& epsilon,
                                    std::span<const Rational> y,
                                    const ListDecodeOptions& options = {});

struct MinkowskiReport {
  std::uint64_t q = 0;
  std::size_t k = 0;
  double lower = 0;      // sqrt(q / log2 q - 2)
  double sqrt_2k = 0;
  double minkowski = 0;  // sqrt(q) q^(k/q)
  double cap = 0;        // sqrt(2q)
  bool chain_holds = false;
};

MinkowskiReport minkowski_report(std::uint64_t q);

}  // namespace rslat
