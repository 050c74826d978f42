#pragma once

#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "sympack/coprime_arith.hpp"
#include "sympack/scalar.hpp"

namespace sympack {

/// Declared hypotheses on the manifold. Nothing here is computed; the
/// checker only reads which of them the caller vouches for.
enum class Assumption {
  kCampanaSimple,
  kApproximableByCampanaSimple,
  kKahler,
};

std::string_view to_string(Assumption a);
std::optional<Assumption> parse_assumption(std::string_view name);

/// The manifold enters only through its complex dimension and the top
/// power <[omega]^n, [M]>.
struct ManifoldModel {
  int complex_dimension = 2;
  Scalar top_power = 1;
  std::set<Assumption> assumptions;

  void validate() const;  // n >= 2, V > 0
  bool has(Assumption a) const { return assumptions.contains(a); }
};

struct ExceptionalTerm {
  CoprimeVector weights;
  Scalar coefficient;
};

/// s * Pi^*[omega] - sum_i c_i e_i in H^2 of the weighted blow-up.
struct BlowupClass {
  Scalar base_scale = 1;
  std::vector<ExceptionalTerm> exceptional;

  BlowupClass scaled(const Scalar& factor) const;
};

/// A blow-up request: integer weights (checked for coprimality) and capacity.
struct WeightedCapacity {
  std::vector<BigInt> weights;
  Scalar capacity;
};

/// Class cut out by the ellipsoids E_{a_i}(r_i): s = 1, c_i = r_i / <a_i>.
BlowupClass packing_class(const ManifoldModel& m, std::span<const WeightedCapacity> ellipsoids);

/// e^n for the exceptional class over weights a in complex dimension n:
/// -<a>^{n-1} for even n, +<a>^{n-1} for odd n.
Scalar exceptional_top_power(const CoprimeVector& weights, int n);

/// <(s Pi^*[omega] - sum c_i e_i)^n, [M~]>. Mixed monomials vanish
/// (Pi^*[omega] e_i = 0, e_i e_j = 0), so this is
/// s^n V + sum_i (-c_i)^n e_i^n = s^n V - sum_i c_i^n <a_i>^{n-1}.
Scalar top_intersection(const BlowupClass& cls, const ManifoldModel& m);

enum class CriterionVerdict { kKahler, kNotKahler, kUnknown };

struct CriterionReport {
  bool b1_holds = false;   // every c_i > 0
  Scalar b2_value;         // top_intersection
  bool kahler = false;     // b1 && b2 > 0 && hypotheses declared
  CriterionVerdict verdict = CriterionVerdict::kUnknown;
  std::vector<Assumption> assumption_trace;
  std::vector<Assumption> missing_assumptions;
};

/// Kahler-cone test for the blow-up class. Needs the manifold to be
/// declared Kahler and (approximable by) Campana simple; without those
/// the verdict is kUnknown, never kNotKahler.
CriterionReport kahler_criterion(const BlowupClass& cls, const ManifoldModel& m);

/// Free-text note carried by certificates about the rejected volume exponent.
extern const std::string_view kVolumeExponentNote;

}  // namespace sympack
