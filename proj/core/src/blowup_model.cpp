#include "sympack/blowup_model.hpp"

#include <algorithm>

#include "sympack/errors.hpp"

namespace sympack {

const std::string_view kVolumeExponentNote =
    "top-intersection uses c_i^n <a_i>^(n-1) = r_i^n / <a_i> from the relations "
    "e_i^n = -+<a_i>^(n-1); the variant r_i^n / <a_i>^n disagrees with this and with "
    "the Monte Carlo volume oracle, and is not used";

std::string_view to_string(Assumption a) {
  switch (a) {
    case Assumption::kCampanaSimple: return "campana_simple";
    case Assumption::kApproximableByCampanaSimple: return "approximable_by_campana_simple";
    case Assumption::kKahler: return "kahler";
  }
  return "unknown";
}

std::optional<Assumption> parse_assumption(std::string_view name) {
  for (auto a : {Assumption::kCampanaSimple, Assumption::kApproximableByCampanaSimple,
                 Assumption::kKahler})
    if (to_string(a) == name) return a;
  return std::nullopt;
}

void ManifoldModel::validate() const {
  if (complex_dimension < 2)
    throw InvalidInput("manifold complex dimension must be at least 2");
  if (top_power.sign() <= 0) throw InvalidInput("manifold top power V must be positive");
}

BlowupClass BlowupClass::scaled(const Scalar& factor) const {
  BlowupClass out{base_scale * factor, exceptional};
  for (auto& t : out.exceptional) t.coefficient = t.coefficient * factor;
  return out;
}

BlowupClass packing_class(const ManifoldModel& m, std::span<const WeightedCapacity> ellipsoids) {
  m.validate();
  BlowupClass cls;
  cls.exceptional.reserve(ellipsoids.size());
  for (std::size_t i = 0; i < ellipsoids.size(); ++i) {
    const auto& e = ellipsoids[i];
    if (e.weights.size() != static_cast<std::size_t>(m.complex_dimension))
      throw InvalidInput("ellipsoid " + std::to_string(i) + " has " +
                         std::to_string(e.weights.size()) + " weights, manifold dimension is " +
                         std::to_string(m.complex_dimension));
    if (e.capacity.sign() <= 0)
      throw InvalidInput("ellipsoid " + std::to_string(i) + " capacity must be positive");
    if (!is_pairwise_coprime(e.weights))
      throw InvalidInput("ellipsoid " + std::to_string(i) +
                         " weights are not pairwise coprime; replace it by a simple "
                         "enclosure before building the blow-up class");
    CoprimeVector w(e.weights);
    Scalar c = e.capacity / Scalar(weight_product(w));
    cls.exceptional.push_back({std::move(w), std::move(c)});
  }
  return cls;
}

Scalar exceptional_top_power(const CoprimeVector& weights, int n) {
  BigInt p;
  mpz_pow_ui(p.get_mpz_t(), weight_product(weights).get_mpz_t(), static_cast<unsigned long>(n - 1));
  return n % 2 == 0 ? Scalar(BigInt(-p)) : Scalar(p);
}

Scalar top_intersection(const BlowupClass& cls, const ManifoldModel& m) {
  m.validate();
  const int n = m.complex_dimension;
  const auto un = static_cast<unsigned>(n);
  Scalar total = cls.base_scale.pow(un) * m.top_power;
  for (const auto& t : cls.exceptional) {
    if (t.weights.size() != un)
      throw InvalidInput("exceptional term weight length does not match manifold dimension");
    total += (-t.coefficient).pow(un) * exceptional_top_power(t.weights, n);
  }
  return total;
}

CriterionReport kahler_criterion(const BlowupClass& cls, const ManifoldModel& m) {
  CriterionReport r;
  r.b1_holds = std::all_of(cls.exceptional.begin(), cls.exceptional.end(),
                           [](const ExceptionalTerm& t) { return t.coefficient.sign() > 0; });
  r.b2_value = top_intersection(cls, m);

  if (m.has(Assumption::kKahler))
    r.assumption_trace.push_back(Assumption::kKahler);
  else
    r.missing_assumptions.push_back(Assumption::kKahler);
  if (m.has(Assumption::kCampanaSimple))
    r.assumption_trace.push_back(Assumption::kCampanaSimple);
  else if (m.has(Assumption::kApproximableByCampanaSimple))
    r.assumption_trace.push_back(Assumption::kApproximableByCampanaSimple);
  else
    r.missing_assumptions.push_back(Assumption::kCampanaSimple);

  const bool hypotheses = r.missing_assumptions.empty();
  r.kahler = hypotheses && r.b1_holds && r.b2_value.sign() > 0;
  if (!hypotheses)
    r.verdict = CriterionVerdict::kUnknown;
  else
    r.verdict = r.kahler ? CriterionVerdict::kKahler : CriterionVerdict::kNotKahler;
  return r;
}

}  // namespace sympack
