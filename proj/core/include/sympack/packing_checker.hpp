#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sympack/blowup_model.hpp"
#include "sympack/coprime_arith.hpp"
#include "sympack/volume_oracle.hpp"

namespace sympack {

/// A simple ellipsoid E_p(r') containing a given ellipsoid E_a(r).
struct Enclosure {
  Ellipsoid original;
  Ellipsoid simple;
  CoprimeVector simple_weights;
  BigInt denominator = 1;      // N with p_i / N ~ a_i (1 when already simple)
  Rational inflation = 1;      // vol(simple) / vol(original), exact
  Rational tolerance = 0;      // max-norm tolerance handed to the prime search
  bool identity = false;
};

/// Encloses `e` in a simple ellipsoid with volume inflation <= (1 + epsilon)^n.
/// Non-simple weights are approximated by primes p_i / N and the capacity is
/// raised to r' = r * max_i p_i / a_i, the least value with E_a(r) in E_p(r').
Enclosure simple_enclosure(const Ellipsoid& e, double epsilon, const ApproxOptions& options = {});

enum class Verdict { kFeasible, kInfeasibleVolume, kUnknown };
std::string_view to_string(Verdict v);

struct VolumeLedger {
  Scalar original_total;
  Scalar enclosure_total;
  Scalar manifold_volume;
  Scalar slack;  // manifold_volume - enclosure_total
  VolumeConvention convention = VolumeConvention::kTopPower;
};

struct PackingOptions {
  int retry_budget = 20;                 // epsilon halvings on volume overflow
  std::uint64_t audit_samples = 0;       // Monte Carlo check per enclosure; 0 disables
  std::uint64_t seed = 20240611;
  ApproxOptions approx;
};

struct VolumeAudit {
  VolumeEstimate estimate;  // Lebesgue volume of the enclosure
  Scalar closed_form;       // same, closed form
  double deviation_in_standard_errors = 0.0;
};

struct PackingCertificate {
  Verdict verdict = Verdict::kUnknown;
  ManifoldModel manifold;
  double epsilon_requested = 0.0;
  double epsilon_used = 0.0;
  int retries = 0;
  std::vector<Enclosure> enclosures;
  VolumeLedger ledger;
  BlowupClass blowup_class;
  CriterionReport criterion;
  std::vector<Assumption> assumptions_used;
  std::vector<Assumption> missing_assumptions;
  std::vector<VolumeAudit> audits;
  std::vector<std::string> notes;
  std::uint64_t seed = 0;
};

/// Packing decision: enclose, compare volumes, build the blow-up class,
/// run the Kahler criterion. Never reports kFeasible unless the criterion
/// holds under declared hypotheses.
PackingCertificate check_packing(const ManifoldModel& m, std::span<const Ellipsoid> ellipsoids,
                                 double epsilon, const PackingOptions& options = {});

}  // namespace sympack
