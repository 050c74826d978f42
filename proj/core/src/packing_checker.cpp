#include "sympack/packing_checker.hpp"

#include <algorithm>
#include <cmath>

#include "sympack/errors.hpp"

namespace sympack {

namespace {

Rational rational_power(const Rational& q, unsigned n) {
  return Scalar(q).pow(n).rational();
}

Enclosure identity_enclosure(const Ellipsoid& e, CoprimeVector w) {
  Enclosure out{e, e, std::move(w)};
  out.identity = true;
  return out;
}

std::vector<WeightedCapacity> blowup_data(const std::vector<Enclosure>& enclosures) {
  std::vector<WeightedCapacity> out;
  for (const auto& enc : enclosures)
    out.push_back({enc.simple_weights.entries(), enc.simple.capacity});
  return out;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kFeasible: return "FEASIBLE";
    case Verdict::kInfeasibleVolume: return "INFEASIBLE_VOLUME";
    case Verdict::kUnknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

Enclosure simple_enclosure(const Ellipsoid& e, double epsilon, const ApproxOptions& options) {
  e.validate();
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw InvalidInput("enclosure epsilon must be positive");
  if (e.capacity.sign() <= 0) throw InvalidInput("ellipsoid capacity must be positive");
  if (auto w = e.simple_weights()) return identity_enclosure(e, std::move(*w));

  const auto n = static_cast<unsigned>(e.complex_dimension());
  std::vector<Rational> a;
  for (const auto& w : e.weights) a.push_back(w.to_rational());
  Rational a_product = 1;
  for (const auto& ai : a) a_product *= ai;
  const Rational eps(epsilon);
  const Rational bound = rational_power(Rational(1 + eps), n);

  // Relative weight error tol / a_i <= eps/4 keeps inflation within
  // (1 + eps)^n on the first pass; the loop only guards rounding of that estimate.
  Rational tolerance = eps * *std::min_element(a.begin(), a.end()) / 4;
  for (int attempt = 0; attempt < 64; ++attempt, tolerance /= 2) {
    PrimeApproximation approx = approximate_by_primes(a, tolerance, options);
    Rational ratio = 0;
    BigInt p_product = 1;
    for (std::size_t i = 0; i < n; ++i) {
      Rational r_i(approx.primes[i], 1);
      r_i /= a[i];
      if (r_i > ratio) ratio = r_i;
      p_product *= approx.primes[i];
    }
    Rational inflation = rational_power(ratio, n) * a_product / Rational(p_product);
    inflation.canonicalize();
    if (inflation > bound) continue;

    Enclosure out{e, Ellipsoid{}, CoprimeVector(approx.primes)};
    for (const auto& p : approx.primes) out.simple.weights.emplace_back(p);
    out.simple.capacity = Scalar(Rational(e.capacity.to_rational() * ratio));
    out.denominator = approx.denominator;
    out.inflation = inflation;
    out.tolerance = tolerance;
    return out;
  }
  throw ResourceLimit("could not meet the enclosure inflation bound");
}

PackingCertificate check_packing(const ManifoldModel& m, std::span<const Ellipsoid> ellipsoids,
                                 double epsilon, const PackingOptions& options) {
  m.validate();
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw InvalidInput("epsilon must be positive");
  if (ellipsoids.empty()) throw InvalidInput("at least one ellipsoid is required");
  for (std::size_t i = 0; i < ellipsoids.size(); ++i) {
    ellipsoids[i].validate();
    if (ellipsoids[i].complex_dimension() != m.complex_dimension)
      throw InvalidInput("ellipsoid " + std::to_string(i) + " has dimension " +
                         std::to_string(ellipsoids[i].complex_dimension()) +
                         ", manifold has " + std::to_string(m.complex_dimension));
    if (ellipsoids[i].capacity.sign() <= 0)
      throw InvalidInput("ellipsoid " + std::to_string(i) + " capacity must be positive");
  }

  PackingCertificate cert;
  cert.manifold = m;
  cert.epsilon_requested = epsilon;
  cert.seed = options.seed;
  cert.notes.emplace_back(kVolumeExponentNote);

  cert.ledger.manifold_volume = m.top_power;
  cert.ledger.original_total = total_packing_volume(ellipsoids, VolumeConvention::kTopPower);

  auto enclose_all = [&](double eps) {
    std::vector<Enclosure> out;
    for (const auto& e : ellipsoids) out.push_back(simple_enclosure(e, eps, options.approx));
    return out;
  };
  auto enclosure_total = [](const std::vector<Enclosure>& encs) {
    Scalar total = 0;
    for (const auto& enc : encs)
      total += ellipsoid_volume_closed_form(enc.simple, VolumeConvention::kTopPower);
    return total;
  };

  double eps = epsilon;
  cert.enclosures = enclose_all(eps);
  cert.ledger.enclosure_total = enclosure_total(cert.enclosures);

  const bool volume_obstructed = !(cert.ledger.original_total < m.top_power);
  if (!volume_obstructed) {
    while (!(cert.ledger.enclosure_total < m.top_power) && cert.retries < options.retry_budget) {
      eps /= 2;
      ++cert.retries;
      cert.enclosures = enclose_all(eps);
      cert.ledger.enclosure_total = enclosure_total(cert.enclosures);
    }
  }
  cert.epsilon_used = eps;
  cert.ledger.slack = m.top_power - cert.ledger.enclosure_total;
  if (cert.retries > 0)
    cert.notes.push_back("enclosure tolerance halved " + std::to_string(cert.retries) +
                         " time(s) to fit the volume slack");

  if (options.audit_samples > 0) {
    for (std::size_t i = 0; i < cert.enclosures.size(); ++i) {
      const auto& simple = cert.enclosures[i].simple;
      VolumeAudit audit;
      audit.estimate = ellipsoid_volume_monte_carlo(simple, options.audit_samples,
                                                    options.seed + i);
      audit.closed_form = ellipsoid_volume_closed_form(simple, VolumeConvention::kLebesgue);
      if (audit.estimate.standard_error > 0)
        audit.deviation_in_standard_errors =
            std::abs(audit.estimate.value - audit.closed_form.to_double()) /
            audit.estimate.standard_error;
      cert.audits.push_back(std::move(audit));
    }
  }

  if (volume_obstructed) {
    cert.verdict = Verdict::kInfeasibleVolume;
    cert.notes.emplace_back("total volume of the ellipsoids is not below the manifold volume");
    return cert;
  }

  cert.blowup_class = packing_class(m, blowup_data(cert.enclosures));
  cert.criterion = kahler_criterion(cert.blowup_class, m);
  cert.assumptions_used = cert.criterion.assumption_trace;
  cert.missing_assumptions = cert.criterion.missing_assumptions;

  if (!(cert.ledger.enclosure_total < m.top_power)) {
    cert.verdict = Verdict::kUnknown;
    cert.notes.emplace_back(
        "simple enclosures overflow the volume after the retry budget; rerun with a "
        "smaller epsilon or a larger retry budget");
    return cert;
  }
  if (!cert.missing_assumptions.empty()) {
    cert.verdict = Verdict::kUnknown;
    std::string missing;
    for (auto a : cert.missing_assumptions)
      missing += (missing.empty() ? "" : ", ") + std::string(to_string(a));
    cert.notes.push_back("undeclared hypotheses: " + missing);
    return cert;
  }
  if (cert.criterion.kahler) {
    cert.verdict = Verdict::kFeasible;
    if (m.has(Assumption::kCampanaSimple))
      cert.notes.emplace_back(
          "blow-up points taken Campana-generic, available since the manifold is Campana simple");
  } else {
    cert.verdict = Verdict::kUnknown;
    cert.notes.emplace_back("blow-up class fails the Kahler criterion");
  }
  return cert;
}

}  // namespace sympack
