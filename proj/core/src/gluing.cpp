#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "sympack/errors.hpp"
#include "sympack/psh_lab.hpp"

namespace sympack::psh {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

template <class F>
double min_over(const std::vector<Point>& pts, F&& f) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) m = std::min(m, f(p));
  return m;
}

template <class F>
double max_over(const std::vector<Point>& pts, F&& f) {
  double m = kNegInf;
  for (const auto& p : pts) m = std::max(m, f(p));
  return m;
}

struct FinalParams {
  double eps_rho;
  double constant_c;
  double switch_radius;
};

}  // namespace

GluedPotential glue_potentials(const ScalarField& F, const ScalarField& G, double R, double delta,
                               const GluingConfig& cfg) {
  if (!(R > 0.0)) throw InvalidInput("gluing radius R must be positive");
  if (!(delta > 0.0)) throw InvalidInput("delta must be positive");
  if (F.dimension() != G.dimension()) throw InvalidInput("F and G have different dimensions");
  if (F.domain_radius() < R || G.domain_radius() < R)
    throw InvalidInput("F and G must be defined on B(R)");
  const int n = F.dimension();
  const double h = cfg.hessian_step;
  const Point origin(static_cast<std::size_t>(n));

  // Strictness modulus of F on B(3R/4).
  double f_min = std::numeric_limits<double>::infinity();
  for (const auto& p : sample_shell(n, 0.0, 0.75 * R, cfg.modulus_samples, cfg.seed)) {
    if (F.distance_to_singular(p) <= 10 * h) continue;
    f_min = std::min(f_min, complex_hessian(F, p, h).min_eigenvalue);
  }
  if (!(f_min > 0.0)) throw InvalidInput("F is not strictly plurisubharmonic on B(3R/4)");

  const GluingBranch branch = G(origin) == kNegInf ? GluingBranch::kSingularG : GluingBranch::kBoundedG;
  const ScalarField H = branch == GluingBranch::kSingularG ? G : fields::log_squared_norm(n, R);

  const std::size_t sphere_count = cfg.sphere_samples_per_dim * static_cast<std::size_t>(n);
  const auto half_sphere = sample_sphere(n, R / 2, sphere_count, cfg.seed + 1);
  const auto quarter_sphere = sample_sphere(n, R / 4, sphere_count, cfg.seed + 2);
  const double h_max_half = max_over(half_sphere, [&](const Point& p) { return H(p); });
  const double h_min_quarter = min_over(quarter_sphere, [&](const Point& p) { return H(p); });

  // a|z|^2 + b must exceed H on |z| = R/2 and stay below it on |z| = R/4.
  const double gap = h_max_half - h_min_quarter;
  const double slack = cfg.safety_margin * std::max(1.0, std::abs(gap));
  const double a = (std::max(gap, 0.0) + 2 * slack) / (3 * R * R / 16);
  const double b = 0.5 * ((h_max_half - a * R * R / 4) + (h_min_quarter - a * R * R / 16));
  const double eps_k = slack / 4;

  const double outer2 = R * R / 4, inner2 = R * R / 16;
  auto K = [=](PointView z) {
    const double r2 = squared_norm(z);
    if (r2 >= outer2) return a * r2 + b;
    if (r2 <= inner2) return H(z);
    return regularized_max(a * r2 + b, H(z), eps_k);
  };
  const double eps_f = f_min / (2 * a);
  auto L = [=](PointView z) {
    const double r2 = squared_norm(z);
    if (r2 >= outer2) return F(z);
    return F(z) - eps_f * (a * r2 + b) + eps_f * K(z);
  };

  // Sampled data for choosing C: the outer shell 3R/4 <= |z| <= R, and
  // spheres at the switch radius and below it.
  std::vector<Point> outer_shell;
  for (int k = 0; k <= 8; ++k) {
    auto s = sample_sphere(n, R * (0.75 + 0.25 * k / 8.0), sphere_count / 8, cfg.seed + 10 + k);
    outer_shell.insert(outer_shell.end(), s.begin(), s.end());
  }
  std::vector<double> g_out, l_out;
  for (const auto& p : outer_shell) g_out.push_back(G(p)), l_out.push_back(L(p));

  auto attempt = [&](double d) -> std::optional<FinalParams> {
    if (branch == GluingBranch::kSingularG && d >= eps_f) return std::nullopt;
    double d_out = kNegInf;
    for (std::size_t i = 0; i < outer_shell.size(); ++i)
      d_out = std::max(d_out, d * g_out[i] - l_out[i]);
    for (double r_s = cfg.switch_radius_fraction * R; r_s >= R / 4096; r_s /= 2) {
      auto gap_min = [&](double r) {
        auto sphere = sample_sphere(n, r, sphere_count / 8, cfg.seed + 100);
        return min_over(sphere, [&](const Point& p) { return d * G(p) - L(p); });
      };
      const double d_in = gap_min(r_s);
      if (!(d_in - d_out > 0.0)) continue;
      const double eps_rho = std::min((d_in - d_out) / 8, 0.02);
      const double c = d_in - 2 * eps_rho;
      // delta G - C must keep dominating L by 2 eps_rho all the way to 0.
      bool core_ok = true;
      for (double r = r_s / 2; r >= r_s / 4096 && core_ok; r /= 2)
        core_ok = gap_min(r) - c >= 2 * eps_rho;
      if (core_ok) return FinalParams{eps_rho, c, r_s};
    }
    return std::nullopt;
  };

  // Largest delta for which the inequalities still hold.
  double ceiling;
  {
    double lo = 0.0, hi;
    if (branch == GluingBranch::kSingularG) {
      hi = eps_f;
    } else {
      hi = std::max(delta, 1.0);
      while (hi < 1e6 && attempt(hi)) lo = hi, hi *= 2;
      if (hi >= 1e6) lo = hi;
    }
    for (int it = 0; it < 40 && hi - lo > 1e-6 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (attempt(mid) ? lo : hi) = mid;
    }
    ceiling = lo;
  }

  const auto params = attempt(delta);
  if (!params)
    throw GluingFailure("delta = " + std::to_string(delta) +
                            " is too large for the gluing construction; largest workable delta ~ " +
                            std::to_string(ceiling),
                        ceiling);

  const double eps_rho = params->eps_rho, c = params->constant_c;
  ScalarField L_field(n, L, R, {origin});
  ScalarField T_field(n, [G, delta, c](PointView z) { return delta * G(z) - c; }, R, {origin});

  GluedPotential out{reg_max(L_field, T_field, eps_rho), branch};
  out.a = a;
  out.b = b;
  out.kernel_eps_k = eps_k;
  out.strictness_modulus = eps_f;
  out.kernel_eps_final = eps_rho;
  out.constant_c = c;
  out.delta = delta;
  out.delta_ceiling = ceiling;
  out.switch_radius = params->switch_radius;
  out.f_min_eigenvalue = f_min;

  // Outermost sampled radius up to which rho coincides with delta G - C.
  auto sphere = sample_sphere(n, 1.0, sphere_count / 8, cfg.seed + 200);
  double core = params->switch_radius;
  for (double r = core; r < 0.75 * R; r += R / 1024) {
    bool all = std::all_of(sphere.begin(), sphere.end(), [&](const Point& u) {
      Point p = u;
      for (auto& x : p) x *= r;
      return delta * G(p) - c - L(p) >= eps_rho;
    });
    if (!all) break;
    core = r;
  }
  out.core_radius = core;
  return out;
}

}  // namespace sympack::psh
