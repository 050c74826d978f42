#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sympack::psh {

using Point = std::vector<std::complex<double>>;
using PointView = std::span<const std::complex<double>>;

inline constexpr int kMaxDimension = 4;

double squared_norm(PointView z);

/// Real-valued function on the ball B(R) in C^n. May return -infinity at
/// the declared singular points and nowhere else.
class ScalarField {
 public:
  using Evaluator = std::function<double(PointView)>;

  ScalarField(int dimension, Evaluator evaluator, double domain_radius,
              std::vector<Point> singular_points = {});

  double operator()(PointView z) const { return evaluator_(z); }

  int dimension() const { return dimension_; }
  double domain_radius() const { return domain_radius_; }
  const std::vector<Point>& singular_points() const { return singular_points_; }
  /// Distance from z to the nearest singular point (infinity if none).
  double distance_to_singular(PointView z) const;

 private:
  int dimension_;
  Evaluator evaluator_;
  double domain_radius_;
  std::vector<Point> singular_points_;
};

namespace fields {
ScalarField squared_norm(int n, double radius);          // |z|^2
ScalarField log_squared_norm(int n, double radius);      // log |z|^2, singular at 0
ScalarField quadratic(int n, double a, double b, double radius);  // a|z|^2 + b
ScalarField constant(int n, double c, double radius);
}  // namespace fields

ScalarField operator+(const ScalarField& f, const ScalarField& g);
ScalarField scaled(const ScalarField& f, double factor);
ScalarField shifted(const ScalarField& f, double offset);

/// Smoothed maximum of two numbers:
///   M_eps(t1, t2) = max(t1, t2) + eps * tail(|t1 - t2| / eps),
/// the convolution of max with a product of two even C^infinity bumps of
/// half-width eps/2. tail >= 0, tail(0) <= 1/2 and tail(s) = 0 for s >= 1,
/// so M is exactly max(t1, t2) once the gap reaches eps. Symmetric.
double regularized_max(double t1, double t2, double eps);

/// Pointwise regularized maximum of two fields. Throws InvalidInput for eps <= 0.
ScalarField reg_max(const ScalarField& f, const ScalarField& g, double eps);

struct HessianSample {
  Point point;
  Eigen::MatrixXcd matrix;  // d^2 phi / dz_j dzbar_k, Hermitian
  double min_eigenvalue = 0.0;
  double step = 0.0;
};

/// Central-difference complex Hessian. Throws InvalidInput when the point is
/// within 10h of a singular point.
HessianSample complex_hessian(const ScalarField& field, PointView point, double h);

/// Where certify_strict_psh draws points: the shell inner <= |z| <= outer
/// (outer <= 0 means 0.98 R), minus a 10h guard around singular points.
struct SampleRegion {
  double inner_radius = 0.0;
  double outer_radius = 0.0;
};

struct PshCertificate {
  bool strictly_psh = false;
  double min_eigenvalue = 0.0;
  Point argmin;
  std::size_t samples = 0;
};

/// Samples `samples` points (fixed list for a given seed) and checks that
/// every complex Hessian has min eigenvalue > margin. Requires samples >= 100.
PshCertificate certify_strict_psh(const ScalarField& field, std::size_t samples, double margin,
                                  std::uint64_t seed, SampleRegion region = {},
                                  double step = 1e-4, unsigned workers = 1);

/// Uniform points in the shell inner <= |z| <= outer of C^n.
std::vector<Point> sample_shell(int n, double inner, double outer, std::size_t count,
                                std::uint64_t seed);

/// Points on the sphere |z| = radius.
std::vector<Point> sample_sphere(int n, double radius, std::size_t count, std::uint64_t seed);

struct GluingConfig {
  std::size_t sphere_samples_per_dim = 10'000;
  double safety_margin = 0.05;
  double switch_radius_fraction = 0.125;  // where delta*G - C starts to dominate, in units of R
  std::size_t modulus_samples = 2'000;    // Hessian samples for the strictness modulus of F
  double hessian_step = 1e-4;
  std::uint64_t seed = 7;
};

enum class GluingBranch {
  kSingularG,  // G(0) = -infinity, H = G
  kBoundedG,   // G(0) finite, H = log|z|^2
};

struct GluedPotential {
  ScalarField field;
  GluingBranch branch;
  double a = 0, b = 0;            // the quadratic a|z|^2 + b
  double kernel_eps_k = 0;        // width of the max used for K
  double strictness_modulus = 0;  // eps in L = F - eps (a|z|^2 + b) + eps K
  double kernel_eps_final = 0;    // width of the final regularized max
  double constant_c = 0;          // rho = max_eps{L, delta G - C}
  double delta = 0;
  double delta_ceiling = 0;       // largest delta for which the inequalities hold (search cap if unbounded)
  double core_radius = 0;         // rho == delta G - C on B(core_radius) minus 0
  double switch_radius = 0;
  double f_min_eigenvalue = 0;
};

/// Thrown when delta is too large for the construction.
class GluingFailure : public std::runtime_error {
 public:
  GluingFailure(const std::string& what, double delta_ceiling)
      : std::runtime_error(what), delta_ceiling_(delta_ceiling) {}
  double delta_ceiling() const { return delta_ceiling_; }

 private:
  double delta_ceiling_;
};

/// Builds rho on B(R) minus 0 with rho = F outside B(3R/4) and
/// rho = delta G - C near 0, following the two-step regularized-max
/// construction (first K from a|z|^2 + b and H, then L and rho).
GluedPotential glue_potentials(const ScalarField& F, const ScalarField& G, double R, double delta,
                               const GluingConfig& config = {});

}  // namespace sympack::psh
