#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "sympack/errors.hpp"
#include "sympack/psh_lab.hpp"

namespace sympack::psh {

namespace {

// Unnormalized C^infinity bump on (-1, 1).
double bump(double x) {
  double q = 1.0 - x * x;
  return q > 0.0 ? std::exp(-1.0 / q) : 0.0;
}

// Density (up to a constant) of U = (X1 - X2) / 2 with X1, X2 iid ~ bump,
// evaluated at t in [0, 1] by the trapezoid rule; the integrand vanishes to
// all orders at both ends, so the rule converges spectrally.
double difference_density(double t) {
  constexpr int kNodes = 1500;
  const double lo = 2.0 * t - 1.0;
  const double hi = 1.0;
  if (hi <= lo) return 0.0;
  const double dx = (hi - lo) / kNodes;
  double sum = 0.0;
  for (int i = 1; i < kNodes; ++i) {
    double x = lo + i * dx;
    sum += bump(x) * bump(x - 2.0 * t);
  }
  return 2.0 * sum * dx;
}

// tail(t) = E[(U - t)_+] on [0, 1], stored as quintic Hermite data
// (value, first and second derivative) on a uniform grid.
class TailTable {
 public:
  TailTable() {
    constexpr std::array<double, 6> gx = {-0.9324695142031521, -0.6612093864662645,
                                          -0.2386191860831969, 0.2386191860831969,
                                          0.6612093864662645,  0.9324695142031521};
    constexpr std::array<double, 6> gw = {0.1713244923791704, 0.3607615730481386,
                                          0.4679139345726910, 0.4679139345726910,
                                          0.3607615730481386, 0.1713244923791704};
    std::vector<double> m0(kCells), m1(kCells);
    for (int j = 0; j < kCells; ++j) {
      const double a = static_cast<double>(j) / kCells, half = 0.5 / kCells;
      double s0 = 0.0, s1 = 0.0;
      for (std::size_t g = 0; g < gx.size(); ++g) {
        double u = a + half * (1.0 + gx[g]);
        double d = difference_density(u);
        s0 += gw[g] * d;
        s1 += gw[g] * u * d;
      }
      m0[static_cast<std::size_t>(j)] = s0 * half;
      m1[static_cast<std::size_t>(j)] = s1 * half;
    }
    double mass = 0.0;
    for (double v : m0) mass += v;
    const double norm = 0.5 / mass;  // U is symmetric, so P(U > 0) = 1/2

    value_.assign(kCells + 1, 0.0);
    slope_.assign(kCells + 1, 0.0);
    curvature_.assign(kCells + 1, 0.0);
    double tail0 = 0.0, tail1 = 0.0;
    for (int k = kCells; k >= 0; --k) {
      const double t = static_cast<double>(k) / kCells;
      if (k < kCells) {
        tail0 += m0[static_cast<std::size_t>(k)] * norm;
        tail1 += m1[static_cast<std::size_t>(k)] * norm;
      }
      auto idx = static_cast<std::size_t>(k);
      value_[idx] = std::max(0.0, tail1 - t * tail0);
      slope_[idx] = -tail0;
      curvature_[idx] = difference_density(t) * norm;
    }
    value_[kCells] = slope_[kCells] = curvature_[kCells] = 0.0;
  }

  double operator()(double t) const {
    if (t >= 1.0) return 0.0;
    if (t <= 0.0) t = 0.0;
    const double x = t * kCells;
    auto j = static_cast<std::size_t>(std::min<double>(std::floor(x), kCells - 1));
    const double s = x - static_cast<double>(j), h = 1.0 / kCells;
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    const double h0 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
    const double h1 = 10 * s3 - 15 * s4 + 6 * s5;
    const double h2 = s - 6 * s3 + 8 * s4 - 3 * s5;
    const double h3 = -4 * s3 + 7 * s4 - 3 * s5;
    const double h4 = 0.5 * (s2 - 3 * s3 + 3 * s4 - s5);
    const double h5 = 0.5 * (s3 - 2 * s4 + s5);
    double v = value_[j] * h0 + value_[j + 1] * h1 + h * (slope_[j] * h2 + slope_[j + 1] * h3) +
               h * h * (curvature_[j] * h4 + curvature_[j + 1] * h5);
    return std::clamp(v, 0.0, 0.5);
  }

 private:
  static constexpr int kCells = 512;
  std::vector<double> value_, slope_, curvature_;
};

const TailTable& tail_table() {
  static const TailTable table;
  return table;
}

}  // namespace

double regularized_max(double t1, double t2, double eps) {
  if (!(eps > 0.0)) throw InvalidInput("regularized max width must be positive");
  if (t1 == -std::numeric_limits<double>::infinity()) return t2;
  if (t2 == -std::numeric_limits<double>::infinity()) return t1;
  const double hi = std::max(t1, t2);
  const double gap = std::abs(t1 - t2);
  if (gap >= eps) return hi;
  return hi + eps * tail_table()(gap / eps);
}

ScalarField reg_max(const ScalarField& f, const ScalarField& g, double eps) {
  if (!(eps > 0.0)) throw InvalidInput("reg_max epsilon must be positive");
  if (f.dimension() != g.dimension()) throw InvalidInput("reg_max: dimension mismatch");
  std::vector<Point> singular = f.singular_points();
  for (const auto& p : g.singular_points())
    if (std::find(singular.begin(), singular.end(), p) == singular.end()) singular.push_back(p);
  return ScalarField(
      f.dimension(), [f, g, eps](PointView z) { return regularized_max(f(z), g(z), eps); },
      std::min(f.domain_radius(), g.domain_radius()), std::move(singular));
}

}  // namespace sympack::psh
