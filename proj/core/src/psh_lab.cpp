#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include <Eigen/Eigenvalues>

#include "sympack/errors.hpp"
#include "sympack/psh_lab.hpp"

namespace sympack::psh {

namespace {

double unit_uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Box-Muller; avoids the implementation-defined std::normal_distribution.
double standard_normal(std::mt19937_64& rng) {
  double u = unit_uniform(rng), v = unit_uniform(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

Point random_direction(int n, std::mt19937_64& rng) {
  Point z(static_cast<std::size_t>(n));
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& c : z) {
      c = {standard_normal(rng), standard_normal(rng)};
      norm2 += std::norm(c);
    }
  } while (norm2 < 1e-300);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& c : z) c *= inv;
  return z;
}

void check_dimension(int n) {
  if (n < 1 || n > kMaxDimension)
    throw InvalidInput("complex dimension must be between 1 and " + std::to_string(kMaxDimension));
}

}  // namespace

double squared_norm(PointView z) {
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  return s;
}

ScalarField::ScalarField(int dimension, Evaluator evaluator, double domain_radius,
                         std::vector<Point> singular_points)
    : dimension_(dimension),
      evaluator_(std::move(evaluator)),
      domain_radius_(domain_radius),
      singular_points_(std::move(singular_points)) {
  check_dimension(dimension_);
  if (!(domain_radius_ > 0.0)) throw InvalidInput("field domain radius must be positive");
  if (!evaluator_) throw InvalidInput("field evaluator is empty");
  for (const auto& p : singular_points_)
    if (static_cast<int>(p.size()) != dimension_)
      throw InvalidInput("singular point has the wrong dimension");
}

double ScalarField::distance_to_singular(PointView z) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : singular_points_) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) d2 += std::norm(z[i] - p[i]);
    best = std::min(best, std::sqrt(d2));
  }
  return best;
}

namespace fields {

ScalarField squared_norm(int n, double radius) {
  return ScalarField(n, [](PointView z) { return psh::squared_norm(z); }, radius);
}

ScalarField log_squared_norm(int n, double radius) {
  return ScalarField(
      n, [](PointView z) { return std::log(psh::squared_norm(z)); }, radius,
      {Point(static_cast<std::size_t>(n))});
}

ScalarField quadratic(int n, double a, double b, double radius) {
  return ScalarField(n, [a, b](PointView z) { return a * psh::squared_norm(z) + b; }, radius);
}

ScalarField constant(int n, double c, double radius) {
  return ScalarField(n, [c](PointView) { return c; }, radius);
}

}  // namespace fields

ScalarField operator+(const ScalarField& f, const ScalarField& g) {
  if (f.dimension() != g.dimension()) throw InvalidInput("field sum: dimension mismatch");
  std::vector<Point> singular = f.singular_points();
  for (const auto& p : g.singular_points())
    if (std::find(singular.begin(), singular.end(), p) == singular.end()) singular.push_back(p);
  return ScalarField(
      f.dimension(), [f, g](PointView z) { return f(z) + g(z); },
      std::min(f.domain_radius(), g.domain_radius()), std::move(singular));
}

ScalarField scaled(const ScalarField& f, double factor) {
  return ScalarField(
      f.dimension(), [f, factor](PointView z) { return factor * f(z); }, f.domain_radius(),
      f.singular_points());
}

ScalarField shifted(const ScalarField& f, double offset) {
  return ScalarField(
      f.dimension(), [f, offset](PointView z) { return f(z) + offset; }, f.domain_radius(),
      f.singular_points());
}

HessianSample complex_hessian(const ScalarField& field, PointView point, double h) {
  const int n = field.dimension();
  if (static_cast<int>(point.size()) != n) throw InvalidInput("point has the wrong dimension");
  if (!(h > 0.0)) throw InvalidInput("Hessian step must be positive");
  if (field.distance_to_singular(point) <= 10.0 * h)
    throw InvalidInput("point lies within 10h of a singular point");

  const int m = 2 * n;
  const Point base(point.begin(), point.end());
  Point z = base;
  auto nudge = [](Point& p, int k, double amount) {
    auto& c = p[static_cast<std::size_t>(k / 2)];
    c += (k % 2 == 0) ? std::complex<double>(amount, 0.0) : std::complex<double>(0.0, amount);
  };
  auto eval = [&](int k, double dk, int l, double dl) {
    z = base;
    nudge(z, k, dk);
    if (l >= 0) nudge(z, l, dl);
    return field(z);
  };
  const double f0 = field(base);
  if (!std::isfinite(f0)) throw InvalidInput("field is not finite at the Hessian point");

  Eigen::MatrixXd real(m, m);
  for (int k = 0; k < m; ++k) {
    real(k, k) = (eval(k, h, -1, 0) - 2.0 * f0 + eval(k, -h, -1, 0)) / (h * h);
    for (int l = k + 1; l < m; ++l) {
      double fpp = eval(k, h, l, h), fpm = eval(k, h, l, -h);
      double fmp = eval(k, -h, l, h), fmm = eval(k, -h, l, -h);
      real(k, l) = real(l, k) = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
    }
  }

  HessianSample out;
  out.point.assign(point.begin(), point.end());
  out.step = h;
  out.matrix.resize(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const int xj = 2 * j, yj = 2 * j + 1, xk = 2 * k, yk = 2 * k + 1;
      out.matrix(j, k) = 0.25 * std::complex<double>(real(xj, xk) + real(yj, yk),
                                                     real(xj, yk) - real(yj, xk));
    }
  out.matrix = 0.5 * (out.matrix + out.matrix.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(out.matrix, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = solver.eigenvalues().minCoeff();
  return out;
}

std::vector<Point> sample_shell(int n, double inner, double outer, std::size_t count,
                                std::uint64_t seed) {
  check_dimension(n);
  if (!(outer > inner) || inner < 0.0) throw InvalidInput("sample shell needs 0 <= inner < outer");
  std::mt19937_64 rng(seed);
  const double dim = 2.0 * n;
  const double lo = std::pow(inner, dim), hi = std::pow(outer, dim);
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Point z = random_direction(n, rng);
    double r = std::pow(lo + unit_uniform(rng) * (hi - lo), 1.0 / dim);
    for (auto& c : z) c *= r;
    out.push_back(std::move(z));
  }
  return out;
}

std::vector<Point> sample_sphere(int n, double radius, std::size_t count, std::uint64_t seed) {
  check_dimension(n);
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Point z = random_direction(n, rng);
    for (auto& c : z) c *= radius;
    out.push_back(std::move(z));
  }
  return out;
}

PshCertificate certify_strict_psh(const ScalarField& field, std::size_t samples, double margin,
                                  std::uint64_t seed, SampleRegion region, double step,
                                  unsigned workers) {
  if (samples < 100) throw InvalidInput("certify_strict_psh needs at least 100 samples");
  if (margin < 0.0) throw InvalidInput("certification margin must be nonnegative");
  const double outer =
      region.outer_radius > 0.0 ? region.outer_radius : 0.98 * field.domain_radius();
  const double guard = 10.0 * step;

  // Fixed point list: batches from derived seeds, filtered by the singular guard.
  std::vector<Point> points;
  for (std::uint64_t batch = 0; points.size() < samples; ++batch) {
    if (batch > 64) throw InvalidInput("sample region is almost entirely within the singular guard");
    for (auto& p : sample_shell(field.dimension(), region.inner_radius, outer, samples,
                                seed + 0x9E3779B97F4A7C15ULL * batch)) {
      if (field.distance_to_singular(p) <= guard) continue;
      points.push_back(std::move(p));
      if (points.size() == samples) break;
    }
  }

  std::vector<double> eig(points.size());
  workers = std::max(1u, workers);
  auto run = [&](unsigned w) {
    for (std::size_t i = w; i < points.size(); i += workers)
      eig[i] = complex_hessian(field, points[i], step).min_eigenvalue;
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  auto it = std::min_element(eig.begin(), eig.end());
  PshCertificate out;
  out.samples = points.size();
  out.min_eigenvalue = *it;
  out.argmin = points[static_cast<std::size_t>(it - eig.begin())];
  out.strictly_psh = out.min_eigenvalue > margin;
  return out;
}

}  // namespace sympack::psh
