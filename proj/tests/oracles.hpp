// Test-only oracles. Nothing here calls into the code paths under test
// beyond constructing inputs.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace holonomic::testing {

inline constexpr double kPi = std::numbers::pi;

// Regression constants pinned by a 10⁶-point grid plus an mpmath root of the
// derivative (40 digits), computed before the library existed.
inline constexpr double kSphereHolRad = 2.4558625558625004;      // K = 1
inline constexpr double kSphereHolRadTheta = 1.0211936032919631;
inline constexpr double kSphereCvxRad = 2.6414025520641023;      // K = 1
inline constexpr double kSphereCvxRadTheta = 2.5825080620559664;
inline constexpr double kAntipodalTenDistance = 5.4322289878587706;  // d((10,0), (-10,0)), K = 1
inline constexpr double kAntipodalTenTheta = 3.1098540123017636;

inline double reference_spectral_norm(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

inline Eigen::MatrixXd random_orthogonal(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  return q;
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

inline Eigen::VectorXd random_in_ball(std::mt19937_64& rng, Eigen::Index n, double radius) {
  for (;;) {
    Eigen::VectorXd v = random_vector(rng, n, radius);
    if (v.norm() < radius) return v;
  }
}

struct GridMin {
  double x = 0.0;
  double value = std::numeric_limits<double>::infinity();
};

// Plain dense scan over [lo, hi] with n + 1 points.
inline GridMin dense_grid_min(const std::function<double(double)>& f, double lo, double hi, std::size_t n) {
  GridMin best;
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
    const double v = f(x);
    if (std::isfinite(v) && v < best.value) best = {x, v};
  }
  return best;
}

inline double sphere_length_norm(double theta) {
  const double t = std::abs(theta);
  return std::sqrt(4.0 * kPi * t - t * t);
}

}  // namespace holonomic::testing
