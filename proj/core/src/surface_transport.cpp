#include "holonomic/surface_transport.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "holonomic/error.hpp"
#include "holonomic/ode.hpp"

namespace holonomic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_loop(const LoopSpec& loop, int steps) {
  if (steps < 16) throw Error(ErrorCode::kInvalidInput, "transport needs at least 16 steps");
  if (!(loop.length > 0.0) || !std::isfinite(loop.length)) {
    throw Error(ErrorCode::kInvalidInput, "loop length must be positive and finite");
  }
  if (!loop.curvature) throw Error(ErrorCode::kInvalidInput, "loop has no curvature function");
}

double sample_curvature(const LoopSpec& loop, double t) {
  const double k = loop.curvature(t);
  if (!std::isfinite(k)) throw Error(ErrorCode::kInvalidInput, "non-finite geodesic curvature sample");
  return k;
}

// ∫₀^ℓ k by Simpson's rule on each step [t, t + h] using its midpoint.
double integrate_curvature(const LoopSpec& loop, int steps) {
  const double h = loop.length / steps;
  double sum = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double t = h * i;
    sum += sample_curvature(loop, t) + 4.0 * sample_curvature(loop, t + 0.5 * h) +
           sample_curvature(loop, i + 1 == steps ? loop.length : t + h);
  }
  return sum * h / 6.0;
}

}  // namespace

LoopSpec reversed(const LoopSpec& loop) {
  const double ell = loop.length;
  auto k = loop.curvature;
  return LoopSpec{ell, [ell, k](double t) { return -k(ell - t); }};
}

// Rounding of 2π − ∫k can land a hair past the boundary.
constexpr double kBoundarySnap = 1e-12;

double reduce_angle(double x) {
  double y = std::fmod(x + kPi, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  y -= kPi;
  return y <= -kPi + kBoundarySnap ? kPi : y;
}

double angular_distance(double a, double b) { return std::abs(reduce_angle(a - b)); }

TransportResult transport_rotation(const LoopSpec& loop, int steps) {
  check_loop(loop, steps);
  const double h = loop.length / steps;
  auto rhs = [&](double t, const OdeState<2>& y) {
    const double k = sample_curvature(loop, t);
    return OdeState<2>{k * y[1], -k * y[0]};
  };
  OdeState<2> y{1.0, 0.0};
  for (int i = 0; i < steps; ++i) y = rk4_step<2>(rhs, h * i, y, h);

  TransportResult out;
  out.frame = {y[0], y[1]};
  out.rotation = reduce_angle(std::atan2(y[1], y[0]));
  out.quadrature = -integrate_curvature(loop, steps);
  return out;
}

double holonomy_angle(const LoopSpec& loop, int steps) {
  check_loop(loop, steps);
  return reduce_angle(kTwoPi - integrate_curvature(loop, steps));
}

GeodesicCircle::GeodesicCircle(double K, double r) : K_(K), r_(r) {
  if (!std::isfinite(K) || !std::isfinite(r)) throw Error(ErrorCode::kInvalidInput, "non-finite circle parameters");
  if (K == 0.0) throw Error(ErrorCode::kFlatExcluded, "geodesic circles are only modelled for K != 0");
  if (!(r > 0.0)) throw Error(ErrorCode::kInvalidInput, "circle radius must be positive");
  if (K > 0.0 && std::sqrt(K) * r >= kPi) {
    throw Error(ErrorCode::kOutOfChart, "sqrt(K) * r must be < pi on the sphere");
  }
}

double GeodesicCircle::length() const noexcept {
  const double s = std::sqrt(std::abs(K_));
  return K_ > 0.0 ? kTwoPi * std::sin(s * r_) / s : kTwoPi * std::sinh(s * r_) / s;
}

double GeodesicCircle::geodesic_curvature() const noexcept {
  const double s = std::sqrt(std::abs(K_));
  return K_ > 0.0 ? s / std::tan(s * r_) : s / std::tanh(s * r_);
}

double GeodesicCircle::area() const noexcept {
  const double s = std::sqrt(std::abs(K_));
  // 1 − cos x = 2 sin²(x/2) and cosh x − 1 = 2 sinh²(x/2) keep small circles accurate.
  if (K_ > 0.0) {
    const double h = std::sin(0.5 * s * r_);
    return 2.0 * kTwoPi * h * h / K_;
  }
  const double h = std::sinh(0.5 * s * r_);
  return 2.0 * kTwoPi * h * h / std::abs(K_);
}

LoopSpec GeodesicCircle::loop() const {
  const double k = geodesic_curvature();
  return LoopSpec{length(), [k](double) { return k; }};
}

double gauss_bonnet_residual(const GeodesicCircle& c) {
  return (kTwoPi - c.length() * c.geodesic_curvature()) - c.curvature_K() * c.area();
}

double sphere_extrinsic_transport(double alpha, int steps) {
  if (!(alpha > 0.0) || !(alpha < kPi)) {
    throw Error(ErrorCode::kDegenerateLoop, "latitude circle degenerates at the poles");
  }
  if (steps < 16) throw Error(ErrorCode::kInvalidInput, "transport needs at least 16 steps");
  const double sa = std::sin(alpha), ca = std::cos(alpha);
  auto gamma = [&](double phi) { return OdeState<3>{sa * std::cos(phi), sa * std::sin(phi), ca}; };
  auto velocity = [&](double phi) { return OdeState<3>{-sa * std::sin(phi), sa * std::cos(phi), 0.0}; };
  auto dot = [](const OdeState<3>& x, const OdeState<3>& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; };

  // Levi-Civita transport on the unit sphere: the ambient derivative of P is
  // normal to the sphere, and ⟨P, γ⟩ = 0 fixes it to −⟨P, γ̇⟩γ.
  auto rhs = [&](double phi, const OdeState<3>& p) {
    const OdeState<3> g = gamma(phi);
    const double c = -dot(p, velocity(phi));
    return OdeState<3>{c * g[0], c * g[1], c * g[2]};
  };

  const OdeState<3> p0{0.0, 1.0, 0.0};  // unit tangent at φ = 0
  OdeState<3> p = p0;
  const double h = kTwoPi / steps;
  for (int i = 0; i < steps; ++i) {
    p = rk4_step<3>(rhs, h * i, p, h);
    const OdeState<3> g = gamma(h * (i + 1));
    const double drift = dot(p, g);
    for (int j = 0; j < 3; ++j) p[j] -= drift * g[j];
  }

  const OdeState<3> n = gamma(0.0);  // outward normal orients the tangent plane
  const OdeState<3> cross{p0[1] * p[2] - p0[2] * p[1], p0[2] * p[0] - p0[0] * p[2], p0[0] * p[1] - p0[1] * p[0]};
  return reduce_angle(std::atan2(dot(n, cross), dot(p0, p)));
}

std::vector<TransportSweepRow> transport_sweep(double K, const std::vector<double>& radii, int steps) {
  std::vector<TransportSweepRow> rows;
  rows.reserve(radii.size());
  for (double r : radii) {
    const GeodesicCircle c(K, r);
    const LoopSpec loop = c.loop();
    TransportSweepRow row;
    row.K = K;
    row.r = r;
    row.ell = c.length();
    row.int_k = c.length() * c.geodesic_curvature();
    row.theta_ode = transport_rotation(loop, steps).rotation;
    row.theta_gb = holonomy_angle(loop, steps);
    row.theta_extrinsic = K > 0.0 ? sphere_extrinsic_transport(std::sqrt(K) * r, steps)
                                  : std::numeric_limits<double>::quiet_NaN();
    row.residual = gauss_bonnet_residual(c);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace holonomic
