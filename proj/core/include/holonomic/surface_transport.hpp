#pragma once

#include <functional>
#include <vector>

namespace holonomic {

/// A closed arc-length parametrised curve on an oriented surface, given by its
/// length and signed geodesic curvature k(t), t ∈ [0, length].
struct LoopSpec {
  double length = 0.0;
  std::function<double(double)> curvature;
};

/// Same loop traversed backwards: k_rev(t) = −k(ℓ − t).
LoopSpec reversed(const LoopSpec& loop);

/// Coefficients of a parallel field in the frame {γ̇, Jγ̇}.
struct FrameState {
  double a = 1.0;
  double b = 0.0;
};

struct TransportResult {
  // Angle of the frame map after one traversal, in (−π, π].
  double rotation = 0.0;
  // −∫₀^ℓ k by composite Simpson on the integrator's nodes.
  double quadrature = 0.0;
  FrameState frame;
};

/// Reduces an angle to (−π, π]; anything within 1e-12 of −π maps to +π.
double reduce_angle(double x);
/// |reduce_angle(a − b)|.
double angular_distance(double a, double b);

/// RK4 integration of ȧ = k b, ḃ = −k a from (1, 0) with `steps` uniform
/// steps. Throws kInvalidInput for steps < 16 or a non-finite k sample.
TransportResult transport_rotation(const LoopSpec& loop, int steps);

/// 2π − ∫₀^ℓ k, reduced to (−π, π].
double holonomy_angle(const LoopSpec& loop, int steps);

/// Metric circle of geodesic radius r in the space form of curvature K ≠ 0.
class GeodesicCircle {
 public:
  /// Throws kFlatExcluded for K = 0, kInvalidInput for r ≤ 0 and kOutOfChart
  /// when √K·r ≥ π on the sphere.
  GeodesicCircle(double K, double r);

  double curvature_K() const noexcept { return K_; }
  double radius() const noexcept { return r_; }

  double length() const noexcept;
  /// Constant geodesic curvature of the circle, oriented toward its centre.
  double geodesic_curvature() const noexcept;
  double area() const noexcept;

  LoopSpec loop() const;

 private:
  double K_;
  double r_;
};

/// (2π − ℓk) − K·A from the closed forms; zero up to rounding.
double gauss_bonnet_residual(const GeodesicCircle& c);

/// Holonomy angle of the latitude circle at polar angle α on the unit sphere,
/// obtained by transporting a tangent vector in ℝ³ with Ṗ = −⟨P, γ̇⟩γ.
/// Throws kDegenerateLoop for α ∉ (0, π), kInvalidInput for steps < 16.
double sphere_extrinsic_transport(double alpha, int steps);

struct TransportSweepRow {
  double K = 0.0;
  double r = 0.0;
  double ell = 0.0;
  double int_k = 0.0;
  double theta_ode = 0.0;
  double theta_gb = 0.0;
  // NaN when K ≤ 0 (no embedded sphere).
  double theta_extrinsic = 0.0;
  double residual = 0.0;
};

/// Holonomy of geodesic circles by the three routes, one row per radius in
/// the order given.
std::vector<TransportSweepRow> transport_sweep(double K, const std::vector<double>& radii, int steps);

}  // namespace holonomic
