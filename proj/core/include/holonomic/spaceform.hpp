#pragma once

#include <cstddef>

#include "holonomic/holonomic_space.hpp"

namespace holonomic {

/// Complete simply connected surface of constant curvature K ≠ 0: the round
/// sphere S²(K) for K > 0, the hyperbolic plane H²(K) for K < 0.
class SpaceForm {
 public:
  /// Throws kFlatExcluded for K = 0 and kInvalidInput for non-finite K.
  explicit SpaceForm(double K);

  double K() const noexcept { return K_; }

  /// Length norm of the rotation by θ ∈ [−π, π]:
  /// √(4π|θ| ∓ θ²)/√|K|, with the sign opposite to that of K.
  double length_norm(double theta) const;

 private:
  double K_;
};

/// Free-function form of SpaceForm(K).length_norm(θ). Throws kOutOfDomain for
/// |θ| > π and kFlatExcluded for K = 0.
double spaceform_length_norm(double K, double theta);

struct NumericLengthNorm {
  double value = 0.0;
  // Radius of the shortest circle realising θ, and whether it is traversed
  // clockwise (holonomy −K·A).
  double radius = 0.0;
  bool reversed = false;
  // False when no circle in the chart realises any representative of θ.
  bool complete = true;
};

/// Shortest geodesic circle whose holonomy (2π − ℓk, either orientation,
/// modulo 2π) equals θ. Roots in r are bracketed on a grid of `grid` radii and
/// bisected. Independent of the closed form above.
NumericLengthNorm spaceform_length_norm_numeric(double K, double theta, std::size_t grid = 4096);

/// ℓ² − (4πA − KA²) for the circle of radius r.
double isoperimetric_residual(double K, double r);

struct ManifoldRadius {
  double value = 0.0;
  double theta_star = 0.0;
  bool at_puncture = false;
};

/// inf over θ ∈ (0, π] of √((4πθ ∓ θ²)/(2|K|·2 sin(θ/2))).
ManifoldRadius manifold_holonomy_radius(double K, std::size_t grid = 100000);

/// Discrete fiber space (ℝ², {R_θ}, L) over a uniform θ-grid of [−π, π] with
/// n_angles points; θ = 0 is inserted when the grid misses it. Requires K > 0.
HolonomicSpace build_fiber_holonomic_space(double K, std::size_t n_angles);

/// The same fiber space over all of SO(2): a one-parameter family on
/// [−π, π] with closed-form L, resolving any rotation exactly. Requires K > 0.
HolonomicSpace fiber_rotation_family(double K);

struct FiberDistance {
  double distance = 0.0;
  double theta_star = 0.0;
};

/// inf over θ ∈ [−π, π] of √(L(θ)² + ‖R_θ u − v‖²). Requires K > 0.
FiberDistance fiber_distance(double K, const Vector& u, const Vector& v, std::size_t grid = 4096);

}  // namespace holonomic
