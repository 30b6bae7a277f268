#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "holonomic/error.hpp"
#include "holonomic/holonomic_space.hpp"

namespace holonomic {

namespace {

// Points are placed at this fraction of r so they stay inside the open ball.
constexpr double kInterior = 1.0 - 1e-12;
constexpr int kAlternatingSteps = 24;

struct Candidate {
  double slack = 0.0;
  // Position in the deterministic enumeration order; ties keep the earliest.
  std::size_t order = 0;
  Vector v, w;
  std::size_t element = 0;
  bool found = false;
};

void keep_better(Candidate& best, Candidate&& cand) {
  if (!cand.found) return;
  if (!best.found || cand.slack > best.slack || (cand.slack == best.slack && cand.order < best.order)) {
    best = std::move(cand);
  }
}

double slack_of(const Vector& v, const Vector& w, const Matrix& a, double L) {
  return (v - w).squaredNorm() - (v - a * w).squaredNorm() - L * L;
}

Vector ball_point(std::mt19937_64& rng, const Vector& u, double r) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto n = u.size();
  Vector dir(n);
  double norm = 0.0;
  do {
    for (Eigen::Index i = 0; i < n; ++i) dir(i) = gauss(rng);
    norm = dir.norm();
  } while (norm == 0.0);
  const double radius = r * std::pow(unit(rng), 1.0 / static_cast<double>(n));
  return u + (radius / norm) * dir;
}

// Alternating maximisation of 2⟨v, (a − I) w⟩ over v, w ∈ B(u, ρ). At u = 0
// the first start is the extremal pair (w along the top singular direction
// of a − I, v along (a − I) w), which is optimal there.
std::pair<Vector, Vector> adversarial_pair(const Matrix& a, const Vector& u, double rho) {
  const auto n = u.size();
  const Matrix m = a - Matrix::Identity(n, n);
  const SingularPair top = top_singular_pair(m);

  std::vector<Vector> starts{top.right, -top.right};
  for (Eigen::Index i = 0; i < std::min<Eigen::Index>(n, 4); ++i) {
    starts.push_back(Vector::Unit(n, i));
    starts.push_back(-Vector::Unit(n, i));
  }

  double best_value = -std::numeric_limits<double>::infinity();
  std::pair<Vector, Vector> best{u, u};
  auto push_toward = [&](const Vector& dir) -> Vector {
    const double len = dir.norm();
    if (len == 0.0) return u;
    return u + (rho / len) * dir;
  };
  for (const Vector& s : starts) {
    Vector w = u + rho * s;
    Vector v = push_toward(m * w);
    for (int it = 0; it < kAlternatingSteps; ++it) {
      const double value = v.dot(m * w);
      if (value > best_value) {
        best_value = value;
        best = {v, w};
      }
      w = push_toward(m.transpose() * v);
      v = push_toward(m * w);
    }
    const double value = v.dot(m * w);
    if (value > best_value) {
      best_value = value;
      best = {v, w};
    }
  }
  return best;
}

std::optional<PropertyPViolation> search_violation(const std::vector<SampleEntry>& elements, const Vector& u,
                                                   double r, std::size_t pair_budget, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Vector, Vector>> pairs;
  pairs.reserve(pair_budget);
  for (std::size_t p = 0; p < pair_budget; ++p) {
    Vector v = ball_point(rng, u, r);
    Vector w = ball_point(rng, u, r);
    pairs.emplace_back(std::move(v), std::move(w));
  }

  const std::size_t n_el = elements.size();
  const std::size_t workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(1, pair_budget / 64));
  std::vector<Candidate> partial(workers);
  auto scan_pairs = [&](std::size_t w_id, std::size_t begin, std::size_t end) {
    Candidate best;
    for (std::size_t p = begin; p < end; ++p) {
      const auto& [v, w] = pairs[p];
      for (std::size_t e = 0; e < n_el; ++e) {
        const double s = slack_of(v, w, elements[e].element.matrix(), elements[e].L);
        if (s > 0.0 && (!best.found || s > best.slack)) {
          best = {s, p * n_el + e, v, w, e, true};
        }
      }
    }
    partial[w_id] = std::move(best);
  };
  if (workers <= 1) {
    scan_pairs(0, 0, pairs.size());
  } else {
    std::vector<std::thread> threads;
    const std::size_t chunk = (pairs.size() + workers - 1) / workers;
    for (std::size_t k = 0; k < workers; ++k) {
      const std::size_t begin = std::min(pairs.size(), k * chunk);
      const std::size_t end = std::min(pairs.size(), begin + chunk);
      threads.emplace_back(scan_pairs, k, begin, end);
    }
    for (auto& t : threads) t.join();
  }

  Candidate best;
  for (auto& c : partial) keep_better(best, std::move(c));

  const double rho = r * kInterior;
  const std::size_t base = pair_budget * n_el;
  for (std::size_t e = 0; e < n_el; ++e) {
    const Matrix& a = elements[e].element.matrix();
    if (elements[e].element.is_identity()) continue;
    auto [v, w] = adversarial_pair(a, u, rho);
    const double s = slack_of(v, w, a, elements[e].L);
    if (s > 0.0) keep_better(best, Candidate{s, base + e, std::move(v), std::move(w), e, true});
  }

  if (!best.found) return std::nullopt;
  const auto& el = elements[best.element];
  return PropertyPViolation{best.v, best.w, el.element.matrix(), el.L, best.slack};
}

}  // namespace

std::optional<PropertyPViolation> check_property_p(const HolonomicSpace& space, const Vector& u, double r,
                                                   std::size_t pair_budget, std::uint64_t seed) {
  if (u.size() != space.dimension() || !u.allFinite()) {
    throw Error(ErrorCode::kInvalidInput, "check_property_p: bad centre vector");
  }
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::kInvalidInput, "check_property_p: r must be positive");
  if (pair_budget < 1) throw Error(ErrorCode::kInvalidInput, "check_property_p: pair_budget must be >= 1");
  return search_violation(space.discretize(), u, r, pair_budget, seed);
}

RadiusBracket holonomy_radius_at(const HolonomicSpace& space, const Vector& u, double bracket_tol,
                                 std::size_t pair_budget, std::uint64_t seed) {
  if (u.size() != space.dimension() || !u.allFinite()) {
    throw Error(ErrorCode::kInvalidInput, "holonomy_radius_at: bad centre vector");
  }
  if (!(bracket_tol > 0.0)) throw Error(ErrorCode::kInvalidInput, "holonomy_radius_at: bracket_tol must be positive");
  if (pair_budget < 1) throw Error(ErrorCode::kInvalidInput, "holonomy_radius_at: pair_budget must be >= 1");

  RadiusBracket out;
  if (space.is_trivial()) {
    out.unbounded = true;
    return out;
  }
  const auto elements = space.discretize();
  auto violated = [&](double r) { return search_violation(elements, u, r, pair_budget, seed).has_value(); };

  const RadiusResult rho0 = holonomy_radius_origin(space);
  double hi = rho0.value.is_finite() ? rho0.value.value() + 2.0 * u.norm() : 1.0;
  if (!(hi > 0.0)) hi = bracket_tol;
  out.witnessed = violated(hi);
  for (int grow = 0; grow < 60 && !out.witnessed; ++grow) {
    hi *= 2.0;
    out.witnessed = violated(hi);
  }
  if (!out.witnessed) {
    out.lo = hi;
    out.hi = hi;
    out.unbounded = true;
    return out;
  }

  double lo = 0.0;
  while (hi - lo > bracket_tol) {
    const double mid = 0.5 * (lo + hi);
    if (violated(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.lo = lo;
  out.hi = hi;
  return out;
}

}  // namespace holonomic
