#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace holonomic {

/// Worker count for grid scans: HOLONOMIC_THREADS when set (and positive),
/// otherwise the hardware concurrency. Results never depend on it.
unsigned worker_count();

struct ParamMin {
  double param = 0.0;
  double value = 0.0;
};

/// Strict ordering used by every argmin: smaller value, then smaller |param|,
/// then smaller param. Makes reductions independent of evaluation order.
bool better(const ParamMin& a, const ParamMin& b) noexcept;

struct IndexMin {
  std::size_t index = 0;
  double value = 0.0;
  bool found = false;
};

/// argmin over i in [0, count) of f(i), ties resolved toward the smaller index.
/// Non-finite values are skipped. Evaluated in parallel chunks.
IndexMin parallel_argmin(std::size_t count, const std::function<double(std::size_t)>& f);

/// argmin of f over a list of parameters, ties resolved by `better`.
ParamMin argmin_over(std::span<const double> params, const std::function<double(double)>& f);

/// Golden-section minimisation on [lo, hi] until the bracket is narrower than
/// rel_tol * max(1, |lo| + |hi|).
ParamMin golden_section(const std::function<double(double)>& f, double lo, double hi,
                        double rel_tol = 1e-10);

struct ScanOptions {
  std::size_t grid = 4096;
  // Parameters with |t| < puncture are never evaluated.
  double puncture = 0.0;
  // Adds `grid` geometrically spaced points from the puncture outwards on each
  // side of zero; used when the infimum may sit at the puncture edge.
  bool geometric = false;
  // Always evaluated (if inside the range and outside the puncture).
  std::vector<double> extra;
  double rel_tol = 1e-10;
};

/// Two-stage minimisation of f on [lo, hi]: a grid scan, then golden-section
/// refinement inside the neighbouring grid cells of the best point. The
/// result is never worse than the best grid point.
ParamMin scan_and_refine(const std::function<double(double)>& f, double lo, double hi,
                         const ScanOptions& options);

std::vector<double> uniform_grid(double lo, double hi, std::size_t n);

}  // namespace holonomic
