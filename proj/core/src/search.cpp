#include "holonomic/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

#include "holonomic/error.hpp"

namespace holonomic {

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HOLONOMIC_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

bool better(const ParamMin& a, const ParamMin& b) noexcept {
  if (a.value != b.value) return a.value < b.value;
  if (std::abs(a.param) != std::abs(b.param)) return std::abs(a.param) < std::abs(b.param);
  return a.param < b.param;
}

IndexMin parallel_argmin(std::size_t count, const std::function<double(std::size_t)>& f) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(1, count / 256));
  auto scan = [&](std::size_t begin, std::size_t end) {
    IndexMin best;
    for (std::size_t i = begin; i < end; ++i) {
      const double v = f(i);
      if (!std::isfinite(v)) continue;
      if (!best.found || v < best.value) best = {i, v, true};
    }
    return best;
  };
  if (workers <= 1) return scan(0, count);

  std::vector<IndexMin> partial(workers);
  std::vector<std::thread> threads;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(count, w * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    threads.emplace_back([&, w, begin, end] { partial[w] = scan(begin, end); });
  }
  for (auto& t : threads) t.join();
  // Chunks are ordered, so a strict < keeps the smallest index on ties.
  IndexMin best;
  for (const auto& p : partial) {
    if (p.found && (!best.found || p.value < best.value)) best = p;
  }
  return best;
}

ParamMin argmin_over(std::span<const double> params, const std::function<double(double)>& f) {
  ParamMin best{0.0, std::numeric_limits<double>::infinity()};
  bool found = false;
  for (double t : params) {
    const ParamMin cand{t, f(t)};
    if (!std::isfinite(cand.value)) continue;
    if (!found || better(cand, best)) {
      best = cand;
      found = true;
    }
  }
  return best;
}

ParamMin golden_section(const std::function<double(double)>& f, double lo, double hi, double rel_tol) {
  if (!(lo <= hi)) throw Error(ErrorCode::kInvalidInput, "golden_section: empty bracket");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 400 && (b - a) > rel_tol * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  ParamMin best{c, fc};
  for (ParamMin cand : {ParamMin{d, fd}, ParamMin{a, f(a)}, ParamMin{b, f(b)}}) {
    if (std::isfinite(cand.value) && (!std::isfinite(best.value) || better(cand, best))) best = cand;
  }
  return best;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g;
  if (n == 0) return g;
  if (n == 1) return {lo};
  g.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  g.back() = hi;
  return g;
}

ParamMin scan_and_refine(const std::function<double(double)>& f, double lo, double hi,
                         const ScanOptions& options) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::kInvalidInput, "scan_and_refine: invalid range");
  }
  const double punct = options.puncture;
  auto admissible = [&](double t) { return t >= lo && t <= hi && std::abs(t) >= punct; };

  std::vector<double> points;
  for (double t : uniform_grid(lo, hi, std::max<std::size_t>(options.grid, 2))) {
    if (admissible(t)) points.push_back(t);
  }
  if (options.geometric && punct > 0.0) {
    const double reach = std::max(std::abs(lo), std::abs(hi));
    if (reach > punct) {
      const std::size_t n = std::max<std::size_t>(options.grid, 2);
      const double ratio = std::log(reach / punct);
      for (std::size_t i = 0; i < n; ++i) {
        const double t = punct * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n - 1));
        for (double s : {t, -t}) {
          if (admissible(s)) points.push_back(s);
        }
      }
    }
  }
  for (double t : {lo, hi, punct, -punct}) {
    if (admissible(t)) points.push_back(t);
  }
  for (double t : options.extra) {
    if (admissible(t)) points.push_back(t);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.empty()) throw Error(ErrorCode::kInvalidInput, "scan_and_refine: no admissible parameter");

  std::vector<double> values(points.size());
  const IndexMin idx = parallel_argmin(points.size(), [&](std::size_t i) {
    values[i] = f(points[i]);
    return values[i];
  });
  if (!idx.found) return {points.front(), std::numeric_limits<double>::infinity()};

  // Same tie-break as everywhere else: rescan for equal values at smaller |t|.
  ParamMin best{points[idx.index], idx.value};
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (values[i] == best.value && better({points[i], values[i]}, best)) best = {points[i], values[i]};
  }
  const auto pos = static_cast<std::size_t>(std::lower_bound(points.begin(), points.end(), best.param) -
                                            points.begin());

  double a = pos > 0 ? points[pos - 1] : points[pos];
  double b = pos + 1 < points.size() ? points[pos + 1] : points[pos];
  // Do not refine across the puncture.
  if (punct > 0.0) {
    if (best.param > 0.0) a = std::max(a, punct);
    if (best.param < 0.0) b = std::min(b, -punct);
  }
  if (b > a) {
    const ParamMin refined = golden_section(f, a, b, options.rel_tol);
    if (std::isfinite(refined.value) && admissible(refined.param) && better(refined, best)) best = refined;
  }
  return best;
}

}  // namespace holonomic
