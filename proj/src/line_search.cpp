#include "aphen/line_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace aphen {

namespace {

class LineFunction {
 public:
  LineFunction(const Objective& f, std::span<const double> x, std::span<const double> p,
               const FDConfig& fd)
      : f_(f), x_(x), p_(p), work_(x.size()) {
    const double pn = std::sqrt(std::inner_product(p.begin(), p.end(), p.begin(), 0.0));
    h_ = fd.eta / std::max(pn, std::numeric_limits<double>::min());
  }

  double value(double alpha) {
    for (std::size_t i = 0; i < x_.size(); ++i) work_[i] = x_[i] + alpha * p_[i];
    const double v = f_(work_);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  }

  // d/dalpha f(x + alpha p), same 4-point stencil as fd_gradient with the
  // perturbation scaled so that the step in x has length eta.
  double slope(double alpha) {
    const double d = (2.0 * value(alpha - 2.0 * h_) - 16.0 * value(alpha - h_) +
                      16.0 * value(alpha + h_) - 2.0 * value(alpha + 2.0 * h_)) /
                     (24.0 * h_);
    return std::isfinite(d) ? d : std::numeric_limits<double>::quiet_NaN();
  }

 private:
  const Objective& f_;
  std::span<const double> x_;
  std::span<const double> p_;
  RealVector work_;
  double h_;
};

struct Point {
  double alpha;
  double value;
  double slope;
};

double interpolate(const Point& lo, const Point& hi) {
  const double w = hi.alpha - lo.alpha;
  const double curv = (hi.value - lo.value - lo.slope * w) / (w * w);
  double a = lo.alpha + 0.5 * w;
  if (std::isfinite(curv) && curv > 0.0) a = lo.alpha - lo.slope / (2.0 * curv);
  const double left = std::min(lo.alpha, hi.alpha) + 0.1 * std::abs(w);
  const double right = std::max(lo.alpha, hi.alpha) - 0.1 * std::abs(w);
  if (!std::isfinite(a)) return lo.alpha + 0.5 * w;
  return std::clamp(a, left, right);
}

}  // namespace

LineSearchResult wolfe_line_search(const Objective& f, std::span<const double> x,
                                   std::span<const double> p, std::span<const double> grad,
                                   const WolfeConfig& cfg) {
  return wolfe_line_search(f, x, p, grad, f(x), cfg);
}

LineSearchResult wolfe_line_search(const Objective& f, std::span<const double> x,
                                   std::span<const double> p, std::span<const double> grad,
                                   double fx, const WolfeConfig& cfg) {
  if (p.size() != x.size() || grad.size() != x.size())
    throw DimensionError("line search operands differ in length");

  LineSearchResult res;
  const double slope0 = std::inner_product(grad.begin(), grad.end(), p.begin(), 0.0);
  if (!(slope0 < 0.0)) {
    res.status = LineSearchStatus::non_descent;
    res.value = fx;
    return res;
  }

  LineFunction phi(f, x, p, cfg.fd);
  const bool strong = cfg.variant == WolfeVariant::strong;
  auto sufficient = [&](double a, double v) { return v <= fx + cfg.c1 * a * slope0; };
  auto curvature = [&](double s) {
    return strong ? std::abs(s) <= cfg.c2 * std::abs(slope0) : s >= cfg.c2 * slope0;
  };

  Point best{0.0, std::numeric_limits<double>::infinity(), 0.0};
  double smallest = std::numeric_limits<double>::infinity();
  double smallest_value = fx;
  auto trial = [&](double a) {
    const double v = phi.value(a);
    ++res.trials;
    if (sufficient(a, v) && v < best.value) best = {a, v, 0.0};
    if (a < smallest) {
      smallest = a;
      smallest_value = v;
    }
    return v;
  };
  auto finish = [&](double a, double v) {
    res.alpha = a;
    res.value = v;
    res.status = LineSearchStatus::accepted;
    res.sufficient_decrease = true;
    return res;
  };

  auto zoom = [&](Point lo, Point hi) -> LineSearchResult {
    while (res.trials < cfg.max_trials) {
      const double a = interpolate(lo, hi);
      const double v = trial(a);
      if (!sufficient(a, v) || v >= lo.value) {
        hi = {a, v, 0.0};
        continue;
      }
      const double s = phi.slope(a);
      if (std::isnan(s)) {
        hi = {a, v, 0.0};
        continue;
      }
      if (curvature(s)) return finish(a, v);
      if (s * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
      lo = {a, v, s};
    }
    return res;
  };

  Point prev{0.0, fx, slope0};
  double a = cfg.initial_step;
  bool done = false;
  while (res.trials < cfg.max_trials && !done) {
    const double v = trial(a);
    if (!sufficient(a, v) || (res.trials > 1 && v >= prev.value)) {
      res = zoom(prev, {a, v, 0.0});
      done = true;
      break;
    }
    const double s = phi.slope(a);
    if (std::isnan(s)) {
      res = zoom(prev, {a, v, 0.0});
      done = true;
      break;
    }
    if (curvature(s)) return finish(a, v);
    if (strong && s >= 0.0) {
      res = zoom({a, v, s}, prev);
      done = true;
      break;
    }
    prev = {a, v, s};
    a *= 2.0;
  }
  if (res.status == LineSearchStatus::accepted && res.sufficient_decrease) return res;

  res.status = LineSearchStatus::degraded;
  if (std::isfinite(best.value)) {
    res.alpha = best.alpha;
    res.value = best.value;
    res.sufficient_decrease = true;
  } else {
    res.alpha = smallest;
    res.value = smallest_value;
    res.sufficient_decrease = false;
  }
  return res;
}

}  // namespace aphen
