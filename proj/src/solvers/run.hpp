#ifndef APHEN_SOLVERS_RUN_HPP
#define APHEN_SOLVERS_RUN_HPP

#include <chrono>
#include <cmath>
#include <deque>
#include <span>

#include "aphen/solvers.hpp"

namespace aphen::detail {

/// Bookkeeping shared by every scheme: trace records, the stopping rule, the
/// last accepted iterate and the tail of distinct iterates.
class Run {
 public:
  Run(const Objective& f, const SolverConfig& cfg)
      : f_(f), cfg_(cfg), evals_at_start_(f.evaluations()), t0_(Clock::now()) {}

  /// Records iteration 0. Returns true when the run is already finished.
  bool start(std::span<const double> x, double fx) {
    x_.assign(x.begin(), x.end());
    if (!std::isfinite(fx)) {
      trace_.records.push_back({0, elapsed(), fx});
      return stop(StopReason::numeric, false);
    }
    trace_.records.push_back({0, elapsed(), fx});
    push_tail(x);
    if (fx <= cfg_.abs_tol) return stop(StopReason::tolerance, true);
    if (cfg_.max_iters == 0) return stop(StopReason::max_iters, false);
    return false;
  }

  /// Records the next iterate. A non-finite value ends the run without
  /// accepting `x`. Returns true when the run is finished.
  bool step(std::span<const double> x, double fx, bool moved) {
    if (!std::isfinite(fx)) return numeric();
    const double prev = trace_.records.back().error;
    const std::size_t iter = trace_.records.back().iter + 1;
    x_.assign(x.begin(), x.end());
    trace_.records.push_back({iter, elapsed(), fx});
    if (moved) push_tail(x);
    if (fx <= cfg_.abs_tol || std::abs(fx - prev) < cfg_.rel_tol * std::abs(fx))
      return stop(StopReason::tolerance, true);
    if (iter >= cfg_.max_iters) return stop(StopReason::max_iters, false);
    return false;
  }

  bool numeric() { return stop(StopReason::numeric, false); }

  std::size_t iteration() const { return trace_.records.back().iter; }
  double last_error() const { return trace_.records.back().error; }

  MinimizeResult finish() {
    MinimizeResult res;
    trace_.objective_evals = f_.evaluations() - evals_at_start_;
    res.trace = std::move(trace_);
    res.x = std::move(x_);
    res.tail.assign(tail_.begin(), tail_.end());
    return res;
  }

 private:
  using Clock = std::chrono::steady_clock;

  double elapsed() const { return std::chrono::duration<double>(Clock::now() - t0_).count(); }

  bool stop(StopReason reason, bool converged) {
    trace_.stop_reason = reason;
    trace_.converged = converged;
    return true;
  }

  void push_tail(std::span<const double> x) {
    if (cfg_.keep_iterates == 0) return;
    tail_.emplace_back(x.begin(), x.end());
    while (tail_.size() > cfg_.keep_iterates) tail_.pop_front();
  }

  const Objective& f_;
  const SolverConfig& cfg_;
  std::size_t evals_at_start_;
  Clock::time_point t0_;
  ConvergenceTrace trace_;
  RealVector x_;
  std::deque<RealVector> tail_;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// x += alpha * p, written exactly as the line search forms its trial points
/// so the accepted value is bit-identical to f(x).
inline void advance(RealVector& x, double alpha, std::span<const double> p) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = x[i] + alpha * p[i];
}

inline bool improves(const LineSearchResult& ls, double fx) {
  return ls.status != LineSearchStatus::non_descent && ls.alpha > 0.0 && ls.value < fx;
}

}  // namespace aphen::detail

#endif  // APHEN_SOLVERS_RUN_HPP
