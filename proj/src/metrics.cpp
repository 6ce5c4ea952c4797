#include "aphen/metrics.hpp"

#include <cmath>
#include <string>

namespace aphen {

double accuracy_from_norms(double target_norm, double residual_norm) {
  if (!(target_norm > 1.0))
    throw DomainError("accuracy is undefined for a target norm <= 1 (got " +
                      std::to_string(target_norm) + ")");
  if (residual_norm <= 1.0) return 100.0;
  return 100.0 * (1.0 - std::log(residual_norm) / std::log(target_norm));
}

double accuracy(const DenseTensor3& target, const DenseTensor3& approx) {
  if (!(target.dims() == approx.dims()))
    throw DimensionError("accuracy needs tensors of identical dimensions");
  double s = 0.0;
  for (std::size_t n = 0; n < target.data().size(); ++n) {
    const double r = target.data()[n] - approx.data()[n];
    s += r * r;
  }
  return accuracy_from_norms(norm(target), std::sqrt(s));
}

double convergence_speed(const ConvergenceTrace& trace, SpeedMode mode, Ordinate ordinate) {
  const auto& rec = trace.records;
  if (rec.size() < 2) throw MetricError("convergence speed needs at least two trace records");
  const double n = static_cast<double>(rec.size());
  double mx = 0.0, my = 0.0;
  for (const auto& r : rec) {
    if (!(r.error > 0.0) || !std::isfinite(r.error))
      throw MetricError("convergence speed needs finite positive errors");
    mx += mode == SpeedMode::iteration_based ? static_cast<double>(r.iter) : r.elapsed;
    my += ordinate == Ordinate::log10 ? std::log10(r.error) : r.error;
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& r : rec) {
    const double dx =
        (mode == SpeedMode::iteration_based ? static_cast<double>(r.iter) : r.elapsed) - mx;
    const double dy = (ordinate == Ordinate::log10 ? std::log10(r.error) : r.error) - my;
    sxy += dx * dy;
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw MetricError("convergence speed abscissa has zero spread");
  return std::abs(sxy / sxx);
}

namespace {

double rate_from_differences(double d_prev, double d_mid, double d_next) {
  if (d_prev == 0.0 || d_mid == 0.0 || d_next == 0.0)
    throw MetricError("convergence rate undefined: repeated iterate");
  const double den = std::log(d_mid / d_prev);
  if (den == 0.0) throw MetricError("convergence rate undefined: stalled differences");
  return std::log(d_next / d_mid) / den;
}

}  // namespace

double convergence_rate_q(std::span<const double> s, std::size_t n) {
  if (n < 2 || n + 1 >= s.size())
    throw MetricError("convergence rate needs iterates n-2 .. n+1");
  return rate_from_differences(std::abs(s[n - 1] - s[n - 2]), std::abs(s[n] - s[n - 1]),
                               std::abs(s[n + 1] - s[n]));
}

double convergence_rate_q(std::span<const RealVector> it, std::size_t n) {
  if (n < 2 || n + 1 >= it.size())
    throw MetricError("convergence rate needs iterates n-2 .. n+1");
  auto dist = [&](std::size_t a, std::size_t b) {
    if (it[a].size() != it[b].size()) throw DimensionError("iterates differ in length");
    double s = 0.0;
    for (std::size_t i = 0; i < it[a].size(); ++i) {
      const double d = it[a][i] - it[b][i];
      s += d * d;
    }
    return std::sqrt(s);
  };
  return rate_from_differences(dist(n - 1, n - 2), dist(n, n - 1), dist(n + 1, n));
}

}  // namespace aphen
