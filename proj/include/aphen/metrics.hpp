#ifndef APHEN_METRICS_HPP
#define APHEN_METRICS_HPP

#include <cstddef>
#include <span>

#include "aphen/solvers.hpp"
#include "aphen/tensor.hpp"

namespace aphen {

/// 100 * (1 - ln|X - Xhat| / ln|X|) when the residual norm exceeds one,
/// otherwise exactly 100. Throws DomainError when |X| <= 1.
double accuracy(const DenseTensor3& target, const DenseTensor3& approx);
double accuracy_from_norms(double target_norm, double residual_norm);

enum class SpeedMode { iteration_based, time_based };
enum class Ordinate { log10, raw };

/// Absolute slope of the least-squares line through (x, y) where x is the
/// iteration index or elapsed seconds and y is log10(error) (or the raw
/// error). Uses every record of the trace. Throws MetricError for fewer
/// than two records or non-positive errors.
double convergence_speed(const ConvergenceTrace& trace, SpeedMode mode,
                         Ordinate ordinate = Ordinate::log10);

/// Empirical order of convergence
///   q = log(d_{n+1} / d_n) / log(d_n / d_{n-1}),  d_m = |x_m - x_{m-1}|,
/// using x_{n-2} .. x_{n+1}. Throws MetricError when a difference vanishes
/// or the denominator log is zero.
double convergence_rate_q(std::span<const double> sequence, std::size_t n);
double convergence_rate_q(std::span<const RealVector> iterates, std::size_t n);

}  // namespace aphen

#endif  // APHEN_METRICS_HPP
