#ifndef APHEN_LINE_SEARCH_HPP
#define APHEN_LINE_SEARCH_HPP

#include <span>

#include "aphen/derivatives.hpp"

namespace aphen {

enum class WolfeVariant { weak, strong };

struct WolfeConfig {
  double c1 = 1e-4;
  double c2 = 0.9;
  WolfeVariant variant = WolfeVariant::weak;
  int max_trials = 25;  // objective evaluations at trial steps
  double initial_step = 1.0;
  FDConfig fd;  // directional derivatives use the same 4-point stencil
};

enum class LineSearchStatus {
  accepted,     // both Wolfe conditions hold at alpha
  degraded,     // trial cap reached; alpha is the best point found
  non_descent,  // grad^T p >= 0, no search performed
};

struct LineSearchResult {
  double alpha = 0.0;
  double value = 0.0;  // f(x + alpha p)
  LineSearchStatus status = LineSearchStatus::accepted;
  int trials = 0;
  bool sufficient_decrease = false;
};

/// Bracketing-and-zoom Wolfe line search along p from x.
///
/// On a degraded exit `alpha` is the lowest-valued trial satisfying the
/// sufficient decrease condition, or the smallest trial step when none does.
LineSearchResult wolfe_line_search(const Objective& f, std::span<const double> x,
                                   std::span<const double> p, std::span<const double> grad,
                                   double fx, const WolfeConfig& cfg = {});

LineSearchResult wolfe_line_search(const Objective& f, std::span<const double> x,
                                   std::span<const double> p, std::span<const double> grad,
                                   const WolfeConfig& cfg = {});

}  // namespace aphen

#endif  // APHEN_LINE_SEARCH_HPP
