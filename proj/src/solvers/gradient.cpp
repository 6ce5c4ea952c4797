// First-order schemes: gradient descent, Nesterov, Adam and SAGA.

#include <cmath>

#include "aphen/solvers.hpp"
#include "run.hpp"

namespace aphen {

using detail::Run;

MinimizeResult minimize_gd(const Objective& f, RealVector x, const SolverConfig& cfg) {
  Run run(f, cfg);
  double fx = f(x);
  if (run.start(x, fx)) return run.finish();
  try {
    for (;;) {
      const RealVector g = fd_gradient(f, x, cfg.fd);
      RealVector p(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) p[i] = -g[i];
      const LineSearchResult ls = wolfe_line_search(f, x, p, g, fx, cfg.line_search);
      const bool moved = detail::improves(ls, fx);
      if (moved) {
        detail::advance(x, ls.alpha, p);
        fx = ls.value;
      }
      if (run.step(x, fx, moved)) break;
    }
  } catch (const NumericError&) {
    run.numeric();
  }
  return run.finish();
}

MinimizeResult minimize_nag(const Objective& f, RealVector x, const SolverConfig& cfg) {
  const double gamma = cfg.params.nag_gamma;
  const double eta = cfg.params.nag_eta;
  Run run(f, cfg);
  double fx = f(x);
  if (run.start(x, fx)) return run.finish();
  RealVector v(x.size(), 0.0);
  RealVector lookahead(x.size());
  try {
    for (;;) {
      for (std::size_t i = 0; i < x.size(); ++i) lookahead[i] = x[i] - gamma * v[i];
      const RealVector g = fd_gradient(f, lookahead, cfg.fd);
      bool moved = false;
      for (std::size_t i = 0; i < x.size(); ++i) {
        v[i] = gamma * v[i] + eta * g[i];
        x[i] = x[i] - v[i];
        moved = moved || v[i] != 0.0;
      }
      fx = f(x);
      if (run.step(x, fx, moved)) break;
    }
  } catch (const NumericError&) {
    run.numeric();
  }
  return run.finish();
}

MinimizeResult minimize_adam(const Objective& f, RealVector x, const SolverConfig& cfg) {
  const auto& prm = cfg.params;
  Run run(f, cfg);
  double fx = f(x);
  if (run.start(x, fx)) return run.finish();
  RealVector m(x.size(), 0.0);
  RealVector v(x.size(), 0.0);
  double b1_pow = 1.0;
  double b2_pow = 1.0;
  try {
    for (;;) {
      const RealVector g = fd_gradient(f, x, cfg.fd);
      b1_pow *= prm.adam_beta1;
      b2_pow *= prm.adam_beta2;
      const double c1 = prm.adam_power_bias ? 1.0 - b1_pow : 1.0 - prm.adam_beta1;
      const double c2 = prm.adam_power_bias ? 1.0 - b2_pow : 1.0 - prm.adam_beta2;
      bool moved = false;
      for (std::size_t i = 0; i < x.size(); ++i) {
        m[i] = prm.adam_beta1 * m[i] + (1.0 - prm.adam_beta1) * g[i];
        v[i] = prm.adam_beta2 * v[i] + (1.0 - prm.adam_beta2) * (g[i] * g[i]);
        const double m_hat = m[i] / c1;
        const double v_hat = v[i] / c2;
        const double delta = prm.adam_eta / (std::sqrt(v_hat) + prm.adam_eps) * m_hat;
        x[i] = x[i] - delta;
        moved = moved || delta != 0.0;
      }
      fx = f(x);
      if (run.step(x, fx, moved)) break;
    }
  } catch (const NumericError&) {
    run.numeric();
  }
  return run.finish();
}

MinimizeResult minimize_saga(const Objective& f, RealVector x, const SolverConfig& cfg) {
  Run run(f, cfg);
  double fx = f(x);
  if (run.start(x, fx)) return run.finish();
  const std::size_t n = x.size();
  RealVector sum(n, 0.0);  // running sum of all past gradients
  RealVector prev(n, 0.0);
  std::size_t count = 0;
  RealVector p(n);
  try {
    for (;;) {
      const RealVector g = fd_gradient(f, x, cfg.fd);
      for (std::size_t i = 0; i < n; ++i) {
        const double d = count == 0 ? g[i] : g[i] - prev[i] + sum[i] / static_cast<double>(count);
        p[i] = -d;
      }
      for (std::size_t i = 0; i < n; ++i) sum[i] += g[i];
      prev = g;
      ++count;

      // A non-descent update direction admits no Wolfe step; the iterate
      // stays put for this pass.
      const LineSearchResult ls = wolfe_line_search(f, x, p, g, fx, cfg.line_search);
      const bool moved = detail::improves(ls, fx);
      if (moved) {
        detail::advance(x, ls.alpha, p);
        fx = ls.value;
      }
      if (run.step(x, fx, moved)) break;
    }
  } catch (const NumericError&) {
    run.numeric();
  }
  return run.finish();
}

}  // namespace aphen
