// Approximate-Hessian Newton-CG. Gradients come from the fourth-order
// stencil and the CG inner loop only ever sees Hessian-vector products
// obtained by differencing those gradients.

#include <algorithm>
#include <cmath>

#include "aphen/solvers.hpp"
#include "run.hpp"

namespace aphen {

namespace {

// Truncated CG on H p = -g. Stops on the residual tolerance, the iteration
// cap, or a direction of non-positive curvature.
RealVector newton_direction(const Objective& f, std::span<const double> x,
                            std::span<const double> g, double tol, std::size_t max_iters,
                            const FDConfig& fd) {
  const std::size_t n = x.size();
  RealVector p(n, 0.0);
  RealVector r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = -g[i];
  RealVector d = r;
  RealVector unit(n);
  double rr = detail::dot(r, r);

  for (std::size_t j = 0; j < max_iters; ++j) {
    const double dn = std::sqrt(detail::dot(d, d));
    if (dn == 0.0) break;
    // The product is linear in d, so difference along the unit vector to
    // keep the perturbation at length eta.
    for (std::size_t i = 0; i < n; ++i) unit[i] = d[i] / dn;
    RealVector hd = hessian_vec_product(f, x, unit, g, fd);
    for (double& v : hd) v *= dn;

    const double curv = detail::dot(d, hd);
    if (!(curv > 0.0)) {
      if (j == 0) p = r;
      break;
    }
    const double step = rr / curv;
    for (std::size_t i = 0; i < n; ++i) {
      p[i] += step * d[i];
      r[i] -= step * hd[i];
    }
    const double rr_next = detail::dot(r, r);
    if (std::sqrt(rr_next) <= tol) break;
    const double beta = rr_next / rr;
    for (std::size_t i = 0; i < n; ++i) d[i] = r[i] + beta * d[i];
    rr = rr_next;
  }
  return p;
}

}  // namespace

MinimizeResult minimize_aphen(const Objective& f, RealVector x, const SolverConfig& cfg) {
  detail::Run run(f, cfg);
  double fx = f(x);
  if (run.start(x, fx)) return run.finish();
  const std::size_t cg_cap = cfg.params.cg_max_iters ? cfg.params.cg_max_iters : x.size();
  try {
    for (;;) {
      const RealVector g = fd_gradient(f, x, cfg.fd);
      const double gn = detail::norm2(g);
      const double tol = cfg.params.cg_tol.value_or(0.5 * std::min(1.0, std::sqrt(gn)) * gn);

      RealVector p = newton_direction(f, x, g, tol, cg_cap, cfg.fd);
      LineSearchResult ls = wolfe_line_search(f, x, p, g, fx, cfg.line_search);
      if (ls.status == LineSearchStatus::non_descent || !detail::improves(ls, fx)) {
        // fall back to steepest descent
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = -g[i];
        ls = wolfe_line_search(f, x, p, g, fx, cfg.line_search);
      }
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
