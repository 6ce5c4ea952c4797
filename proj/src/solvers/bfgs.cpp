#include <cmath>

#include "aphen/solvers.hpp"
#include "run.hpp"

namespace aphen {

namespace {

Eigen::Map<const Eigen::VectorXd> view(std::span<const double> v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

}  // namespace

BfgsMatrix::BfgsMatrix(std::size_t n)
    : b_(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))) {}

RealVector BfgsMatrix::direction(std::span<const double> g) {
  Eigen::LLT<Eigen::MatrixXd> llt(b_);
  if (llt.info() != Eigen::Success) {
    b_.setIdentity();
    llt.compute(b_);
  }
  const Eigen::VectorXd p = llt.solve(-view(g));
  return RealVector(p.data(), p.data() + p.size());
}

bool BfgsMatrix::update(std::span<const double> s, std::span<const double> y, double guard) {
  const auto sv = view(s);
  const auto yv = view(y);
  const double ys = yv.dot(sv);
  if (!(ys > guard * yv.norm() * sv.norm())) return false;
  const Eigen::VectorXd bs = b_ * sv;
  const double sbs = sv.dot(bs);
  if (!(sbs > 0.0)) return false;
  b_ += (yv * yv.transpose()) / ys - (bs * bs.transpose()) / sbs;
  // keep exact symmetry against rounding drift
  b_ = 0.5 * (b_ + b_.transpose()).eval();
  return true;
}

MinimizeResult minimize_bfgs(const Objective& f, RealVector x, const SolverConfig& cfg) {
  detail::Run run(f, cfg);
  double fx = f(x);
  if (run.start(x, fx)) return run.finish();
  BfgsMatrix hess(x.size());
  try {
    RealVector g = fd_gradient(f, x, cfg.fd);
    for (;;) {
      RealVector p = hess.direction(g);
      LineSearchResult ls = wolfe_line_search(f, x, p, g, fx, cfg.line_search);
      if (ls.status == LineSearchStatus::non_descent) {
        hess = BfgsMatrix(x.size());
        p = hess.direction(g);
        ls = wolfe_line_search(f, x, p, g, fx, cfg.line_search);
      }
      const bool moved = detail::improves(ls, fx);
      if (moved) {
        detail::advance(x, ls.alpha, p);
        fx = ls.value;
      }
      if (run.step(x, fx, moved)) break;

      RealVector g_next = fd_gradient(f, x, cfg.fd);
      RealVector s(x.size()), y(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        s[i] = ls.alpha * p[i];
        y[i] = g_next[i] - g[i];
      }
      hess.update(s, y, cfg.params.bfgs_curvature_guard);
      g = std::move(g_next);
    }
  } catch (const NumericError&) {
    run.numeric();
  }
  return run.finish();
}

}  // namespace aphen
