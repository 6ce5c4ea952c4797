#include "aphen/derivatives.hpp"

#include <cmath>
#include <string>

namespace aphen {

RealVector fd_gradient(const Objective& f, std::span<const double> x, const FDConfig& cfg) {
  if (!(cfg.eta > 0.0)) throw ArgumentError("finite-difference eta must be positive");
  const double h = cfg.eta;
  RealVector work(x.begin(), x.end());
  RealVector grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    auto at = [&](double offset) {
      work[i] = xi + offset;
      const double v = f(work);
      if (!std::isfinite(v))
        throw NumericError("non-finite objective in gradient stencil at coordinate " +
                           std::to_string(i));
      return v;
    };
    const double m2 = at(-2.0 * h);
    const double m1 = at(-h);
    const double p1 = at(h);
    const double p2 = at(2.0 * h);
    work[i] = xi;
    grad[i] = (2.0 * m2 - 16.0 * m1 + 16.0 * p1 - 2.0 * p2) / (24.0 * h);
  }
  return grad;
}

RealVector hessian_vec_product(const Objective& f, std::span<const double> x,
                               std::span<const double> p, const FDConfig& cfg) {
  const RealVector g = fd_gradient(f, x, cfg);
  return hessian_vec_product(f, x, p, g, cfg);
}

RealVector hessian_vec_product(const Objective& f, std::span<const double> x,
                               std::span<const double> p, std::span<const double> grad_at_x,
                               const FDConfig& cfg) {
  if (p.size() != x.size() || grad_at_x.size() != x.size())
    throw DimensionError("Hessian-vector product operands differ in length");
  const double eta = cfg.eta;
  RealVector shifted(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(p[i])) throw NumericError("non-finite direction in Hessian-vector product");
    shifted[i] = x[i] + eta * p[i];
  }
  RealVector hp = fd_gradient(f, shifted, cfg);
  for (std::size_t i = 0; i < x.size(); ++i) hp[i] = (hp[i] - grad_at_x[i]) / eta;
  return hp;
}

}  // namespace aphen
