#ifndef APHEN_DERIVATIVES_HPP
#define APHEN_DERIVATIVES_HPP

#include <cstddef>
#include <functional>
#include <span>

#include "aphen/tensor.hpp"

namespace aphen {

/// Scalar objective over a flat parameter vector. Every evaluation is
/// counted so solvers can report their cost independently of wall time.
class Objective {
 public:
  using Function = std::function<double(std::span<const double>)>;

  explicit Objective(Function fn) : fn_(std::move(fn)) {}

  double operator()(std::span<const double> x) const {
    ++evaluations_;
    return fn_(x);
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  Function fn_;
  mutable std::size_t evaluations_ = 0;
};

struct FDConfig {
  double eta = 1e-4;  // perturbation used by both the gradient and the HVP
};

/// Fourth-order central difference gradient,
///   g_i = (2 f(x - 2h e_i) - 16 f(x - h e_i) + 16 f(x + h e_i) - 2 f(x + 2h e_i)) / (4! h),
/// with h = cfg.eta. Costs 4 * x.size() objective evaluations. Throws
/// NumericError naming the coordinate when a stencil value is not finite.
RealVector fd_gradient(const Objective& f, std::span<const double> x, const FDConfig& cfg = {});

/// Hessian-vector product by forward differencing the gradient:
///   H p ~ (grad f(x + eta p) - grad f(x)) / eta.
RealVector hessian_vec_product(const Objective& f, std::span<const double> x,
                               std::span<const double> p, const FDConfig& cfg = {});

/// Same as above with grad f(x) already known, saving one gradient.
RealVector hessian_vec_product(const Objective& f, std::span<const double> x,
                               std::span<const double> p, std::span<const double> grad_at_x,
                               const FDConfig& cfg = {});

}  // namespace aphen

#endif  // APHEN_DERIVATIVES_HPP
