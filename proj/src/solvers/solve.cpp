#include <memory>

#include "aphen/solvers.hpp"

namespace aphen {

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::aphen: return "aphen";
    case Scheme::als: return "als";
    case Scheme::gd: return "gd";
    case Scheme::nag: return "nag";
    case Scheme::adam: return "adam";
    case Scheme::saga: return "saga";
    case Scheme::bfgs: return "bfgs";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : kAllSchemes)
    if (scheme_name(s) == name) return s;
  return std::nullopt;
}

std::string_view stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::tolerance: return "tolerance";
    case StopReason::max_iters: return "max_iters";
    case StopReason::numeric: return "numeric";
  }
  return "unknown";
}

SolveResult solve_from(Scheme scheme, const DenseTensor3& target, const Paratuck2Factors& start,
                       const SolverConfig& cfg) {
  if (scheme == Scheme::als) return als_from(target, start, cfg);

  start.validate();
  if (!(start.dims() == target.dims()))
    throw DimensionError("starting factors do not match the target dimensions");
  auto residual = std::make_shared<Paratuck2Residual>(target, start.latent());
  const Objective f([residual](std::span<const double> x) { return (*residual)(x); });
  ParamVector x0 = flatten(start);

  MinimizeResult run;
  switch (scheme) {
    case Scheme::aphen: run = minimize_aphen(f, std::move(x0.data), cfg); break;
    case Scheme::gd: run = minimize_gd(f, std::move(x0.data), cfg); break;
    case Scheme::nag: run = minimize_nag(f, std::move(x0.data), cfg); break;
    case Scheme::adam: run = minimize_adam(f, std::move(x0.data), cfg); break;
    case Scheme::saga: run = minimize_saga(f, std::move(x0.data), cfg); break;
    case Scheme::bfgs: run = minimize_bfgs(f, std::move(x0.data), cfg); break;
    case Scheme::als: break;
  }
  SolveResult res;
  res.factors = unflatten(ParamVector{std::move(run.x), x0.layout});
  res.trace = std::move(run.trace);
  res.tail = std::move(run.tail);
  return res;
}

SolveResult solve(Scheme scheme, const DenseTensor3& target, Latent latent,
                  const SolverConfig& cfg) {
  return solve_from(scheme, target, init_factors(target.dims(), latent, cfg.seed), cfg);
}

SolveResult solve_aphen(const DenseTensor3& t, Latent l, const SolverConfig& c) {
  return solve(Scheme::aphen, t, l, c);
}
SolveResult solve_als(const DenseTensor3& t, Latent l, const SolverConfig& c) {
  return solve(Scheme::als, t, l, c);
}
SolveResult solve_gd(const DenseTensor3& t, Latent l, const SolverConfig& c) {
  return solve(Scheme::gd, t, l, c);
}
SolveResult solve_nag(const DenseTensor3& t, Latent l, const SolverConfig& c) {
  return solve(Scheme::nag, t, l, c);
}
SolveResult solve_adam(const DenseTensor3& t, Latent l, const SolverConfig& c) {
  return solve(Scheme::adam, t, l, c);
}
SolveResult solve_saga(const DenseTensor3& t, Latent l, const SolverConfig& c) {
  return solve(Scheme::saga, t, l, c);
}
SolveResult solve_bfgs(const DenseTensor3& t, Latent l, const SolverConfig& c) {
  return solve(Scheme::bfgs, t, l, c);
}

}  // namespace aphen
