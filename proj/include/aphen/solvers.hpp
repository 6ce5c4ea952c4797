#ifndef APHEN_SOLVERS_HPP
#define APHEN_SOLVERS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "aphen/derivatives.hpp"
#include "aphen/line_search.hpp"
#include "aphen/paratuck2.hpp"

namespace aphen {

enum class Scheme { aphen, als, gd, nag, adam, saga, bfgs };

inline constexpr Scheme kAllSchemes[] = {Scheme::aphen, Scheme::als,  Scheme::gd,  Scheme::nag,
                                         Scheme::adam,  Scheme::saga, Scheme::bfgs};

std::string_view scheme_name(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);

enum class StopReason { tolerance, max_iters, numeric };

std::string_view stop_reason_name(StopReason r);

struct TraceRecord {
  std::size_t iter = 0;
  double elapsed = 0.0;  // seconds since the solve started
  double error = 0.0;
};

struct ConvergenceTrace {
  std::vector<TraceRecord> records;  // record 0 is the initial point
  std::size_t objective_evals = 0;
  bool converged = false;
  StopReason stop_reason = StopReason::max_iters;

  double final_error() const { return records.back().error; }
  std::size_t iterations() const { return records.back().iter; }
};

struct SchemeParams {
  // APHEN: inner CG iteration cap (0 means the problem dimension) and an
  // absolute residual tolerance overriding the inexact-Newton forcing term
  // 0.5 * min(1, sqrt(|g|)) * |g|.
  std::size_t cg_max_iters = 0;
  std::optional<double> cg_tol;

  // ALS: floor added to every multiplicative-update denominator.
  double als_floor = 1e-12;

  double nag_gamma = 0.9;
  double nag_eta = 0.001;

  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  double adam_eta = 0.001;
  // Standard (1 - beta^n) bias correction instead of the constant one.
  bool adam_power_bias = false;

  // BFGS: skip the update when y^T s <= guard * |y| |s|.
  double bfgs_curvature_guard = 1e-10;
};

struct SolverConfig {
  std::size_t max_iters = 1000;
  double rel_tol = 1e-6;
  // An iterate whose objective is at or below this value stops the run as
  // converged; the relative-change test is undefined at a zero residual.
  double abs_tol = 1e-10;
  FDConfig fd;
  std::uint64_t seed = 0;
  SchemeParams params;
  WolfeConfig line_search;
  std::size_t keep_iterates = 4;
};

/// Outcome of a run over a generic objective.
struct MinimizeResult {
  RealVector x;
  ConvergenceTrace trace;
  // Last `keep_iterates` distinct iterates, oldest first.
  std::vector<RealVector> tail;
};

struct SolveResult {
  Paratuck2Factors factors;
  ConvergenceTrace trace;
  std::vector<RealVector> tail;
};

// Gradient-based schemes over an arbitrary objective. Gradients are always
// the fourth-order finite-difference approximation.
MinimizeResult minimize_aphen(const Objective& f, RealVector x0, const SolverConfig& cfg);
MinimizeResult minimize_gd(const Objective& f, RealVector x0, const SolverConfig& cfg);
MinimizeResult minimize_nag(const Objective& f, RealVector x0, const SolverConfig& cfg);
MinimizeResult minimize_adam(const Objective& f, RealVector x0, const SolverConfig& cfg);
MinimizeResult minimize_saga(const Objective& f, RealVector x0, const SolverConfig& cfg);
MinimizeResult minimize_bfgs(const Objective& f, RealVector x0, const SolverConfig& cfg);

/// Dense BFGS Hessian approximation, B_0 = I.
class BfgsMatrix {
 public:
  explicit BfgsMatrix(std::size_t n);

  /// Solves B p = -g. Resets B to the identity if it lost definiteness.
  RealVector direction(std::span<const double> g);

  /// Rank-two update with s = x_{n+1} - x_n, y = g_{n+1} - g_n. Returns
  /// false and leaves B untouched when the curvature guard rejects the pair.
  bool update(std::span<const double> s, std::span<const double> y, double guard = 1e-10);

  const Eigen::MatrixXd& matrix() const { return b_; }

 private:
  Eigen::MatrixXd b_;
};

/// Runs the requested scheme on the Paratuck2 fit of `target` starting from
/// `start`. Non-negative ALS requires a non-negative target.
SolveResult solve_from(Scheme scheme, const DenseTensor3& target, const Paratuck2Factors& start,
                       const SolverConfig& cfg);

/// Same, starting from init_factors(target dims, latent, cfg.seed).
SolveResult solve(Scheme scheme, const DenseTensor3& target, Latent latent,
                  const SolverConfig& cfg);

SolveResult solve_aphen(const DenseTensor3& target, Latent latent, const SolverConfig& cfg);
SolveResult solve_als(const DenseTensor3& target, Latent latent, const SolverConfig& cfg);
SolveResult solve_gd(const DenseTensor3& target, Latent latent, const SolverConfig& cfg);
SolveResult solve_nag(const DenseTensor3& target, Latent latent, const SolverConfig& cfg);
SolveResult solve_adam(const DenseTensor3& target, Latent latent, const SolverConfig& cfg);
SolveResult solve_saga(const DenseTensor3& target, Latent latent, const SolverConfig& cfg);
SolveResult solve_bfgs(const DenseTensor3& target, Latent latent, const SolverConfig& cfg);

/// Multiplicative non-negative ALS sweeps on explicit factors.
SolveResult als_from(const DenseTensor3& target, Paratuck2Factors start, const SolverConfig& cfg);

/// One A, D^A, H, D^B, B sweep of the multiplicative updates, in place.
void als_sweep(const DenseTensor3& target, Paratuck2Factors& f, double floor);

}  // namespace aphen

#endif  // APHEN_SOLVERS_HPP
