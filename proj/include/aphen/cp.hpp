#ifndef APHEN_CP_HPP
#define APHEN_CP_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "aphen/tensor.hpp"

namespace aphen {

/// Rank-R CP model, one I_n x R factor matrix per mode.
struct CPFactors {
  std::vector<DenseMatrix> factors;
  std::size_t rank = 0;
};

/// x_ijk = sum_r a_ir b_jr c_kr. Only third-order models are supported;
/// anything else throws UnsupportedOrderError.
DenseTensor3 cp_reconstruct(const CPFactors& f);

enum class CpInit { random, nvecs };

struct CpAlsOptions {
  std::size_t max_iters = 200000;
  double rel_tol = 1e-6;
  double abs_tol = 1e-10;
  std::uint64_t seed = 0;
  CpInit init = CpInit::random;
  bool extrapolate = true;
};

struct CpAlsResult {
  CPFactors factors;
  std::vector<double> errors;  // residual norm after each sweep, entry 0 at init
  bool converged = false;
};

/// Unconstrained CP-ALS baseline. Each sweep solves the normal equations for
/// one factor at a time (pseudo-inverse of the Hadamard product of Gram
/// matrices), then tries an extrapolated step along the sweep displacement
/// when `extrapolate` is set. Stops once the relative change of the residual
/// norm drops below `rel_tol`.
CpAlsResult cp_als(const DenseTensor3& target, std::size_t rank, const CpAlsOptions& opts = {});

}  // namespace aphen

#endif  // APHEN_CP_HPP
