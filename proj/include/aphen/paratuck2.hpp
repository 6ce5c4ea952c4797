#ifndef APHEN_PARATUCK2_HPP
#define APHEN_PARATUCK2_HPP

#include <cstddef>
#include <cstdint>
#include <span>

#include "aphen/tensor.hpp"

namespace aphen {

struct Latent {
  std::size_t p = 0;
  std::size_t q = 0;
  friend bool operator==(const Latent&, const Latent&) = default;
};

/// Paratuck2 model X_k = A * diag(da_k) * H * diag(db_k) * B^T.
///
/// Only the diagonals of the D^A and D^B slices are stored: `da` is K x P
/// (row k holds the diagonal of D^A_k) and `db` is K x Q.
struct Paratuck2Factors {
  DenseMatrix a;   // I x P
  DenseMatrix da;  // K x P
  DenseMatrix h;   // P x Q
  DenseMatrix db;  // K x Q
  DenseMatrix b;   // J x Q

  Dims3 dims() const { return {a.rows(), b.rows(), da.rows()}; }
  Latent latent() const { return {a.cols(), b.cols()}; }

  /// Throws DimensionError when the blocks do not chain.
  void validate() const;

  friend bool operator==(const Paratuck2Factors&, const Paratuck2Factors&) = default;
};

/// Offsets of the factor blocks inside the flat decision vector. Blocks are
/// laid out A, D^A, H, D^B, B, each block row-major (slice-major for the
/// diagonal stacks).
struct ParamLayout {
  Dims3 dims;
  Latent latent;

  std::size_t a_offset() const { return 0; }
  std::size_t da_offset() const { return dims.i * latent.p; }
  std::size_t h_offset() const { return da_offset() + latent.p * dims.k; }
  std::size_t db_offset() const { return h_offset() + latent.p * latent.q; }
  std::size_t b_offset() const { return db_offset() + latent.q * dims.k; }
  std::size_t size() const { return b_offset() + dims.j * latent.q; }

  friend bool operator==(const ParamLayout&, const ParamLayout&) = default;
};

struct ParamVector {
  RealVector data;
  ParamLayout layout;
};

/// Random A, H, B entries uniform on [0,1) drawn in that order from a
/// generator seeded with `seed`; all D^A and D^B diagonals set to one.
Paratuck2Factors init_factors(Dims3 dims, Latent latent, std::uint64_t seed);

DenseTensor3 paratuck2_reconstruct(const Paratuck2Factors& f);

ParamVector flatten(const Paratuck2Factors& f);

/// Throws LayoutError when the data length disagrees with the layout.
Paratuck2Factors unflatten(const ParamVector& x);

/// ||target - reconstruct(unflatten(x))||, the residual norm (not squared).
double objective(const DenseTensor3& target, const ParamVector& x);

/// Allocation-free residual norm evaluator used on the hot path of every
/// solver. Not safe to share across threads (owns scratch space).
class Paratuck2Residual {
 public:
  Paratuck2Residual(const DenseTensor3& target, Latent latent);

  const ParamLayout& layout() const { return layout_; }
  const DenseTensor3& target() const { return *target_; }

  double operator()(std::span<const double> x) const;

 private:
  const DenseTensor3* target_;
  ParamLayout layout_;
  mutable std::vector<double> scaled_;  // I x Q
};

}  // namespace aphen

#endif  // APHEN_PARATUCK2_HPP
