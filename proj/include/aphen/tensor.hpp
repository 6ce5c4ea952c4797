#ifndef APHEN_TENSOR_HPP
#define APHEN_TENSOR_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "aphen/errors.hpp"

namespace aphen {

using RealVector = std::vector<double>;

struct Dims3 {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;

  std::size_t size() const { return i * j * k; }
  friend bool operator==(const Dims3&, const Dims3&) = default;
};

/// Dense row-major matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  DenseMatrix transposed() const;
  RealVector column(std::size_t c) const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);

/// Frobenius norm of a matrix.
double frobenius_norm(const DenseMatrix& m);

/// Real-valued I x J x K tensor.
///
/// Entries are stored with i fastest, then j, then k, so that the storage
/// equals the column-major vectorization of the wide unfolding
/// [X_1 X_2 ... X_K]. All indices are zero-based.
class DenseTensor3 {
 public:
  DenseTensor3() = default;
  /// Zero-filled tensor. Throws ArgumentError on a zero dimension.
  explicit DenseTensor3(Dims3 dims);
  /// Throws LayoutError on a length mismatch and NumericError on a
  /// non-finite entry.
  DenseTensor3(Dims3 dims, std::vector<double> data);

  const Dims3& dims() const { return dims_; }

  double& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[i + dims_.i * (j + dims_.j * k)];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[i + dims_.i * (j + dims_.j * k)];
  }

  std::span<const double> data() const { return data_; }

  friend bool operator==(const DenseTensor3&, const DenseTensor3&) = default;

 private:
  Dims3 dims_;
  std::vector<double> data_;
};

double norm(const DenseTensor3& t);

/// Frontal slice X_k (zero-based k). Throws IndexError when k >= K.
DenseMatrix frontal_slice(const DenseTensor3& t, std::size_t k);

/// Wide unfolding [X_1 X_2 ... X_K], an I x JK matrix.
DenseMatrix unfold_wide(const DenseTensor3& t);

RealVector vec_tensor(const DenseTensor3& t);

/// Inverse of vec_tensor.
DenseTensor3 reshape(std::span<const double> v, Dims3 dims);

DenseMatrix outer(std::span<const double> u, std::span<const double> v);

DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b);

/// Column-wise Kronecker product. Throws DimensionError when the column
/// counts differ.
DenseMatrix khatri_rao(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace aphen

#endif  // APHEN_TENSOR_HPP
