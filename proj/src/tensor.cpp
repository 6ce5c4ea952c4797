#include "aphen/tensor.hpp"

#include <cmath>
#include <string>

namespace aphen {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw LayoutError("matrix data length " + std::to_string(data_.size()) +
                      " does not match " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged matrix initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RealVector DenseMatrix::column(std::size_t c) const {
  if (c >= cols_) throw IndexError("column index out of range");
  RealVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matrix product " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const double aip = a(i, p);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aip * b(p, j);
    }
  return c;
}

double frobenius_norm(const DenseMatrix& m) {
  double s = 0.0;
  for (double v : m.data()) s += v * v;
  return std::sqrt(s);
}

DenseTensor3::DenseTensor3(Dims3 dims) : dims_(dims), data_(dims.size(), 0.0) {
  if (dims.i == 0 || dims.j == 0 || dims.k == 0)
    throw ArgumentError("tensor dimensions must be positive");
}

DenseTensor3::DenseTensor3(Dims3 dims, std::vector<double> data)
    : dims_(dims), data_(std::move(data)) {
  if (dims.i == 0 || dims.j == 0 || dims.k == 0)
    throw ArgumentError("tensor dimensions must be positive");
  if (data_.size() != dims.size()) {
    throw LayoutError("tensor data length " + std::to_string(data_.size()) +
                      " does not match I*J*K = " + std::to_string(dims.size()));
  }
  for (std::size_t n = 0; n < data_.size(); ++n) {
    if (!std::isfinite(data_[n]))
      throw NumericError("non-finite tensor entry at linear index " + std::to_string(n));
  }
}

double norm(const DenseTensor3& t) {
  double s = 0.0;
  for (double v : t.data()) s += v * v;
  return std::sqrt(s);
}

DenseMatrix frontal_slice(const DenseTensor3& t, std::size_t k) {
  const auto& d = t.dims();
  if (k >= d.k) {
    throw IndexError("frontal slice " + std::to_string(k) + " out of range for K = " +
                     std::to_string(d.k));
  }
  DenseMatrix s(d.i, d.j);
  for (std::size_t i = 0; i < d.i; ++i)
    for (std::size_t j = 0; j < d.j; ++j) s(i, j) = t(i, j, k);
  return s;
}

DenseMatrix unfold_wide(const DenseTensor3& t) {
  const auto& d = t.dims();
  DenseMatrix w(d.i, d.j * d.k);
  for (std::size_t k = 0; k < d.k; ++k)
    for (std::size_t j = 0; j < d.j; ++j)
      for (std::size_t i = 0; i < d.i; ++i) w(i, j + d.j * k) = t(i, j, k);
  return w;
}

RealVector vec_tensor(const DenseTensor3& t) {
  return RealVector(t.data().begin(), t.data().end());
}

DenseTensor3 reshape(std::span<const double> v, Dims3 dims) {
  return DenseTensor3(dims, std::vector<double>(v.begin(), v.end()));
}

DenseMatrix outer(std::span<const double> u, std::span<const double> v) {
  if (u.empty() || v.empty()) throw ArgumentError("outer product of an empty vector");
  DenseMatrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
  return m;
}

DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return c;
}

DenseMatrix khatri_rao(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.cols()) {
    throw DimensionError("Khatri-Rao product needs equal column counts, got " +
                         std::to_string(a.cols()) + " and " + std::to_string(b.cols()));
  }
  DenseMatrix c(a.rows() * b.rows(), a.cols());
  for (std::size_t r = 0; r < a.cols(); ++r)
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < b.rows(); ++k) c(i * b.rows() + k, r) = a(i, r) * b(k, r);
  return c;
}

}  // namespace aphen
