#include "aphen/paratuck2.hpp"

#include <cmath>
#include <string>

#include "aphen/random.hpp"

namespace aphen {

namespace {

DenseMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  DenseMatrix m(rows, cols);
  for (double& v : m.data()) v = rng.uniform();
  return m;
}

DenseMatrix block(std::span<const double> x, std::size_t offset, std::size_t rows,
                  std::size_t cols) {
  auto first = x.begin() + static_cast<std::ptrdiff_t>(offset);
  return DenseMatrix(rows, cols, std::vector<double>(first, first + static_cast<std::ptrdiff_t>(rows * cols)));
}

}  // namespace

void Paratuck2Factors::validate() const {
  const std::size_t p = a.cols();
  const std::size_t q = b.cols();
  const std::size_t k = da.rows();
  if (h.rows() != p || h.cols() != q || da.cols() != p || db.cols() != q || db.rows() != k) {
    throw DimensionError("Paratuck2 factor blocks do not chain: A " + std::to_string(a.rows()) +
                         "x" + std::to_string(p) + ", H " + std::to_string(h.rows()) + "x" +
                         std::to_string(h.cols()) + ", B " + std::to_string(b.rows()) + "x" +
                         std::to_string(q));
  }
}

Paratuck2Factors init_factors(Dims3 dims, Latent latent, std::uint64_t seed) {
  if (dims.i == 0 || dims.j == 0 || dims.k == 0 || latent.p == 0 || latent.q == 0)
    throw ArgumentError("dimensions and latent factors must be positive");
  Rng rng(seed);
  Paratuck2Factors f;
  f.a = random_matrix(dims.i, latent.p, rng);
  f.h = random_matrix(latent.p, latent.q, rng);
  f.b = random_matrix(dims.j, latent.q, rng);
  f.da = DenseMatrix(dims.k, latent.p, 1.0);
  f.db = DenseMatrix(dims.k, latent.q, 1.0);
  return f;
}

DenseTensor3 paratuck2_reconstruct(const Paratuck2Factors& f) {
  f.validate();
  const Dims3 d = f.dims();
  const Latent l = f.latent();
  DenseTensor3 out(d);
  DenseMatrix m(d.i, l.q);
  for (std::size_t k = 0; k < d.k; ++k) {
    // m = A * diag(da_k) * H * diag(db_k)
    for (std::size_t i = 0; i < d.i; ++i)
      for (std::size_t q = 0; q < l.q; ++q) {
        double s = 0.0;
        for (std::size_t p = 0; p < l.p; ++p) s += f.a(i, p) * f.da(k, p) * f.h(p, q);
        m(i, q) = s * f.db(k, q);
      }
    for (std::size_t j = 0; j < d.j; ++j)
      for (std::size_t i = 0; i < d.i; ++i) {
        double s = 0.0;
        for (std::size_t q = 0; q < l.q; ++q) s += m(i, q) * f.b(j, q);
        out(i, j, k) = s;
      }
  }
  return out;
}

ParamVector flatten(const Paratuck2Factors& f) {
  f.validate();
  ParamVector x{{}, ParamLayout{f.dims(), f.latent()}};
  x.data.reserve(x.layout.size());
  for (const DenseMatrix* m : {&f.a, &f.da, &f.h, &f.db, &f.b})
    x.data.insert(x.data.end(), m->data().begin(), m->data().end());
  return x;
}

Paratuck2Factors unflatten(const ParamVector& x) {
  const ParamLayout& l = x.layout;
  if (x.data.size() != l.size()) {
    throw LayoutError("parameter vector has length " + std::to_string(x.data.size()) +
                      ", layout expects " + std::to_string(l.size()));
  }
  const std::span<const double> v(x.data);
  Paratuck2Factors f;
  f.a = block(v, l.a_offset(), l.dims.i, l.latent.p);
  f.da = block(v, l.da_offset(), l.dims.k, l.latent.p);
  f.h = block(v, l.h_offset(), l.latent.p, l.latent.q);
  f.db = block(v, l.db_offset(), l.dims.k, l.latent.q);
  f.b = block(v, l.b_offset(), l.dims.j, l.latent.q);
  return f;
}

double objective(const DenseTensor3& target, const ParamVector& x) {
  if (!(x.layout.dims == target.dims()))
    throw LayoutError("parameter layout dimensions do not match the target tensor");
  if (x.data.size() != x.layout.size())
    throw LayoutError("parameter vector length does not match its layout");
  return Paratuck2Residual(target, x.layout.latent)(x.data);
}

Paratuck2Residual::Paratuck2Residual(const DenseTensor3& target, Latent latent)
    : target_(&target), layout_{target.dims(), latent}, scaled_(target.dims().i * latent.q) {
  if (latent.p == 0 || latent.q == 0) throw ArgumentError("latent factors must be positive");
}

double Paratuck2Residual::operator()(std::span<const double> x) const {
  if (x.size() != layout_.size()) throw LayoutError("parameter vector length does not match");
  const std::size_t ni = layout_.dims.i, nj = layout_.dims.j, nk = layout_.dims.k;
  const std::size_t np = layout_.latent.p, nq = layout_.latent.q;
  const double* a = x.data() + layout_.a_offset();
  const double* da = x.data() + layout_.da_offset();
  const double* h = x.data() + layout_.h_offset();
  const double* db = x.data() + layout_.db_offset();
  const double* b = x.data() + layout_.b_offset();
  const double* t = target_->data().data();
  double* m = scaled_.data();

  double sum = 0.0;
  for (std::size_t k = 0; k < nk; ++k) {
    const double* dak = da + k * np;
    const double* dbk = db + k * nq;
    for (std::size_t i = 0; i < ni; ++i) {
      double* mi = m + i * nq;
      for (std::size_t q = 0; q < nq; ++q) mi[q] = 0.0;
      for (std::size_t p = 0; p < np; ++p) {
        const double s = a[i * np + p] * dak[p];
        const double* hp = h + p * nq;
        for (std::size_t q = 0; q < nq; ++q) mi[q] += s * hp[q];
      }
      for (std::size_t q = 0; q < nq; ++q) mi[q] *= dbk[q];
    }
    const double* tk = t + k * ni * nj;
    for (std::size_t j = 0; j < nj; ++j) {
      const double* bj = b + j * nq;
      for (std::size_t i = 0; i < ni; ++i) {
        const double* mi = m + i * nq;
        double s = 0.0;
        for (std::size_t q = 0; q < nq; ++q) s += mi[q] * bj[q];
        const double r = tk[i + ni * j] - s;
        sum += r * r;
      }
    }
  }
  return std::sqrt(sum);
}

}  // namespace aphen
