#include "aphen/cp.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "aphen/random.hpp"

namespace aphen {

namespace {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

DenseMatrix from_eigen(const Mat& m) {
  return DenseMatrix(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()),
                     std::vector<double>(m.data(), m.data() + m.size()));
}

// MTTKRP for the requested mode: X_(mode) * (khatri-rao of the other two).
Mat mttkrp(const DenseTensor3& t, const Mat& a, const Mat& b, const Mat& c, int mode) {
  const auto d = t.dims();
  const Eigen::Index r = a.cols();
  Mat out = Mat::Zero(mode == 0 ? a.rows() : mode == 1 ? b.rows() : c.rows(), r);
  for (std::size_t k = 0; k < d.k; ++k)
    for (std::size_t j = 0; j < d.j; ++j)
      for (std::size_t i = 0; i < d.i; ++i) {
        const double x = t(i, j, k);
        if (x == 0.0) continue;
        const auto ii = static_cast<Eigen::Index>(i);
        const auto jj = static_cast<Eigen::Index>(j);
        const auto kk = static_cast<Eigen::Index>(k);
        if (mode == 0)
          out.row(ii) += x * b.row(jj).cwiseProduct(c.row(kk));
        else if (mode == 1)
          out.row(jj) += x * a.row(ii).cwiseProduct(c.row(kk));
        else
          out.row(kk) += x * a.row(ii).cwiseProduct(b.row(jj));
      }
  return out;
}

double residual(const DenseTensor3& t, const Mat& a, const Mat& b, const Mat& c) {
  const auto d = t.dims();
  double s = 0.0;
  for (std::size_t k = 0; k < d.k; ++k)
    for (std::size_t j = 0; j < d.j; ++j) {
      const Eigen::RowVectorXd bc = b.row(static_cast<Eigen::Index>(j))
                                        .cwiseProduct(c.row(static_cast<Eigen::Index>(k)));
      for (std::size_t i = 0; i < d.i; ++i) {
        const double r = t(i, j, k) - a.row(static_cast<Eigen::Index>(i)).dot(bc);
        s += r * r;
      }
    }
  return std::sqrt(s);
}

// Leading left singular vectors of the mode-n unfolding; columns beyond the
// mode size keep their random start.
Mat leading_vectors(const DenseTensor3& t, int mode, Mat start) {
  const auto d = t.dims();
  const std::size_t rows = mode == 0 ? d.i : mode == 1 ? d.j : d.k;
  Eigen::MatrixXd unf(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(d.size() / rows));
  for (std::size_t k = 0; k < d.k; ++k)
    for (std::size_t j = 0; j < d.j; ++j)
      for (std::size_t i = 0; i < d.i; ++i) {
        const std::size_t r = mode == 0 ? i : mode == 1 ? j : k;
        const std::size_t c = mode == 0 ? j + d.j * k : mode == 1 ? i + d.i * k : i + d.i * j;
        unf(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = t(i, j, k);
      }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(unf, Eigen::ComputeThinU);
  const Eigen::Index n = std::min(start.cols(), svd.matrixU().cols());
  start.leftCols(n) = svd.matrixU().leftCols(n);
  return start;
}

}  // namespace

DenseTensor3 cp_reconstruct(const CPFactors& f) {
  if (f.factors.size() != 3) {
    throw UnsupportedOrderError("CP reconstruction supports third-order models only, got " +
                                std::to_string(f.factors.size()) + " factors");
  }
  const DenseMatrix& a = f.factors[0];
  const DenseMatrix& b = f.factors[1];
  const DenseMatrix& c = f.factors[2];
  if (b.cols() != a.cols() || c.cols() != a.cols())
    throw DimensionError("CP factor matrices must share the rank column count");
  DenseTensor3 out({a.rows(), b.rows(), c.rows()});
  for (std::size_t k = 0; k < c.rows(); ++k)
    for (std::size_t j = 0; j < b.rows(); ++j)
      for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t r = 0; r < a.cols(); ++r) s += a(i, r) * b(j, r) * c(k, r);
        out(i, j, k) = s;
      }
  return out;
}

CpAlsResult cp_als(const DenseTensor3& target, std::size_t rank, const CpAlsOptions& opts) {
  if (rank == 0) throw ArgumentError("CP rank must be positive");
  const auto d = target.dims();
  const auto r = static_cast<Eigen::Index>(rank);
  Rng rng(opts.seed);
  auto random = [&](std::size_t rows) {
    Mat m(static_cast<Eigen::Index>(rows), r);
    for (Eigen::Index n = 0; n < m.size(); ++n) m.data()[n] = rng.uniform();
    return m;
  };
  Mat a = random(d.i), b = random(d.j), c = random(d.k);
  if (opts.init == CpInit::nvecs) {
    a = leading_vectors(target, 0, a);
    b = leading_vectors(target, 1, b);
    c = leading_vectors(target, 2, c);
  }

  CpAlsResult res;
  res.errors.push_back(residual(target, a, b, c));
  auto solve = [](const Mat& rhs, const Mat& gram) -> Mat {
    // rhs * pinv(gram), gram symmetric
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(gram);
    return cod.solve(rhs.transpose()).transpose();
  };
  for (std::size_t it = 0; it < opts.max_iters; ++it) {
    const Mat a0 = a, b0 = b, c0 = c;
    a = solve(mttkrp(target, a, b, c, 0), (b.transpose() * b).cwiseProduct(c.transpose() * c));
    b = solve(mttkrp(target, a, b, c, 1), (a.transpose() * a).cwiseProduct(c.transpose() * c));
    c = solve(mttkrp(target, a, b, c, 2), (a.transpose() * a).cwiseProduct(b.transpose() * b));

    // rebalance column norms across modes
    for (Eigen::Index col = 0; col < r; ++col) {
      const double na = a.col(col).norm(), nb = b.col(col).norm(), nc = c.col(col).norm();
      if (na == 0.0 || nb == 0.0 || nc == 0.0) continue;
      const double g = std::cbrt(na * nb * nc);
      a.col(col) *= g / na;
      b.col(col) *= g / nb;
      c.col(col) *= g / nc;
    }

    double err = residual(target, a, b, c);
    if (opts.extrapolate && it > 0) {
      // try a longer step along the sweep's displacement, keep it if it helps
      const double s = std::cbrt(static_cast<double>(it + 1));
      const Mat ae = a + s * (a - a0), be = b + s * (b - b0), ce = c + s * (c - c0);
      const double e = residual(target, ae, be, ce);
      if (e < err) {
        a = ae;
        b = be;
        c = ce;
        err = e;
      }
    }
    if (!std::isfinite(err)) break;
    const double prev = res.errors.back();
    res.errors.push_back(err);
    if (err <= opts.abs_tol || std::abs(err - prev) < opts.rel_tol * std::abs(err)) {
      res.converged = true;
      break;
    }
  }
  res.factors.rank = rank;
  res.factors.factors = {from_eigen(a), from_eigen(b), from_eigen(c)};
  return res;
}

}  // namespace aphen
