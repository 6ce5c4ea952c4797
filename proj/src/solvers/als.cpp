// Non-negative multiplicative ALS for Paratuck2. Each factor block is
// rescaled by the ratio of the positive and negative parts of its
// least-squares gradient; the D^A and D^B diagonals are updated slice by
// slice.

#include <chrono>
#include <cmath>
#include <memory>

#include "aphen/solvers.hpp"

namespace aphen {

namespace {

DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) * b(i, j);
  return c;
}

// m * diag(row r of d)
DenseMatrix scale_cols(const DenseMatrix& m, const DenseMatrix& d, std::size_t r) {
  DenseMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) *= d(r, j);
  return out;
}

// diag(row r of d) * m
DenseMatrix scale_rows(const DenseMatrix& m, const DenseMatrix& d, std::size_t r) {
  DenseMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) *= d(r, i);
  return out;
}

void accumulate(DenseMatrix& acc, const DenseMatrix& m) {
  for (std::size_t n = 0; n < m.data().size(); ++n) acc.data()[n] += m.data()[n];
}

void multiplicative(DenseMatrix& m, const DenseMatrix& num, const DenseMatrix& den, double floor) {
  for (std::size_t n = 0; n < m.data().size(); ++n)
    m.data()[n] *= num.data()[n] / (den.data()[n] + floor);
}

}  // namespace

void als_sweep(const DenseTensor3& target, Paratuck2Factors& f, double floor) {
  const Dims3 d = target.dims();
  const Latent l = f.latent();
  std::vector<DenseMatrix> slices;
  slices.reserve(d.k);
  for (std::size_t k = 0; k < d.k; ++k) slices.push_back(frontal_slice(target, k));
  const DenseMatrix bt = f.b.transposed();

  // A: X ~ A F with F_k = D^A_k H D^B_k B^T
  {
    DenseMatrix num(d.i, l.p), gram(l.p, l.p);
    for (std::size_t k = 0; k < d.k; ++k) {
      const DenseMatrix fk = scale_rows(scale_cols(f.h, f.db, k), f.da, k) * bt;
      const DenseMatrix fkt = fk.transposed();
      accumulate(num, slices[k] * fkt);
      accumulate(gram, fk * fkt);
    }
    multiplicative(f.a, num, f.a * gram, floor);
  }

  // D^A_k: vec(X_k) ~ Z d with Z = (B D^B_k H^T) khatri-rao A
  {
    const DenseMatrix ata = f.a.transposed() * f.a;
    const DenseMatrix at = f.a.transposed();
    for (std::size_t k = 0; k < d.k; ++k) {
      const DenseMatrix gk = scale_cols(f.h, f.db, k) * bt;  // P x J
      const DenseMatrix num = at * slices[k] * gk.transposed();
      const DenseMatrix zz = hadamard(ata, gk * gk.transposed());
      for (std::size_t p = 0; p < l.p; ++p) {
        double den = 0.0;
        for (std::size_t r = 0; r < l.p; ++r) den += zz(p, r) * f.da(k, r);
        f.da(k, p) *= num(p, p) / (den + floor);
      }
    }
  }

  // H: vec(X_k) ~ (B D^B_k kron A D^A_k) vec(H), stacked over k
  {
    DenseMatrix num(l.p, l.q), den(l.p, l.q);
    for (std::size_t k = 0; k < d.k; ++k) {
      const DenseMatrix ad = scale_cols(f.a, f.da, k);
      const DenseMatrix bd = scale_cols(f.b, f.db, k);
      const DenseMatrix adt = ad.transposed();
      accumulate(num, adt * slices[k] * bd);
      accumulate(den, (adt * ad) * f.h * (bd.transposed() * bd));
    }
    multiplicative(f.h, num, den, floor);
  }

  // D^B_k: vec(X_k) ~ Z e with Z = B khatri-rao (A D^A_k H)
  {
    const DenseMatrix btb = bt * f.b;
    for (std::size_t k = 0; k < d.k; ++k) {
      const DenseMatrix mk = scale_cols(f.a, f.da, k) * f.h;  // I x Q
      const DenseMatrix mkt = mk.transposed();
      const DenseMatrix num = mkt * slices[k] * f.b;
      const DenseMatrix zz = hadamard(mkt * mk, btb);
      for (std::size_t q = 0; q < l.q; ++q) {
        double den = 0.0;
        for (std::size_t r = 0; r < l.q; ++r) den += zz(q, r) * f.db(k, r);
        f.db(k, q) *= num(q, q) / (den + floor);
      }
    }
  }

  // B: X_k^T ~ B G_k with G_k = D^B_k H^T D^A_k A^T
  {
    DenseMatrix num(d.j, l.q), gram(l.q, l.q);
    for (std::size_t k = 0; k < d.k; ++k) {
      const DenseMatrix gkt = scale_cols(f.a, f.da, k) * scale_cols(f.h, f.db, k);  // I x Q
      accumulate(num, slices[k].transposed() * gkt);
      accumulate(gram, gkt.transposed() * gkt);
    }
    multiplicative(f.b, num, f.b * gram, floor);
  }
}

SolveResult als_from(const DenseTensor3& target, Paratuck2Factors f, const SolverConfig& cfg) {
  for (double v : target.data())
    if (v < 0.0) throw ArgumentError("non-negative ALS requires a non-negative target tensor");
  f.validate();
  if (!(f.dims() == target.dims()))
    throw DimensionError("starting factors do not match the target dimensions");

  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };
  auto residual = std::make_shared<Paratuck2Residual>(target, f.latent());
  Objective obj([residual](std::span<const double> x) { return (*residual)(x); });

  SolveResult res;
  ConvergenceTrace& tr = res.trace;
  ParamVector x = flatten(f);
  double fx = obj(x.data);
  tr.records.push_back({0, elapsed(), fx});
  res.tail.push_back(x.data);
  Paratuck2Factors accepted = f;

  auto stop = [&](StopReason r, bool ok) {
    tr.stop_reason = r;
    tr.converged = ok;
  };
  if (!std::isfinite(fx)) {
    stop(StopReason::numeric, false);
  } else if (fx <= cfg.abs_tol) {
    stop(StopReason::tolerance, true);
  } else if (cfg.max_iters == 0) {
    stop(StopReason::max_iters, false);
  } else {
    for (std::size_t iter = 1;; ++iter) {
      als_sweep(target, f, cfg.params.als_floor);
      x = flatten(f);
      const double next = obj(x.data);
      if (!std::isfinite(next)) {
        stop(StopReason::numeric, false);
        break;
      }
      tr.records.push_back({iter, elapsed(), next});
      accepted = f;
      if (x.data != res.tail.back()) {
        res.tail.push_back(x.data);
        if (res.tail.size() > cfg.keep_iterates) res.tail.erase(res.tail.begin());
      }
      const double prev = fx;
      fx = next;
      if (fx <= cfg.abs_tol || std::abs(fx - prev) < cfg.rel_tol * std::abs(fx)) {
        stop(StopReason::tolerance, true);
        break;
      }
      if (iter >= cfg.max_iters) {
        stop(StopReason::max_iters, false);
        break;
      }
    }
  }
  tr.objective_evals = obj.evaluations();
  res.factors = std::move(accepted);
  return res;
}

}  // namespace aphen
