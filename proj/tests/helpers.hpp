#ifndef APHEN_TESTS_HELPERS_HPP
#define APHEN_TESTS_HELPERS_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "aphen/paratuck2.hpp"
#include "aphen/random.hpp"
#include "aphen/tensor.hpp"

namespace testutil {

inline aphen::DenseMatrix random_matrix(aphen::Rng& rng, std::size_t r, std::size_t c,
                                        double lo = -1.0, double hi = 1.0) {
  aphen::DenseMatrix m(r, c);
  for (double& v : m.data()) v = rng.uniform(lo, hi);
  return m;
}

inline aphen::DenseTensor3 random_tensor(aphen::Rng& rng, aphen::Dims3 d, double lo = -1.0,
                                         double hi = 1.0) {
  std::vector<double> v(d.size());
  for (double& x : v) x = rng.uniform(lo, hi);
  return aphen::DenseTensor3(d, std::move(v));
}

inline aphen::RealVector random_vector(aphen::Rng& rng, std::size_t n, double lo = -1.0,
                                       double hi = 1.0) {
  aphen::RealVector v(n);
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

inline aphen::Paratuck2Factors random_factors(aphen::Rng& rng, aphen::Dims3 d, aphen::Latent l,
                                              double lo = -1.0, double hi = 1.0) {
  return {random_matrix(rng, d.i, l.p, lo, hi), random_matrix(rng, d.k, l.p, lo, hi),
          random_matrix(rng, l.p, l.q, lo, hi), random_matrix(rng, d.k, l.q, lo, hi),
          random_matrix(rng, d.j, l.q, lo, hi)};
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double norm2(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

// ||a - b|| / ||b||
inline double rel_error(std::span<const double> a, std::span<const double> b) {
  double num = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) num += (a[i] - b[i]) * (a[i] - b[i]);
  const double den = norm2(b);
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num) / den;
}

// x_ijk = sum_p sum_q a_ip da_kp h_pq db_kq b_jq, straight from the model definition.
inline aphen::DenseTensor3 brute_paratuck2(const aphen::Paratuck2Factors& f) {
  const aphen::Dims3 d{f.a.rows(), f.b.rows(), f.da.rows()};
  aphen::DenseTensor3 t(d);
  for (std::size_t i = 0; i < d.i; ++i)
    for (std::size_t j = 0; j < d.j; ++j)
      for (std::size_t k = 0; k < d.k; ++k) {
        double s = 0.0;
        for (std::size_t p = 0; p < f.a.cols(); ++p)
          for (std::size_t q = 0; q < f.b.cols(); ++q)
            s += f.a(i, p) * f.da(k, p) * f.h(p, q) * f.db(k, q) * f.b(j, q);
        t(i, j, k) = s;
      }
  return t;
}

}  // namespace testutil

#endif  // APHEN_TESTS_HELPERS_HPP
