// Acceptance suite: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../helpers.hpp"
#include "aphen/bench.hpp"
#include "aphen/cp.hpp"
#include "aphen/derivatives.hpp"
#include "aphen/metrics.hpp"
#include "aphen/solvers.hpp"

using namespace aphen;
namespace fs = std::filesystem;

namespace {

std::set<int> failed;

void report(int id, const char* title, bool ok, const std::string& detail, double seconds) {
  std::printf("[%s] %d %s: %s (%.1fs)\n", ok ? "PASS" : "FAIL", id, title, detail.c_str(),
              seconds);
  std::fflush(stdout);
  if (!ok) failed.insert(id);
}

template <class F>
void run(int id, const char* title, F body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(id, title, ok, detail, s);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double median(std::vector<double> v) {
  std::erase_if(v, [](double x) { return std::isnan(x); });
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// f(x) = x^T Q x + b^T x
struct Quadratic {
  std::size_t n;
  std::vector<double> q;
  RealVector b;

  double operator()(std::span<const double> x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      for (std::size_t j = 0; j < n; ++j) r += q[i * n + j] * x[j];
      s += x[i] * r + b[i] * x[i];
    }
    return s;
  }
  RealVector apply(std::span<const double> p, double scale, bool affine) const {
    RealVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      for (std::size_t j = 0; j < n; ++j) r += q[i * n + j] * p[j];
      out[i] = scale * r + (affine ? b[i] : 0.0);
    }
    return out;
  }
};

bool derivative_check(std::string& detail) {
  Rng rng(1001);
  double worst_g = 0.0, worst_h = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng.next() % 20;
    Quadratic f{n, std::vector<double>(n * n), testutil::random_vector(rng, n)};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) f.q[i * n + j] = f.q[j * n + i] = rng.uniform(-1, 1);
    const Objective obj([&](std::span<const double> x) { return f(x); });
    const RealVector x = testutil::random_vector(rng, n);
    const RealVector p = testutil::random_vector(rng, n);
    worst_g = std::max(worst_g, testutil::rel_error(fd_gradient(obj, x), f.apply(x, 2.0, true)));
    worst_h = std::max(worst_h,
                       testutil::rel_error(hessian_vec_product(obj, x, p), f.apply(p, 2.0, false)));
  }
  detail = "max gradient rel err " + fmt("%.3g", worst_g) + " (<= 1e-8), max Hp rel err " +
           fmt("%.3g", worst_h) + " (<= 1e-2)";
  return worst_g <= 1e-8 && worst_h <= 1e-2;
}

bool reconstruction_check(std::string& detail) {
  Rng rng(1002);
  double worst_p = 0.0, worst_c = 0.0;
  auto dim = [&] { return 1 + rng.next() % 4; };
  for (int t = 0; t < 100; ++t) {
    const Dims3 d{dim(), dim(), dim()};
    const Latent l{dim(), dim()};
    const Paratuck2Factors f = testutil::random_factors(rng, d, l);
    worst_p = std::max(worst_p, testutil::rel_error(paratuck2_reconstruct(f).data(),
                                                    testutil::brute_paratuck2(f).data()));

    const std::size_t r = dim();
    CPFactors cp{{testutil::random_matrix(rng, d.i, r), testutil::random_matrix(rng, d.j, r),
                  testutil::random_matrix(rng, d.k, r)},
                 r};
    DenseTensor3 brute(d);
    for (std::size_t i = 0; i < d.i; ++i)
      for (std::size_t j = 0; j < d.j; ++j)
        for (std::size_t k = 0; k < d.k; ++k) {
          double s = 0.0;
          for (std::size_t c = 0; c < r; ++c)
            s += cp.factors[0](i, c) * cp.factors[1](j, c) * cp.factors[2](k, c);
          brute(i, j, k) = s;
        }
    worst_c = std::max(worst_c, testutil::rel_error(cp_reconstruct(cp).data(), brute.data()));
  }
  detail = "max rel err paratuck2 " + fmt("%.3g", worst_p) + ", cp " + fmt("%.3g", worst_c) +
           " (<= 1e-12)";
  return worst_p <= 1e-12 && worst_c <= 1e-12;
}

bool exact_fit_check(std::string& detail) {
  Rng rng(1003);
  const Paratuck2Factors f = testutil::random_factors(rng, {4, 3, 5}, {2, 3}, 0.1, 1.0);
  const DenseTensor3 target = paratuck2_reconstruct(f);
  bool ok = true;
  for (Scheme s : kAllSchemes) {
    const SolveResult r = solve_from(s, target, f, SolverConfig{});
    const bool good = r.trace.final_error() <= 1e-8 && r.trace.iterations() <= 2;
    ok = ok && good;
    detail += std::string(scheme_name(s)) + " " + fmt("%.2g", r.trace.final_error()) + "/" +
              std::to_string(r.trace.iterations()) + "it ";
  }
  detail.pop_back();
  return ok;
}

// cells of the shared 5x5x5 and 10x10x10 runs, keyed by problem id then solver
using CellMap = std::map<std::string, std::map<Scheme, std::vector<const BenchCell*>>>;

bool table2_check(const CellMap& cells, std::string& detail) {
  const auto& m = cells.at("5x5x5_2x3");
  auto best = [&](Scheme s) {
    double b = -1e300;
    for (const BenchCell* c : m.at(s)) b = std::max(b, c->record.accuracy);
    return b;
  };
  struct Want {
    Scheme s;
    double bound;
    bool at_least;
  };
  const Want wants[] = {{Scheme::aphen, 99, true}, {Scheme::als, 75, true},
                        {Scheme::bfgs, 70, true},  {Scheme::nag, 30, false},
                        {Scheme::saga, 30, false}};
  bool ok = true;
  for (const Want& w : wants) {
    const double a = best(w.s);
    const bool good = w.at_least ? a >= w.bound : a <= w.bound;
    ok = ok && good;
    detail += std::string(scheme_name(w.s)) + " " + fmt("%.4f", a) + (w.at_least ? " >= " : " <= ") +
              fmt("%.0f", w.bound) + (good ? "" : " [miss]") + "; ";
  }
  detail.resize(detail.size() - 2);
  return ok;
}

bool ordering_check(const CellMap& cells, std::string& detail) {
  bool ok = true;
  for (const auto& [id, m] : cells) {
    auto med = [&](Scheme s) {
      std::vector<double> v;
      for (const BenchCell* c : m.at(s)) v.push_back(c->record.iter_speed);
      return median(v);
    };
    const double a = med(Scheme::aphen);
    detail += id + ": aphen " + fmt("%.4g", a);
    for (Scheme s : {Scheme::als, Scheme::gd, Scheme::nag, Scheme::saga}) {
      const double o = med(s);
      const bool good = a > o;
      ok = ok && good;
      detail += std::string(good ? " > " : " !> ") + std::string(scheme_name(s)) + " " +
                fmt("%.4g", o);
    }
    detail += "; ";
  }
  detail.resize(detail.size() - 2);
  return ok;
}

double tail_q(const BenchCell& c) {
  if (c.tail.size() < 4) return std::nan("");
  try {
    return convergence_rate_q(std::span<const RealVector>(c.tail), c.tail.size() - 2);
  } catch (const MetricError&) {
    return std::nan("");
  }
}

bool superlinear_check(const CellMap& cells, std::string& detail) {
  const auto& m = cells.at("5x5x5_2x3");
  std::vector<double> qa, qg;
  for (const BenchCell* c : m.at(Scheme::aphen)) qa.push_back(tail_q(*c));
  for (const BenchCell* c : m.at(Scheme::gd)) qg.push_back(tail_q(*c));
  const double a = median(qa), g = median(qg);
  detail = "median q aphen " + fmt("%.4g", a) + " vs gd " + fmt("%.4g", g);
  return a > g;
}

bool cp_check(std::string& detail) {
  const DenseTensor3 t = synth_imbalanced_tensor({2, 20, 30}, 0);
  const double tn = norm(t);
  auto rel = [&](std::size_t rank, bool& conv) {
    const CpAlsResult r = cp_als(t, rank);
    conv = r.converged;
    return r.errors.back() / tn;
  };
  bool c20 = false, c2 = false;
  const double r20 = rel(20, c20), r2 = rel(2, c2);
  detail = "rank 20 rel residual " + fmt("%.3g", r20) + " (< 1e-3" + (c20 ? "" : ", not converged") +
           "), rank 2 " + fmt("%.3g", r2) + " (> 0.1" + (c2 ? "" : ", not converged") + ")";
  return r20 < 1e-3 && r2 > 0.1 && c20 && c2;
}

bool metric_check(std::string& detail) {
  const double e = std::exp(1.0);
  const double acc = accuracy_from_norms(e * e, e);
  ConvergenceTrace t;
  t.records = {{0, 0.0, 1.0}, {1, 1.0, 0.1}, {2, 2.0, 0.01}};
  const double sp = convergence_speed(t, SpeedMode::iteration_based);
  std::vector<double> geo;
  for (int n = 0; n < 8; ++n) geo.push_back(2.0 + std::pow(0.5, n));
  const double q = convergence_rate_q(geo, 3);
  detail = "accuracy " + fmt("%.17g", acc) + ", speed " + fmt("%.17g", sp) + ", q " +
           fmt("%.17g", q);
  return std::abs(acc - 50.0) <= 1e-12 && std::abs(sp - 1.0) <= 1e-12 && std::abs(q - 1.0) <= 1e-9;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream is(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell);
  return out;
}

bool determinism_check(std::string& detail) {
  BenchPlan plan;
  plan.problems = {{{5, 5, 5}, {2, 3}}, {{4, 6, 3}, {2, 2}}};
  plan.solvers.assign(std::begin(kAllSchemes), std::end(kAllSchemes));
  plan.seeds = {0, 1};
  plan.max_iters = 200;
  const fs::path base = fs::temp_directory_path() / "aphen_acceptance_det";
  fs::remove_all(base);
  run_benchmark(plan, base / "a");
  plan.jobs = 2;
  run_benchmark(plan, base / "b");

  // drop elapsed_s and time_speed
  auto strip = [](const std::vector<std::string>& lines) {
    std::vector<std::string> out;
    for (const auto& l : lines) {
      auto c = split(l);
      c.erase(c.begin() + 10);
      c.erase(c.begin() + 8);
      std::string s;
      for (const auto& x : c) s += x + ",";
      out.push_back(s);
    }
    return out;
  };
  const bool summary_same =
      strip(read_lines(base / "a" / "summary.csv")) == strip(read_lines(base / "b" / "summary.csv"));

  std::size_t traces = 0, mismatched = 0;
  for (const auto& e : fs::directory_iterator(base / "a")) {
    const std::string name = e.path().filename().string();
    if (name.rfind("trace_", 0) != 0) continue;
    ++traces;
    const auto a = read_lines(e.path());
    const auto b = read_lines(base / "b" / name);
    bool same = a.size() == b.size();
    for (std::size_t n = 0; same && n < a.size(); ++n) same = split(a[n])[2] == split(b[n])[2];
    if (!same) ++mismatched;
  }
  fs::remove_all(base);
  detail = std::string("summary ") + (summary_same ? "identical" : "differs") + ", " +
           std::to_string(traces) + " traces, " + std::to_string(mismatched) +
           " with differing errors";
  return summary_same && mismatched == 0 && traces == 28;
}

}  // namespace

// --known-red=4,5 makes the exit status 0 only when exactly those criteria fail
std::set<int> parse_known_red(int argc, char** argv) {
  std::set<int> ids;
  const std::string flag = "--known-red=";
  for (int n = 1; n < argc; ++n) {
    const std::string a = argv[n];
    if (a.rfind(flag, 0) != 0) continue;
    std::stringstream ss(a.substr(flag.size()));
    for (std::string id; std::getline(ss, id, ',');)
      if (!id.empty()) ids.insert(std::stoi(id));
  }
  return ids;
}

int main(int argc, char** argv) {
  const std::set<int> known_red = parse_known_red(argc, argv);
  run(1, "derivative correctness", derivative_check);
  run(2, "reconstruction oracle", reconstruction_check);
  run(3, "exact-fit sanity", exact_fit_check);

  // criteria 4 to 6 share one set of default-configured runs
  const auto t0 = std::chrono::steady_clock::now();
  BenchPlan plan;
  plan.problems = {{{5, 5, 5}, {2, 3}}, {{10, 10, 10}, {3, 4}}};
  plan.solvers = {Scheme::aphen, Scheme::als, Scheme::gd, Scheme::nag, Scheme::saga, Scheme::bfgs};
  std::vector<BenchCell> results;
  CellMap cells;
  std::string run_error;
  try {
    results = run_benchmark(plan);
    for (const BenchCell& c : results) cells[c.record.problem][c.record.solver].push_back(&c);
  } catch (const std::exception& e) {
    run_error = std::string("exception: ") + e.what();
  }
  const double shared =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("shared runs: %zu cells in %.1fs\n", results.size(), shared);

  auto with_cells = [&](auto check) {
    return [&, check](std::string& d) {
      if (!run_error.empty()) {
        d = run_error;
        return false;
      }
      return check(cells, d);
    };
  };
  run(4, "5x5x5 (2,3) best-of-5 accuracy", with_cells(table2_check));
  run(5, "median iteration speed ordering", with_cells(ordering_check));
  run(6, "superlinear evidence", with_cells(superlinear_check));
  run(7, "CP imbalance", cp_check);
  run(8, "metric exact values", metric_check);
  run(9, "determinism", determinism_check);

  std::printf("%zu of 9 criteria failed\n", failed.size());
  if (known_red.empty()) return failed.empty() ? 0 : 1;
  if (failed == known_red) {
    std::printf("failures match the known-red list\n");
    return 0;
  }
  std::printf("failures differ from the known-red list\n");
  return 1;
}
