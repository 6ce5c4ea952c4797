#include "aphen/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <thread>

#include "aphen/random.hpp"

namespace aphen {

DenseTensor3 synth_tensor(Dims3 dims) {
  std::vector<double> data(dims.size());
  for (std::size_t n = 0; n < data.size(); ++n) data[n] = static_cast<double>(n + 1);
  return DenseTensor3(dims, std::move(data));
}

DenseTensor3 synth_imbalanced_tensor(Dims3 dims, std::uint64_t seed) {
  DenseTensor3 t(dims);
  Rng rng(seed);
  RealVector a(dims.i), c(dims.k);
  for (std::size_t j = 0; j < dims.j; ++j) {
    for (double& v : a) v = rng.uniform();
    for (double& v : c) v = rng.uniform();
    for (std::size_t k = 0; k < dims.k; ++k)
      for (std::size_t i = 0; i < dims.i; ++i) t(i, j, k) = a[i] * c[k];
  }
  return t;
}

std::string Problem::id() const {
  return std::to_string(dims.i) + "x" + std::to_string(dims.j) + "x" + std::to_string(dims.k) +
         "_" + std::to_string(latent.p) + "x" + std::to_string(latent.q);
}

std::vector<Problem> paper_problems(bool full) {
  std::vector<Problem> out{
      {{5, 5, 5}, {2, 3}},     {{10, 10, 10}, {3, 4}},  {{15, 10, 10}, {5, 4}},
      {{15, 15, 15}, {5, 6}},  {{25, 20, 15}, {10, 9}},
  };
  if (full) {
    out.push_back({{50, 40, 20}, {15, 14}});
    out.push_back({{100, 100, 20}, {3, 5}});
  }
  return out;
}

void BenchPlan::validate() const {
  if (problems.empty()) throw ArgumentError("benchmark plan has no problems");
  if (solvers.empty()) throw ArgumentError("benchmark plan has no solvers");
  if (seeds.empty()) throw ArgumentError("benchmark plan has no seeds");
  for (const auto& p : problems)
    if (p.dims.size() == 0 || p.latent.p == 0 || p.latent.q == 0)
      throw ArgumentError("benchmark problem " + p.id() + " has a zero size");
  if (max_iters == 0) throw ArgumentError("max_iters must be at least 1");
  if (!(rel_tol > 0.0)) throw ArgumentError("tolerance must be positive");
  if (!(eta > 0.0)) throw ArgumentError("eta must be positive");
}

namespace {

double metric_or_nan(auto&& fn) {
  try {
    return fn();
  } catch (const Error&) {
    return std::nan("");
  }
}

BenchCell run_cell(const BenchPlan& plan, const Problem& problem, const DenseTensor3& target,
                   Scheme scheme, std::uint64_t seed) {
  SolverConfig cfg;
  cfg.max_iters = plan.max_iters;
  cfg.rel_tol = plan.rel_tol;
  cfg.fd.eta = plan.eta;
  cfg.line_search.fd.eta = plan.eta;
  cfg.seed = seed;

  BenchCell cell;
  BenchRecord& r = cell.record;
  r.problem = problem.id();
  r.dims = problem.dims;
  r.latent = problem.latent;
  r.solver = scheme;
  r.seed = seed;
  try {
    SolveResult res = solve(scheme, target, problem.latent, cfg);
    cell.trace = std::move(res.trace);
    cell.tail = std::move(res.tail);
  } catch (const Error&) {
    cell.trace = {};
    cell.trace.stop_reason = StopReason::numeric;
  }
  const ConvergenceTrace& tr = cell.trace;
  r.stop_reason = tr.stop_reason;
  r.objective_evals = tr.objective_evals;
  if (tr.records.empty()) {
    r.final_error = r.accuracy = r.iter_speed = r.time_speed = r.elapsed_s = std::nan("");
    return cell;
  }
  r.final_error = tr.final_error();
  r.iterations = tr.iterations();
  r.elapsed_s = tr.records.back().elapsed;
  const double tn = norm(target);
  r.accuracy = metric_or_nan([&] { return accuracy_from_norms(tn, r.final_error); });
  r.iter_speed = metric_or_nan(
      [&] { return convergence_speed(tr, SpeedMode::iteration_based, plan.ordinate); });
  r.time_speed =
      metric_or_nan([&] { return convergence_speed(tr, SpeedMode::time_based, plan.ordinate); });
  return cell;
}

void write_file(const std::filesystem::path& path, auto&& writer) {
  std::ofstream os(path);
  if (!os) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
  writer(os);
  os.flush();
  if (!os) throw std::ios_base::failure("failed writing " + path.string());
}

}  // namespace

std::vector<BenchCell> run_benchmark(const BenchPlan& plan) {
  plan.validate();
  std::vector<DenseTensor3> targets;
  for (const auto& p : plan.problems) targets.push_back(synth_tensor(p.dims));

  struct Job {
    std::size_t problem;
    Scheme scheme;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < plan.problems.size(); ++p)
    for (Scheme s : plan.solvers)
      for (std::uint64_t seed : plan.seeds) jobs.push_back({p, s, seed});

  std::vector<BenchCell> cells(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t n = next++; n < jobs.size(); n = next++) {
      const Job& j = jobs[n];
      cells[n] = run_cell(plan, plan.problems[j.problem], targets[j.problem], j.scheme, j.seed);
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(plan.jobs, jobs.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return cells;
}

std::vector<BenchRecord> run_benchmark(const BenchPlan& plan,
                                       const std::filesystem::path& out_dir) {
  std::vector<BenchCell> cells = run_benchmark(plan);
  std::filesystem::create_directories(out_dir);
  std::vector<BenchRecord> records;
  records.reserve(cells.size());
  for (const auto& c : cells) {
    write_file(out_dir / trace_file_name(c.record),
               [&](std::ostream& os) { write_trace_csv(os, c.trace); });
    records.push_back(c.record);
  }
  write_file(out_dir / "summary.csv", [&](std::ostream& os) { write_summary_csv(os, records); });
  return records;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string trace_file_name(const BenchRecord& r) {
  return "trace_" + r.problem + "_" + std::string(scheme_name(r.solver)) + "_s" +
         std::to_string(r.seed) + ".csv";
}

void write_trace_csv(std::ostream& os, const ConvergenceTrace& trace) {
  os << "iter,elapsed_s,error\n";
  for (const auto& r : trace.records)
    os << std::to_string(r.iter) << ',' << format_double(r.elapsed) << ',' << format_double(r.error) << '\n';
}

void write_summary_csv(std::ostream& os, std::span<const BenchRecord> records) {
  os << "problem,dims,latent,solver,seed,final_error,accuracy,iter_speed,time_speed,iterations,"
        "elapsed_s,objective_evals,stop_reason\n";
  for (const auto& r : records) {
    const auto n = [](std::size_t v) { return std::to_string(v); };
    os << r.problem << ',' << n(r.dims.i) << 'x' << n(r.dims.j) << 'x' << n(r.dims.k) << ','
       << n(r.latent.p) << 'x' << n(r.latent.q) << ',' << scheme_name(r.solver) << ','
       << std::to_string(r.seed) << ','
       << format_double(r.final_error) << ',' << format_double(r.accuracy) << ','
       << format_double(r.iter_speed) << ',' << format_double(r.time_speed) << ','
       << n(r.iterations) << ',' << format_double(r.elapsed_s) << ',' << n(r.objective_evals) << ','
       << stop_reason_name(r.stop_reason) << '\n';
  }
}

}  // namespace aphen
