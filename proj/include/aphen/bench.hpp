#ifndef APHEN_BENCH_HPP
#define APHEN_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "aphen/metrics.hpp"
#include "aphen/solvers.hpp"

namespace aphen {

/// Entries 1, 2, ..., I*J*K in storage order (i fastest, then j, then k).
DenseTensor3 synth_tensor(Dims3 dims);

/// Non-negative tensor built as the sum of J rank-one terms a_j o e_j o c_j,
/// one per second-mode index, with a_j and c_j drawn uniform on [0,1) from
/// `seed`. Its CP rank is at most J while the first mode only has I rows.
DenseTensor3 synth_imbalanced_tensor(Dims3 dims, std::uint64_t seed = 0);

struct Problem {
  Dims3 dims;
  Latent latent;

  std::string id() const;  // e.g. "5x5x5_2x3"
};

/// Problem sizes of the published comparison. The two largest are only
/// included when `full` is set.
std::vector<Problem> paper_problems(bool full);

struct BenchPlan {
  std::vector<Problem> problems;
  std::vector<Scheme> solvers;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  std::size_t max_iters = 1000;
  double rel_tol = 1e-6;
  double eta = 1e-4;
  std::size_t jobs = 1;
  Ordinate ordinate = Ordinate::log10;

  /// Throws ArgumentError unless there is at least one problem, solver and
  /// seed and all sizes are positive.
  void validate() const;
};

struct BenchRecord {
  std::string problem;
  Dims3 dims;
  Latent latent;
  Scheme solver = Scheme::aphen;
  std::uint64_t seed = 0;
  double final_error = 0.0;
  double accuracy = 0.0;
  double iter_speed = 0.0;
  double time_speed = 0.0;
  std::size_t iterations = 0;
  double elapsed_s = 0.0;
  std::size_t objective_evals = 0;
  StopReason stop_reason = StopReason::max_iters;
};

struct BenchCell {
  BenchRecord record;
  ConvergenceTrace trace;
  std::vector<RealVector> tail;
};

/// Runs every (problem, solver, seed) cell, in plan order, using up to
/// `plan.jobs` worker threads.
std::vector<BenchCell> run_benchmark(const BenchPlan& plan);

/// Same, then writes one trace CSV per cell plus summary.csv into `out_dir`.
std::vector<BenchRecord> run_benchmark(const BenchPlan& plan, const std::filesystem::path& out_dir);

/// 17 significant digits, locale independent; "nan"/"inf" for non-finite.
std::string format_double(double v);

std::string trace_file_name(const BenchRecord& r);
void write_trace_csv(std::ostream& os, const ConvergenceTrace& trace);
void write_summary_csv(std::ostream& os, std::span<const BenchRecord> records);

/// Command-line entry point. Returns 0 on success, 2 on usage errors and 1
/// on I/O failures.
int cli_main(int argc, char** argv);

}  // namespace aphen

#endif  // APHEN_BENCH_HPP
