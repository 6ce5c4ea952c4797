#include <CLI11.hpp>

#include <charconv>
#include <iostream>
#include <sstream>

#include "aphen/bench.hpp"

namespace aphen {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::size_t> parse_sizes(const std::string& text, std::size_t count,
                                     const char* what) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('x', pos), text.size());
    std::size_t v = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    auto res = std::from_chars(first, last, v);
    if (first == last || res.ec != std::errc() || res.ptr != last || v == 0)
      throw UsageError(std::string("malformed ") + what + " '" + text + "'");
    out.push_back(v);
    pos = end + 1;
  }
  if (out.size() != count)
    throw UsageError(std::string("malformed ") + what + " '" + text + "'");
  return out;
}

std::string valid_solver_names() {
  std::string s;
  for (Scheme sc : kAllSchemes) {
    if (!s.empty()) s += ", ";
    s += scheme_name(sc);
  }
  return s;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Paratuck2 solver benchmark: runs APHEN, ALS, GD, NAG, Adam, SAGA and BFGS on "
               "synthetic tensors and writes convergence traces and a summary as CSV."};
  std::vector<std::string> dims_arg, latent_arg, solvers_arg, seeds_arg;
  std::size_t max_iters = 1000;
  double tol = 1e-6;
  double eta = 1e-4;
  std::size_t jobs = 1;
  std::string out = "results";
  bool paper_suite = false;
  bool paper_suite_full = false;
  std::string ordinate = "log10";

  app.add_option("--dims", dims_arg, "tensor size IxJxK (repeatable)");
  app.add_option("--latent", latent_arg, "latent factors PxQ, paired with --dims by position");
  app.add_option("--solvers", solvers_arg, "comma-separated solver names")->delimiter(',');
  app.add_option("--seeds", seeds_arg, "comma-separated initialization seeds")->delimiter(',');
  app.add_option("--max-iters", max_iters, "outer iteration cap")->capture_default_str();
  app.add_option("--tol", tol, "relative-change stopping tolerance")->capture_default_str();
  app.add_option("--eta", eta, "finite-difference perturbation")->capture_default_str();
  app.add_option("--jobs", jobs, "worker threads")->capture_default_str();
  app.add_option("--out", out, "output directory")->capture_default_str();
  app.add_flag("--paper-suite", paper_suite, "run the published problem sizes up to 25x20x15");
  app.add_flag("--paper-suite-full", paper_suite_full, "also run 50x40x20 and 100x100x20");
  app.add_option("--ordinate", ordinate, "speed fit ordinate: log10 or raw")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  BenchPlan plan;
  try {
    if (paper_suite || paper_suite_full) {
      if (!dims_arg.empty()) throw UsageError("--dims cannot be combined with --paper-suite");
      plan.problems = paper_problems(paper_suite_full);
    } else if (dims_arg.empty()) {
      if (!latent_arg.empty()) throw UsageError("--latent given without --dims");
      plan.problems = {{{5, 5, 5}, {2, 3}}};
    } else {
      if (latent_arg.size() != dims_arg.size())
        throw UsageError("each --dims needs a matching --latent");
      for (std::size_t n = 0; n < dims_arg.size(); ++n) {
        const auto d = parse_sizes(dims_arg[n], 3, "dims");
        const auto l = parse_sizes(latent_arg[n], 2, "latent");
        plan.problems.push_back({{d[0], d[1], d[2]}, {l[0], l[1]}});
      }
    }

    if (solvers_arg.empty()) {
      plan.solvers.assign(std::begin(kAllSchemes), std::end(kAllSchemes));
    } else {
      for (const auto& name : solvers_arg) {
        auto s = parse_scheme(name);
        if (!s)
          throw UsageError("unknown solver '" + name + "'; valid solvers: " +
                           valid_solver_names());
        plan.solvers.push_back(*s);
      }
    }

    if (!seeds_arg.empty()) {
      plan.seeds.clear();
      for (const auto& s : seeds_arg) {
        std::uint64_t v = 0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
          throw UsageError("malformed seed '" + s + "'");
        plan.seeds.push_back(v);
      }
    }

    if (ordinate == "log10")
      plan.ordinate = Ordinate::log10;
    else if (ordinate == "raw")
      plan.ordinate = Ordinate::raw;
    else
      throw UsageError("--ordinate must be log10 or raw");

    plan.max_iters = max_iters;
    plan.rel_tol = tol;
    plan.eta = eta;
    plan.jobs = jobs;
    plan.validate();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const auto records = run_benchmark(plan, out);
    std::cout << "wrote " << records.size() << " runs to " << out << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace aphen
