#include "rimc/cli.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

#include <omp.h>

#include <CLI11.hpp>

#include "rimc/errors.hpp"
#include "rimc/recursive_search.hpp"
#include "rimc/report.hpp"

namespace rimc::cli {

namespace {

struct Options {
  std::string matrix_a;
  std::string matrix_b;
  std::vector<double> region;
  std::string output;
  std::string format = "json";
  std::string dump_regions;
  bool timing = false;
  Config cfg;
};

std::unique_ptr<CLI::App> make_app(Options& o) {
  auto app = std::make_unique<CLI::App>(
      "Finds every generalized eigenvalue of A x = lambda B x inside a rectangle of the "
      "complex plane by recursive contour-integral spectral projection.",
      "rimc");
  app->add_option("--matrix-a", o.matrix_a, "Matrix Market file holding A")->required();
  app->add_option("--matrix-b", o.matrix_b, "Matrix Market file holding B (identity if absent)");
  app->add_option("--region", o.region, "Search rectangle XMIN XMAX YMIN YMAX")
      ->required()
      ->expected(4);
  app->add_option("--precision", o.cfg.d0, "Stop subdividing at this region size")
      ->capture_default_str();
  app->add_option("--residual-tol", o.cfg.eps, "Accepted Krylov residual per node")
      ->capture_default_str();
  app->add_option("--indicator-threshold", o.cfg.delta0, "Admissibility threshold")
      ->capture_default_str();
  app->add_option("--krylov-dim", o.cfg.m, "Krylov subspace dimension")->capture_default_str();
  app->add_option("--quad-points", o.cfg.n0, "Coarse quadrature node count (fine rule doubles it)")
      ->capture_default_str();
  app->add_option("--seed", o.cfg.seed, "Probe vector seed")->capture_default_str();
  app->add_option("--shift-budget", o.cfg.shift_budget, "Maximum number of cached Krylov bases")
      ->capture_default_str();
  app->add_option("--initial-shift-grid", o.cfg.initial_shift_grid,
                  "g for a g x g grid of initial shifts")
      ->capture_default_str();
  app->add_flag("--legacy-indicator", o.cfg.legacy_indicator,
                "Use the double-projection indicator |P(Pf/|Pf|)|");
  app->add_option("--output", o.output, "Write the report here instead of stdout");
  app->add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app->add_option("--threads", o.cfg.threads, "Worker threads (1 = serial reference kernels)");
  app->add_option("--dump-regions", o.dump_regions, "Write the tested-region tree as JSON");
  app->add_flag("--timing", o.timing, "Include wall_time in the JSON report");
  return app;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  o.cfg.threads = omp_get_max_threads();
  auto app = make_app(o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app->parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app->help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "rimc: " << e.what() << '\n';
    return kExitUsage;
  }

  const Rectangle bounds{o.region[0], o.region[1], o.region[2], o.region[3]};
  if (!bounds.valid()) {
    err << "rimc: --region needs XMIN < XMAX and YMIN < YMAX\n";
    return kExitUsage;
  }
  try {
    o.cfg.validate();
  } catch (const ConfigError& e) {
    err << "rimc: " << e.what() << '\n';
    return kExitUsage;
  }

  std::optional<Pencil> pencil;
  try {
    auto a = read_matrix_market(std::filesystem::path(o.matrix_a));
    std::optional<SparseMatrix> b;
    if (!o.matrix_b.empty()) b = read_matrix_market(std::filesystem::path(o.matrix_b));
    pencil.emplace(make_pencil(std::move(a), std::move(b)));
  } catch (const Error& e) {
    err << "rimc: " << e.what() << '\n';
    return kExitUsage;
  }

  SearchResult result;
  const auto start = std::chrono::steady_clock::now();
  try {
    result = rim_c(*pencil, bounds, o.cfg);
  } catch (const Error& e) {
    err << "rimc: solver error: " << e.what() << '\n';
    return kExitSolver;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  RunReport report = make_report(result, o.cfg);
  if (o.timing) report.wall_time = elapsed.count();

  auto emit = [&](std::ostream& os) {
    if (o.format == "csv") {
      write_csv(os, report);
    } else {
      write_json(os, report);
    }
  };
  if (o.output.empty()) {
    emit(out);
  } else {
    std::ofstream file(o.output);
    if (!file) {
      err << "rimc: cannot write '" << o.output << "'\n";
      return kExitUsage;
    }
    emit(file);
  }
  if (!o.dump_regions.empty()) {
    std::ofstream file(o.dump_regions);
    if (!file) {
      err << "rimc: cannot write '" << o.dump_regions << "'\n";
      return kExitUsage;
    }
    write_regions_json(file, result.tested);
  }
  return kExitOk;
}

}  // namespace rimc::cli
