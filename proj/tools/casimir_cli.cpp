// Command-line driver: parameter sweeps, figure data presets and the
// validation suite.

#include <CLI11.hpp>
#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include "casimir/matsubara.hpp"
#include "casimir/sweep.hpp"
#include "casimir/validation.hpp"

namespace {

struct Overrides {
  std::string config;
  std::string out;
  std::optional<double> tol;
  std::optional<int> lmax;
  int workers = casimir::matsubara::default_worker_count();
};

void add_common(CLI::App* cmd, Overrides& o, bool with_config) {
  if (with_config) cmd->add_option("--config", o.config, "key = value run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "CSV output path (overrides the config)");
  cmd->add_option("--tol", o.tol, "relative tolerance (overrides the config)")->check(CLI::Range(1e-14, 0.5));
  cmd->add_option("--lmax", o.lmax, "multipole cutoff, 0 = automatic (overrides the config)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--workers", o.workers, "worker threads (default: CASIMIR_WORKERS or all cores)")
      ->check(CLI::PositiveNumber);
}

int run_sweep(casimir::sweep::SweepSpec spec, const Overrides& o) {
  if (!o.out.empty()) spec.output = o.out;
  if (o.tol) spec.tol = *o.tol;
  if (o.lmax) spec.lmax = *o.lmax;
  casimir::sweep::validate(spec);

  const auto start = std::chrono::steady_clock::now();
  const auto rows = casimir::sweep::run(spec, o.workers);
  casimir::sweep::write_csv_atomic(spec.output, spec, rows);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::size_t ok = 0, skipped = 0, failed = 0;
  for (const auto& r : rows) {
    if (r.succeeded()) {
      ++ok;
    } else if (r.status.rfind("skipped", 0) == 0) {
      ++skipped;
    } else {
      ++failed;
      std::cerr << "point L=" << r.L << " um R=" << r.R << " um T=" << r.T << " K: " << r.status << "\n";
    }
  }
  std::cout << "wrote " << rows.size() << " rows to " << spec.output << " (" << ok << " ok, " << skipped
            << " skipped, " << failed << " failed) in " << seconds << " s\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Thermal Casimir interaction between a sphere and a plane.\n"
      "Forces are reported attraction-positive: F = dF_free/dL, i.e. minus the\n"
      "conventional F = -dF_free/dL. theta = F(T)/F(T=0)."};
  app.require_subcommand(1);

  Overrides sweep_o, fig_o[3], val_o;
  auto* sweep_cmd = app.add_subcommand("sweep", "run a sweep described by --config");
  add_common(sweep_cmd, sweep_o, true);
  sweep_cmd->get_option("--config")->required();

  const char* fig_names[3] = {"fig1", "fig2", "fig3"};
  const char* fig_help[3] = {"theta vs L for perfect mirrors", "theta vs L for Drude mirrors",
                             "plasma/Drude force ratio vs L"};
  CLI::App* fig_cmd[3];
  for (int i = 0; i < 3; ++i) {
    fig_cmd[i] = app.add_subcommand(fig_names[i], fig_help[i]);
    add_common(fig_cmd[i], fig_o[i], true);
  }

  auto* val_cmd = app.add_subcommand("validate", "run the acceptance oracle suite");
  add_common(val_cmd, val_o, false);
  val_cmd->remove_option(val_cmd->get_option("--out"));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep_cmd) return run_sweep(casimir::sweep::load_config(sweep_o.config), sweep_o);
    for (int i = 0; i < 3; ++i) {
      if (*fig_cmd[i]) {
        const auto spec = fig_o[i].config.empty() ? casimir::sweep::preset(fig_names[i])
                                                  : casimir::sweep::load_config(fig_o[i].config);
        return run_sweep(spec, fig_o[i]);
      }
    }
    if (*val_cmd) {
      casimir::validation::ValidationOptions v;
      if (val_o.tol) v.tol = *val_o.tol;
      if (val_o.lmax) v.lmax = *val_o.lmax;
      v.workers = val_o.workers;
      const auto results = casimir::validation::run_all(v, &std::cout);
      bool all = true;
      for (const auto& r : results) all = all && r.passed;
      std::cout << (all ? "all checks passed" : "some checks FAILED") << "\n";
      return all ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
