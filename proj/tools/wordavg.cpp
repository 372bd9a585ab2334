// wordavg: high-order stroboscopic averaging experiments for the vibrational
// resonance model.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "wordavg/experiments.hpp"

namespace fs = std::filesystem;
using namespace wordavg;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr std::size_t kExactAverageLimit = 4;

struct Options {
  double A = 0.2;
  std::vector<double> B;
  std::optional<double> C;
  double nu = 0.1;
  double omega = 5.0;
  double z0 = -1.0;
  double t_end = 400.0;
  std::optional<std::size_t> letters;
  std::size_t phases = 40;
  bool exact = false;
  bool extended = false;
  std::uint64_t seed = 0x5eed2016u;
  unsigned threads = 1;
  std::string out_dir;

  // subcommand specific
  int order = 2;
  std::string word = "0";
  double t0 = 0.0;
};

ExperimentConfig make_config(const Options& o, std::size_t default_letters) {
  ExperimentConfig cfg;
  cfg.params.A = o.A;
  cfg.params.nu = o.nu;
  cfg.params.omega = o.omega;
  cfg.params.z0 = o.z0;
  if (o.C) {
    cfg.params = ModelParams::from_vibration_amplitude(o.A, *o.C, o.nu, o.omega, o.z0);
    cfg.B_list = {cfg.params.B};
  } else if (!o.B.empty()) {
    cfg.B_list = o.B;
    cfg.params.B = o.B.front();
  }
  cfg.T = o.t_end;
  cfg.phases = o.phases;
  cfg.letters = o.letters.value_or(default_letters);
  cfg.exact = o.exact;
  cfg.extended = o.extended;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  for (const auto& w : cfg.params.validate()) std::cerr << "warning: " << w << "\n";
  cfg.validate();
  return cfg;
}

// Runs `write` against DIR/name when --out is given, stdout otherwise.
void emit(const Options& o, const std::string& name, const std::function<void(std::ostream&)>& write) {
  if (o.out_dir.empty()) {
    write(std::cout);
    return;
  }
  fs::create_directories(o.out_dir);
  const fs::path path = fs::path(o.out_dir) / name;
  std::ofstream file(path);
  if (!file) throw ValidationError("cannot write " + path.string());
  write(file);
  std::cerr << "wrote " << path.string() << "\n";
}

std::string b_tag(double B) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", B);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-order stroboscopic averaging with word series"};
  app.require_subcommand(1);
  Options o;

  app.add_option("--A", o.A, "Slow forcing amplitude")->capture_default_str();
  auto* opt_B = app.add_option("--B", o.B, "Vibration size; repeat for several values (default 0.52 0.53)");
  auto* opt_C = app.add_option("--C", o.C, "Vibration given as C cos(omega t); B = C / omega");
  opt_B->excludes(opt_C);
  app.add_option("--nu", o.nu, "Slow frequency")->capture_default_str();
  app.add_option("--omega", o.omega, "Fast frequency")->capture_default_str();
  app.add_option("--z0", o.z0, "Initial position")->capture_default_str();
  app.add_option("--t-end,--t_end", o.t_end, "Integration horizon")->capture_default_str();
  app.add_option("--letters", o.letters, "Longest word length n");
  app.add_option("--phases", o.phases, "Phase table size P")->capture_default_str();
  app.add_flag("--exact", o.exact, "Exact rational arithmetic");
  app.add_flag("--extended", o.extended, "Unlock word lengths up to 7 by default");
  app.add_option("--seed", o.seed, "Seed of the probabilistic zero test")->capture_default_str();
  app.add_option("--threads", o.threads, "Worker threads for basis construction")->capture_default_str();
  app.add_option("--out", o.out_dir, "Output directory (default: stdout)");
  app.set_config("--config", "", "key=value parameter file (A, B or C, nu, omega, z0, t_end)");

  auto* census = app.add_subcommand("census", "Count words with a nonzero basis function");
  auto* average = app.add_subcommand("average", "Print the averaged system");
  auto* simulate = app.add_subcommand("simulate", "Integrate the oscillator and the averaged system");
  auto* errors = app.add_subcommand("errors", "Maximum errors of the averaged approximations");
  auto* figure = app.add_subcommand("figure", "Oscillatory and averaged trajectories per B");
  auto* potential = app.add_subcommand("potential", "Effective potential wells");
  auto* coeffs = app.add_subcommand("coeffs", "Dump beta_bar for one word");
  potential->add_option("--order", o.order, "Potential order, 1 or 2")->capture_default_str()->check(CLI::Range(1, 2));
  coeffs->add_option("--word", o.word, "Word as dotted letters, e.g. 0.1.-3")->capture_default_str();
  coeffs->add_option("--t0", o.t0, "Initial time")->capture_default_str();
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    ZeroTestConfig zt = zero_test_config();
    zt.seed = o.seed;
    set_zero_test_config(zt);

    if (census->parsed()) {
      const std::size_t n_max = o.letters.value_or(o.extended ? 7 : 5);
      ExperimentConfig cfg = make_config(o, n_max);
      const CensusMode mode = default_census_mode(n_max, o.exact);
      const auto rows = run_census(cfg.params, n_max, mode, o.threads);
      emit(o, "census.csv", [&](std::ostream& out) { write_census_csv(out, rows, mode, o.seed); });
    } else if (average->parsed()) {
      ExperimentConfig cfg = make_config(o, 2);
      if (o.exact) {
        if (cfg.letters > kExactAverageLimit) {
          throw ValidationError("exact averaging is limited to n <= 4 to guard against expression swell; "
                                "drop --exact for longer words");
        }
        const auto sys = build_averaged_exact(build_exact_model(cfg.params), cfg.letters);
        emit(o, "average_n" + std::to_string(cfg.letters) + ".txt",
             [&](std::ostream& out) { out << to_canonical_text(sys); });
      } else {
        const auto sys = build_averaged(build_float_model(cfg.params), cfg.letters);
        emit(o, "average_n" + std::to_string(cfg.letters) + "_B" + b_tag(cfg.params.B) + ".txt",
             [&](std::ostream& out) { out << to_text(sys); });
      }
    } else if (simulate->parsed()) {
      ExperimentConfig cfg = make_config(o, 2);
      const Trajectory traj = run_simulate(cfg);
      emit(o, "simulate_B" + b_tag(cfg.params.B) + ".csv", [&](std::ostream& out) {
        write_trajectory_csv(out, traj, {"B=" + format_double(cfg.params.B) + " letters=" + std::to_string(cfg.letters)});
      });
    } else if (errors->parsed()) {
      ExperimentConfig cfg = make_config(o, o.extended ? 7 : 4);
      const ErrorTable table = run_errors(cfg);
      emit(o, "errors.csv", [&](std::ostream& out) { write_errors_csv(out, table, cfg); });
    } else if (figure->parsed()) {
      ExperimentConfig cfg = make_config(o, 2);
      for (const auto& s : run_figure(cfg, cfg.letters)) {
        emit(o, "figure_B" + b_tag(s.B) + ".csv", [&](std::ostream& out) {
          write_trajectory_csv(out, s.traj, {"B=" + format_double(s.B) + " letters=" + std::to_string(cfg.letters)});
        });
      }
    } else if (potential->parsed()) {
      ExperimentConfig cfg = make_config(o, 2);
      const auto rows = run_potential(cfg.params, cfg.B_list, o.order);
      emit(o, "potential_order" + std::to_string(o.order) + ".csv",
           [&](std::ostream& out) { write_potential_csv(out, rows); });
    } else if (coeffs->parsed()) {
      if (!(o.omega > 0.0)) throw ValidationError("omega must be positive");
      const std::string text = coefficient_report(Word::parse(o.word), o.t0, o.omega);
      emit(o, "coeffs.txt", [&](std::ostream& out) { out << text; });
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
