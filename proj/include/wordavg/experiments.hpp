#pragma once

// Experiment drivers behind the command line tool: census, error table,
// trajectories for the figure, averaged systems, potentials, coefficient dumps.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wordavg/averaging.hpp"
#include "wordavg/basis.hpp"
#include "wordavg/integrate.hpp"
#include "wordavg/potential.hpp"

namespace wordavg {

struct ExperimentConfig {
  ModelParams params;
  std::vector<double> B_list{0.52, 0.53};
  double T = 400.0;
  std::size_t phases = 40;
  std::size_t letters = 4;  // longest word length
  bool exact = false;
  bool extended = false;
  std::uint64_t seed = 0x5eed2016u;
  unsigned threads = 1;

  void validate() const;
};

enum class CensusMode { exact, floating };

/// Exact arithmetic unless forced otherwise; floating above length 5.
CensusMode default_census_mode(std::size_t n_max, bool force_exact);
std::vector<CensusRow> run_census(const ModelParams& params, std::size_t n_max, CensusMode mode,
                                  unsigned threads = 1);

struct ErrorTable {
  std::vector<double> B;                    // one column per B
  std::vector<std::size_t> n;               // rows
  std::vector<std::size_t> count;           // nonzero basis functions of length n
  std::vector<std::vector<double>> error;   // error[row][column]
  std::vector<std::size_t> reference_steps; // per B
  std::vector<std::size_t> averaged_steps;  // per B, for the highest order
  double max_imag_residue = 0.0;
};

/// Max over the output grid of |z_ref - z~_n| for n = 1..cfg.letters and every B.
ErrorTable run_errors(const ExperimentConfig& cfg);

struct FigureSeries {
  double B = 0.0;
  Trajectory traj;  // columns z_osc, Phi, Y, z_avg, z_tilde
};

/// Reference trajectory and the order-`order` averaged solution for every B.
/// z_avg is the averaged Y seen at stroboscopic phase (the slow centre curve),
/// z_tilde applies the full periodic change of variables.
std::vector<FigureSeries> run_figure(const ExperimentConfig& cfg, std::size_t order = 2);

/// Reference and averaged trajectories for the configured B (first of B_list).
Trajectory run_simulate(const ExperimentConfig& cfg);

struct PotentialRow {
  double B = 0.0;
  int order = 1;
  WellReport wells;
};
std::vector<PotentialRow> run_potential(const ModelParams& params, const std::vector<double>& B_list, int order);

/// Text dump of beta_bar_w: exact value at t0 = 0 and the floating value.
std::string coefficient_report(const Word& w, double t0, double omega);

/// Writers. Seeds and settings go to '#' comment lines ahead of the header.
void write_census_csv(std::ostream& out, const std::vector<CensusRow>& rows, CensusMode mode, std::uint64_t seed);
void write_errors_csv(std::ostream& out, const ErrorTable& table, const ExperimentConfig& cfg);
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const std::vector<std::string>& comments = {});
void write_potential_csv(std::ostream& out, const std::vector<PotentialRow>& rows);

/// 17 significant digits.
std::string format_double(double v);

}  // namespace wordavg
