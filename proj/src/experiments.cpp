#include "wordavg/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "wordavg/coefficients.hpp"

namespace wordavg {

void ExperimentConfig::validate() const {
  params.validate();
  for (double b : B_list) {
    if (!std::isfinite(b) || b < 0.0) throw ValidationError("B values must be finite and non-negative");
  }
  if (!(T > 0.0) || !std::isfinite(T)) throw ValidationError("t-end must be positive");
  if (phases == 0) throw ValidationError("phases must be at least 1");
  if (letters > kDefaultMaxLength) {
    throw ValidationError("word length " + std::to_string(letters) + " exceeds the supported maximum " +
                          std::to_string(kDefaultMaxLength));
  }
}

CensusMode default_census_mode(std::size_t n_max, bool force_exact) {
  return force_exact || n_max <= 5 ? CensusMode::exact : CensusMode::floating;
}

std::vector<CensusRow> run_census(const ModelParams& params, std::size_t n_max, CensusMode mode, unsigned threads) {
  params.validate();
  if (n_max > kDefaultMaxLength) throw ValidationError("census length exceeds the supported maximum");
  if (mode == CensusMode::exact) return census(build_exact_model(params), n_max, threads);
  return census(build_float_model(params), n_max, threads);
}

ErrorTable run_errors(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.letters == 0) throw ValidationError("errors need words of at least one letter");
  ErrorTable table;
  table.B = cfg.B_list;
  for (std::size_t n = 1; n <= cfg.letters; ++n) table.n.push_back(n);
  table.error.assign(cfg.letters, std::vector<double>(cfg.B_list.size(), 0.0));

  const double h = aligned_step(cfg.params.omega, cfg.phases);
  for (std::size_t col = 0; col < cfg.B_list.size(); ++col) {
    ModelParams p = cfg.params;
    p.B = cfg.B_list[col];
    const Trajectory ref = integrate_reference(p, cfg.T, h);
    table.reference_steps.push_back(ref.meta.steps);
    const FloatModel model = build_float_model(p);
    AveragingHierarchy hier;
    {
      const KappaPhaseTable kappa_table(support_letters(model), cfg.letters, p.omega, 0.0, cfg.phases);
      hier = build_hierarchy(model, cfg.letters, kappa_table);
    }
    if (col == 0) table.count = hier.counts;
    for (std::size_t n = 1; n <= cfg.letters; ++n) {
      const Trajectory avg = integrate_averaged(hier.averaged[n - 1], {0.0, p.z0}, cfg.T, h);
      double residue = 0.0;
      const Trajectory changed = apply_change(avg, hier.changes[n - 1], p, &residue);
      table.max_imag_residue = std::max(table.max_imag_residue, residue);
      table.error[n - 1][col] = max_abs_difference(changed.t, ref.column("z"), changed.column("z_tilde"));
      if (n == cfg.letters) table.averaged_steps.push_back(avg.meta.steps);
    }
  }
  return table;
}

std::vector<FigureSeries> run_figure(const ExperimentConfig& cfg, std::size_t order) {
  cfg.validate();
  if (order == 0 || order > kDefaultMaxLength) throw ValidationError("figure order out of range");
  std::vector<FigureSeries> out;
  const double h = aligned_step(cfg.params.omega, cfg.phases);
  for (double B : cfg.B_list) {
    ModelParams p = cfg.params;
    p.B = B;
    const Trajectory ref = integrate_reference(p, cfg.T, h);
    const FloatModel model = build_float_model(p);
    const KappaPhaseTable kappa_table(support_letters(model), order, p.omega, 0.0, cfg.phases);
    const AveragingHierarchy hier = build_hierarchy(model, order, kappa_table);
    const Trajectory avg = integrate_averaged(hier.averaged.back(), {0.0, p.z0}, cfg.T, h);
    const Trajectory changed = apply_change(avg, hier.changes.back(), p);

    FigureSeries s;
    s.B = B;
    s.traj.h_out = h;
    s.traj.t = ref.t;
    s.traj.meta = avg.meta;
    s.traj.names = {"z_osc", "Phi", "Y", "z_avg", "z_tilde"};
    s.traj.columns = {ref.column("z"), avg.column("Phi"), avg.column("Y"), avg.column("Y"),
                      changed.column("z_tilde")};
    out.push_back(std::move(s));
  }
  return out;
}

Trajectory run_simulate(const ExperimentConfig& cfg) {
  cfg.validate();
  ModelParams p = cfg.params;
  if (!cfg.B_list.empty()) p.B = cfg.B_list.front();
  const double h = aligned_step(p.omega, cfg.phases);
  Trajectory ref = integrate_reference(p, cfg.T, h);
  if (cfg.letters == 0) return ref;
  const FloatModel model = build_float_model(p);
  const KappaPhaseTable kappa_table(support_letters(model), cfg.letters, p.omega, 0.0, cfg.phases);
  const AveragingHierarchy hier = build_hierarchy(model, cfg.letters, kappa_table);
  const Trajectory avg = integrate_averaged(hier.averaged.back(), {0.0, p.z0}, cfg.T, h);
  const Trajectory changed = apply_change(avg, hier.changes.back(), p);
  ref.names.insert(ref.names.end(), {"Phi", "Y", "z_tilde"});
  ref.columns.push_back(avg.column("Phi"));
  ref.columns.push_back(avg.column("Y"));
  ref.columns.push_back(changed.column("z_tilde"));
  return ref;
}

std::vector<PotentialRow> run_potential(const ModelParams& params, const std::vector<double>& B_list, int order) {
  std::vector<PotentialRow> rows;
  for (double B : B_list) {
    ModelParams p = params;
    p.B = B;
    p.validate();
    rows.push_back({B, order, well_analysis(effective_potential(p, order))});
  }
  return rows;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string coefficient_report(const Word& w, double t0, double omega) {
  if (!(omega > 0.0)) throw ValidationError("omega must be positive");
  std::ostringstream out;
  out << "word " << (w.size() == 0 ? "(empty)" : w.to_string()) << "\n";
  if (t0 == 0.0) {
    BetaBarExact exact;
    const ExactBeta b = exact(w);
    out << "beta_bar exact: " << b.coeff.to_string();
    if (b.omega_power != 0) out << " * omega^-" << b.omega_power;
    out << "\n";
  } else {
    out << "beta_bar exact: only available at t0 = 0\n";
  }
  const Complex v = beta_bar(w, t0, omega) + Complex(0.0, 0.0);
  out << "beta_bar float: " << format_double(v.real()) << (v.imag() < 0 ? "-" : "+")
      << format_double(std::abs(v.imag())) << "i (omega = " << format_double(omega)
      << ", t0 = " << format_double(t0) << ")\n";
  return out.str();
}

namespace {

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string seed_line(std::uint64_t seed) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "# seed=0x%llx", static_cast<unsigned long long>(seed));
  return buf;
}

}  // namespace

void write_census_csv(std::ostream& out, const std::vector<CensusRow>& rows, CensusMode mode, std::uint64_t seed) {
  out << "# mode=" << (mode == CensusMode::exact ? "exact" : "float") << "\n";
  out << seed_line(seed) << "\n";
  out << "n,count\n";
  for (const auto& r : rows) out << r.n << "," << r.count << "\n";
}

void write_errors_csv(std::ostream& out, const ErrorTable& table, const ExperimentConfig& cfg) {
  out << seed_line(cfg.seed) << "\n";
  out << "# A=" << format_double(cfg.params.A) << " nu=" << format_double(cfg.params.nu)
      << " omega=" << format_double(cfg.params.omega) << " z0=" << format_double(cfg.params.z0)
      << " t_end=" << format_double(cfg.T) << " phases=" << cfg.phases << "\n";
  out << "n,count";
  for (double b : table.B) out << ",error_B" << short_number(b);
  out << "\n";
  for (std::size_t r = 0; r < table.n.size(); ++r) {
    out << table.n[r] << "," << table.count[r];
    for (double e : table.error[r]) out << "," << format_double(e);
    out << "\n";
  }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << "\n";
  out << "# integrator=" << traj.meta.integrator << " atol=" << format_double(traj.meta.atol)
      << " rtol=" << format_double(traj.meta.rtol) << " steps=" << traj.meta.steps << "\n";
  out << "t";
  for (const auto& n : traj.names) out << "," << n;
  out << "\n";
  for (std::size_t j = 0; j < traj.size(); ++j) {
    out << format_double(traj.t[j]);
    for (const auto& col : traj.columns) out << "," << format_double(col[j]);
    out << "\n";
  }
}

void write_potential_csv(std::ostream& out, const std::vector<PotentialRow>& rows) {
  out << "B,order,critical_points,types,depths,merged\n";
  for (const auto& r : rows) {
    std::string ys;
    std::string types;
    std::string depths;
    for (const auto& c : r.wells.points) {
      const std::string sep = ys.empty() ? "" : ";";
      ys += sep + format_double(c.y);
      types += sep + to_string(c.type);
      if (c.type == CriticalType::minimum) depths += (depths.empty() ? "" : ";") + format_double(c.depth);
    }
    out << format_double(r.B) << "," << r.order << "," << ys << "," << types << "," << depths << ","
        << (r.wells.merged() ? "true" : "false") << "\n";
  }
}

}  // namespace wordavg
