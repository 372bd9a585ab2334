#include "wordavg/integrate.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>

namespace wordavg {

namespace odeint = boost::numeric::odeint;

const std::vector<double>& Trajectory::column(const std::string& name) const {
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (names[c] == name) return columns[c];
  }
  throw ValidationError("trajectory has no column '" + name + "'");
}

namespace {

constexpr double kMinStep = 1e-12;

void check_finite(const std::vector<double>& x, double t) {
  for (double v : x) {
    if (!std::isfinite(v)) throw NumericalError("non-finite state at t = " + std::to_string(t));
  }
}

}  // namespace

Trajectory integrate_dense(const std::function<void(double, const std::vector<double>&, std::vector<double>&)>& rhs,
                           std::vector<double> x0, std::vector<std::string> names, double T, double h_out,
                           double atol, double rtol) {
  if (!(T > 0.0)) throw ValidationError("integration horizon must be positive");
  if (!(h_out > 0.0)) throw ValidationError("output step must be positive");
  if (names.size() != x0.size()) throw ValidationError("one name per state component is required");
  check_finite(x0, 0.0);

  Trajectory out;
  out.h_out = h_out;
  out.names = std::move(names);
  out.meta = {"dopri5-dense", atol, rtol, 0};
  const auto samples = static_cast<std::size_t>(std::floor(T / h_out + 1e-9)) + 1;
  out.t.reserve(samples);
  out.columns.assign(x0.size(), {});
  for (auto& c : out.columns) c.reserve(samples);

  using State = std::vector<double>;
  auto system = [&](const State& x, State& dxdt, double t) { rhs(t, x, dxdt); };
  auto stepper = odeint::make_dense_output(atol, rtol, odeint::runge_kutta_dopri5<State>());
  stepper.initialize(x0, 0.0, std::min(h_out, 1e-3));

  State x(x0.size());
  auto record = [&](std::size_t j) {
    const double tj = static_cast<double>(j) * h_out;
    if (j == 0) {
      x = x0;
    } else {
      stepper.calc_state(tj, x);
    }
    check_finite(x, tj);
    out.t.push_back(tj);
    for (std::size_t c = 0; c < x.size(); ++c) out.columns[c].push_back(x[c]);
  };

  record(0);
  std::size_t j = 1;
  while (j < samples) {
    try {
      stepper.do_step(system);
    } catch (const odeint::step_adjustment_error& e) {
      throw NumericalError(std::string("step size control failed: ") + e.what());
    }
    ++out.meta.steps;
    check_finite(stepper.current_state(), stepper.current_time());
    if (stepper.current_time_step() < kMinStep) {
      throw NumericalError("step size underflow at t = " + std::to_string(stepper.current_time()));
    }
    while (j < samples && static_cast<double>(j) * h_out <= stepper.current_time()) record(j++);
  }
  return out;
}

Trajectory integrate_reference(const ModelParams& params, double T, double h_out, double tol) {
  params.validate();
  return integrate_dense([&](double t, const std::vector<double>& x,
                             std::vector<double>& dx) { dx[0] = vr1_rhs(x[0], t, params); },
                         {params.z0}, {"z"}, T, h_out, tol, tol);
}

Trajectory integrate_frame(const ModelParams& params, double T, double h_out, double tol) {
  params.validate();
  return integrate_dense([&](double t, const std::vector<double>& x,
                             std::vector<double>& dx) { dx[0] = vr2_rhs(x[0], t, params); },
                         {params.z0}, {"y"}, T, h_out, tol, tol);
}

Trajectory integrate_averaged(const FloatAveraged& sys, const std::array<double, kDim>& x0, double T, double h_out,
                              double tol) {
  const RealField field(sys.field, sys.params.values());
  return integrate_dense(
      [&](double, const std::vector<double>& x, std::vector<double>& dx) {
        const auto v = field(x[kPhi], x[kY]);
        dx[kPhi] = v[kPhi];
        dx[kY] = v[kY];
      },
      {x0[kPhi], x0[kY]}, {"Phi", "Y"}, T, h_out, tol, tol);
}

double aligned_step(double omega, std::size_t phases) {
  return 2.0 * std::numbers::pi / (static_cast<double>(phases) * omega);
}

Trajectory apply_change(const Trajectory& traj, const ChangeOfVariables& cov, const ModelParams& params,
                        double* imag_residue) {
  const std::size_t P = cov.phases();
  if (P == 0) throw ValidationError("change of variables has no phases");
  if (std::abs(cov.omega() - params.omega) > 1e-12 * params.omega) {
    throw ValidationError("change of variables and parameters use different omega");
  }
  const double h = aligned_step(params.omega, P);
  if (std::abs(traj.h_out - h) > 1e-12 * h || (!traj.t.empty() && traj.t.front() != 0.0)) {
    throw ValidationError("trajectory grid is not aligned with the phase table");
  }
  const auto& phi = traj.column("Phi");
  const auto& y = traj.column("Y");
  Trajectory out = traj;
  std::vector<double> changed(traj.size());
  std::vector<double> ztilde(traj.size());
  double residue = 0.0;
  for (std::size_t j = 0; j < traj.size(); ++j) {
    double r = 0.0;
    const auto x = cov.apply(j % P, {phi[j], y[j]}, &r);
    residue = std::max(residue, r);
    changed[j] = x[kY];
    ztilde[j] = x[kY] + params.B * std::sin(params.omega * traj.t[j]);
  }
  out.names.push_back("Y_changed");
  out.columns.push_back(std::move(changed));
  out.names.push_back("z_tilde");
  out.columns.push_back(std::move(ztilde));
  if (imag_residue) *imag_residue = residue;
  return out;
}

double max_abs_difference(const std::vector<double>& t, const std::vector<double>& a, const std::vector<double>& b,
                          double t_lo, double t_hi) {
  if (a.size() != b.size() || a.size() != t.size()) throw ValidationError("series lengths differ");
  double m = 0.0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (t[j] < t_lo || t[j] > t_hi) continue;
    m = std::max(m, std::abs(a[j] - b[j]));
  }
  return m;
}

}  // namespace wordavg
