#pragma once

// Dense-output integration of the oscillator and of averaged systems on
// uniform output grids.

#include <string>
#include <vector>

#include "wordavg/averaging.hpp"
#include "wordavg/model.hpp"

namespace wordavg {

struct IntegratorMeta {
  std::string integrator;
  double atol = 0.0;
  double rtol = 0.0;
  std::size_t steps = 0;
};

/// Samples at t_j = j * h_out, j = 0..J, with J * h_out <= T.
struct Trajectory {
  double h_out = 0.0;
  std::vector<double> t;
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;  // columns[c][j]
  IntegratorMeta meta;

  std::size_t size() const { return t.size(); }
  const std::vector<double>& column(const std::string& name) const;
};

/// Dormand-Prince 5(4) with dense output; the right-hand side is f(t, x, dxdt).
/// Throws NumericalError on step-size underflow (below 1e-12) or a non-finite state.
Trajectory integrate_dense(const std::function<void(double, const std::vector<double>&, std::vector<double>&)>& rhs,
                           std::vector<double> x0, std::vector<std::string> names, double T, double h_out,
                           double atol, double rtol);

/// The original oscillator dz/dt = z - z^3 + A cos(nu t) + B omega cos(omega t), z(0) = z0.
/// Column "z".
Trajectory integrate_reference(const ModelParams& params, double T, double h_out, double tol = 1e-11);

/// The vibration-removed frame, y(0) = z0. Column "y".
Trajectory integrate_frame(const ModelParams& params, double T, double h_out, double tol = 1e-11);

/// dX/dt = averaged field, X(0) = x0 = (Phi, Y). Columns "Phi", "Y".
Trajectory integrate_averaged(const FloatAveraged& sys, const std::array<double, kDim>& x0, double T, double h_out,
                              double tol = 1e-10);

/// Output grid step aligned with a P-phase table: 2 pi / (P omega).
double aligned_step(double omega, std::size_t phases);

/// z~(t_j) = [G_{j mod P}(X(t_j))]_y + B sin(omega t_j) from an averaged trajectory.
/// The trajectory grid must satisfy h_out = 2 pi / (P omega). Adds columns "Y_changed"
/// and "z_tilde" to a copy of `traj`. The largest imaginary residue is returned
/// through `imag_residue` when given.
Trajectory apply_change(const Trajectory& traj, const ChangeOfVariables& cov, const ModelParams& params,
                        double* imag_residue = nullptr);

/// max_j |a_j - b_j| over samples with t in [t_lo, t_hi].
double max_abs_difference(const std::vector<double>& t, const std::vector<double>& a, const std::vector<double>& b,
                          double t_lo = 0.0, double t_hi = 1e300);

}  // namespace wordavg
