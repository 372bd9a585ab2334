#pragma once

// The overdamped double-well oscillator with slow forcing A cos(nu t) and fast
// vibration B omega cos(omega t), moved to the frame z = y + B sin(omega t) and
// split into Fourier fields f_k(phi, y), k = -3..3, with dphi/dt = nu.

#include <map>
#include <string>
#include <vector>

#include "wordavg/trig_poly.hpp"
#include "wordavg/words.hpp"

namespace wordavg {

struct ModelParams {
  double A = 0.2;
  double B = 0.52;
  double nu = 0.1;
  double omega = 5.0;
  double z0 = -1.0;

  /// Vibration given as C cos(omega t) instead of B omega cos(omega t).
  static ModelParams from_vibration_amplitude(double A, double C, double nu, double omega, double z0);

  /// Throws ValidationError on invalid values; returns advisory warnings
  /// (e.g. a weak frequency separation nu/omega > 0.1).
  std::vector<std::string> validate() const;

  ParamValues values() const { return {A, B, nu, omega}; }
};

template <class C>
struct FourierModel {
  std::map<Letter, VecField<C>> fields;
  ModelParams params;

  /// f_k, or the zero field for letters outside the support.
  const VecField<C>& field(Letter k) const {
    static const VecField<C> zero{};
    auto it = fields.find(k);
    return it == fields.end() ? zero : it->second;
  }
};

using ExactModel = FourierModel<GaussRat>;
using FloatModel = FourierModel<Complex>;

/// Symbolic model: A, B, nu and 1/omega stay indeterminates.
ExactModel build_exact_model(const ModelParams& params = {});
/// Numeric model: parameters substituted, polynomials in (u, y) only.
FloatModel build_float_model(const ModelParams& params);

/// Letters k with f_k not identically zero, sorted ascending.
template <class C>
std::vector<Letter> support_letters(const FourierModel<C>& model) {
  std::vector<Letter> out;
  for (const auto& [k, f] : model.fields) {
    if (!is_zero(f)) out.push_back(k);
  }
  return out;
}

/// dz/dt of the original oscillator.
double vr1_rhs(double z, double t, const ModelParams& p);
/// dy/dt in the vibration-removed frame, written out term by term.
double vr2_rhs(double y, double t, const ModelParams& p);
/// z = y + B sin(omega t).
double frame_to_z(double y, double t, const ModelParams& p);
/// y = z - B sin(omega t).
double frame_to_y(double z, double t, const ModelParams& p);

/// sum_k exp(i k omega t) f_k(phi, y), componentwise.
template <class C>
std::array<Complex, kDim> oscillatory_field(const FourierModel<C>& model, double phi, double y, double t) {
  std::array<Complex, kDim> out{};
  const ParamValues pv = model.params.values();
  for (const auto& [k, f] : model.fields) {
    const Complex phase = std::polar(1.0, k * model.params.omega * t);
    for (std::size_t c = 0; c < kDim; ++c) out[c] += phase * f[c].eval(phi, y, pv);
  }
  return out;
}

}  // namespace wordavg
