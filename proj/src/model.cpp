#include "wordavg/model.hpp"

#include <cmath>
#include <sstream>

namespace wordavg {

ModelParams ModelParams::from_vibration_amplitude(double A, double C, double nu, double omega, double z0) {
  if (!(omega > 0.0)) throw ValidationError("omega must be positive");
  return ModelParams{A, C / omega, nu, omega, z0};
}

std::vector<std::string> ModelParams::validate() const {
  for (double v : {A, B, nu, omega, z0}) {
    if (!std::isfinite(v)) throw ValidationError("model parameters must be finite");
  }
  if (!(nu > 0.0)) throw ValidationError("nu must be positive");
  if (!(omega > 0.0)) throw ValidationError("omega must be positive");
  if (!(nu < omega)) throw ValidationError("the slow frequency nu must be below omega");
  std::vector<std::string> warnings;
  if (nu / omega > 0.1) {
    std::ostringstream msg;
    msg << "weak frequency separation: nu/omega = " << nu / omega;
    warnings.push_back(msg.str());
  }
  return warnings;
}

namespace {

Monomial mono(int m, unsigned j, unsigned a, unsigned b, unsigned e = 0) {
  Monomial x;
  x.m = m;
  x.j = j;
  x.a = a;
  x.b = b;
  x.e = e;
  return x;
}

ExactPoly poly(std::initializer_list<std::pair<GaussRat, Monomial>> terms) {
  std::vector<ExactPoly::Term> v;
  for (const auto& [c, m] : terms) v.emplace_back(m.pack(), c);
  return ExactPoly::from_terms(std::move(v));
}

}  // namespace

ExactModel build_exact_model(const ModelParams& params) {
  using G = GaussRat;
  ExactModel model;
  model.params = params;

  VecField<GaussRat> f0;
  f0[kPhi] = poly({{G(1), mono(0, 0, 0, 0, 1)}});
  f0[kY] = poly({{G(1), mono(0, 1, 0, 0)},
                 {G::rational(-3, 2), mono(0, 1, 0, 2)},
                 {G(-1), mono(0, 3, 0, 0)},
                 {G::rational(1, 2), mono(1, 0, 1, 0)},
                 {G::rational(1, 2), mono(-1, 0, 1, 0)}});

  VecField<GaussRat> f1;
  f1[kY] = poly({{G::imaginary(-1, 2), mono(0, 0, 0, 1)},
                 {G::imaginary(3, 8), mono(0, 0, 0, 3)},
                 {G::imaginary(3, 2), mono(0, 2, 0, 1)}});

  VecField<GaussRat> f2;
  f2[kY] = poly({{G::rational(3, 4), mono(0, 1, 0, 2)}});

  VecField<GaussRat> f3;
  f3[kY] = poly({{G::imaginary(-1, 8), mono(0, 0, 0, 3)}});

  model.fields[0] = f0;
  model.fields[1] = f1;
  model.fields[2] = f2;
  model.fields[3] = f3;
  for (Letter k = 1; k <= 3; ++k) model.fields[-k] = reflected_conj(model.fields[k]);
  return model;
}

FloatModel build_float_model(const ModelParams& params) {
  params.validate();
  const ExactModel exact = build_exact_model(params);
  FloatModel model;
  model.params = params;
  for (const auto& [k, f] : exact.fields) model.fields[k] = substitute(f, params.values());
  return model;
}

double vr1_rhs(double z, double t, const ModelParams& p) {
  return z - z * z * z + p.A * std::cos(p.nu * t) + p.B * p.omega * std::cos(p.omega * t);
}

double vr2_rhs(double y, double t, const ModelParams& p) {
  const double B = p.B;
  const double wt = p.omega * t;
  return y - 1.5 * B * B * y - y * y * y + p.A * std::cos(p.nu * t) +
         B * (1.0 - 0.75 * B * B - 3.0 * y * y) * std::sin(wt) + 1.5 * B * B * y * std::cos(2.0 * wt) +
         0.25 * B * B * B * std::sin(3.0 * wt);
}

double frame_to_z(double y, double t, const ModelParams& p) { return y + p.B * std::sin(p.omega * t); }

double frame_to_y(double z, double t, const ModelParams& p) { return z - p.B * std::sin(p.omega * t); }

}  // namespace wordavg
