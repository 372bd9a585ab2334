#include "wordavg/averaging.hpp"

#include <cstdio>
#include <sstream>

namespace wordavg {

ExactAveraged build_averaged_exact(const ExactModel& model, std::size_t n) {
  ExactAveraged sys;
  sys.order = n;
  sys.params = model.params;
  if (n == 0) return sys;
  BetaBarExact beta;
  BasisLevel<GaussRat> level = first_level(model);
  for (std::size_t len = 1; len <= n; ++len) {
    if (len > 1) level = extend_level(level, model);
    // Every word of one length carries the same power omega^-(len-1).
    VecField<GaussRat> level_sum{};
    accumulate(level, [&](const Word& w) { return beta.coefficient(w); }, level_sum);
    for (std::size_t d = 0; d < kDim; ++d) {
      sys.field[d] += level_sum[d].times_inverse_omega(static_cast<unsigned>(len - 1));
    }
  }
  return sys;
}

FloatAveraged build_averaged(const FloatModel& model, std::size_t n, double t0) {
  FloatAveraged sys;
  sys.order = n;
  sys.params = model.params;
  if (n == 0) return sys;
  BetaBarFloat beta(model.params.omega, t0);
  BasisLevel<Complex> level = first_level(model);
  for (std::size_t len = 1; len <= n; ++len) {
    if (len > 1) level = extend_level(level, model);
    accumulate(level, [&](const Word& w) { return beta(w); }, sys.field);
  }
  return sys;
}

namespace {

std::string power(const char* name, long e) {
  if (e == 1) return name;
  return std::string(name) + "^" + std::to_string(e);
}

std::string monomial_text(const Monomial& mono) {
  std::vector<std::string> f;
  if (mono.m != 0) f.push_back(power("u", mono.m));
  if (mono.j != 0) f.push_back(power("Y", mono.j));
  if (mono.a != 0) f.push_back(power("A", mono.a));
  if (mono.b != 0) f.push_back(power("B", mono.b));
  if (mono.e != 0) f.push_back(power("nu", mono.e));
  if (mono.p != 0) f.push_back("omega^-" + std::to_string(mono.p));
  if (f.empty()) return "1";
  std::string out = f.front();
  for (std::size_t i = 1; i < f.size(); ++i) out += " * " + f[i];
  return out;
}

std::string float_coeff(const Complex& c) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", c.real(), c.imag());
  return buf;
}

template <class C, class Fmt>
std::string system_text(const AveragedSystem<C>& sys, Fmt&& fmt) {
  std::ostringstream out;
  out << "# averaged system, words of length <= " << sys.order << "; u = exp(i*Phi)\n";
  const char* names[kDim] = {"dPhi/dt =", "dY/dt ="};
  for (std::size_t d = 0; d < kDim; ++d) {
    out << names[d] << "\n";
    if (sys.field[d].empty()) out << "  0\n";
    for (const auto& [k, c] : sys.field[d].terms()) {
      out << "  " << fmt(c) << " * " << monomial_text(Monomial::unpack(k)) << "\n";
    }
  }
  return out.str();
}

}  // namespace

std::string canonical_terms(const ExactPoly& p) {
  std::ostringstream out;
  if (p.empty()) out << "  0\n";
  for (const auto& [k, c] : p.terms()) out << "  " << c.to_string() << " * " << monomial_text(Monomial::unpack(k)) << "\n";
  return out.str();
}

std::string to_canonical_text(const ExactAveraged& sys) {
  return system_text(sys, [](const GaussRat& c) { return c.to_string(); });
}

std::string to_text(const FloatAveraged& sys) { return system_text(sys, float_coeff); }

// ---------------------------------------------------------------------------

RealField::RealField(const VecField<Complex>& field, const ParamValues& pv) {
  for (std::size_t d = 0; d < kDim; ++d) {
    const FloatPoly folded = substitute(field[d], pv);
    for (const auto& [k, c] : folded.terms()) {
      const Monomial mono = Monomial::unpack(k);
      terms_[d].push_back({mono.m, mono.j, c});
      max_m_ = std::max(max_m_, std::abs(mono.m));
      max_j_ = std::max(max_j_, mono.j);
    }
  }
}

std::array<Complex, kDim> RealField::complex_value(double phi, double y) const {
  // u^m for m in [-max_m, max_m] and y^j for j <= max_j
  Complex upow_store[2 * 64 + 1];
  double ypow_store[256];
  std::vector<Complex> upow_heap;
  std::vector<double> ypow_heap;
  Complex* upow = upow_store;
  double* ypow = ypow_store;
  if (max_m_ > 64) {
    upow_heap.resize(static_cast<std::size_t>(2 * max_m_ + 1));
    upow = upow_heap.data();
  }
  if (max_j_ >= 256) {
    ypow_heap.resize(max_j_ + 1);
    ypow = ypow_heap.data();
  }
  const Complex u = std::polar(1.0, phi);
  upow[max_m_] = 1.0;
  for (int m = 1; m <= max_m_; ++m) {
    upow[max_m_ + m] = upow[max_m_ + m - 1] * u;
    upow[max_m_ - m] = std::conj(upow[max_m_ + m]);
  }
  ypow[0] = 1.0;
  for (unsigned j = 1; j <= max_j_; ++j) ypow[j] = ypow[j - 1] * y;

  std::array<Complex, kDim> out{};
  for (std::size_t d = 0; d < kDim; ++d) {
    for (const auto& t : terms_[d]) out[d] += t.c * upow[t.m + max_m_] * ypow[t.j];
  }
  return out;
}

std::array<double, kDim> RealField::operator()(double phi, double y) const {
  const auto v = complex_value(phi, y);
  return {v[0].real(), v[1].real()};
}

// ---------------------------------------------------------------------------

void ChangeOfVariables::add(const VecField<Complex>& f, std::span<const Complex> weights) {
  if (weights.size() != phases_) throw ValidationError("ChangeOfVariables: weight count differs from phase count");
  for (std::size_t d = 0; d < kDim; ++d) {
    for (const auto& [k, c] : f[d].terms()) {
      const Monomial mono = Monomial::unpack(k);
      if (mono.a || mono.b || mono.e || mono.p) {
        throw ValidationError("ChangeOfVariables: fields must have numeric parameters substituted");
      }
      auto& vec = comps_[d].coeffs[k];
      if (vec.empty()) vec.assign(phases_, Complex(0.0, 0.0));
      for (std::size_t p = 0; p < phases_; ++p) vec[p] += weights[p] * c;
    }
  }
}

std::array<Complex, kDim> ChangeOfVariables::correction(std::size_t p, double phi, double y) const {
  if (p >= phases_) throw ValidationError("ChangeOfVariables: phase index out of range");
  std::array<Complex, kDim> out{};
  for (std::size_t d = 0; d < kDim; ++d) {
    for (const auto& [k, vec] : comps_[d].coeffs) {
      const Monomial mono = Monomial::unpack(k);
      out[d] += vec[p] * std::polar(1.0, mono.m * phi) * std::pow(y, static_cast<double>(mono.j));
    }
  }
  return out;
}

std::array<double, kDim> ChangeOfVariables::apply(std::size_t p, const std::array<double, kDim>& X,
                                                  double* imag_residue) const {
  const auto corr = correction(p, X[0], X[1]);
  if (imag_residue) *imag_residue = std::max(std::abs(corr[0].imag()), std::abs(corr[1].imag()));
  return {X[0] + corr[0].real(), X[1] + corr[1].real()};
}

AveragingHierarchy build_hierarchy(const FloatModel& model, std::size_t n_max, const KappaPhaseTable& table) {
  const double omega = model.params.omega;
  if (std::abs(table.omega() - omega) > 1e-12 * omega) {
    throw ValidationError("phase table and model use different omega");
  }
  if (table.max_length() < n_max) throw ValidationError("phase table shorter than the requested order");
  if (table.index().alphabet() != support_letters(model)) {
    throw ValidationError("phase table alphabet differs from the model support");
  }
  AveragingHierarchy out;
  BetaBarFloat beta(omega, table.t0());
  FloatAveraged avg;
  avg.params = model.params;
  ChangeOfVariables change(0, table.phases(), omega);

  auto absorb = [&](const Word& w, const VecField<Complex>& f) {
    const Complex b = beta(w);
    if (b != Complex(0.0, 0.0)) {
      for (std::size_t d = 0; d < kDim; ++d) {
        if (!f[d].empty()) avg.field[d] += f[d].scaled(b);
      }
    }
    change.add(f, table.values(w));
  };
  auto snapshot = [&](std::size_t n, std::size_t count) {
    avg.order = n;
    out.averaged.push_back(avg);
    out.changes.push_back(change.with_order(n));
    out.counts.push_back(count);
  };

  if (n_max == 0) return out;
  BasisLevel<Complex> level = first_level(model);
  for (const auto& e : level.entries) absorb(e.word, e.field);
  snapshot(1, level.entries.size());
  for (std::size_t n = 2; n <= n_max; ++n) {
    if (n == n_max) {
      std::size_t count = 0;
      for_each_extension(level, model, [&](const Word& w, VecField<Complex>&& f) {
        absorb(w, f);
        ++count;
      });
      snapshot(n, count);
    } else {
      level = extend_level(level, model);
      for (const auto& e : level.entries) absorb(e.word, e.field);
      snapshot(n, level.entries.size());
    }
  }
  return out;
}

ChangeOfVariables build_change(const FloatModel& model, std::size_t n, double t0, std::size_t phases) {
  if (n == 0) return ChangeOfVariables(0, phases, model.params.omega);
  const KappaPhaseTable table(support_letters(model), n, model.params.omega, t0, phases);
  return build_hierarchy(model, n, table).changes.back();
}

SeriesValue word_series_eval(const std::function<Complex(const Word&)>& weights, const FloatModel& model,
                             std::size_t n, const std::array<double, kDim>& point) {
  const ParamValues pv = model.params.values();
  std::array<Complex, kDim> acc{};
  const Complex w0 = weights(Word());
  for (std::size_t d = 0; d < kDim; ++d) acc[d] = w0 * point[d];
  if (n > 0) {
    BasisLevel<Complex> level = first_level(model);
    for (std::size_t len = 1; len <= n; ++len) {
      if (len > 1) level = extend_level(level, model);
      for (const auto& e : level.entries) {
        const Complex c = weights(e.word);
        if (c == Complex(0.0, 0.0)) continue;
        for (std::size_t d = 0; d < kDim; ++d) acc[d] += c * e.field[d].eval(point[kPhi], point[kY], pv);
      }
    }
  }
  SeriesValue out;
  for (std::size_t d = 0; d < kDim; ++d) {
    out.value[d] = acc[d].real();
    out.imag_residue = std::max(out.imag_residue, std::abs(acc[d].imag()));
  }
  if (out.imag_residue > 1e-6) {
    throw NumericalError("word series has imaginary residue " + std::to_string(out.imag_residue) +
                         "; conjugation symmetry is broken");
  }
  return out;
}

}  // namespace wordavg
