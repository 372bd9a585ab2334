#pragma once

// Truncated averaged systems dX/dt = sum beta_bar_w f_w(X) and the truncated
// change of variables x = sum kappa_w(t omega) f_w(X), assembled by streaming
// the basis levels.

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wordavg/basis.hpp"
#include "wordavg/coefficients.hpp"
#include "wordavg/model.hpp"

namespace wordavg {

template <class C>
struct AveragedSystem {
  std::size_t order = 0;
  VecField<C> field;
  ModelParams params;
};

using ExactAveraged = AveragedSystem<GaussRat>;
using FloatAveraged = AveragedSystem<Complex>;

/// Exact averaged system at t0 = 0 with A, B, nu and 1/omega symbolic.
ExactAveraged build_averaged_exact(const ExactModel& model, std::size_t n);
/// Floating averaged system for the model's numeric parameters.
FloatAveraged build_averaged(const FloatModel& model, std::size_t n, double t0 = 0.0);

/// Canonical text of an exact averaged system: one term per line, sorted by
/// monomial, rational coefficients, explicit omega^-p factors.
std::string to_canonical_text(const ExactAveraged& sys);
/// Same layout with floating coefficients printed to 17 significant digits.
std::string to_text(const FloatAveraged& sys);
/// Canonical rendering of one polynomial, without header.
std::string canonical_terms(const ExactPoly& p);

/// Numeric evaluation of a floating field on real states. Parameters are folded
/// into the coefficients once at construction.
class RealField {
 public:
  RealField() = default;
  RealField(const VecField<Complex>& field, const ParamValues& pv);

  /// Real part of the field at (phi, y).
  std::array<double, kDim> operator()(double phi, double y) const;
  /// Full complex value; the imaginary part is a rounding residue on real states.
  std::array<Complex, kDim> complex_value(double phi, double y) const;

 private:
  struct Term {
    int m;
    unsigned j;
    Complex c;
  };
  std::array<std::vector<Term>, kDim> terms_;
  int max_m_ = 0;
  unsigned max_j_ = 0;
};

/// x = G_p(X) = X + sum_{1 <= |w| <= n} kappa_w(theta_p) f_w(X) at the P table
/// phases theta_p = 2 pi p / P.
class ChangeOfVariables {
 public:
  ChangeOfVariables() = default;
  ChangeOfVariables(std::size_t order, std::size_t phases, double omega)
      : order_(order), phases_(phases), omega_(omega) {}

  std::size_t order() const { return order_; }
  std::size_t phases() const { return phases_; }
  double omega() const { return omega_; }
  /// Copy relabelled with a truncation order.
  ChangeOfVariables with_order(std::size_t order) const {
    ChangeOfVariables c = *this;
    c.order_ = order;
    return c;
  }

  /// sum kappa_w(theta_p) f_w(phi, y) over nonempty words.
  std::array<Complex, kDim> correction(std::size_t p, double phi, double y) const;
  /// Real part of G_p(X); the largest imaginary residue is reported through
  /// `imag_residue` when given.
  std::array<double, kDim> apply(std::size_t p, const std::array<double, kDim>& X,
                                 double* imag_residue = nullptr) const;

  /// Adds weight[p] * f to the phase-p map for every p; f must be free of
  /// symbolic parameters.
  void add(const VecField<Complex>& f, std::span<const Complex> weights);

 private:
  struct Component {
    std::map<MonoKey, std::vector<Complex>> coeffs;
  };
  std::size_t order_ = 0;
  std::size_t phases_ = 0;
  double omega_ = 1.0;
  std::array<Component, kDim> comps_;
};

/// Averaged systems and changes of variables of every order 1..n_max from a
/// single streamed pass over the basis levels.
struct AveragingHierarchy {
  std::vector<FloatAveraged> averaged;     // averaged[n - 1]
  std::vector<ChangeOfVariables> changes;  // changes[n - 1]
  std::vector<std::size_t> counts;         // nonzero basis functions of length n
};

/// `table` must cover words up to n_max over the model's support letters and
/// share the model's omega; its t0 is used for beta_bar as well.
AveragingHierarchy build_hierarchy(const FloatModel& model, std::size_t n_max, const KappaPhaseTable& table);

/// Change of variables of order n with its own phase table.
ChangeOfVariables build_change(const FloatModel& model, std::size_t n, double t0, std::size_t phases);

struct SeriesValue {
  std::array<double, kDim> value{};
  double imag_residue = 0.0;
};

/// W_delta(x) = delta_empty x + sum_{1 <= |w| <= n} delta_w f_w(x). Throws
/// NumericalError if the imaginary residue exceeds 1e-6, which signals broken
/// conjugation symmetry of the weights or fields.
SeriesValue word_series_eval(const std::function<Complex(const Word&)>& weights, const FloatModel& model,
                             std::size_t n, const std::array<double, kDim>& point);

}  // namespace wordavg
