#pragma once

// Effective potentials of the averaged dynamics and their well structure.

#include <string>
#include <vector>

#include "wordavg/averaging.hpp"
#include "wordavg/model.hpp"

namespace wordavg {

/// Real polynomial in Y, coefficients in ascending powers.
struct RealPoly {
  std::vector<double> coeffs;

  double operator()(double y) const;
  RealPoly derivative() const;
  RealPoly antiderivative() const;  // vanishing at 0
  std::size_t degree() const;
};

/// V(Y) with V(0) = 0. Order 1 is the softened quartic
/// (-1/2 + 3/4 B^2) Y^2 + Y^4/4; order 2 adds the 1/omega correction
/// (-B + 13/6 B^3 - B^5) Y + 5/6 B^3 Y^3 - 3/5 B Y^5, all over omega.
RealPoly effective_potential(const ModelParams& params, int order);

/// Minus the antiderivative in Y of the phase-independent part of the averaged
/// Y-equation; the phase-dependent part is the (modified) slow forcing.
RealPoly potential_from_averaged(const FloatAveraged& sys);

enum class CriticalType { minimum, maximum, marginal };

struct CriticalPoint {
  double y = 0.0;
  CriticalType type = CriticalType::marginal;
  double value = 0.0;      // V(y)
  double curvature = 0.0;  // V''(y)
  /// For minima: height of the lower neighbouring barrier above the minimum;
  /// NaN when no local maximum borders the well.
  double depth = 0.0;
};

struct WellReport {
  std::vector<CriticalPoint> points;  // ascending in y
  double lo = -3.0;
  double hi = 3.0;
  std::size_t minima() const;
  /// A single minimum and no barrier: the two wells have merged.
  bool merged() const;
};

/// Real roots of p in [lo, hi], isolated between consecutive roots of p' and
/// refined by bisection and Newton; multiple roots are returned once.
std::vector<double> real_roots(const RealPoly& p, double lo, double hi);

/// Critical points of V on [lo, hi] (widened if V' does not change sign there),
/// classified by the sign of V''; |V''| < 1e-10 is reported as marginal.
WellReport well_analysis(const RealPoly& potential, double lo = -3.0, double hi = 3.0);

std::string to_string(CriticalType t);

}  // namespace wordavg
