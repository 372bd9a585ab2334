#include "wordavg/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wordavg {

double RealPoly::operator()(double y) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * y + *it;
  return acc;
}

RealPoly RealPoly::derivative() const {
  RealPoly d;
  for (std::size_t i = 1; i < coeffs.size(); ++i) d.coeffs.push_back(coeffs[i] * static_cast<double>(i));
  return d;
}

RealPoly RealPoly::antiderivative() const {
  RealPoly a;
  a.coeffs.push_back(0.0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) a.coeffs.push_back(coeffs[i] / static_cast<double>(i + 1));
  return a;
}

std::size_t RealPoly::degree() const {
  std::size_t d = coeffs.size();
  while (d > 0 && coeffs[d - 1] == 0.0) --d;
  return d == 0 ? 0 : d - 1;
}

RealPoly effective_potential(const ModelParams& params, int order) {
  if (order != 1 && order != 2) throw ValidationError("effective potential order must be 1 or 2");
  const double B = params.B;
  const double B2 = B * B;
  RealPoly v{{0.0, 0.0, -0.5 + 0.75 * B2, 0.0, 0.25, 0.0}};
  if (order == 2) {
    const double inv = 1.0 / params.omega;
    v.coeffs[1] += inv * (-B + 13.0 / 6.0 * B2 * B - B2 * B2 * B);
    v.coeffs[3] += inv * (5.0 / 6.0 * B2 * B);
    v.coeffs[5] += inv * (-0.6 * B);
  }
  return v;
}

RealPoly potential_from_averaged(const FloatAveraged& sys) {
  const FloatPoly f = substitute(sys.field[kY], sys.params.values());
  RealPoly force;
  for (const auto& [k, c] : f.terms()) {
    const Monomial mono = Monomial::unpack(k);
    if (mono.m != 0) continue;
    if (force.coeffs.size() <= mono.j) force.coeffs.resize(mono.j + 1, 0.0);
    force.coeffs[mono.j] += c.real();
  }
  RealPoly v = force.antiderivative();
  for (double& c : v.coeffs) c = -c;
  return v;
}

namespace {

double refine(const RealPoly& p, const RealPoly& dp, double a, double b) {
  double fa = p(a);
  for (int it = 0; it < 200 && b - a > 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a)); ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (fa < 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  double x = 0.5 * (a + b);
  for (int it = 0; it < 3; ++it) {
    const double d = dp(x);
    if (d == 0.0) break;
    const double step = p(x) / d;
    if (!std::isfinite(step) || std::abs(step) > (b - a) + 1e-12) break;
    x -= step;
  }
  return x;
}

}  // namespace

std::vector<double> real_roots(const RealPoly& p, double lo, double hi) {
  const std::size_t deg = p.degree();
  std::vector<double> roots;
  if (deg == 0) return roots;
  if (deg == 1) {
    const double r = -p.coeffs[0] / p.coeffs[1];
    if (r >= lo && r <= hi) roots.push_back(r);
    return roots;
  }
  const RealPoly dp = p.derivative();
  std::vector<double> knots{lo};
  for (double c : real_roots(dp, lo, hi)) knots.push_back(c);
  knots.push_back(hi);

  // Scale for deciding that a stationary point of p touches zero.
  double scale = 0.0;
  for (double c : p.coeffs) scale = std::max(scale, std::abs(c));
  const double touch = 1e-14 * std::max(scale, 1.0);

  auto push = [&](double r) {
    if (roots.empty() || std::abs(roots.back() - r) > 1e-9) roots.push_back(r);
  };
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i];
    const double b = knots[i + 1];
    const double fa = p(a);
    const double fb = p(b);
    if (std::abs(fa) <= touch && (i > 0 || fa == 0.0)) push(a);
    if (fa != 0.0 && fb != 0.0 && (fa < 0) != (fb < 0) && std::abs(fa) > touch && std::abs(fb) > touch) {
      push(refine(p, dp, a, b));
    }
  }
  const double flast = p(knots.back());
  if (std::abs(flast) <= touch && knots.size() > 2) push(knots.back());
  return roots;
}

std::size_t WellReport::minima() const {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [](const CriticalPoint& c) { return c.type == CriticalType::minimum; }));
}

bool WellReport::merged() const {
  const bool has_max = std::any_of(points.begin(), points.end(),
                                   [](const CriticalPoint& c) { return c.type == CriticalType::maximum; });
  return minima() == 1 && !has_max;
}

WellReport well_analysis(const RealPoly& potential, double lo, double hi) {
  if (potential.degree() > 6) throw ValidationError("well analysis supports potentials of degree <= 6");
  const RealPoly dv = potential.derivative();
  const RealPoly ddv = dv.derivative();
  // V' must already show its asymptotic signs at both ends, otherwise a
  // critical point may lie outside the bracket.
  const std::size_t deg = dv.degree();
  const double lead = dv.coeffs.empty() ? 0.0 : dv.coeffs[deg];
  auto settled = [&](double a, double b) {
    if (deg == 0) return true;
    const bool right = (dv(b) > 0) == (lead > 0);
    const bool left = (dv(a) > 0) == ((deg % 2 == 0) == (lead > 0));
    return right && left;
  };
  std::vector<double> crit = real_roots(dv, lo, hi);
  for (int widen = 0; (crit.empty() || !settled(lo, hi)) && widen < 8; ++widen) {
    lo *= 2.0;
    hi *= 2.0;
    crit = real_roots(dv, lo, hi);
  }
  WellReport report;
  report.lo = lo;
  report.hi = hi;
  for (double y : crit) {
    CriticalPoint c;
    c.y = y;
    c.value = potential(y);
    c.curvature = ddv(y);
    if (c.curvature > 1e-10) {
      c.type = CriticalType::minimum;
    } else if (c.curvature < -1e-10) {
      c.type = CriticalType::maximum;
    } else {
      c.type = CriticalType::marginal;
    }
    report.points.push_back(c);
  }
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    auto& c = report.points[i];
    if (c.type != CriticalType::minimum) continue;
    double barrier = std::numeric_limits<double>::infinity();
    if (i > 0 && report.points[i - 1].type == CriticalType::maximum) barrier = report.points[i - 1].value;
    if (i + 1 < report.points.size() && report.points[i + 1].type == CriticalType::maximum) {
      barrier = std::min(barrier, report.points[i + 1].value);
    }
    c.depth = std::isinf(barrier) ? std::numeric_limits<double>::quiet_NaN() : barrier - c.value;
  }
  return report;
}

std::string to_string(CriticalType t) {
  switch (t) {
    case CriticalType::minimum:
      return "min";
    case CriticalType::maximum:
      return "max";
    case CriticalType::marginal:
      return "marginal";
  }
  return "?";
}

}  // namespace wordavg
