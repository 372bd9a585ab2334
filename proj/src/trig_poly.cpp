#include "wordavg/trig_poly.hpp"

#include <map>
#include <mutex>
#include <numbers>
#include <random>

namespace wordavg {

FloatPoly to_float(const ExactPoly& p) {
  std::vector<FloatPoly::Term> terms;
  terms.reserve(p.size());
  for (const auto& [k, c] : p.terms()) terms.emplace_back(k, c.to_complex());
  return FloatPoly::from_terms(std::move(terms));
}

namespace {

struct SamplePoint {
  double phi;
  double y;
  ParamValues params;
};

std::vector<SamplePoint> make_points(const ZeroTestConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  std::vector<SamplePoint> pts;
  pts.reserve(static_cast<std::size_t>(cfg.points));
  for (int i = 0; i < cfg.points; ++i) {
    SamplePoint s{};
    s.phi = draw(0.0, 2.0 * std::numbers::pi);
    s.y = draw(-1.5, 1.5);
    s.params.A = draw(0.1, 1.0);
    s.params.B = draw(0.1, 1.0);
    s.params.nu = draw(0.05, 0.5);
    s.params.omega = draw(2.0, 10.0);
    pts.push_back(s);
  }
  return pts;
}

const std::vector<SamplePoint>& points_for(const ZeroTestConfig& cfg) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, int>, std::vector<SamplePoint>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(cfg.seed, cfg.points);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make_points(cfg)).first;
  return it->second;
}

}  // namespace

bool is_zero(const FloatPoly& p, const ZeroTestConfig& cfg) {
  if (p.empty()) return true;
  for (const auto& s : points_for(cfg)) {
    if (std::abs(p.eval(s.phi, s.y, s.params)) >= cfg.tolerance) return false;
  }
  return true;
}

bool is_zero(const ExactPoly& p) { return p.empty(); }

namespace {
ZeroTestConfig& global_zero_test() {
  static ZeroTestConfig cfg;
  return cfg;
}
}  // namespace

const ZeroTestConfig& zero_test_config() { return global_zero_test(); }

void set_zero_test_config(const ZeroTestConfig& cfg) {
  if (cfg.points < 1) throw ValidationError("zero test needs at least one sample point");
  if (!(cfg.tolerance > 0.0)) throw ValidationError("zero test tolerance must be positive");
  global_zero_test() = cfg;
}

bool is_zero(const FloatPoly& p) { return is_zero(p, global_zero_test()); }

}  // namespace wordavg
