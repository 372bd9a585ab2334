#pragma once

// Sparse Laurent-trigonometric polynomials in the state (phi, y) and the model
// parameters (A, B, nu, 1/omega). The phase enters through u = exp(i*phi), so
// cos(phi) = (u + 1/u)/2 and d/dphi acts on u^m as multiplication by i*m.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "wordavg/scalar.hpp"

namespace wordavg {

using MonoKey = std::uint64_t;

/// Exponents of u^m y^j A^a B^b nu^e omega^-p.
struct Monomial {
  int m = 0;
  unsigned j = 0;
  unsigned a = 0;
  unsigned b = 0;
  unsigned e = 0;
  unsigned p = 0;

  // Packed so that unsigned comparison of keys is lexicographic on (m, j, a, b, e, p).
  static constexpr int kMOffset = 128;

  MonoKey pack() const {
    if (m < -kMOffset || m >= kMOffset || j > 255 || a > 255 || b > 255 || e > 255 || p > 255) {
      throw NumericalError("Monomial: exponent out of packable range");
    }
    return (static_cast<MonoKey>(m + kMOffset) << 56) | (static_cast<MonoKey>(j) << 48) |
           (static_cast<MonoKey>(a) << 40) | (static_cast<MonoKey>(b) << 32) |
           (static_cast<MonoKey>(e) << 24) | (static_cast<MonoKey>(p) << 16);
  }

  static Monomial unpack(MonoKey k) {
    Monomial mono;
    mono.m = static_cast<int>((k >> 56) & 0xff) - kMOffset;
    mono.j = static_cast<unsigned>((k >> 48) & 0xff);
    mono.a = static_cast<unsigned>((k >> 40) & 0xff);
    mono.b = static_cast<unsigned>((k >> 32) & 0xff);
    mono.e = static_cast<unsigned>((k >> 24) & 0xff);
    mono.p = static_cast<unsigned>((k >> 16) & 0xff);
    return mono;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

inline MonoKey multiply_keys(MonoKey x, MonoKey y) {
  Monomial a = Monomial::unpack(x);
  const Monomial b = Monomial::unpack(y);
  a.m += b.m;
  a.j += b.j;
  a.a += b.a;
  a.b += b.b;
  a.e += b.e;
  a.p += b.p;
  return a.pack();
}

inline constexpr MonoKey kUnitKey = static_cast<MonoKey>(Monomial::kMOffset) << 56;
inline constexpr MonoKey kYStep = MonoKey{1} << 48;
inline constexpr MonoKey kPStep = MonoKey{1} << 16;

enum class Var { phi, y };

/// Numeric values substituted for the symbolic parameters.
struct ParamValues {
  double A = 0.0;
  double B = 0.0;
  double nu = 0.0;
  double omega = 1.0;
};

template <class C>
class TrigPoly {
 public:
  using Coeff = C;
  using Term = std::pair<MonoKey, C>;
  using Traits = CoeffTraits<C>;

  TrigPoly() = default;

  /// Accepts terms in any order with repeated keys; the result is canonical.
  static TrigPoly from_terms(std::vector<Term> terms) {
    std::stable_sort(terms.begin(), terms.end(),
                     [](const Term& l, const Term& r) { return l.first < r.first; });
    TrigPoly out;
    for (auto& t : terms) {
      if (!out.terms_.empty() && out.terms_.back().first == t.first) {
        out.terms_.back().second += t.second;
      } else {
        out.terms_.push_back(std::move(t));
      }
    }
    out.drop_zeros();
    return out;
  }

  static TrigPoly constant(const C& c) { return monomial(c, Monomial{}); }

  static TrigPoly monomial(const C& c, const Monomial& mono) {
    TrigPoly out;
    if (!Traits::is_zero(c)) out.terms_.emplace_back(mono.pack(), c);
    return out;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  C coefficient(const Monomial& mono) const {
    const MonoKey key = mono.pack();
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const Term& t, MonoKey k) { return t.first < k; });
    if (it != terms_.end() && it->first == key) return it->second;
    return Traits::zero();
  }

  friend TrigPoly operator+(const TrigPoly& p, const TrigPoly& q) { return merge(p, q, false); }
  friend TrigPoly operator-(const TrigPoly& p, const TrigPoly& q) { return merge(p, q, true); }
  friend TrigPoly operator-(const TrigPoly& p) { return p.scaled(-Traits::one()); }
  TrigPoly& operator+=(const TrigPoly& q) { return *this = merge(*this, q, false); }
  TrigPoly& operator-=(const TrigPoly& q) { return *this = merge(*this, q, true); }

  friend TrigPoly operator*(const TrigPoly& p, const TrigPoly& q) {
    if (p.size() < q.size()) return multiply(q, p);
    return multiply(p, q);
  }

  TrigPoly scaled(const C& c) const {
    TrigPoly out;
    if (Traits::is_zero(c)) return out;
    out.terms_.reserve(terms_.size());
    for (const auto& [k, v] : terms_) out.terms_.emplace_back(k, v * c);
    out.drop_zeros();
    return out;
  }

  /// Multiply by omega^-p; key order is preserved.
  TrigPoly times_inverse_omega(unsigned p) const {
    TrigPoly out = *this;
    for (auto& t : out.terms_) {
      Monomial mono = Monomial::unpack(t.first);
      mono.p += p;
      t.first = mono.pack();
    }
    return out;
  }

  /// Partial derivative; parameters are constants.
  TrigPoly partial(Var var) const {
    TrigPoly out;
    out.terms_.reserve(terms_.size());
    if (var == Var::y) {
      for (const auto& [k, c] : terms_) {
        const auto j = static_cast<long>((k >> 48) & 0xff);
        if (j == 0) continue;
        out.terms_.emplace_back(k - kYStep, c * Traits::from_int(j));
      }
    } else {
      for (const auto& [k, c] : terms_) {
        const long m = static_cast<long>((k >> 56) & 0xff) - Monomial::kMOffset;
        if (m == 0) continue;
        out.terms_.emplace_back(k, Traits::times_i(c * Traits::from_int(m)));
      }
    }
    return out;
  }

  /// Coefficient-wise conjugate with u^m -> u^-m: the complex conjugate of the
  /// function on real states.
  TrigPoly reflected_conj() const {
    std::vector<Term> terms;
    terms.reserve(terms_.size());
    for (const auto& [k, c] : terms_) {
      Monomial mono = Monomial::unpack(k);
      mono.m = -mono.m;
      terms.emplace_back(mono.pack(), Traits::conj(c));
    }
    return from_terms(std::move(terms));
  }

  /// Substitutes u = exp(i*phi) and the numeric parameter values.
  Complex eval(double phi, double y, const ParamValues& pv) const {
    if (terms_.empty()) return {0.0, 0.0};
    // Terms are grouped by m first, then j: accumulate per u-power.
    Complex total{0.0, 0.0};
    std::size_t i = 0;
    while (i < terms_.size()) {
      const Monomial head = Monomial::unpack(terms_[i].first);
      Complex group{0.0, 0.0};
      while (i < terms_.size() && Monomial::unpack(terms_[i].first).m == head.m) {
        const Monomial mono = Monomial::unpack(terms_[i].first);
        const double w = std::pow(y, mono.j) * std::pow(pv.A, mono.a) * std::pow(pv.B, mono.b) *
                         std::pow(pv.nu, mono.e) * std::pow(pv.omega, -static_cast<double>(mono.p));
        group += Traits::to_complex(terms_[i].second) * w;
        ++i;
      }
      total += group * std::polar(1.0, head.m * phi);
    }
    return total;
  }

  friend bool operator==(const TrigPoly& p, const TrigPoly& q) { return p.terms_ == q.terms_; }
  friend bool operator!=(const TrigPoly& p, const TrigPoly& q) { return !(p == q); }

 private:
  void drop_zeros() {
    std::erase_if(terms_, [](const Term& t) { return Traits::is_zero(t.second); });
  }

  static TrigPoly merge(const TrigPoly& p, const TrigPoly& q, bool subtract) {
    TrigPoly out;
    out.terms_.reserve(p.size() + q.size());
    auto a = p.terms_.begin();
    auto b = q.terms_.begin();
    while (a != p.terms_.end() || b != q.terms_.end()) {
      if (b == q.terms_.end() || (a != p.terms_.end() && a->first < b->first)) {
        out.terms_.push_back(*a++);
      } else if (a == p.terms_.end() || b->first < a->first) {
        out.terms_.emplace_back(b->first, subtract ? -b->second : b->second);
        ++b;
      } else {
        C c = subtract ? a->second - b->second : a->second + b->second;
        if (!Traits::is_zero(c)) out.terms_.emplace_back(a->first, std::move(c));
        ++a;
        ++b;
      }
    }
    return out;
  }

  // Multiplying every key by one monomial preserves key order, so p*t is sorted
  // and a product with a short factor is a handful of linear merges.
  static TrigPoly times_term(const TrigPoly& p, const Term& t) {
    TrigPoly out;
    out.terms_.reserve(p.size());
    for (const auto& [k, c] : p.terms_) out.terms_.emplace_back(multiply_keys(k, t.first), c * t.second);
    out.drop_zeros();
    return out;
  }

  static TrigPoly multiply(const TrigPoly& big, const TrigPoly& small) {
    if (small.empty()) return {};
    if (small.size() <= 8) {
      TrigPoly acc = times_term(big, small.terms_.front());
      for (std::size_t i = 1; i < small.size(); ++i) acc = merge(acc, times_term(big, small.terms_[i]), false);
      return acc;
    }
    std::vector<Term> terms;
    terms.reserve(big.size() * small.size());
    for (const auto& [kb, cb] : big.terms_) {
      for (const auto& [ks, cs] : small.terms_) terms.emplace_back(multiply_keys(kb, ks), cb * cs);
    }
    return from_terms(std::move(terms));
  }

  std::vector<Term> terms_;
};

using ExactPoly = TrigPoly<GaussRat>;
using FloatPoly = TrigPoly<Complex>;

inline constexpr std::size_t kDim = 2;
inline constexpr std::size_t kPhi = 0;
inline constexpr std::size_t kY = 1;

/// Vector field on the state (phi, y).
template <class C>
using VecField = std::array<TrigPoly<C>, kDim>;

template <class C>
using Jacobian = std::array<std::array<TrigPoly<C>, kDim>, kDim>;

template <class C>
bool is_zero_field(const VecField<C>& f) {
  return std::all_of(f.begin(), f.end(), [](const TrigPoly<C>& p) { return p.empty(); });
}

template <class C>
Jacobian<C> jacobian(const VecField<C>& g) {
  Jacobian<C> jac;
  for (std::size_t c = 0; c < kDim; ++c) {
    jac[c][kPhi] = g[c].partial(Var::phi);
    jac[c][kY] = g[c].partial(Var::y);
  }
  return jac;
}

/// g'(x) f(x) given the Jacobian of g.
template <class C>
VecField<C> apply_jacobian(const Jacobian<C>& jac, const VecField<C>& f) {
  VecField<C> out;
  for (std::size_t c = 0; c < kDim; ++c) {
    for (std::size_t d = 0; d < kDim; ++d) {
      if (jac[c][d].empty() || f[d].empty()) continue;
      out[c] += jac[c][d] * f[d];
    }
  }
  return out;
}

template <class C>
VecField<C> reflected_conj(const VecField<C>& f) {
  return {f[0].reflected_conj(), f[1].reflected_conj()};
}

/// Exact coefficients converted to doubles; monomials (and symbolic parameters) kept.
FloatPoly to_float(const ExactPoly& p);

/// Folds A, B, nu and 1/omega into the coefficients, leaving a polynomial in (u, y) only.
template <class C>
FloatPoly substitute(const TrigPoly<C>& p, const ParamValues& pv) {
  std::vector<FloatPoly::Term> terms;
  terms.reserve(p.size());
  for (const auto& [k, c] : p.terms()) {
    const Monomial mono = Monomial::unpack(k);
    const double w = std::pow(pv.A, mono.a) * std::pow(pv.B, mono.b) * std::pow(pv.nu, mono.e) *
                     std::pow(pv.omega, -static_cast<double>(mono.p));
    Monomial reduced;
    reduced.m = mono.m;
    reduced.j = mono.j;
    terms.emplace_back(reduced.pack(), CoeffTraits<C>::to_complex(c) * w);
  }
  return FloatPoly::from_terms(std::move(terms));
}

template <class C>
VecField<Complex> substitute(const VecField<C>& f, const ParamValues& pv) {
  return {substitute(f[0], pv), substitute(f[1], pv)};
}

/// Fixed-seed sample points for the probabilistic zero test.
struct ZeroTestConfig {
  std::uint64_t seed = 0x5eed2016u;
  int points = 8;
  double tolerance = 1e-12;
};

/// Probabilistic zero test for floating polynomials: zero iff |p| < tolerance at
/// every sample point. Points are drawn uniformly from phi in [0, 2pi),
/// y in [-1.5, 1.5], A in [0.1, 1], B in [0.1, 1], nu in [0.05, 0.5], omega in [2, 10].
bool is_zero(const FloatPoly& p, const ZeroTestConfig& cfg);
/// Same test with the process-wide configuration.
bool is_zero(const FloatPoly& p);

/// Process-wide zero-test configuration; set it before starting concurrent work.
const ZeroTestConfig& zero_test_config();
void set_zero_test_config(const ZeroTestConfig& cfg);
bool is_zero(const ExactPoly& p);

template <class C>
bool is_zero(const VecField<C>& f) {
  return std::all_of(f.begin(), f.end(), [](const TrigPoly<C>& p) { return is_zero(p); });
}

}  // namespace wordavg
