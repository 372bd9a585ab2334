#pragma once

// Scalar coefficient machinery on words: the averaged-field coefficients
// beta_bar, the iterated-integral coefficients alpha of the exact flow, the
// deconcatenation convolution and the change-of-variables coefficients kappa.

#include <cmath>
#include <map>
#include <memory>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wordavg/scalar.hpp"
#include "wordavg/words.hpp"

namespace wordavg {

// ---------------------------------------------------------------------------
// beta_bar

/// beta_bar_w at t0 = 0 equals coeff * omega^-(|w|-1); the coefficient does not
/// depend on omega.
struct ExactBeta {
  GaussRat coeff;
  unsigned omega_power = 0;
};

/// Exact beta_bar at t0 = 0. Memoized per word; letters produced by the
/// recursion (sums k + l) may lie outside the model alphabet.
/// Not thread-safe; give each worker its own instance or tabulate first.
class BetaBarExact {
 public:
  ExactBeta operator()(const Word& w);
  /// The omega-free coefficient.
  const GaussRat& coefficient(const Word& w);
  /// beta_bar_w for a given rational omega.
  GaussRat at_omega(const Word& w, const mpq_class& omega);

 private:
  std::unordered_map<Word, GaussRat, WordHash> memo_;
};

/// Floating beta_bar for arbitrary omega and t0.
class BetaBarFloat {
 public:
  BetaBarFloat(double omega, double t0);
  Complex operator()(const Word& w);
  double omega() const { return omega_; }
  double t0() const { return t0_; }

 private:
  double omega_;
  double t0_;
  std::unordered_map<Word, Complex, WordHash> memo_;
};

/// Convenience wrapper: floating beta_bar_w(t0) for frequency omega.
Complex beta_bar(const Word& w, double t0, double omega);

// ---------------------------------------------------------------------------
// Coefficient maps over a fixed alphabet, dense in word rank.

template <class T>
class CoeffMap {
 public:
  CoeffMap(std::shared_ptr<const WordIndex> index, T fill)
      : index_(std::move(index)), values_(index_->size(), fill) {}
  explicit CoeffMap(std::shared_ptr<const WordIndex> index) : CoeffMap(std::move(index), CoeffTraits<T>::zero()) {}

  /// The unit of the convolution: 1 on the empty word, 0 elsewhere.
  static CoeffMap unit(std::shared_ptr<const WordIndex> index) {
    CoeffMap out(std::move(index));
    out.values_[0] = CoeffTraits<T>::one();
    return out;
  }

  template <class Fn>
  static CoeffMap from_function(std::shared_ptr<const WordIndex> index, Fn&& fn) {
    CoeffMap out(index);
    for (std::uint64_t r = 0; r < index->size(); ++r) out.values_[r] = fn(index->word(r));
    return out;
  }

  const WordIndex& index() const { return *index_; }
  const std::shared_ptr<const WordIndex>& index_ptr() const { return index_; }
  std::size_t truncation() const { return index_->max_length(); }

  T& operator[](std::uint64_t rank) { return values_[rank]; }
  const T& operator[](std::uint64_t rank) const { return values_[rank]; }
  T& at(const Word& w) { return values_[index_->rank(w)]; }
  const T& at(const Word& w) const { return values_[index_->rank(w)]; }
  std::vector<T>& values() { return values_; }
  const std::vector<T>& values() const { return values_; }

 private:
  std::shared_ptr<const WordIndex> index_;
  std::vector<T> values_;
};

namespace detail {

inline void require_same_index(const WordIndex& a, const WordIndex& b) {
  if (&a != &b && (a.alphabet() != b.alphabet() || a.max_length() != b.max_length())) {
    throw ValidationError("coefficient maps over different alphabets or truncations");
  }
}

inline bool is_one(const GaussRat& c) { return c == GaussRat(1); }
inline bool is_one(const Complex& c) { return std::abs(c - Complex(1.0, 0.0)) <= 1e-12; }

inline GaussRat divide_by(const GaussRat& c, long k) { return c * GaussRat::rational(1, k); }
inline Complex divide_by(const Complex& c, long k) { return c / static_cast<double>(k); }

}  // namespace detail

/// (a * b)_w = sum over deconcatenations w = uv of a_u b_v.
template <class T>
CoeffMap<T> conv(const CoeffMap<T>& a, const CoeffMap<T>& b) {
  detail::require_same_index(a.index(), b.index());
  const WordIndex& idx = a.index();
  CoeffMap<T> out(a.index_ptr());
  for (std::size_t n = 0; n <= idx.max_length(); ++n) {
    for (std::uint64_t d = 0; d < idx.count(n); ++d) {
      T acc = CoeffTraits<T>::zero();
      for (std::size_t i = 0; i <= n; ++i) {
        const std::uint64_t split = idx.power(n - i);
        const T& left = a[idx.rank_of_digits(i, d / split)];
        if (CoeffTraits<T>::is_zero(left)) continue;
        acc += left * b[idx.rank_of_digits(n - i, d % split)];
      }
      out[idx.rank_of_digits(n, d)] = acc;
    }
  }
  return out;
}

/// Two-sided convolution inverse of a map with value 1 on the empty word.
template <class T>
CoeffMap<T> conv_inverse(const CoeffMap<T>& delta) {
  if (!detail::is_one(delta[0])) throw ValidationError("conv_inverse: value on the empty word must be 1");
  const WordIndex& idx = delta.index();
  CoeffMap<T> inv(delta.index_ptr());
  inv[0] = CoeffTraits<T>::one();
  for (std::size_t n = 1; n <= idx.max_length(); ++n) {
    for (std::uint64_t d = 0; d < idx.count(n); ++d) {
      T acc = CoeffTraits<T>::zero();
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t split = idx.power(n - i);
        const T& left = inv[idx.rank_of_digits(i, d / split)];
        if (CoeffTraits<T>::is_zero(left)) continue;
        acc += left * delta[idx.rank_of_digits(n - i, d % split)];
      }
      inv[idx.rank_of_digits(n, d)] = -acc;
    }
  }
  return inv;
}

/// sum_{j <= N} tau^j / j! beta^{*j}, exact at truncation N for beta vanishing on
/// the empty word.
template <class T>
CoeffMap<T> conv_exp(const CoeffMap<T>& beta, const T& tau) {
  if (!CoeffTraits<T>::is_zero(beta[0])) throw ValidationError("conv_exp: value on the empty word must be 0");
  CoeffMap<T> result = CoeffMap<T>::unit(beta.index_ptr());
  CoeffMap<T> power = result;
  T factor = CoeffTraits<T>::one();
  for (std::size_t j = 1; j <= beta.truncation(); ++j) {
    power = conv(power, beta);
    factor = detail::divide_by(factor * tau, static_cast<long>(j));
    for (std::uint64_t r = 0; r < result.values().size(); ++r) {
      if (!CoeffTraits<T>::is_zero(power[r])) result[r] += factor * power[r];
    }
  }
  return result;
}

/// Dense beta_bar over all words of an index.
CoeffMap<Complex> beta_bar_map(std::shared_ptr<const WordIndex> index, double omega, double t0);
/// Exact beta_bar for a rational omega at t0 = 0.
CoeffMap<GaussRat> beta_bar_map_exact(std::shared_ptr<const WordIndex> index, const mpq_class& omega);

// ---------------------------------------------------------------------------
// Exponential polynomials and the iterated integrals alpha.

/// sum_{r, m} c_{r,m} t^r exp(i m omega t).
class ExpPoly {
 public:
  using Key = std::pair<unsigned, int>;  // (r, m)

  explicit ExpPoly(double omega) : omega_(omega) {}
  static ExpPoly one(double omega);

  double omega() const { return omega_; }
  const std::vector<std::pair<Key, Complex>>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  Complex coefficient(unsigned r, int m) const;

  Complex operator()(double t) const;
  /// Multiplication by exp(i k omega t).
  ExpPoly times_exp(int k) const;
  /// The antiderivative that vanishes at t0.
  ExpPoly antiderivative(double t0) const;
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);
  friend ExpPoly operator+(const ExpPoly& a, const ExpPoly& b);

 private:
  static ExpPoly from_map(double omega, const std::map<Key, Complex>& m);

  double omega_;
  std::vector<std::pair<Key, Complex>> terms_;
};

/// alpha_w(t, t0): alpha_empty = 1 and alpha_{w k}(t) is the integral from t0
/// to t of exp(i k omega s) alpha_w(s) ds (the last letter is outermost).
class AlphaTable {
 public:
  AlphaTable(double omega, double t0);
  const ExpPoly& operator()(const Word& w);

 private:
  double omega_;
  double t0_;
  std::unordered_map<Word, ExpPoly, WordHash> memo_;
};

/// alpha(t, t0) on every word of the index.
CoeffMap<Complex> alpha_map(std::shared_ptr<const WordIndex> index, double t, double t0, double omega);

/// alpha at several times at once: row r (word rank) holds the values at
/// times[0..P).
std::vector<Complex> alpha_tabulate(const WordIndex& index, std::span<const double> times, double t0,
                                    double omega);

/// kappa(t omega, t0) = conv_inverse(sigma(t)) * alpha(t, t0) with
/// sigma(t) = conv_exp(beta_bar(t0), t - t0).
CoeffMap<Complex> kappa(std::shared_ptr<const WordIndex> index, double t, double t0, double omega);

/// kappa at the P equispaced phases theta_p = 2 pi p / P, i.e. at the times
/// t_p = p * 2 pi / (P omega). Computed in one batch: alpha is tabulated at all
/// phases in a single pass over the word tree, the inverse flow coefficients come
/// from exp(-(t - t0) beta_bar), and the convolution is done in place.
class KappaPhaseTable {
 public:
  KappaPhaseTable(std::vector<Letter> alphabet, std::size_t max_length, double omega, double t0,
                  std::size_t phases);

  const WordIndex& index() const { return *index_; }
  std::size_t phases() const { return phases_; }
  std::size_t max_length() const { return index_->max_length(); }
  double omega() const { return omega_; }
  double t0() const { return t0_; }
  double phase_time(std::size_t p) const;
  /// The P values of kappa_w.
  std::span<const Complex> values(const Word& w) const;

 private:
  std::shared_ptr<const WordIndex> index_;
  double omega_;
  double t0_;
  std::size_t phases_;
  std::vector<Complex> table_;
};

}  // namespace wordavg
