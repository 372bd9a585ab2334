#include "wordavg/coefficients.hpp"

#include <algorithm>
#include <numbers>

namespace wordavg {

namespace {

// The recursion shared by the exact and floating beta_bar. `factor(k)` is
// i/(k omega) and `phase(k)` is exp(i k omega t0).
template <class S, class Policy>
class BetaRecursion {
 public:
  BetaRecursion(std::unordered_map<Word, S, WordHash>& memo, const Policy& policy) : memo_(memo), pol_(policy) {}

  S get(const Word& w) {
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    S v = compute(w);
    memo_.emplace(w, v);
    return v;
  }

 private:
  S compute(const Word& w) {
    const S zero = CoeffTraits<S>::zero();
    const std::size_t n = w.size();
    if (n == 0) return zero;
    const std::size_t r = w.leading_zeros();
    if (r == n) return n == 1 ? CoeffTraits<S>::one() : zero;
    if (n == 1) return zero;

    const Letter k = w[r];
    const S f = pol_.factor(k);
    if (r == 0) {
      // k l1 ... ls
      const Word merged = Word{k + w[1]}.concat(w.suffix_from(2));
      return f * (pol_.phase(k) * get(w.suffix_from(1)) - get(merged));
    }
    if (r + 1 == n) {
      // 0^r k
      const S zeros = r == 1 ? CoeffTraits<S>::one() : zero;
      return f * (get(w.suffix_from(1)) - zeros * pol_.phase(k));
    }
    // 0^r k l1 ... ls
    const Word merged = w.prefix(r).appended(k + w[r + 1]).concat(w.suffix_from(r + 2));
    return f * (get(w.suffix_from(1)) - get(merged));
  }

  std::unordered_map<Word, S, WordHash>& memo_;
  const Policy& pol_;
};

struct ExactPolicy {
  GaussRat factor(Letter k) const { return GaussRat::imaginary(1, k); }
  GaussRat phase(Letter) const { return GaussRat(1); }
};

struct FloatPolicy {
  double omega;
  double t0;
  Complex factor(Letter k) const { return Complex(0.0, 1.0 / (k * omega)); }
  Complex phase(Letter k) const { return std::polar(1.0, k * omega * t0); }
};

}  // namespace

const GaussRat& BetaBarExact::coefficient(const Word& w) {
  BetaRecursion<GaussRat, ExactPolicy> rec(memo_, ExactPolicy{});
  rec.get(w);
  return memo_.at(w);
}

ExactBeta BetaBarExact::operator()(const Word& w) {
  return {coefficient(w), w.empty() ? 0u : static_cast<unsigned>(w.size() - 1)};
}

GaussRat BetaBarExact::at_omega(const Word& w, const mpq_class& omega) {
  if (sgn(omega) == 0) throw ValidationError("omega must be nonzero");
  GaussRat q = coefficient(w);
  for (std::size_t i = 1; i < w.size(); ++i) q /= GaussRat(omega);
  return q;
}

BetaBarFloat::BetaBarFloat(double omega, double t0) : omega_(omega), t0_(t0) {
  if (!(omega > 0.0)) throw ValidationError("omega must be positive");
}

Complex BetaBarFloat::operator()(const Word& w) {
  const FloatPolicy policy{omega_, t0_};
  BetaRecursion<Complex, FloatPolicy> rec(memo_, policy);
  return rec.get(w);
}

Complex beta_bar(const Word& w, double t0, double omega) { return BetaBarFloat(omega, t0)(w); }

CoeffMap<Complex> beta_bar_map(std::shared_ptr<const WordIndex> index, double omega, double t0) {
  BetaBarFloat beta(omega, t0);
  return CoeffMap<Complex>::from_function(std::move(index), [&](const Word& w) { return beta(w); });
}

CoeffMap<GaussRat> beta_bar_map_exact(std::shared_ptr<const WordIndex> index, const mpq_class& omega) {
  BetaBarExact beta;
  return CoeffMap<GaussRat>::from_function(std::move(index), [&](const Word& w) { return beta.at_omega(w, omega); });
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::pair<ExpPoly::Key, Complex>> canonical(std::vector<std::pair<ExpPoly::Key, Complex>> terms) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<ExpPoly::Key, Complex>> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const auto& t) { return t.second == Complex(0.0, 0.0); });
  return out;
}

}  // namespace

ExpPoly ExpPoly::one(double omega) {
  ExpPoly p(omega);
  p.terms_.push_back({{0u, 0}, Complex(1.0, 0.0)});
  return p;
}

ExpPoly ExpPoly::from_map(double omega, const std::map<Key, Complex>& m) {
  ExpPoly p(omega);
  for (const auto& [k, c] : m) {
    if (c != Complex(0.0, 0.0)) p.terms_.emplace_back(k, c);
  }
  return p;
}

Complex ExpPoly::coefficient(unsigned r, int m) const {
  const Key key{r, m};
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                             [](const auto& t, const Key& k) { return t.first < k; });
  if (it != terms_.end() && it->first == key) return it->second;
  return {0.0, 0.0};
}

Complex ExpPoly::operator()(double t) const {
  Complex total{0.0, 0.0};
  for (const auto& [key, c] : terms_) {
    total += c * std::pow(t, static_cast<double>(key.first)) * std::polar(1.0, key.second * omega_ * t);
  }
  return total;
}

ExpPoly ExpPoly::times_exp(int k) const {
  ExpPoly out = *this;
  for (auto& t : out.terms_) t.first.second += k;
  return out;
}

ExpPoly ExpPoly::antiderivative(double t0) const {
  std::vector<std::pair<Key, Complex>> terms;
  terms.reserve(terms_.size() * 3);
  for (const auto& [key, c] : terms_) {
    const auto [r, m] = key;
    if (m == 0) {
      terms.push_back({{r + 1, 0}, c / static_cast<double>(r + 1)});
      continue;
    }
    // int t^r e^{iat} dt = e^{iat} sum_j (-1)^j r!/(r-j)! t^{r-j} / (ia)^{j+1}
    const Complex ia(0.0, m * omega_);
    Complex coef = c / ia;
    for (unsigned j = 0; j <= r; ++j) {
      terms.push_back({{r - j, m}, coef});
      coef *= -static_cast<double>(r - j) / ia;
    }
  }
  ExpPoly out(omega_);
  out.terms_ = canonical(std::move(terms));
  const Complex at_t0 = out(t0);
  if (at_t0 != Complex(0.0, 0.0)) {
    out.terms_.push_back({{0u, 0}, -at_t0});
    out.terms_ = canonical(std::move(out.terms_));
  }
  return out;
}

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
  std::vector<std::pair<ExpPoly::Key, Complex>> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) terms.push_back({{ka.first + kb.first, ka.second + kb.second}, ca * cb});
  }
  ExpPoly out(a.omega_);
  out.terms_ = canonical(std::move(terms));
  return out;
}

ExpPoly operator+(const ExpPoly& a, const ExpPoly& b) {
  std::vector<std::pair<ExpPoly::Key, Complex>> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  ExpPoly out(a.omega_);
  out.terms_ = canonical(std::move(terms));
  return out;
}

AlphaTable::AlphaTable(double omega, double t0) : omega_(omega), t0_(t0) {
  if (!(omega > 0.0)) throw ValidationError("omega must be positive");
}

const ExpPoly& AlphaTable::operator()(const Word& w) {
  if (auto it = memo_.find(w); it != memo_.end()) return it->second;
  ExpPoly value = w.empty() ? ExpPoly::one(omega_)
                            : (*this)(w.prefix(w.size() - 1)).times_exp(w.back()).antiderivative(t0_);
  return memo_.emplace(w, std::move(value)).first->second;
}

namespace {

// Walks the word tree depth first, keeping only the alpha polynomials of the
// current path, and writes alpha at every requested time.
class AlphaTabulator {
 public:
  AlphaTabulator(const WordIndex& index, std::span<const double> times, double t0, double omega)
      : index_(index), times_(times.begin(), times.end()), t0_(t0), omega_(omega) {
    int max_abs = 0;
    for (Letter k : index.alphabet()) max_abs = std::max(max_abs, std::abs(k));
    max_m_ = max_abs * static_cast<int>(index.max_length());
    const std::size_t P = times_.size();
    const std::size_t width = static_cast<std::size_t>(2 * max_m_ + 1);
    exp_table_.resize(width * P);
    pow_table_.resize((index.max_length() + 1) * P);
    for (std::size_t p = 0; p < P; ++p) {
      for (int m = -max_m_; m <= max_m_; ++m) {
        exp_table_[static_cast<std::size_t>(m + max_m_) * P + p] = std::polar(1.0, m * omega_ * times_[p]);
      }
      for (std::size_t r = 0; r <= index.max_length(); ++r) {
        pow_table_[r * P + p] = std::pow(times_[p], static_cast<double>(r));
      }
    }
    table_.assign(index.size() * P, Complex(0.0, 0.0));
  }

  std::vector<Complex> run() {
    visit(ExpPoly::one(omega_), 0, 0);
    return std::move(table_);
  }

 private:
  void visit(const ExpPoly& poly, std::size_t len, std::uint64_t digits) {
    const std::size_t P = times_.size();
    Complex* row = table_.data() + index_.rank_of_digits(len, digits) * P;
    for (const auto& [key, c] : poly.terms()) {
      const Complex* e = exp_table_.data() + static_cast<std::size_t>(key.second + max_m_) * P;
      const double* tp = pow_table_.data() + key.first * P;
      for (std::size_t p = 0; p < P; ++p) row[p] += c * (tp[p] * e[p]);
    }
    if (len == index_.max_length()) return;
    const auto& alphabet = index_.alphabet();
    for (std::size_t d = 0; d < alphabet.size(); ++d) {
      visit(poly.times_exp(alphabet[d]).antiderivative(t0_), len + 1, digits * alphabet.size() + d);
    }
  }

  const WordIndex& index_;
  std::vector<double> times_;
  double t0_;
  double omega_;
  int max_m_ = 0;
  std::vector<Complex> exp_table_;
  std::vector<double> pow_table_;
  std::vector<Complex> table_;
};

}  // namespace

std::vector<Complex> alpha_tabulate(const WordIndex& index, std::span<const double> times, double t0,
                                    double omega) {
  if (!(omega > 0.0)) throw ValidationError("omega must be positive");
  return AlphaTabulator(index, times, t0, omega).run();
}

CoeffMap<Complex> alpha_map(std::shared_ptr<const WordIndex> index, double t, double t0, double omega) {
  const double times[] = {t};
  CoeffMap<Complex> out(index);
  out.values() = alpha_tabulate(*index, times, t0, omega);
  return out;
}

CoeffMap<Complex> kappa(std::shared_ptr<const WordIndex> index, double t, double t0, double omega) {
  const CoeffMap<Complex> sigma = conv_exp(beta_bar_map(index, omega, t0), Complex(t - t0, 0.0));
  return conv(conv_inverse(sigma), alpha_map(index, t, t0, omega));
}

KappaPhaseTable::KappaPhaseTable(std::vector<Letter> alphabet, std::size_t max_length, double omega, double t0,
                                 std::size_t phases)
    : index_(std::make_shared<WordIndex>(std::move(alphabet), max_length)),
      omega_(omega),
      t0_(t0),
      phases_(phases) {
  if (phases_ == 0) throw ValidationError("phase table needs at least one phase");
  if (!(omega > 0.0)) throw ValidationError("omega must be positive");
  const WordIndex& idx = *index_;
  const std::size_t P = phases_;
  std::vector<double> times(P);
  for (std::size_t p = 0; p < P; ++p) times[p] = phase_time(p);

  table_ = alpha_tabulate(idx, times, t0_, omega_);

  // Inverse flow of the averaged field: exp(-(t - t0) beta_bar), tabulated per phase.
  std::vector<Complex> inverse_flow(idx.size() * P, Complex(0.0, 0.0));
  for (std::size_t p = 0; p < P; ++p) inverse_flow[p] = 1.0;
  {
    const CoeffMap<Complex> beta = beta_bar_map(index_, omega_, t0_);
    CoeffMap<Complex> power = CoeffMap<Complex>::unit(index_);
    std::vector<double> factor(P, 1.0);
    for (std::size_t j = 1; j <= idx.max_length(); ++j) {
      power = conv(power, beta);
      for (std::size_t p = 0; p < P; ++p) factor[p] *= -(times[p] - t0_) / static_cast<double>(j);
      for (std::uint64_t r = 0; r < idx.size(); ++r) {
        const Complex c = power[r];
        if (c == Complex(0.0, 0.0)) continue;
        Complex* row = inverse_flow.data() + r * P;
        for (std::size_t p = 0; p < P; ++p) row[p] += factor[p] * c;
      }
    }
  }

  // kappa_w = sum_{uv = w} s_u alpha_v, longest words first so that every
  // strictly shorter suffix still holds alpha when it is read.
  std::vector<Complex> acc(P);
  for (std::size_t n = idx.max_length(); n >= 1; --n) {
    for (std::uint64_t d = 0; d < idx.count(n); ++d) {
      Complex* row = table_.data() + idx.rank_of_digits(n, d) * P;
      std::copy(row, row + P, acc.begin());
      for (std::size_t i = 1; i <= n; ++i) {
        const std::uint64_t split = idx.power(n - i);
        const Complex* s = inverse_flow.data() + idx.rank_of_digits(i, d / split) * P;
        const Complex* a = table_.data() + idx.rank_of_digits(n - i, d % split) * P;
        for (std::size_t p = 0; p < P; ++p) acc[p] += s[p] * a[p];
      }
      std::copy(acc.begin(), acc.end(), row);
    }
  }
}

double KappaPhaseTable::phase_time(std::size_t p) const {
  return 2.0 * std::numbers::pi * static_cast<double>(p) / (static_cast<double>(phases_) * omega_);
}

std::span<const Complex> KappaPhaseTable::values(const Word& w) const {
  return {table_.data() + index_->rank(w) * phases_, phases_};
}

}  // namespace wordavg
