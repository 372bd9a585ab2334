#pragma once

// Word basis functions f_w built by left extension: f_{k s} = f_s' f_k, so one
// Jacobian of each suffix function serves every letter of the alphabet.

#include <algorithm>
#include <thread>
#include <utility>
#include <vector>

#include "wordavg/model.hpp"
#include "wordavg/trig_poly.hpp"
#include "wordavg/words.hpp"

namespace wordavg {

/// Stand-in for f_empty, the identity map x -> x. The phase component is not a
/// Laurent polynomial in u, so the identity is applied to points directly.
struct BasisIdentity {
  std::array<double, kDim> apply(const std::array<double, kDim>& x) const { return x; }
  std::array<std::array<double, kDim>, kDim> jacobian() const { return {{{1.0, 0.0}, {0.0, 1.0}}}; }
};

template <class C>
struct BasisEntry {
  Word word;
  VecField<C> field;
};

/// Nonzero basis functions of one word length.
template <class C>
struct BasisLevel {
  std::size_t n = 0;
  std::vector<BasisEntry<C>> entries;
  /// Candidate words examined while building this level, zero ones included.
  std::size_t visited = 0;
};

template <class C>
BasisLevel<C> first_level(const FourierModel<C>& model) {
  BasisLevel<C> level;
  level.n = 1;
  for (const auto& [k, f] : model.fields) {
    ++level.visited;
    if (!is_zero(f)) level.entries.push_back({Word{k}, f});
  }
  return level;
}

/// Streams the nonzero functions of length prev.n + 1 to visit(word, field) in
/// suffix-major order, without storing them. Returns the number of candidates.
template <class C, class Visitor>
std::size_t for_each_extension(const BasisLevel<C>& prev, const FourierModel<C>& model, Visitor&& visit,
                               std::size_t begin = 0, std::size_t end = static_cast<std::size_t>(-1)) {
  const std::vector<Letter> letters = support_letters(model);
  end = std::min(end, prev.entries.size());
  std::size_t visited = 0;
  for (std::size_t i = begin; i < end; ++i) {
    const auto& suffix = prev.entries[i];
    const Jacobian<C> jac = jacobian(suffix.field);
    for (Letter k : letters) {
      ++visited;
      VecField<C> f = apply_jacobian(jac, model.field(k));
      if (is_zero(f)) continue;
      visit(suffix.word.prepended(k), std::move(f));
    }
  }
  return visited;
}

/// Builds the next level. Suffixes are split into contiguous chunks across
/// `threads` workers; chunk results are concatenated in order, so the output is
/// identical for any thread count.
template <class C>
BasisLevel<C> extend_level(const BasisLevel<C>& prev, const FourierModel<C>& model, unsigned threads = 1) {
  BasisLevel<C> next;
  next.n = prev.n + 1;
  const std::size_t total = prev.entries.size();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
  std::vector<std::vector<BasisEntry<C>>> parts(threads);
  std::vector<std::size_t> counts(threads, 0);
  auto work = [&](unsigned t) {
    const std::size_t lo = total * t / threads;
    const std::size_t hi = total * (t + 1) / threads;
    counts[t] = for_each_extension(
        prev, model, [&](const Word& w, VecField<C>&& f) { parts[t].push_back({w, std::move(f)}); }, lo, hi);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  for (unsigned t = 0; t < threads; ++t) {
    next.visited += counts[t];
    std::move(parts[t].begin(), parts[t].end(), std::back_inserter(next.entries));
  }
  return next;
}

/// f_w for a single word, built from the last letter leftwards; the zero field
/// for the empty word, whose identity is handled by BasisIdentity.
template <class C>
VecField<C> basis_function(const FourierModel<C>& model, const Word& w) {
  if (w.empty()) return {};
  VecField<C> f = model.field(w.back());
  for (std::size_t i = w.size() - 1; i-- > 0;) {
    if (is_zero_field(f)) break;
    f = apply_jacobian(jacobian(f), model.field(w[i]));
  }
  return f;
}

struct CensusRow {
  std::size_t n = 0;
  std::size_t count = 0;
  std::size_t visited = 0;
};

/// Number of words of each length 1..n_max with f_w not identically zero. At
/// most two consecutive levels are alive at any time; the last level is only
/// counted, never stored.
template <class C>
std::vector<CensusRow> census(const FourierModel<C>& model, std::size_t n_max, unsigned threads = 1) {
  std::vector<CensusRow> rows;
  if (n_max == 0) return rows;
  BasisLevel<C> level = first_level(model);
  rows.push_back({1, level.entries.size(), level.visited});
  for (std::size_t n = 2; n <= n_max; ++n) {
    if (n == n_max && threads == 1) {
      std::size_t count = 0;
      const std::size_t visited = for_each_extension(level, model, [&](const Word&, VecField<C>&&) { ++count; });
      rows.push_back({n, count, visited});
    } else {
      level = extend_level(level, model, threads);
      rows.push_back({n, level.entries.size(), level.visited});
    }
  }
  return rows;
}

/// acc += sum_w weight(w) f_w over one level.
template <class C, class WeightFn>
void accumulate(const BasisLevel<C>& level, WeightFn&& weight, VecField<C>& acc) {
  for (const auto& e : level.entries) {
    const C c = weight(e.word);
    if (CoeffTraits<C>::is_zero(c)) continue;
    for (std::size_t d = 0; d < kDim; ++d) {
      if (!e.field[d].empty()) acc[d] += e.field[d].scaled(c);
    }
  }
}

}  // namespace wordavg
