#include <set>
#include <unordered_map>

#include "doctest.h"
#include "support.hpp"
#include "wordavg/averaging.hpp"
#include "wordavg/basis.hpp"

using namespace testing;

TEST_CASE("identity element") {
  const BasisIdentity id;
  const std::array<double, kDim> x{0.3, -0.8};
  CHECK(id.apply(x) == x);
  CHECK(id.jacobian()[0][0] == 1.0);
  CHECK(id.jacobian()[0][1] == 0.0);
  CHECK(id.jacobian()[1][1] == 1.0);
  const FloatModel model = build_float_model(ModelParams{});
  const auto unit = [](const Word& w) { return w.empty() ? Complex(1, 0) : Complex(0, 0); };
  const SeriesValue v = word_series_eval(unit, model, 3, x);
  CHECK(v.value == x);
  // order zero averaged system is the zero field
  CHECK(is_zero_field(build_averaged_exact(build_exact_model(), 0).field));
}

TEST_CASE("hand-computed basis functions") {
  const ExactModel model = build_exact_model();
  const ExactPoly cos_phi_a = q(1, 2, mono(1, 0, 1)) + q(1, 2, mono(-1, 0, 1));
  // -A nu sin(phi), sin(phi) = (u - 1/u) / (2i)
  const ExactPoly minus_a_nu_sin = qi(1, 2, mono(1, 0, 1, 0, 1)) - qi(1, 2, mono(-1, 0, 1, 0, 1));
  const ExactPoly g = q(1, 1, mono(0, 1)) - q(3, 2, mono(0, 1, 0, 2)) - q(1, 1, mono(0, 3)) + cos_phi_a;
  const ExactPoly dg = q(1, 1) - q(3, 2, mono(0, 0, 0, 2)) - q(3, 1, mono(0, 2));
  const VecField<GaussRat> f00 = basis_function(model, Word{0, 0});
  CHECK(f00[kPhi].empty());
  CHECK(f00[kY] == minus_a_nu_sin + dg * g);

  CHECK(is_zero(basis_function(model, Word{3, 3})));
  const VecField<GaussRat> f31 = basis_function(model, Word{3, 1});
  CHECK(f31[kPhi].empty());
  CHECK(f31[kY] == q(3, 8, mono(0, 1, 0, 4)));
}

TEST_CASE("levels match direct construction") {
  const ExactModel model = build_exact_model();
  BasisLevel<GaussRat> level = first_level(model);
  level = extend_level(level, model);
  level = extend_level(level, model);
  for (std::size_t i = 0; i < level.entries.size(); i += 9) {
    const auto& e = level.entries[i];
    CHECK(e.field == basis_function(model, e.word));
  }
  CHECK(level.visited == 35 * 7);
}

TEST_CASE("census of the exact model") {
  const auto rows = census(build_exact_model(), 5);
  REQUIRE(rows.size() == 5);
  const std::size_t expected[] = {7, 35, 217, 1407, 9345};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(rows[i].n == i + 1);
    CHECK(rows[i].count == expected[i]);
  }
}

TEST_CASE("floating census agrees with exact census") {
  const auto exact = census(build_exact_model(), 4);
  const auto floating = census(build_float_model(ModelParams{}), 4);
  const auto threaded = census(build_float_model(ModelParams{}), 4, 3);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(exact[i].count == floating[i].count);
    CHECK(threaded[i].count == floating[i].count);
  }
}

TEST_CASE("parallel extension is deterministic") {
  const FloatModel model = build_float_model(ModelParams{});
  const auto l2 = extend_level(first_level(model), model);
  const auto serial = extend_level(l2, model, 1);
  const auto parallel = extend_level(l2, model, 4);
  REQUIRE(serial.entries.size() == parallel.entries.size());
  for (std::size_t i = 0; i < serial.entries.size(); ++i) {
    CHECK(serial.entries[i].word == parallel.entries[i].word);
    CHECK(serial.entries[i].field == parallel.entries[i].field);
  }
}

TEST_CASE("negated words give conjugate fields") {
  const ExactModel model = build_exact_model();
  BasisLevel<GaussRat> level = first_level(model);
  for (std::size_t n = 1; n <= 3; ++n) {
    if (n > 1) level = extend_level(level, model);
    std::unordered_map<Word, const VecField<GaussRat>*, WordHash> by_word;
    for (const auto& e : level.entries) by_word[e.word] = &e.field;
    for (const auto& e : level.entries) {
      auto it = by_word.find(e.word.negated());
      REQUIRE(it != by_word.end());
      CHECK(*it->second == reflected_conj(e.field));
    }
  }
  const FloatModel fmodel = build_float_model(ModelParams{});
  for (const Word& w : {Word{1, 2, -3, 0, 1}, Word{-2, 0, 3, 1, -1}, Word{0, 0, 1, 2}}) {
    const auto f = basis_function(fmodel, w);
    const auto g = basis_function(fmodel, w.negated());
    for (std::size_t d = 0; d < kDim; ++d) {
      CHECK(is_zero(g[d] - f[d].reflected_conj()));
    }
  }
}

TEST_CASE("letters outside the support give zero") {
  const FloatModel model = build_float_model(ModelParams{});
  for (const Word& w : {Word{4}, Word{0, 5}, Word{-4, 1, 0}, Word{1, 0, 7}}) {
    CHECK(is_zero(basis_function(model, w)));
  }
}

TEST_CASE("accumulation by level") {
  const ExactModel model = build_exact_model();
  BetaBarExact beta;
  VecField<GaussRat> acc{};
  accumulate(first_level(model), [&](const Word& w) { return beta.coefficient(w); }, acc);
  CHECK(acc == model.field(0));

  VecField<GaussRat> unit_acc{};
  accumulate(extend_level(first_level(model), model), [](const Word&) { return GaussRat(); }, unit_acc);
  CHECK(is_zero_field(unit_acc));
}
