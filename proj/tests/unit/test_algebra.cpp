#include <numbers>
#include <type_traits>

#include "doctest.h"
#include "support.hpp"
#include "wordavg/model.hpp"

using namespace testing;

namespace {

// cos(phi) = (u + 1/u) / 2
ExactPoly u_plus_inverse() { return q(1, 1, mono(1)) + q(1, 1, mono(-1)); }

template <class P, class Q>
concept Addable = requires(P p, Q q) { p + q; };

}  // namespace

TEST_CASE("ring operations stay canonical") {
  const ExactPoly s = u_plus_inverse();
  CHECK(s * s == q(1, 1, mono(2)) + q(2, 1) + q(1, 1, mono(-2)));
  CHECK((s + (-s)).empty());

  const ExactPoly left = q(1, 2, mono(1, 0, 1));
  const ExactPoly right = q(1, 2, mono(-1, 0, 1));
  const ExactPoly prod = left * right;
  CHECK(prod == q(1, 4, mono(0, 0, 2)));

  std::mt19937_64 rng(7);
  for (int i = 0; i < 5; ++i) {
    const ParamValues pv = random_params(rng);
    const double phi = std::uniform_real_distribution<double>(0, 6.28)(rng);
    const Complex direct = left.eval(phi, 0.3, pv) * right.eval(phi, 0.3, pv);
    CHECK(std::abs(prod.eval(phi, 0.3, pv) - direct) < 1e-14);
  }
}

TEST_CASE("mixed exact and floating operands do not compose") {
  static_assert(Addable<ExactPoly, ExactPoly>);
  static_assert(Addable<FloatPoly, FloatPoly>);
  static_assert(!Addable<ExactPoly, FloatPoly>);
  static_assert(!Addable<FloatPoly, ExactPoly>);
}

TEST_CASE("monomial keys order lexicographically") {
  const std::vector<Monomial> sorted = {mono(-2, 5), mono(-1), mono(0, 0, 3), mono(0, 1), mono(0, 1, 0, 0, 0, 1),
                                        mono(0, 1, 0, 1), mono(3)};
  for (std::size_t i = 1; i < sorted.size(); ++i) CHECK(sorted[i - 1].pack() < sorted[i].pack());
  CHECK(Monomial::unpack(mono(-5, 2, 1, 3, 1, 4).pack()).m == -5);
  CHECK_THROWS_AS(mono(200).pack(), NumericalError);
}

TEST_CASE("partial derivatives") {
  CHECK(q(1, 1, mono(0, 3)).partial(Var::y) == q(3, 1, mono(0, 2)));
  const ExactPoly cos_a = q(1, 2, mono(1, 0, 1)) + q(1, 2, mono(-1, 0, 1));
  CHECK(cos_a.partial(Var::phi) == qi(1, 2, mono(1, 0, 1)) - qi(1, 2, mono(-1, 0, 1)));
  CHECK(q(1, 1, mono(2, 1)).partial(Var::phi) == qi(2, 1, mono(2, 1)));
  // parameters are constants
  CHECK(q(1, 1, mono(0, 0, 2, 3, 1, 2)).partial(Var::y).empty());
}

TEST_CASE("evaluation") {
  const ParamValues pv{0.2, 0.52, 0.1, 5.0};
  CHECK(std::abs(u_plus_inverse().scaled(GaussRat::rational(1, 2)).eval(0.0, 0.0, pv) - 1.0) < 1e-15);
  const ExactPoly force = q(1, 1, mono(0, 1)) - q(1, 1, mono(0, 3));
  CHECK(std::abs(force.eval(1.234, 1.0, pv)) < 1e-15);
  const ExactPoly p = q(3, 2, mono(0, 1, 0, 2));
  CHECK(std::abs(p.eval(0.0, 2.0, pv) - 0.8112) < 1e-14);
  // omega enters as 1/omega
  CHECK(std::abs(q(1, 1, mono(0, 0, 0, 0, 0, 2)).eval(0, 0, pv) - 0.04) < 1e-15);
}

TEST_CASE("zero test") {
  std::mt19937_64 rng(3);
  const ExactPoly p = random_exact(rng);
  CHECK(is_zero(p - p));
  CHECK(is_zero(to_float(p) - to_float(p)));
  const ExactModel model = build_exact_model();
  CHECK_FALSE(is_zero(model.field(3)[kY]));
  CHECK(model.field(3)[kY] == qi(-1, 8, mono(0, 0, 0, 3)));
  CHECK(is_zero(apply_jacobian(jacobian(model.field(3)), model.field(3))));

  // floating polynomials that cancel only up to rounding are zero
  const FloatPoly a = to_float(p);
  const FloatPoly b = a.scaled(Complex(1.0 / 3.0, 0)) * FloatPoly::constant(Complex(3.0, 0));
  CHECK(is_zero(a - b));
  CHECK_FALSE(is_zero(FloatPoly::constant(Complex(1e-9, 0))));
  ZeroTestConfig other;
  other.seed = 99;
  CHECK_FALSE(is_zero(a, other));
}

TEST_CASE("canonical form survives add and subtract") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const ExactPoly p = random_exact(rng, 8);
    const ExactPoly r = random_exact(rng, 8);
    CHECK((p + r) - r == p);
    CHECK(((p + r) - r).terms() == p.terms());
  }
}

TEST_CASE("derivatives agree with finite differences") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(0, 2 * std::numbers::pi), yv(-1.5, 1.5);
  const double h = 1e-5;
  for (int i = 0; i < 40; ++i) {
    const ExactPoly p = random_exact(rng, 6);
    const ParamValues pv = random_params(rng);
    const double phi = ang(rng);
    const double y = yv(rng);
    const Complex dy = p.partial(Var::y).eval(phi, y, pv);
    const Complex fy = (p.eval(phi, y + h, pv) - p.eval(phi, y - h, pv)) / (2 * h);
    CHECK(std::abs(dy - fy) / (1 + std::abs(dy)) < 1e-6);
    const Complex dphi = p.partial(Var::phi).eval(phi, y, pv);
    const Complex fphi = (p.eval(phi + h, y, pv) - p.eval(phi - h, y, pv)) / (2 * h);
    CHECK(std::abs(dphi - fphi) / (1 + std::abs(dphi)) < 1e-6);
  }
}

TEST_CASE("conjugate-symmetric coefficients evaluate to reals") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ang(0, 2 * std::numbers::pi), yv(-1.5, 1.5);
  for (int i = 0; i < 40; ++i) {
    const ExactPoly p = random_exact(rng, 5, true);
    CHECK(p.reflected_conj() == p);
    const Complex v = p.eval(ang(rng), yv(rng), random_params(rng));
    CHECK(std::abs(v.imag()) < 1e-12);
  }
}

TEST_CASE("exact and floating evaluation agree") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 40; ++i) {
    const ExactPoly p = random_exact(rng, 7);
    const ParamValues pv = random_params(rng);
    const Complex e = p.eval(0.7, -0.4, pv);
    const Complex f = to_float(p).eval(0.7, -0.4, pv);
    const Complex s = substitute(p, pv).eval(0.7, -0.4, ParamValues{});
    CHECK(std::abs(e - f) <= 1e-10 * std::max(1.0, std::abs(e)));
    CHECK(std::abs(e - s) <= 1e-10 * std::max(1.0, std::abs(e)));
  }
}

TEST_CASE("gaussian rational text") {
  CHECK(GaussRat::rational(3, 8).to_string() == "3/8");
  CHECK(GaussRat::imaginary(-1, 2).to_string() == "-1/2i");
  CHECK((GaussRat::rational(1, 4) + GaussRat::imaginary(3, 2)).to_string() == "1/4+3/2i");
  CHECK(GaussRat().to_string() == "0");
}
