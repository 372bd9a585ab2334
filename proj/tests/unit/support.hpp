#pragma once

#include <cmath>
#include <random>

#include "wordavg/trig_poly.hpp"

namespace testing {

using namespace wordavg;

inline Monomial mono(int m = 0, unsigned j = 0, unsigned a = 0, unsigned b = 0, unsigned e = 0, unsigned p = 0) {
  Monomial x;
  x.m = m;
  x.j = j;
  x.a = a;
  x.b = b;
  x.e = e;
  x.p = p;
  return x;
}

inline ExactPoly q(long num, long den, const Monomial& mo = {}) {
  return ExactPoly::monomial(GaussRat::rational(num, den), mo);
}

inline ExactPoly qi(long num, long den, const Monomial& mo = {}) {
  return ExactPoly::monomial(GaussRat::imaginary(num, den), mo);
}

/// Random exact polynomial with small rational coefficients.
inline ExactPoly random_exact(std::mt19937_64& rng, int terms = 6, bool real_symmetric = false) {
  std::uniform_int_distribution<int> m(-3, 3), j(0, 4), small(0, 2), num(-9, 9), den(1, 5);
  std::vector<ExactPoly::Term> out;
  for (int i = 0; i < terms; ++i) {
    Monomial mo = mono(m(rng), j(rng), small(rng), small(rng), small(rng), small(rng));
    GaussRat c = GaussRat::rational(num(rng), den(rng)) + GaussRat::imaginary(num(rng), den(rng));
    out.emplace_back(mo.pack(), c);
    if (real_symmetric) {
      Monomial mirror = mo;
      mirror.m = -mo.m;
      out.emplace_back(mirror.pack(), c.conj());
    }
  }
  return ExactPoly::from_terms(std::move(out));
}

inline ParamValues random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  return {u(rng), u(rng), 0.1 * u(rng), 2.0 + 8.0 * u(rng)};
}

}  // namespace testing
