#pragma once

#include "planarly/diagonal.hpp"
#include "planarly/pacore.hpp"

#include <random>

namespace testsupport {

using planarly::num::Scalar;
using planarly::pa::Color;
using planarly::pa::Element;
using planarly::pa::TangleExpr;

inline Scalar q(long long p, long long d = 1) { return Scalar::rational(p, d); }

inline Element basis_el(const planarly::pa::Instance& I, Color c, int i) {
  return Element::basis(c, I.dim(c), i);
}

inline Element random_element(const planarly::pa::Instance& I, Color c, std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  Element e = Element::zero(c, I.dim(c));
  for (int i = 0; i < e.dim(); ++i) e[i] = q(coeff(rng));
  return e;
}

/// Random composite with at most `max_gens` generator applications on top of
/// input leaves, staying within level bound `kmax`.
inline TangleExpr random_expr(std::mt19937& rng, int max_gens, int kmax, int* slots_used) {
  using K = TangleExpr::Kind;
  std::uniform_int_distribution<int> k0(0, 2), sgn(0, 1), oppick(0, 6);
  Color c{sgn(rng) ? +1 : -1, k0(rng)};
  TangleExpr e = TangleExpr::input((*slots_used)++, c);
  int gens = std::uniform_int_distribution<int>(1, max_gens)(rng);
  for (int g = 0; g < gens; ++g) {
    Color oc = e.out_color();
    switch (oppick(rng)) {
      case 0:
        if (oc.k + 1 <= kmax) e = TangleExpr::apply(K::right_incl, e);
        break;
      case 1:
        if (oc.k + 1 <= kmax) e = TangleExpr::apply(K::left_incl, e);
        break;
      case 2:
        if (oc.k >= 1) e = TangleExpr::apply(K::right_exp, e);
        break;
      case 3:
        if (oc.k >= 1) e = TangleExpr::apply(K::left_exp, e);
        break;
      case 4:
        e = TangleExpr::mul(e, TangleExpr::input((*slots_used)++, oc));
        break;
      case 5: {
        if (oc.k >= 1) {
          std::uniform_int_distribution<int> pos(0, 2 * oc.k - 2);
          e = TangleExpr::apply(K::cap, e, pos(rng));
        }
        break;
      }
      default: {
        if (oc.k + 1 <= kmax) {
          std::uniform_int_distribution<int> pos(0, 2 * oc.k);
          e = TangleExpr::apply(K::cup, e, pos(rng));
        }
        break;
      }
    }
  }
  return e;
}

}  // namespace testsupport
