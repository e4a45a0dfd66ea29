#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "planarly/diagonal.hpp"
#include "planarly/pacore.hpp"
#include "support.hpp"

#include <random>

using namespace planarly;
using namespace testsupport;
using pa::Color;
using pa::Element;
using pa::Matrix;
using num::Scalar;

TEST_CASE("matrix determinants, minors, solve") {
  Matrix m(2, 2);
  m.at(0, 0) = q(1);
  m.at(0, 1) = q(2);
  m.at(1, 0) = q(3);
  m.at(1, 1) = q(4);
  CHECK(m.det() == q(-2));
  auto minors = m.leading_principal_minors();
  REQUIRE(minors.size() == 2);
  CHECK(minors[0] == q(1));
  CHECK(minors[1] == q(-2));
  auto x = m.solve({q(5), q(11)});
  CHECK(x[0] == q(1));
  CHECK(x[1] == q(2));
  CHECK(Matrix::identity(3).rank() == 3);

  Matrix r(3, 2);
  r.at(0, 0) = q(1);
  r.at(1, 0) = q(2);
  r.at(0, 1) = q(2);
  r.at(1, 1) = q(4);
  CHECK(r.rank() == 1);
  CHECK(r.column_space_basis().cols() == 1);
}

TEST_CASE("levels are associative unital algebras") {
  auto P = diag::build(2);
  std::mt19937 rng(41);
  for (int k = 0; k <= 3; ++k) {
    for (int sign : {+1, -1}) {
      Color c{sign, k};
      Element u = P->unit(c);
      for (int it = 0; it < 6; ++it) {
        Element x = random_element(*P, c, rng), y = random_element(*P, c, rng),
                z = random_element(*P, c, rng);
        CHECK(P->mul(P->mul(x, y), z) == P->mul(x, P->mul(y, z)));
        CHECK(P->mul(u, x) == x);
        CHECK(P->mul(x, u) == x);
      }
    }
  }
}

TEST_CASE("star condition over the generating tangles") {
  auto P = diag::build(2);
  std::mt19937 rng(43);
  for (int k = 0; k <= 3; ++k) {
    for (int sign : {+1, -1}) {
      Color c{sign, k};
      for (int it = 0; it < 6; ++it) {
        Element x = random_element(*P, c, rng), y = random_element(*P, c, rng);
        CHECK(P->star(P->star(x)) == x);
        CHECK(P->star(P->mul(x, y)) == P->mul(P->star(y), P->star(x)));
        CHECK(P->star(pa::right_incl(*P, x)) == pa::right_incl(*P, P->star(x)));
        CHECK(P->star(pa::left_incl(*P, x)) == pa::left_incl(*P, P->star(x)));
        if (k >= 1) {
          CHECK(P->star(pa::right_exp(*P, x)) == pa::right_exp(*P, P->star(x)));
          CHECK(P->star(pa::left_exp(*P, x)) == pa::left_exp(*P, P->star(x)));
        }
      }
      if (k >= 2) {
        Element e = pa::jones(*P, c);
        CHECK(P->star(e) == e);
      }
      CHECK(P->star(P->unit(c)) == P->unit(c));
    }
  }
}

TEST_CASE("exchange identities among generators") {
  auto P = diag::build(2);
  std::mt19937 rng(47);
  for (int k = 0; k <= 4; ++k) {
    for (int sign : {+1, -1}) {
      Color c{sign, k};
      Element x = random_element(*P, c, rng);
      // RE . RI closes a loop on the right of k strands.
      CHECK(pa::right_exp(*P, pa::right_incl(*P, x)) == x * q(2));
      // LE . LI closes a loop on the left.
      CHECK(pa::left_exp(*P, pa::left_incl(*P, x)) == x * q(2));
    }
  }
  // E . E = delta E under M, at several levels.
  for (int k = 2; k <= 4; ++k) {
    Element e = pa::jones(*P, {+1, k});
    CHECK(P->mul(e, e) == e * q(2));
  }
}

TEST_CASE("rotations compose to the identity") {
  auto P = diag::build(2);
  std::mt19937 rng(53);
  for (int k = 1; k <= 3; ++k) {
    Color c{+1, k};
    Element x = random_element(*P, c, rng);
    CHECK(pa::rot_ccw(*P, pa::rot_cw(*P, x)) == x);
    CHECK(pa::rot_cw(*P, pa::rot_ccw(*P, x)) == x);
    Element full = x;
    for (int t = 0; t < 2 * k; ++t) full = pa::rot_cw(*P, full);
    CHECK(full == x);
  }
}

TEST_CASE("gram positivity verdicts") {
  auto P = diag::build(2);
  CHECK(pa::gram_positivity(*P, {+1, 1}) == pa::GramVerdict::positive_definite);
  CHECK(pa::gram_positivity(*P, {+1, 2}) == pa::GramVerdict::positive_definite);
  CHECK(pa::gram_positivity(*P, {-1, 2}) == pa::GramVerdict::positive_definite);

  // TL(1/2) at k=2: Gram determinant delta^2(delta^2 - 1) < 0 branch.
  auto Thalf = diag::build_tl(q(1, 2), 4);
  CHECK(pa::gram_positivity(*Thalf, {+1, 2}) == pa::GramVerdict::indefinite);
  auto T3 = diag::build_tl(q(3), 4);
  CHECK(pa::gram_positivity(*T3, {+1, 2}) == pa::GramVerdict::positive_definite);
}

TEST_CASE("check_morphism identity and failure witness") {
  auto P = diag::build(2);
  pa::ColorMaps maps;
  for (int k = 0; k <= 3; ++k)
    for (int sign : {+1, -1}) {
      Color c{sign, k};
      maps.at(c) = Matrix::identity(P->dim(c));
    }
  CHECK(pa::check_morphism(*P, *P, maps, 1, 3).pass);
  CHECK(pa::check_morphism(*P, *P, maps, 2, 3).pass);

  // Sign-flipped map on P_{+1}: fails at a multiplication tangle.
  pa::ColorMaps bad = maps;
  bad.at({+1, 1}).at(0, 0) = -q(1);
  auto rep = pa::check_morphism(*P, *P, bad, 1, 3);
  CHECK(!rep.pass);
  CHECK(rep.check == "M_+1");
}

TEST_CASE("extend_positive_morphism reproduces the identity") {
  auto P = diag::build(2);
  pa::ColorMaps pos;
  for (int k = 0; k <= 4; ++k) pos.at({+1, k}) = Matrix::identity(P->dim({+1, k}));
  auto full = pa::extend_positive_morphism(*P, *P, pos, 3);
  for (int k = 0; k <= 2; ++k) {
    Color cm{-1, k};
    CHECK(full.at(cm) == Matrix::identity(P->dim(cm)));
  }
  CHECK(pa::check_morphism(*P, *P, full, 1, 3).pass);

  // Non-equivariant positive maps are rejected.
  pa::ColorMaps bad = pos;
  bad.at({+1, 1}).at(0, 0) = q(2);
  CHECK_THROWS_AS(pa::extend_positive_morphism(*P, *P, bad, 3), num::domain_error);
}

TEST_CASE("dual instances") {
  auto P = diag::build(2, 6);
  pa::InstancePtr P0 = pa::dual(P, 0);
  CHECK(P0.get() == static_cast<const pa::Instance*>(P.get()));

  auto D1 = pa::dual(P, 1);
  for (int k = 0; k <= 3; ++k) {
    CHECK(D1->dim({+1, k}) == P->dim({-1, k}));
    CHECK(D1->dim({-1, k}) == P->dim({+1, k}));
  }
  auto [dm, dp] = pa::modulus(*D1);
  CHECK(dm == q(2));
  CHECK(dp == q(2));
  CHECK(pa::index_value(*D1) == pa::index_value(*P));

  // lambda_1(lambda_1(P)) has the dimensions of lambda_2(P).
  auto D11 = pa::dual(D1, 1);
  auto D2 = pa::dual(P, 2);
  for (int k = 0; k <= 3; ++k)
    for (int sign : {+1, -1}) CHECK(D11->dim({sign, k}) == D2->dim({sign, k}));

  // The dual is a planar algebra: unital associative levels, TL relations.
  std::mt19937 rng(59);
  for (int k = 0; k <= 2; ++k) {
    Color c{+1, k};
    Element u = D1->unit(c);
    Element x = random_element(*D1, c, rng), y = random_element(*D1, c, rng);
    CHECK(D1->mul(u, x) == x);
    CHECK(D1->mul(x, u) == x);
    CHECK(D1->mul(D1->mul(x, y), D1->mul(x, y)).color() == c);
    CHECK(pa::right_exp(*D1, pa::right_incl(*D1, x)) == x * q(2));
  }
  Element e = pa::jones(*D1, {+1, 2});
  CHECK(D1->mul(e, e) == e * q(2));
}

TEST_CASE("trace vectors and spherical checks") {
  auto P = diag::build(2);
  auto v = pa::trace_vector(*P, pa::Side::right, {+1, 1});
  REQUIRE(v.size() == 2);
  CHECK(v[0] == q(1));
  CHECK(v[1] == q(1));
  CHECK(pa::is_spherical(*P));
  CHECK(pa::is_spherical(*diag::build_tl(q(3), 4)));
}
