#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "planarly/diagonal.hpp"
#include "support.hpp"

#include <random>

using namespace planarly;
using namespace testsupport;
using diag::DiagonalPA;
using pa::Color;
using pa::Element;
using num::Scalar;
using signs::parse_seq;

namespace {

Element seq_el(const DiagonalPA& P, Color c, const char* s) {
  int i = P.seq_index(c, parse_seq(s));
  REQUIRE(i >= 0);
  return basis_el(P, c, i);
}

}  // namespace

TEST_CASE("multiplication acts by matrix units") {
  auto P = diag::build(2);
  Color c{+1, 1};
  Element mm = seq_el(*P, c, "--"), pp = seq_el(*P, c, "++");
  CHECK(P->mul(mm, mm) == mm);
  CHECK(P->mul(mm, pp).is_zero());
  CHECK(P->mul(pp, pp) == pp);

  // General matrix-unit law at level 2: (eps,~eta)(nu,~mu) = [eta==nu](eps,~mu).
  Color c2{+1, 2};
  const auto& seqs = P->basis_seqs(c2);
  for (std::size_t i = 0; i < seqs.size(); ++i)
    for (std::size_t j = 0; j < seqs.size(); ++j) {
      Element x = basis_el(*P, c2, static_cast<int>(i));
      Element y = basis_el(*P, c2, static_cast<int>(j));
      Element prod = P->mul(x, y);
      signs::SignSeq top_x(seqs[i].begin(), seqs[i].begin() + 2);
      signs::SignSeq bot_x(seqs[i].begin() + 2, seqs[i].end());
      signs::SignSeq top_y(seqs[j].begin(), seqs[j].begin() + 2);
      signs::SignSeq bot_y(seqs[j].begin() + 2, seqs[j].end());
      bool hit = signs::reversed(bot_x) == top_y;
      if (hit) {
        signs::SignSeq expect = signs::concat(top_x, bot_y);
        CHECK(prod == basis_el(*P, c2, P->seq_index(c2, expect)));
      } else {
        CHECK(prod.is_zero());
      }
    }
}

TEST_CASE("Jones element formula at the first level") {
  auto P = diag::build(2);
  Element e = pa::jones(*P, {+1, 2});
  // E_{+1} = sum over gamma, gamma' of (g,g,g',g').
  Color c2{+1, 2};
  Element expect = Element::zero(c2, P->dim(c2));
  for (const char* s : {"----", "--++", "++--", "++++"})
    expect = expect + seq_el(*P, c2, s);
  CHECK(e == expect);
}

TEST_CASE("modulus and index of the diagonal instance") {
  auto P = diag::build(2);
  auto [dm, dp] = pa::modulus(*P);
  CHECK(dm == q(2));
  CHECK(dp == q(2));
  CHECK(pa::index_value(*P) == q(4));
}

TEST_CASE("dimension census") {
  auto P = diag::build(2, 7);
  long long central[] = {1, 2, 6, 20, 70, 252, 924};
  for (int k = 0; k <= 6; ++k) {
    CHECK(P->dim({+1, k}) == central[k]);
    CHECK(P->dim({-1, k}) == central[k]);
  }
  auto table = diag::dims(*P, 3);
  CHECK(table.back() == std::pair<int, long long>{3, 20});
  auto P3 = diag::build(3, 2);
  CHECK(P3->dim({+1, 0}) == 1);
  CHECK(P3->dim({-1, 0}) == 1);
}

TEST_CASE("block decomposition") {
  auto P = diag::build(2);
  auto blocks = diag::block_decomposition(*P, 2, q(1, 3), q(2, 3));
  REQUIRE(blocks.size() == 3);
  CHECK(blocks[0].value == q(4, 9));
  CHECK(blocks[1].value == q(2, 9));
  CHECK(blocks[2].value == q(1, 9));
  CHECK(blocks[0].members.size() == 1);
  CHECK(blocks[1].members.size() == 2);
  CHECK(blocks[2].members.size() == 1);

  // k=1: two singleton classes.
  auto b1 = diag::block_decomposition(*P, 1, q(1, 3), q(2, 3));
  REQUIRE(b1.size() == 2);
  CHECK(b1[0].members.size() == 1);
  CHECK(b1[1].members.size() == 1);

  CHECK_THROWS_AS(diag::block_decomposition(*P, 2, q(1, 2), q(1, 2)), num::domain_error);

  // sum of squared multiplicities = dim P_{+k}, and the value grouping matches
  // the twisted-product grouping.
  auto P6 = diag::build(2, 6);
  for (int k = 0; k <= 6; ++k) {
    auto bl = diag::block_decomposition(*P6, k, q(1, 3), q(2, 3));
    long long sq = 0;
    for (auto& b : bl) {
      sq += static_cast<long long>(b.members.size()) * static_cast<long long>(b.members.size());
      for (auto& m : b.members) CHECK(diag::twisted_product(m, q(1, 3), q(2, 3)) == b.value);
    }
    CHECK(sq == P6->dim({+1, k}));
  }
}

TEST_CASE("NC-pairing criterion for the trace classes") {
  // c_eps == c_eta iff (eps, ~eta) has an NC pairing; exhaustive to k = 5.
  Scalar cm = q(1, 3), cp = q(2, 3);
  for (int k = 0; k <= 5; ++k) {
    std::vector<signs::SignSeq> all;
    signs::SignSeq w(k, 0);
    for (;;) {
      all.push_back(w);
      int i = k - 1;
      while (i >= 0 && w[i] == 1) w[i--] = 0;
      if (i < 0) break;
      ++w[i];
    }
    for (auto& e : all)
      for (auto& h : all) {
        bool values_equal = diag::twisted_product(e, cm, cp) == diag::twisted_product(h, cm, cp);
        bool nc = signs::nc_pairing_exists(signs::concat(e, signs::reversed(h)));
        CHECK(values_equal == nc);
      }
  }
}

TEST_CASE("matrix units within blocks, star is transposition") {
  auto P = diag::build(2);
  Color c2{+1, 2};
  const auto& seqs = P->basis_seqs(c2);
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    signs::SignSeq top(seqs[i].begin(), seqs[i].begin() + 2);
    signs::SignSeq botr(seqs[i].begin() + 2, seqs[i].end());
    signs::SignSeq transposed = signs::concat(signs::reversed(botr), signs::reversed(top));
    Element st = P->star(basis_el(*P, c2, static_cast<int>(i)));
    CHECK(st == basis_el(*P, c2, P->seq_index(c2, transposed)));
  }
}

TEST_CASE("trace tangles on the diagonal instance") {
  auto P = diag::build(2);
  Color c{+1, 1};
  Element x = seq_el(*P, c, "--") * q(5) + seq_el(*P, c, "++") * q(7);
  CHECK(pa::trace_right(*P, x) == q(12));
  CHECK(pa::trace_left(*P, x) == q(12));
  // TR^l == TR^r on every level (unperturbed sphericality).
  for (int k = 1; k <= 3; ++k) {
    Color ck{+1, k};
    auto tr = pa::trace_vector(*P, pa::Side::right, ck);
    auto tl_ = pa::trace_vector(*P, pa::Side::left, ck);
    CHECK(tr == tl_);
  }
  // TR^r(1_{+k}) = 2^k.
  for (int k = 0; k <= 4; ++k) {
    Scalar expect = Scalar::one();
    for (int t = 0; t < k; ++t) expect *= q(2);
    CHECK(pa::trace_right(*P, P->unit({+1, k})) == expect);
  }
  CHECK(pa::is_spherical(*P));
}

TEST_CASE("TL reference instance") {
  auto T = diag::build_tl(q(2), 6);
  long long catalan[] = {1, 1, 2, 5, 14, 42, 132};
  for (int k = 0; k <= 5; ++k) CHECK(T->dim({+1, k}) == catalan[k]);
  auto [dm, dp] = pa::modulus(*T);
  CHECK(dm == q(2));
  CHECK(dp == q(2));
  CHECK(pa::is_spherical(*T));
  auto T3 = diag::build_tl(q(3), 4);
  CHECK(pa::is_spherical(*T3));
}

TEST_CASE("Jones projection relations in TL(2) and the diagonal instance") {
  for (auto I : {diag::build_tl(q(2), 6), pa::InstancePtr(diag::build(2, 6))}) {
    auto [dm, dp] = pa::modulus(*I);
    Scalar delta = dp;
    int n = 5;
    Color cn{+1, n};
    std::vector<Element> e;
    for (int i = 1; i <= n - 1; ++i) {
      Element ei = pa::embed_to_level(*I, pa::jones(*I, {+1, i + 1}), n) * delta.inverse();
      e.push_back(ei);
    }
    for (int i = 0; i < n - 1; ++i) {
      CHECK(I->mul(e[i], e[i]) == e[i]);
      if (i + 1 < n - 1) {
        Element lhs = I->mul(e[i], I->mul(e[i + 1], e[i]));
        CHECK(lhs == e[i] * (delta * delta).inverse());
        Element rhs = I->mul(e[i + 1], I->mul(e[i], e[i + 1]));
        CHECK(rhs == e[i + 1] * (delta * delta).inverse());
      }
      for (int j = i + 2; j < n - 1; ++j)
        CHECK(I->mul(e[i], e[j]) == I->mul(e[j], e[i]));
    }
    (void)cn;
  }
}

TEST_CASE("counting-rule cross-check on random composite tangles") {
  auto P = diag::build(2, 4);
  std::mt19937 rng(2024);
  int done = 0;
  while (done < 200) {
    int slots = 0;
    pa::TangleExpr e = random_expr(rng, 4, 3, &slots);
    std::vector<Element> inputs;
    auto colors = e.input_colors();
    if (colors.size() != static_cast<std::size_t>(slots)) continue;
    bool ok = true;
    for (auto c : colors) {
      if (P->dim(c) == 0) {
        ok = false;
        break;
      }
      std::uniform_int_distribution<int> pick(0, P->dim(c) - 1);
      inputs.push_back(basis_el(*P, c, pick(rng)));
    }
    if (!ok) continue;
    Element via_ops = pa::eval(*P, e, inputs);
    Element via_counting = diag::counting_eval(*P, e, inputs);
    CHECK(via_ops == via_counting);
    ++done;
  }
}

TEST_CASE("eval examples") {
  auto P = diag::build(2);
  Color c{+1, 1};
  using K = pa::TangleExpr::Kind;
  // identity tangle
  auto idexpr = pa::TangleExpr::apply(K::ident, pa::TangleExpr::input(0, c));
  Element x = seq_el(*P, c, "--") * q(3) + seq_el(*P, c, "++") * q(4);
  CHECK(pa::eval(*P, idexpr, {x}) == x);
  // RE_{+2} . RI_{+1} = (right-closed loop) = delta_- = 2
  auto reri = pa::TangleExpr::apply(K::right_exp, pa::TangleExpr::apply(K::right_incl,
                                                                        pa::TangleExpr::input(0, c)));
  CHECK(pa::eval(*P, reri, {x}) == x * q(2));
  // TR^r_{+1} of (-,-) is 1
  auto tr = pa::TangleExpr::apply(K::right_exp, pa::TangleExpr::input(0, c));
  CHECK(pa::eval(*P, tr, {seq_el(*P, c, "--")}) == P->unit({+1, 0}));
}

TEST_CASE("multilinearity of eval") {
  auto P = diag::build(2);
  std::mt19937 rng(5);
  Color c{+1, 2};
  using K = pa::TangleExpr::Kind;
  auto e = pa::TangleExpr::apply(K::left_exp,
                                 pa::TangleExpr::mul(pa::TangleExpr::input(0, c),
                                                     pa::TangleExpr::input(1, c)));
  for (int it = 0; it < 10; ++it) {
    Element x = random_element(*P, c, rng), y = random_element(*P, c, rng),
            z = random_element(*P, c, rng);
    Scalar a = q(3), b = q(-2);
    Element lhs = pa::eval(*P, e, {x * a + y * b, z});
    Element rhs = pa::eval(*P, e, {x, z}) * a + pa::eval(*P, e, {y, z}) * b;
    CHECK(lhs == rhs);
  }
}
