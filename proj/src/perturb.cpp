#include "planarly/perturb.hpp"

#include <algorithm>

namespace planarly::perturb {

using num::domain_error;
using pa::Instance;
using pa::InstancePtr;
using pa::Matrix;

Element level_element(const Instance& I, const Element& z, const Element& z_inv, Color c) {
  std::vector<const Element*> boxes(c.k);
  for (int i = 0; i < c.k; ++i) {
    bool plain = (i % 2 == 0) == (c.sign > 0);
    boxes[i] = plain ? &z : &z_inv;
  }
  return I.decorated_identity(c, boxes);
}

Element element_inverse(const Instance& I, const Element& x) {
  Color c = x.color();
  int d = I.dim(c);
  Matrix lmul(d, d);
  for (int j = 0; j < d; ++j) {
    Element col = I.mul(x, Element::basis(c, d, j));
    for (int i = 0; i < d; ++i) lmul.at(i, j) = col[i];
  }
  return Element(c, lmul.solve(I.unit(c).coeffs()));
}

Weight make_weight(InstancePtr inst, const Element& z, int K) {
  if (z.color() != Color{+1, 1}) throw domain_error("weight: z must live in P_{+1}");
  Element z_inv = element_inverse(*inst, z);
  for (int k = 0; k <= std::min(K, inst->level_max()); ++k) {
    for (int sign : {+1, -1}) {
      Color c{sign, k};
      Element zk = level_element(*inst, z, z_inv, c);
      int d = inst->dim(c);
      for (int i = 0; i < d; ++i) {
        Element b = Element::basis(c, d, i);
        if (inst->mul(zk, b) != inst->mul(b, zk))
          throw domain_error("weight: level element not central at " + c.str() +
                             ", basis index " + std::to_string(i));
      }
    }
  }
  return Weight{std::move(inst), z, std::move(z_inv), K};
}

Decomposition make_decomposition(const Instance& I, const Element& a, const Element& b) {
  if (a.color() != Color{+1, 1} || b.color() != Color{+1, 1})
    throw domain_error("decomposition: entries must live in P_{+1}");
  Element ab = I.mul(a, b);
  if (ab != I.mul(b, a)) throw domain_error("decomposition: entries must commute");
  Decomposition d{a, b, element_inverse(I, a), element_inverse(I, b), ab, element_inverse(I, ab)};
  return d;
}

bool element_positive(const Instance& I, const Element& x) {
  Color c = x.color();
  int d = I.dim(c);
  Matrix form(d, d);
  for (int i = 0; i < d; ++i) {
    Element bi = I.star(Element::basis(c, d, i));
    for (int j = 0; j < d; ++j) {
      Element bj = Element::basis(c, d, j);
      form.at(i, j) = pa::trace_right(I, I.mul(bi, I.mul(x, bj)));
    }
  }
  return pa::minor_verdict(form) == pa::GramVerdict::positive_definite;
}

Element element_sqrt(const Instance& I, const Element& x) {
  Color c = x.color();
  int d = I.dim(c);
  for (int i = 0; i < d; ++i) {
    Element bi = Element::basis(c, d, i);
    if (I.star(bi) != bi || I.mul(bi, bi) != bi)
      throw domain_error("element_sqrt: basis is not an orthogonal idempotent family");
    for (int j = 0; j < d; ++j) {
      if (j == i) continue;
      if (!I.mul(bi, Element::basis(c, d, j)).is_zero())
        throw domain_error("element_sqrt: basis is not an orthogonal idempotent family");
    }
  }
  Element out = Element::zero(c, d);
  for (int i = 0; i < d; ++i) out[i] = num::sqrt(x[i]);
  return out;
}

// -----------------------------------------------------------------------------
// The perturbed instance. The filtered structure (M, unit, inclusions, star,
// gluings) is untouched; caps and cups acquire labels at their extrema:
//
//   max in a pocket of sign s:  s = -  ->  a        s = +  ->  b^{-1}
//   min in a pocket of sign s:  s = -  ->  b        s = +  ->  a^{-1}
//
// A right or left closure arc carries one max and one min with the same
// pocket sign, hence z = ab or z^{-1}. Interior caps and cups additionally
// re-route one boundary point around the right side of the box, which adds a
// single extremum on the rightmost strand of the output; that label is
// applied by multiplying with a one-box decorated identity.

namespace {

class PerturbedInstance : public Instance {
 public:
  PerturbedInstance(InstancePtr base, Decomposition dec)
      : base_(std::move(base)), dec_(std::move(dec)) {
    if (!base_->supports_decorations())
      throw domain_error("perturb: instance lacks decorated-arc support");
  }

  int level_max() const override { return base_->level_max(); }
  int dim(Color c) const override { return base_->dim(c); }
  std::string basis_label(Color c, int i) const override { return base_->basis_label(c, i); }

  Element mul(const Element& x, const Element& y) const override { return base_->mul(x, y); }
  Element unit(Color c) const override { return base_->unit(c); }
  Element star(const Element& x) const override { return base_->star(x); }
  Element glue(const Element& x, const Element& y, int j) const override {
    return base_->glue(x, y, j);
  }
  Element insert_cycle(const Element& x, const Element& y, int gap) const override {
    return base_->insert_cycle(x, y, gap);
  }
  Element decorated_identity(Color c, const std::vector<const Element*>& boxes) const override {
    return base_->decorated_identity(c, boxes);
  }
  bool supports_decorations() const override { return true; }

  Element cap_at(const Element& x, int p, const Element* box) const override {
    Color c = x.color();
    int k = c.k;
    if (p == k - 1) {
      // right closure: max and min, pocket sign eps*(-1)^k
      const Element& arc = (pocket(c.sign, k) < 0) ? dec_.z : dec_.z_inv;
      return base_->cap_at(x, p, compose_box(box, arc));
    }
    if (p < k - 1) {
      // top pair: max on the arc, min on the re-routed strand
      const Element& arc = max_label(pocket(c.sign, p + 1));
      Element y = base_->cap_at(x, p, compose_box(box, arc));
      return reroute_above(y, min_label(pocket(c.sign, k)));
    }
    // bottom pair: min on the arc, max on the re-routed strand
    const Element& arc = min_label(pocket(c.sign, p + 1));
    Element y = base_->cap_at(x, p, compose_box(box, arc));
    return reroute_below(y, max_label(pocket(c.sign, k)));
  }

  Element cap_outer(const Element& x, const Element* box) const override {
    // left closure: max and min, pocket sign eps
    const Element& arc = (x.color().sign < 0) ? dec_.z : dec_.z_inv;
    return base_->cap_outer(x, compose_box(box, arc));
  }

  Element cup_at(const Element& x, int p, const Element* box) const override {
    Color c = x.color();
    int k = c.k;
    if (p == k) return base_->cup_at(x, p, box);  // right inclusion, no extrema
    if (p < k) {
      const Element& arc = min_label(pocket(c.sign, p + 1));
      Element y = base_->cup_at(x, p, compose_box(box, arc));
      return reroute_below(y, max_label(pocket(c.sign, k)));
    }
    const Element& arc = max_label(pocket(c.sign, p + 1));
    Element y = base_->cup_at(x, p, compose_box(box, arc));
    return reroute_above(y, min_label(pocket(c.sign, k)));
  }

  Element cup_outer(const Element& x, const Element* box) const override {
    return base_->cup_outer(x, box);  // left inclusion, no extrema
  }

 private:
  static int pocket(int sign, int exponent) { return (exponent % 2 == 0) ? sign : -sign; }

  const Element& max_label(int s) const { return s < 0 ? dec_.a : dec_.b_inv; }
  const Element& min_label(int s) const { return s < 0 ? dec_.b : dec_.a_inv; }

  Element compose_box(const Element* user, const Element& label) const {
    if (!user) return label;
    return base_->mul(*user, label);
  }

  // Multiplies with a decorated identity carrying `label` on the rightmost
  // strand, above resp. below the element.
  Element reroute_above(const Element& y, const Element& label) const {
    Color c = y.color();
    std::vector<const Element*> boxes(c.k, nullptr);
    boxes[c.k - 1] = &label;
    return base_->mul(base_->decorated_identity(c, boxes), y);
  }

  Element reroute_below(const Element& y, const Element& label) const {
    Color c = y.color();
    std::vector<const Element*> boxes(c.k, nullptr);
    boxes[c.k - 1] = &label;
    return base_->mul(y, base_->decorated_identity(c, boxes));
  }

  InstancePtr base_;
  Decomposition dec_;
};

}  // namespace

InstancePtr perturb(InstancePtr inst, const Decomposition& dec) {
  return std::make_shared<PerturbedInstance>(std::move(inst), dec);
}

InstancePtr scalar_perturb(InstancePtr inst, const Scalar& lambda) {
  Element one = inst->unit({+1, 1});
  auto dec = make_decomposition(*inst, one * lambda, one);
  return perturb(std::move(inst), dec);
}

InstancePtr normalize(InstancePtr inst) {
  auto [dm, dp] = pa::modulus(*inst);
  if (dm.is_zero() || dp.is_zero()) throw domain_error("normalize: zero modulus");
  if (!num::is_positive(dm) || !num::is_positive(dp))
    throw domain_error("normalize: nonpositive modulus");
  if (dm == dp) return inst;
  return scalar_perturb(std::move(inst), num::sqrt(dm / dp));
}

Weight trace_intertwiner_weight(InstancePtr inst) {
  auto [dm, dp] = pa::modulus(*inst);
  if (dm != dp || dm.is_zero()) throw domain_error("trace intertwiner: instance not unimodular");
  if (pa::gram_positivity(*inst, {+1, 1}) != pa::GramVerdict::positive_definite)
    throw domain_error("trace intertwiner: level 1 not Gram-positive");
  Color c{+1, 1};
  int d = inst->dim(c);
  Matrix r(d, d);
  std::vector<Scalar> lhs(d);
  for (int i = 0; i < d; ++i) {
    Element bi = Element::basis(c, d, i);
    lhs[i] = pa::trace_left(*inst, bi);
    for (int j = 0; j < d; ++j)
      r.at(i, j) = pa::trace_right(*inst, inst->mul(bi, Element::basis(c, d, j)));
  }
  Element z(c, r.solve(lhs));
  if (!element_positive(*inst, z))
    throw domain_error("trace intertwiner: no positive solution");
  Weight w = make_weight(inst, z, 3);  // verifies centrality and invertibility
  // Defining identity at every level up to 3, both shadings.
  for (int k = 1; k <= std::min(3, inst->level_max()); ++k) {
    for (int sign : {+1, -1}) {
      Color ck{sign, k};
      Element zk = level_element(*inst, w.z, w.z_inv, ck);
      int dk = inst->dim(ck);
      for (int i = 0; i < dk; ++i) {
        Element b = Element::basis(ck, dk, i);
        if (pa::trace_left(*inst, b) != pa::trace_right(*inst, inst->mul(b, zk)))
          throw domain_error("trace intertwiner: level identity fails at " + ck.str());
      }
    }
  }
  return w;
}

InstancePtr sphericalize(InstancePtr inst) {
  Weight w = trace_intertwiner_weight(inst);
  Element root = element_sqrt(*inst, element_sqrt(*inst, w.z));  // z^{1/4}
  auto dec = make_decomposition(*inst, root, root);
  InstancePtr out = perturb(inst, dec);
  if (!pa::is_spherical(*out)) throw domain_error("sphericalize: result not spherical");
  auto [dm, dp] = pa::modulus(*out);
  if (dm != dp) throw domain_error("sphericalize: result not unimodular");
  return out;
}

std::vector<SweepRow> sweep_index(std::shared_ptr<const diag::DiagonalPA> P,
                                  const std::vector<Scalar>& lambdas) {
  std::vector<SweepRow> rows;
  for (const Scalar& lam : lambdas) {
    if (!num::is_positive(lam)) throw domain_error("sweep: lambda must be positive");
    Element z = P->one_box({lam.inverse(), lam});
    Element root = element_sqrt(*P, z);
    auto dec = make_decomposition(*P, root, root);
    InstancePtr q = perturb(P, dec);
    auto [dm, dp] = pa::modulus(*q);
    if (dm != dp) throw domain_error("sweep: perturbation is not unimodular");
    rows.push_back({lam, dp, dm * dp, pa::is_spherical(*q)});
  }
  return rows;
}

}  // namespace planarly::perturb
