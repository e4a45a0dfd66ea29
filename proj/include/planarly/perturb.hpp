#pragma once

#include "planarly/diagonal.hpp"
#include "planarly/pacore.hpp"

namespace planarly::perturb {

using num::Scalar;
using pa::Color;
using pa::Element;

/// An invertible level-1 element whose induced level elements are central.
struct Weight {
  pa::InstancePtr instance;
  Element z;
  Element z_inv;
  int verified_level = 0;
};

/// The level element z_{eps k}: the identity decorated with z and z^{-1}
/// alternating along the strands (z first on positive colors, z^{-1} first on
/// negative ones).
Element level_element(const pa::Instance& I, const Element& z, const Element& z_inv, Color c);

/// Verifies invertibility and centrality of the level elements up to level K.
/// Throws with the violating level on failure.
Weight make_weight(pa::InstancePtr inst, const Element& z, int K = 4);

/// An invertible commuting decomposition z = a b.
struct Decomposition {
  Element a, b, a_inv, b_inv, z, z_inv;
};

Decomposition make_decomposition(const pa::Instance& I, const Element& a, const Element& b);

/// Inverse in the level algebra (P_c, M); throws when singular.
Element element_inverse(const pa::Instance& I, const Element& x);

/// Positivity through the trace form: x > 0 iff [tr(b_i* x b_j)] is positive
/// definite (requires a Gram-positive level).
bool element_positive(const pa::Instance& I, const Element& x);

/// Componentwise square root in an orthogonal-idempotent level basis.
Element element_sqrt(const pa::Instance& I, const Element& x);

/// The perturbed planar algebra P^(a,b): same spaces and filtered structure,
/// caps and cups pick up the decomposition labels at their extrema.
pa::InstancePtr perturb(pa::InstancePtr inst, const Decomposition& dec);

/// Scalar perturbation P^(lambda, 1).
pa::InstancePtr scalar_perturb(pa::InstancePtr inst, const Scalar& lambda);

/// The unimodular scalar perturbation by sqrt(delta_minus/delta_plus);
/// returns the instance unchanged when already unimodular.
pa::InstancePtr normalize(pa::InstancePtr inst);

/// The unique positive central z with TR^l(.) = TR^r(. z); verifies
/// positivity, centrality and the level identities up to level 3.
Weight trace_intertwiner_weight(pa::InstancePtr inst);

/// The perturbation by (z^{1/4}, z^{1/4}) for the trace-intertwiner weight z;
/// spherical, unimodular, and index-minimal in the perturbation class.
pa::InstancePtr sphericalize(pa::InstancePtr inst);

struct SweepRow {
  Scalar lambda;
  Scalar modulus;
  Scalar index;
  bool spherical = false;
};

/// Perturbs the diagonal instance by z = lambda^{-1}(-,-) + lambda(+,+) with
/// the symmetric square-root decomposition, one row per lambda.
std::vector<SweepRow> sweep_index(std::shared_ptr<const diag::DiagonalPA> P,
                                  const std::vector<Scalar>& lambdas);

}  // namespace planarly::perturb
