#pragma once

#include "planarly/pacore.hpp"
#include "planarly/signs.hpp"
#include "planarly/tl.hpp"

#include <memory>
#include <mutex>
#include <unordered_map>

namespace planarly::diag {

using pa::Color;
using pa::Element;

/// The diagonal planar algebra of the free group F_rank with trivial cocycle.
/// Level (eps, k) is spanned by the sign sequences in I^{2k} with trivial
/// alternating word; every tangle acts by the string-coloring counting rule,
/// realized componentwise on sequences.
class DiagonalPA : public pa::Instance {
 public:
  DiagonalPA(int rank, int level_max);

  int rank() const { return rank_; }
  int level_max() const override { return level_max_; }
  int dim(Color c) const override;
  std::string basis_label(Color c, int i) const override;

  const std::vector<signs::SignSeq>& basis_seqs(Color c) const;
  int seq_index(Color c, const signs::SignSeq& s) const;  // -1 if absent

  Element mul(const Element& x, const Element& y) const override;
  Element unit(Color c) const override;
  Element star(const Element& x) const override;
  Element cap_at(const Element& x, int p, const Element* box = nullptr) const override;
  Element cap_outer(const Element& x, const Element* box = nullptr) const override;
  Element cup_at(const Element& x, int p, const Element* box = nullptr) const override;
  Element cup_outer(const Element& x, const Element* box = nullptr) const override;
  Element glue(const Element& x, const Element& y, int j) const override;
  Element insert_cycle(const Element& x, const Element& y, int gap) const override;
  Element decorated_identity(Color c, const std::vector<const Element*>& boxes) const override;
  bool supports_decorations() const override { return true; }

  /// The element of P_{+1} with the given diagonal components, one per color
  /// of I (rank entries).
  Element one_box(const std::vector<num::Scalar>& comps) const;

 private:
  struct Level {
    std::vector<signs::SignSeq> seqs;
    std::unordered_map<std::string, int> index;
  };
  const Level& level(Color c) const;
  static std::string key(const signs::SignSeq& s);

  int rank_, level_max_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, Level> levels_;
};

std::shared_ptr<const DiagonalPA> build(int rank, int level_max = 6);

/// Temperley-Lieb reference instance TL(delta): levels spanned by (k,k)
/// diagrams, actions by diagram surgery, modulus (delta, delta).
pa::InstancePtr build_tl(const num::Scalar& delta, int level_max = 6);

/// Dimension census: (k, dim P_{+k}) for k = 0..k_max.
std::vector<std::pair<int, long long>> dims(const DiagonalPA& P, int k_max);

/// One trace class of the level-k minimal projections: j counts the
/// parity-twisted minus signs, value = c_minus^j c_plus^(k-j).
struct Block {
  int j;
  num::Scalar value;
  std::vector<signs::SignSeq> members;
};

/// Partition of I^k by the parity-twisted product value (rank 2 only).
/// Throws on c_minus == c_plus.
std::vector<Block> block_decomposition(const DiagonalPA& P, int k, const num::Scalar& c_minus,
                                       const num::Scalar& c_plus);

/// The parity-twisted product c_eps over one sequence.
num::Scalar twisted_product(const signs::SignSeq& seq, const num::Scalar& c_minus,
                            const num::Scalar& c_plus);

/// Direct counting-rule evaluation of a composite tangle: the number of
/// string colorings matching all boundary data, summed with multilinear
/// coefficients. Independent of the componentwise action formulas.
Element counting_eval(const DiagonalPA& I, const pa::TangleExpr& expr,
                      const std::vector<Element>& inputs);

}  // namespace planarly::diag
