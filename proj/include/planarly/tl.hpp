#pragma once

#include "planarly/numeric.hpp"

#include <string>
#include <vector>

namespace planarly::tl {

/// A Temperley-Lieb diagram: a non-crossing perfect pairing of `bottom` input
/// points and `top` output points, with a scalar multiple and the sign of the
/// leftmost region.
///
/// Points are stored as boundary-cycle positions 0..top+bottom-1, clockwise
/// from the marked corner: first the top row left-to-right, then the bottom
/// row right-to-left. `pairing[i]` is the partner of point i.
struct TLDiagram {
  int bottom = 0;
  int top = 0;
  std::vector<int> pairing;
  num::Scalar mult = num::Scalar::one();
  int eps = +1;  // +1 unshaded leftmost region, -1 shaded

  int points() const { return bottom + top; }
  bool same_pairing(const TLDiagram& o) const {
    return bottom == o.bottom && top == o.top && pairing == o.pairing && eps == o.eps;
  }
};

/// True iff `pairing` is a fixed-point-free involution with no crossing
/// (no a<b<c<d with a~c and b~d).
bool is_planar_pairing(const std::vector<int>& pairing);

/// Stacks `bottom` below `top`, gluing bottom's output row to top's input row.
/// Each closed loop contributes delta_minus or delta_plus according to the
/// sign of the region left of its leftmost interface strand.
/// Throws domain_error on size or shading mismatch.
TLDiagram compose(const TLDiagram& top, const TLDiagram& bottom,
                  const num::Scalar& delta_minus, const num::Scalar& delta_plus);

/// Reflection about a horizontal line: top and bottom exchanged, multiple
/// conjugated (real scalars: unchanged).
TLDiagram involution(const TLDiagram& d);

/// All (k,k)-diagrams with multiple one; count = Catalan(k).
std::vector<TLDiagram> tl_basis(int k);

/// All non-crossing perfect matchings of n points on a line, as partner
/// vectors. Enumeration order: the first point pairs with the nearest
/// admissible partner first.
std::vector<std::vector<int>> nc_matchings(int n);

/// Text form: "bottom,top,eps,mult|a-b,c-d" with 1-based cycle positions.
std::string to_string(const TLDiagram& d);
TLDiagram parse_diagram(const std::string& text);

}  // namespace planarly::tl
