#pragma once

#include "planarly/numeric.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace planarly::pa {

using num::Scalar;

/// Disc color: shading sign of the leftmost region and half the number of
/// boundary points.
struct Color {
  int sign = +1;  // +1 or -1
  int k = 0;

  bool operator==(const Color& o) const { return sign == o.sign && k == o.k; }
  bool operator!=(const Color& o) const { return !(*this == o); }
  bool operator<(const Color& o) const { return sign != o.sign ? sign < o.sign : k < o.k; }
  Color flipped() const { return {-sign, k}; }
  std::string str() const { return (sign > 0 ? "+" : "-") + std::to_string(k); }
};

/// A vector over the distinguished basis of one level.
class Element {
 public:
  Element() = default;
  Element(Color c, std::vector<Scalar> coeff) : color_(c), coeff_(std::move(coeff)) {}
  static Element zero(Color c, int dim) { return Element(c, std::vector<Scalar>(dim)); }
  static Element basis(Color c, int dim, int i) {
    Element e = zero(c, dim);
    e.coeff_[i] = Scalar::one();
    return e;
  }

  Color color() const { return color_; }
  int dim() const { return static_cast<int>(coeff_.size()); }
  const Scalar& operator[](int i) const { return coeff_[i]; }
  Scalar& operator[](int i) { return coeff_[i]; }
  const std::vector<Scalar>& coeffs() const { return coeff_; }

  bool is_zero() const;
  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Scalar& s) const;
  Element operator-() const { return *this * (-Scalar::one()); }
  bool operator==(const Element& o) const { return color_ == o.color_ && coeff_ == o.coeff_; }
  bool operator!=(const Element& o) const { return !(*this == o); }

 private:
  Color color_;
  std::vector<Scalar> coeff_;
};

/// Dense exact matrix, enough linear algebra for Gram verdicts, morphism
/// checks and range materialization.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Scalar& at(int r, int c) const { return a_[r * cols_ + c]; }
  Scalar& at(int r, int c) { return a_[r * cols_ + c]; }

  Matrix operator*(const Matrix& o) const;
  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator*(const Scalar& s) const;
  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  Scalar det() const;
  /// Determinants of the top-left t x t blocks, t = 1..n.
  std::vector<Scalar> leading_principal_minors() const;
  /// Column-reduced basis of the column space.
  Matrix column_space_basis() const;
  /// Solves A x = b exactly; throws if inconsistent or rank-deficient columns.
  std::vector<Scalar> solve(const std::vector<Scalar>& b) const;
  int rank() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

/// A planar algebra presented by its spaces and generating-tangle actions.
///
/// Boundary-cycle convention for an element of color (eps, k): positions
/// 0..2k-1 clockwise from the marked corner, top row left-to-right first,
/// then bottom row right-to-left.
///
/// Primitives:
///  - mul: stacking multiplication (x above y)
///  - cap_at(x, p, box): contract cycle positions (p, p+1), 0 <= p <= 2k-2;
///    an optional 1-box (color +1 component vector) rides the contraction arc
///  - cap_outer: contract (2k-1, 0) around the left; flips the color sign
///  - cup_at(x, p, box): insert a new adjacent pair at output positions
///    (p, p+1), 0 <= p <= 2k
///  - cup_outer: insert the wrap pair at output positions (0, 2k+1); flips sign
///  - glue(x, y, j): vertical gluing of x's last j positions to y's first j
///    (x[2n-1-t] to y[t]); carries no extrema, so it is never decorated
///  - insert_cycle(x, y, gap): y's disc placed side by side into x's boundary
///    cycle after position gap-1; also extremum-free
///  - decorated_identity: the identity with 1-boxes riding the strands
class Instance {
 public:
  virtual ~Instance() = default;

  virtual int level_max() const = 0;
  virtual int dim(Color c) const = 0;
  virtual std::string basis_label(Color c, int i) const = 0;

  virtual Element mul(const Element& x, const Element& y) const = 0;
  virtual Element unit(Color c) const = 0;
  virtual Element star(const Element& x) const = 0;
  virtual Element cap_at(const Element& x, int p, const Element* box = nullptr) const = 0;
  virtual Element cap_outer(const Element& x, const Element* box = nullptr) const = 0;
  virtual Element cup_at(const Element& x, int p, const Element* box = nullptr) const = 0;
  virtual Element cup_outer(const Element& x, const Element* box = nullptr) const = 0;
  virtual Element glue(const Element& x, const Element& y, int j) const = 0;
  virtual Element insert_cycle(const Element& x, const Element& y, int gap) const = 0;
  virtual Element decorated_identity(Color c,
                                     const std::vector<const Element*>& boxes) const = 0;
  virtual bool supports_decorations() const { return false; }
};

using InstancePtr = std::shared_ptr<const Instance>;

// ---- Generating tangles and derived tangles --------------------------------

Element right_incl(const Instance& I, const Element& x);            // RI
Element left_incl(const Instance& I, const Element& x);             // LI
Element right_exp(const Instance& I, const Element& x);             // RE
Element left_exp(const Instance& I, const Element& x);              // LE
Element jones(const Instance& I, Color out);                        // E in P_out, out.k >= 2
Element identity_of(const Instance& I, Color c);                    // unit as element
Element rot_cw(const Instance& I, const Element& x);                // one-click rotation
Element rot_ccw(const Instance& I, const Element& x);
Element embed_to_level(const Instance& I, const Element& x, int k); // iterated RI

Scalar trace_right(const Instance& I, const Element& x);            // TR^r
Scalar trace_left(const Instance& I, const Element& x);             // TR^l

enum class Side { left, right };
std::vector<Scalar> trace_vector(const Instance& I, Side side, Color c);

bool is_connected(const Instance& I);
std::pair<Scalar, Scalar> modulus(const Instance& I);  // (delta_minus, delta_plus)
Scalar index_value(const Instance& I);
bool is_spherical(const Instance& I);

enum class GramVerdict { positive_definite, positive_semidefinite, indefinite };
std::string to_string(GramVerdict v);
/// Gram matrix of the normalized right picture trace over the distinguished
/// basis; optional out-parameter receives the matrix itself.
GramVerdict gram_positivity(const Instance& I, Color c, Matrix* gram_out = nullptr);
GramVerdict minor_verdict(const Matrix& g);

// ---- Morphisms --------------------------------------------------------------

/// Per-color linear maps, stored as dst-coeff columns over src basis vectors.
struct ColorMaps {
  std::map<std::pair<int, int>, Matrix> maps;  // key (sign, k)
  const Matrix& at(Color c) const { return maps.at({c.sign, c.k}); }
  Matrix& at(Color c) { return maps[{c.sign, c.k}]; }
  bool has(Color c) const { return maps.count({c.sign, c.k}) > 0; }
};

struct MorphismReport {
  bool pass = true;
  std::string check;   // first failing tangle, e.g. "M_+1"
  Color color{};       // color of the failure
  int witness = -1;    // basis index of the failing input
  std::string detail;
};

/// Equivariance over the full distinguished bases up to level_bound, for one
/// of the two generating sets (1 or 2).
MorphismReport check_morphism(const Instance& src, const Instance& dst, const ColorMaps& maps,
                              int generator_set, int level_bound);

/// Extends positive-color maps to all colors by closing the left strand:
/// maps on -k are delta_minus^{-1} . LE . phi_{+(k+1)} . LI.
ColorMaps extend_positive_morphism(const Instance& src, const Instance& dst,
                                   const ColorMaps& positive_maps, int level_bound);

// ---- Duals ------------------------------------------------------------------

/// The n-th dual: spaces are column-reduced ranges of the wrap idempotents,
/// actions are wrap-conjugated parent actions with the modulus scaling.
InstancePtr dual(InstancePtr inst, int n);

// ---- Composite tangle expressions -------------------------------------------

/// A standard-form composite of generating tangles and positioned caps/cups.
class TangleExpr {
 public:
  enum class Kind {
    input,
    unit,
    jones,
    mul,
    right_incl,
    left_incl,
    right_exp,
    left_exp,
    ident,
    cap,
    cup,
    cap_outer,
    cup_outer
  };

  static TangleExpr input(int slot, Color c);
  static TangleExpr unit_of(Color c);
  static TangleExpr jones_of(Color out);
  static TangleExpr mul(TangleExpr a, TangleExpr b);
  static TangleExpr apply(Kind k, TangleExpr child, int pos = -1);

  Kind kind() const { return kind_; }
  Color out_color() const { return out_; }
  int slot() const { return slot_; }
  int pos() const { return pos_; }
  const TangleExpr& child(int i) const { return children_[i]; }
  int arity() const { return static_cast<int>(children_.size()); }

  /// Declared colors of the input slots, in slot order.
  std::vector<Color> input_colors() const;

 private:
  Kind kind_ = Kind::unit;
  Color out_{};
  int slot_ = -1;
  int pos_ = -1;
  std::vector<TangleExpr> children_;
};

/// Evaluates the composite through the instance's generating-tangle actions.
/// Throws on input color mismatch.
Element eval(const Instance& I, const TangleExpr& expr, const std::vector<Element>& inputs);

/// True when the box is a scalar multiple of the single strand; returns the scalar.
std::optional<Scalar> try_scalar_box(const Instance& I, const Element& box);

}  // namespace planarly::pa
