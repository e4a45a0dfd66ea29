#include "planarly/pacore.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

namespace planarly::pa {

using num::domain_error;

// ---- Element ----------------------------------------------------------------

bool Element::is_zero() const {
  for (const auto& s : coeff_)
    if (!s.is_zero()) return false;
  return true;
}

Element Element::operator+(const Element& o) const {
  if (color_ != o.color_ || dim() != o.dim()) throw domain_error("element add: color mismatch");
  Element r = *this;
  for (int i = 0; i < dim(); ++i) r.coeff_[i] += o.coeff_[i];
  return r;
}

Element Element::operator-(const Element& o) const { return *this + (o * (-Scalar::one())); }

Element Element::operator*(const Scalar& s) const {
  Element r = *this;
  for (auto& c : r.coeff_) c *= s;
  return r;
}

// ---- Matrix -----------------------------------------------------------------

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one();
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw domain_error("matrix mul: shape mismatch");
  Matrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
    }
  return r;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw domain_error("matrix apply: shape mismatch");
  std::vector<Scalar> r(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero()) r[i] += at(i, j) * v[j];
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw domain_error("matrix add: shape mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

Matrix Matrix::operator*(const Scalar& s) const {
  Matrix r = *this;
  for (auto& x : r.a_) x *= s;
  return r;
}

Scalar Matrix::det() const {
  if (rows_ != cols_) throw domain_error("det: not square");
  Matrix m = *this;
  Scalar d = Scalar::one();
  for (int c = 0; c < cols_; ++c) {
    int piv = -1;
    for (int r = c; r < rows_; ++r)
      if (!m.at(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return Scalar::zero();
    if (piv != c) {
      for (int j = 0; j < cols_; ++j) std::swap(m.at(piv, j), m.at(c, j));
      d = -d;
    }
    d *= m.at(c, c);
    Scalar inv = m.at(c, c).inverse();
    for (int r = c + 1; r < rows_; ++r) {
      if (m.at(r, c).is_zero()) continue;
      Scalar f = m.at(r, c) * inv;
      for (int j = c; j < cols_; ++j) m.at(r, j) -= f * m.at(c, j);
    }
  }
  return d;
}

std::vector<Scalar> Matrix::leading_principal_minors() const {
  std::vector<Scalar> out;
  for (int t = 1; t <= std::min(rows_, cols_); ++t) {
    Matrix sub(t, t);
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) sub.at(i, j) = at(i, j);
    out.push_back(sub.det());
  }
  return out;
}

namespace {

// Row-reduces m in place; returns pivot column indices.
std::vector<int> rref_inplace(Matrix& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int c = 0; c < m.cols() && row < m.rows(); ++c) {
    int piv = -1;
    for (int r = row; r < m.rows(); ++r)
      if (!m.at(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(row, j));
    Scalar inv = m.at(row, c).inverse();
    for (int j = 0; j < m.cols(); ++j) m.at(row, j) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, c).is_zero()) continue;
      Scalar f = m.at(r, c);
      for (int j = 0; j < m.cols(); ++j) m.at(r, j) -= f * m.at(row, j);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

Matrix Matrix::column_space_basis() const {
  // RREF of the transpose: its nonzero rows are a canonical basis of the
  // column space, returned as columns.
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  auto pivots = rref_inplace(t);
  Matrix out(rows_, static_cast<int>(pivots.size()));
  for (int b = 0; b < static_cast<int>(pivots.size()); ++b)
    for (int i = 0; i < rows_; ++i) out.at(i, b) = t.at(b, i);
  return out;
}

std::vector<Scalar> Matrix::solve(const std::vector<Scalar>& b) const {
  if (static_cast<int>(b.size()) != rows_) throw domain_error("solve: shape mismatch");
  Matrix aug(rows_, cols_ + 1);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_) = b[i];
  }
  auto pivots = rref_inplace(aug);
  std::vector<Scalar> x(cols_);
  int rank_a = 0;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == cols_) throw domain_error("solve: inconsistent system");
    ++rank_a;
  }
  if (rank_a < cols_) throw domain_error("solve: rank-deficient system");
  for (int r = 0; r < rank_a; ++r) x[pivots[r]] = aug.at(r, cols_);
  return x;
}

int Matrix::rank() const {
  Matrix m = *this;
  return static_cast<int>(rref_inplace(m).size());
}

// ---- Derived tangles --------------------------------------------------------

Element right_incl(const Instance& I, const Element& x) { return I.cup_at(x, x.color().k); }
Element left_incl(const Instance& I, const Element& x) { return I.cup_outer(x); }
Element right_exp(const Instance& I, const Element& x) {
  if (x.color().k < 1) throw domain_error("right_exp: level 0");
  return I.cap_at(x, x.color().k - 1);
}
Element left_exp(const Instance& I, const Element& x) {
  if (x.color().k < 1) throw domain_error("left_exp: level 0");
  return I.cap_outer(x);
}

Element identity_of(const Instance& I, Color c) { return I.unit(c); }

Element jones(const Instance& I, Color out) {
  if (out.k < 2) throw domain_error("jones: output level must be >= 2");
  Color base{out.sign, out.k - 2};
  Element u = I.unit(base);
  return I.cup_at(I.cup_at(u, base.k), base.k);
}

Element rot_cw(const Instance& I, const Element& x) {
  int k = x.color().k;
  if (k < 1) throw domain_error("rot: level 0");
  return I.cap_at(I.cup_outer(x), 2 * k);
}

Element rot_ccw(const Instance& I, const Element& x) {
  int k = x.color().k;
  if (k < 1) throw domain_error("rot: level 0");
  return I.cap_at(I.cup_outer(x), 0);
}

Element embed_to_level(const Instance& I, const Element& x, int k) {
  Element r = x;
  while (r.color().k < k) r = right_incl(I, r);
  if (r.color().k != k) throw domain_error("embed_to_level: target below element level");
  return r;
}

Scalar trace_right(const Instance& I, const Element& x) {
  Element r = x;
  while (r.color().k > 0) r = right_exp(I, r);
  if (r.dim() != 1) throw domain_error("trace: instance not connected at level 0");
  return r[0];
}

Scalar trace_left(const Instance& I, const Element& x) {
  Element r = x;
  while (r.color().k > 0) r = left_exp(I, r);
  if (r.dim() != 1) throw domain_error("trace: instance not connected at level 0");
  return r[0];
}

std::vector<Scalar> trace_vector(const Instance& I, Side side, Color c) {
  std::vector<Scalar> out;
  int d = I.dim(c);
  out.reserve(d);
  for (int i = 0; i < d; ++i) {
    Element b = Element::basis(c, d, i);
    out.push_back(side == Side::right ? trace_right(I, b) : trace_left(I, b));
  }
  return out;
}

bool is_connected(const Instance& I) {
  return I.dim({+1, 0}) == 1 && I.dim({-1, 0}) == 1;
}

std::pair<Scalar, Scalar> modulus(const Instance& I) {
  if (!is_connected(I)) throw domain_error("modulus: instance not connected");
  Scalar dp = trace_right(I, I.unit({+1, 1}));
  Scalar dm = trace_right(I, I.unit({-1, 1}));
  return {dm, dp};
}

Scalar index_value(const Instance& I) {
  auto [dm, dp] = modulus(I);
  return dm * dp;
}

bool is_spherical(const Instance& I) {
  auto [dm, dp] = modulus(I);
  if (dm.is_zero() || dp.is_zero()) throw domain_error("is_spherical: zero modulus");
  // Normalized traces agree iff delta_minus*TR^r == delta_plus*TR^l on P_{+1}.
  Color c{+1, 1};
  int d = I.dim(c);
  for (int i = 0; i < d; ++i) {
    Element b = Element::basis(c, d, i);
    if (dm * trace_right(I, b) != dp * trace_left(I, b)) return false;
  }
  return true;
}

std::string to_string(GramVerdict v) {
  switch (v) {
    case GramVerdict::positive_definite: return "positive-definite";
    case GramVerdict::positive_semidefinite: return "positive-semidefinite";
    default: return "indefinite";
  }
}

GramVerdict minor_verdict(const Matrix& g) {
  bool all_pos = true;
  for (const auto& m : g.leading_principal_minors()) {
    if (m.is_zero()) {
      all_pos = false;
    } else if (!num::is_positive(m)) {
      return GramVerdict::indefinite;
    }
  }
  return all_pos ? GramVerdict::positive_definite : GramVerdict::positive_semidefinite;
}

GramVerdict gram_positivity(const Instance& I, Color c, Matrix* gram_out) {
  Scalar norm = trace_right(I, I.unit(c));
  if (norm.is_zero()) throw domain_error("gram: degenerate trace normalization");
  Scalar ninv = norm.inverse();
  int d = I.dim(c);
  Matrix g(d, d);
  for (int i = 0; i < d; ++i) {
    Element bi = I.star(Element::basis(c, d, i));
    for (int j = 0; j < d; ++j) {
      Element bj = Element::basis(c, d, j);
      g.at(i, j) = trace_right(I, I.mul(bi, bj)) * ninv;
    }
  }
  if (gram_out) *gram_out = g;
  return minor_verdict(g);
}

// ---- Morphisms --------------------------------------------------------------

namespace {

Element apply_map(const ColorMaps& maps, const Element& x) {
  if (!maps.has(x.color())) throw domain_error("morphism: missing map at color " + x.color().str());
  return Element(x.color(), maps.at(x.color()).apply(x.coeffs()));
}

}  // namespace

MorphismReport check_morphism(const Instance& src, const Instance& dst, const ColorMaps& maps,
                              int generator_set, int level_bound) {
  MorphismReport rep;
  auto fail = [&](const std::string& check, Color c, int witness) {
    rep.pass = false;
    rep.check = check;
    rep.color = c;
    rep.witness = witness;
    return rep;
  };
  auto phi = [&](const Element& x) { return apply_map(maps, x); };

  auto check_mul = [&](int sign, int k) -> bool {
    Color c{sign, k};
    int d = src.dim(c);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Element bi = Element::basis(c, d, i), bj = Element::basis(c, d, j);
        if (phi(src.mul(bi, bj)) != dst.mul(phi(bi), phi(bj))) return false;
      }
    return true;
  };
  auto check_unary = [&](int sign, int k, auto&& op) -> bool {
    Color c{sign, k};
    int d = src.dim(c);
    for (int i = 0; i < d; ++i) {
      Element b = Element::basis(c, d, i);
      if (phi(op(src, b)) != op(dst, phi(b))) return false;
    }
    return true;
  };

  auto ri = [](const Instance& I, const Element& x) { return right_incl(I, x); };
  auto li = [](const Instance& I, const Element& x) { return left_incl(I, x); };
  auto le = [](const Instance& I, const Element& x) { return left_exp(I, x); };

  if (generator_set == 1) {
    for (int k = 0; k <= level_bound; ++k)
      for (int sign : {+1, -1}) {
        Color c{sign, k};
        if (!check_mul(sign, k)) return fail("M_" + c.str(), c, -1);
      }
    for (int k = 0; k + 1 <= level_bound; ++k)
      for (int sign : {+1, -1}) {
        Color c{sign, k};
        if (!check_unary(sign, k, ri)) return fail("RI_" + c.str(), c, -1);
        if (!check_unary(sign, k, li)) return fail("LI_" + c.str(), c, -1);
      }
    for (int sign : {+1, -1}) {
      Color e2{sign, 2};
      if (level_bound >= 2 && phi(jones(src, e2)) != jones(dst, e2))
        return fail(std::string("E_") + (sign > 0 ? "+" : "-") + "1", e2, -1);
    }
  } else if (generator_set == 2) {
    for (int k = 0; k <= level_bound; ++k) {
      Color cp{+1, k}, cm{-1, k};
      if (!check_mul(+1, k)) return fail("M_" + cp.str(), cp, -1);
      if (k + 1 <= level_bound) {
        if (!check_unary(+1, k, ri)) return fail("RI_" + cp.str(), cp, -1);
        if (!check_unary(-1, k, li)) return fail("LI_" + cm.str(), cm, -1);
        if (!check_unary(+1, k + 1, le)) return fail("LE_+" + std::to_string(k + 1), Color{+1, k + 1}, -1);
      }
      if (k + 2 <= level_bound) {
        Color ce{+1, k + 2};
        if (phi(jones(src, ce)) != jones(dst, ce))
          return fail("E_+" + std::to_string(k + 1), ce, -1);
      }
    }
  } else {
    throw domain_error("check_morphism: generator_set must be 1 or 2");
  }
  return rep;
}

ColorMaps extend_positive_morphism(const Instance& src, const Instance& dst,
                                   const ColorMaps& positive_maps, int level_bound) {
  auto [dm_src, dp_src] = modulus(src);
  auto [dm_dst, dp_dst] = modulus(dst);
  if (dm_src != dm_dst || dp_src != dp_dst)
    throw domain_error("extend_positive_morphism: moduli differ");
  if (dm_dst.is_zero()) throw domain_error("extend_positive_morphism: zero modulus");
  ColorMaps full = positive_maps;
  Scalar dminv = dm_dst.inverse();
  for (int k = 0; k <= level_bound; ++k) {
    Color cm{-1, k}, cp1{+1, k + 1};
    if (!positive_maps.has(cp1)) break;
    int d = src.dim(cm);
    Matrix m(dst.dim(cm), d);
    for (int i = 0; i < d; ++i) {
      Element b = Element::basis(cm, d, i);
      Element lifted = left_incl(src, b);  // in P_{+(k+1)}
      Element mapped(cp1, positive_maps.at(cp1).apply(lifted.coeffs()));
      Element down = left_exp(dst, mapped) * dminv;
      for (int r = 0; r < m.rows(); ++r) m.at(r, i) = down[r];
    }
    full.at(cm) = std::move(m);
  }
  // Verify the extension is a morphism on a generating set.
  auto rep = check_morphism(src, dst, full, 2, level_bound);
  if (!rep.pass)
    throw domain_error("extend_positive_morphism: positive maps not equivariant (" + rep.check + ")");
  return full;
}

// ---- Dual instances ----------------------------------------------------------

namespace {

/// lambda_n(P): level (eps,k) is the column-reduced range of the n-fold
/// wrap idempotent acting on the parent's (eps, k+n); actions are the parent
/// actions conjugated by wrapping, with one delta^{-1} per unwrap.
class DualInstance : public Instance {
 public:
  DualInstance(InstancePtr parent, int n) : parent_(std::move(parent)), n_(n) {
    auto [dm, dp] = pa::modulus(*parent_);
    if (dm.is_zero() || dp.is_zero()) throw domain_error("dual: zero modulus");
    dm_ = dm;
    dp_ = dp;
    level_max_ = parent_->level_max() - n_;
    if (level_max_ < 0) throw domain_error("dual: parent level bound too small");
  }

  int level_max() const override { return level_max_; }

  int dim(Color c) const override { return space(c).embed.cols(); }

  std::string basis_label(Color c, int i) const override {
    return "dual[" + c.str() + "#" + std::to_string(i) + "]";
  }

  Element mul(const Element& x, const Element& y) const override {
    return coordinatize(x.color(), parent_->mul(lift(x), lift(y)));
  }

  Element unit(Color c) const override {
    return coordinatize(c, wrap_full(parent_->unit(inner_color(c))));
  }

  Element star(const Element& x) const override {
    return coordinatize(x.color(), parent_->star(lift(x)));
  }

  Element cap_at(const Element& x, int p, const Element* box) const override {
    Scalar s = scalar_box(box);
    Color out{x.color().sign, x.color().k - 1};
    Element inner = unwrap_full(lift(x));
    Element r = parent_->cap_at(inner, p) * s;
    return coordinatize(out, wrap_full(r));
  }

  Element cap_outer(const Element& x, const Element* box) const override {
    Scalar s = scalar_box(box);
    Color out{-x.color().sign, x.color().k - 1};
    Element r = parent_->cap_outer(unwrap_full(lift(x))) * s;
    return coordinatize(out, wrap_full(r));
  }

  Element cup_at(const Element& x, int p, const Element* box) const override {
    Scalar s = scalar_box(box);
    Color out{x.color().sign, x.color().k + 1};
    Element r = parent_->cup_at(unwrap_full(lift(x)), p) * s;
    return coordinatize(out, wrap_full(r));
  }

  Element cup_outer(const Element& x, const Element* box) const override {
    Scalar s = scalar_box(box);
    Color out{-x.color().sign, x.color().k + 1};
    Element r = parent_->cup_outer(unwrap_full(lift(x))) * s;
    return coordinatize(out, wrap_full(r));
  }

  Element glue(const Element&, const Element&, int) const override {
    throw domain_error("glue is not supported on dual instances");
  }
  Element insert_cycle(const Element&, const Element&, int) const override {
    throw domain_error("insert_cycle is not supported on dual instances");
  }

  Element decorated_identity(Color c, const std::vector<const Element*>& boxes) const override {
    Scalar s = Scalar::one();
    for (const Element* b : boxes) {
      if (!b) continue;
      auto sb = try_scalar_box(*this, *b);
      if (!sb) throw domain_error("dual instances support scalar strand boxes only");
      s *= *sb;
    }
    return unit(c) * s;
  }

  bool supports_decorations() const override { return parent_->supports_decorations(); }

 private:
  struct Space {
    Matrix embed;  // parent-coeff columns, reduced
  };

  Color rep_color(Color c) const { return {c.sign, c.k + n_}; }
  Color inner_color(Color c) const { return {(n_ % 2) ? -c.sign : c.sign, c.k}; }

  Element wrap_full(Element y) const {
    for (int i = 0; i < n_; ++i) y = parent_->cup_outer(y);
    return y;
  }

  Element unwrap_full(Element y) const {
    for (int i = 0; i < n_; ++i) {
      Scalar scale = (y.color().sign > 0 ? dm_ : dp_).inverse();  // delta_{-eps}
      y = parent_->cap_outer(y) * scale;
    }
    return y;
  }

  Scalar scalar_box(const Element* box) const {
    if (!box) return Scalar::one();
    auto s = try_scalar_box(*this, *box);
    if (!s) throw domain_error("dual instances support scalar arc boxes only");
    return *s;
  }

  const Space& space(Color c) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto key = std::make_pair(c.sign, c.k);
    auto it = spaces_.find(key);
    if (it != spaces_.end()) return it->second;
    if (c.k > level_max_) throw domain_error("dual: level above bound");
    Color rc = rep_color(c);
    int pd = parent_->dim(rc);
    Matrix w(pd, pd);
    for (int j = 0; j < pd; ++j) {
      Element b = Element::basis(rc, pd, j);
      Element img = wrap_full(unwrap_full(b));
      for (int i = 0; i < pd; ++i) w.at(i, j) = img[i];
    }
    Space sp{w.column_space_basis()};
    return spaces_.emplace(key, std::move(sp)).first->second;
  }

  Element lift(const Element& x) const {
    const Space& sp = space(x.color());
    return Element(rep_color(x.color()), sp.embed.apply(x.coeffs()));
  }

  Element coordinatize(Color c, const Element& parent_el) const {
    const Space& sp = space(c);
    return Element(c, sp.embed.solve(parent_el.coeffs()));
  }

  InstancePtr parent_;
  int n_;
  int level_max_;
  Scalar dm_, dp_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, Space> spaces_;
};

}  // namespace

InstancePtr dual(InstancePtr inst, int n) {
  if (n < 0) throw domain_error("dual: negative n");
  if (n == 0) return inst;
  return std::make_shared<DualInstance>(std::move(inst), n);
}

// ---- TangleExpr ---------------------------------------------------------------

TangleExpr TangleExpr::input(int slot, Color c) {
  TangleExpr e;
  e.kind_ = Kind::input;
  e.slot_ = slot;
  e.out_ = c;
  return e;
}

TangleExpr TangleExpr::unit_of(Color c) {
  TangleExpr e;
  e.kind_ = Kind::unit;
  e.out_ = c;
  return e;
}

TangleExpr TangleExpr::jones_of(Color out) {
  TangleExpr e;
  e.kind_ = Kind::jones;
  e.out_ = out;
  return e;
}

TangleExpr TangleExpr::mul(TangleExpr a, TangleExpr b) {
  if (a.out_ != b.out_) throw domain_error("tangle mul: color mismatch");
  TangleExpr e;
  e.kind_ = Kind::mul;
  e.out_ = a.out_;
  e.children_.push_back(std::move(a));
  e.children_.push_back(std::move(b));
  return e;
}

TangleExpr TangleExpr::apply(Kind k, TangleExpr child, int pos) {
  TangleExpr e;
  e.kind_ = k;
  e.pos_ = pos;
  Color c = child.out_;
  switch (k) {
    case Kind::right_incl: e.out_ = {c.sign, c.k + 1}; break;
    case Kind::left_incl: e.out_ = {-c.sign, c.k + 1}; break;
    case Kind::right_exp: e.out_ = {c.sign, c.k - 1}; break;
    case Kind::left_exp: e.out_ = {-c.sign, c.k - 1}; break;
    case Kind::ident: e.out_ = c; break;
    case Kind::cap: e.out_ = {c.sign, c.k - 1}; break;
    case Kind::cup: e.out_ = {c.sign, c.k + 1}; break;
    case Kind::cap_outer: e.out_ = {-c.sign, c.k - 1}; break;
    case Kind::cup_outer: e.out_ = {-c.sign, c.k + 1}; break;
    default: throw domain_error("tangle apply: not a unary kind");
  }
  if (e.out_.k < 0) throw domain_error("tangle apply: level underflow");
  e.children_.push_back(std::move(child));
  return e;
}

std::vector<Color> TangleExpr::input_colors() const {
  std::vector<std::pair<int, Color>> slots;
  std::function<void(const TangleExpr&)> walk = [&](const TangleExpr& e) {
    if (e.kind_ == Kind::input) slots.push_back({e.slot_, e.out_});
    for (const auto& ch : e.children_) walk(ch);
  };
  walk(*this);
  std::sort(slots.begin(), slots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Color> out;
  for (auto& [s, c] : slots) {
    if (static_cast<int>(out.size()) == s)
      out.push_back(c);
    else if (s < static_cast<int>(out.size()) && out[s] != c)
      throw domain_error("tangle: slot used with two colors");
  }
  return out;
}

Element eval(const Instance& I, const TangleExpr& expr, const std::vector<Element>& inputs) {
  using K = TangleExpr::Kind;
  switch (expr.kind()) {
    case K::input: {
      const Element& x = inputs.at(expr.slot());
      if (x.color() != expr.out_color()) throw domain_error("eval: input color mismatch");
      return x;
    }
    case K::unit: return I.unit(expr.out_color());
    case K::jones: return jones(I, expr.out_color());
    case K::mul: return I.mul(eval(I, expr.child(0), inputs), eval(I, expr.child(1), inputs));
    case K::right_incl: return right_incl(I, eval(I, expr.child(0), inputs));
    case K::left_incl: return left_incl(I, eval(I, expr.child(0), inputs));
    case K::right_exp: return right_exp(I, eval(I, expr.child(0), inputs));
    case K::left_exp: return left_exp(I, eval(I, expr.child(0), inputs));
    case K::ident: return eval(I, expr.child(0), inputs);
    case K::cap: return I.cap_at(eval(I, expr.child(0), inputs), expr.pos());
    case K::cup: return I.cup_at(eval(I, expr.child(0), inputs), expr.pos());
    case K::cap_outer: return I.cap_outer(eval(I, expr.child(0), inputs));
    case K::cup_outer: return I.cup_outer(eval(I, expr.child(0), inputs));
  }
  throw domain_error("eval: unknown kind");
}

std::optional<Scalar> try_scalar_box(const Instance& I, const Element& box) {
  if (box.color() != Color{+1, 1}) return std::nullopt;
  Element u = I.unit({+1, 1});
  int pivot = -1;
  for (int i = 0; i < u.dim(); ++i)
    if (!u[i].is_zero()) {
      pivot = i;
      break;
    }
  if (pivot < 0) return std::nullopt;
  Scalar s = box[pivot] / u[pivot];
  return (u * s == box) ? std::optional<Scalar>(s) : std::nullopt;
}

}  // namespace planarly::pa
