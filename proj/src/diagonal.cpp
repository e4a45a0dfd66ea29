#include "planarly/diagonal.hpp"

#include <algorithm>

namespace planarly::diag {

using num::domain_error;
using num::Scalar;
using signs::Sign;
using signs::SignSeq;

namespace {

Sign sign_of(int color_sign) { return color_sign > 0 ? signs::kPlus : signs::kMinus; }

// Accumulates coefficients on sequences, then converts to a dense Element.
struct Accum {
  const DiagonalPA* I;
  Color c;
  std::unordered_map<std::string, Scalar> coeff;

  void add(const SignSeq& s, const Scalar& v) {
    if (v.is_zero()) return;
    std::string k(s.begin(), s.end());
    coeff[k] += v;
  }
  Element finish() const {
    int d = I->dim(c);
    Element out = Element::zero(c, d);
    for (const auto& [k, v] : coeff) {
      SignSeq s(k.begin(), k.end());
      int idx = I->seq_index(c, s);
      if (idx < 0) throw domain_error("diagonal: result sequence outside the basis");
      out[idx] += v;
    }
    return out;
  }
};

}  // namespace

DiagonalPA::DiagonalPA(int rank, int level_max) : rank_(rank), level_max_(level_max) {
  if (rank < 1) throw domain_error("diagonal: rank must be >= 1");
  if (rank > 4) throw domain_error("diagonal: rank > 4 not supported");
}

std::string DiagonalPA::key(const SignSeq& s) { return std::string(s.begin(), s.end()); }

const DiagonalPA::Level& DiagonalPA::level(Color c) const {
  if (c.k < 0 || c.k > level_max_) throw domain_error("diagonal: level out of bounds");
  std::lock_guard<std::mutex> lk(mu_);
  auto it = levels_.find({c.sign, c.k});
  if (it != levels_.end()) return it->second;
  Level l;
  l.seqs = signs::enumerate_basis(sign_of(c.sign), c.k, rank_);
  for (std::size_t i = 0; i < l.seqs.size(); ++i)
    l.index[key(l.seqs[i])] = static_cast<int>(i);
  return levels_.emplace(std::make_pair(c.sign, c.k), std::move(l)).first->second;
}

int DiagonalPA::dim(Color c) const { return static_cast<int>(level(c).seqs.size()); }

std::string DiagonalPA::basis_label(Color c, int i) const {
  const SignSeq& s = level(c).seqs.at(i);
  if (rank_ == 2) return signs::to_string(s);
  std::string out;
  for (Sign x : s) out += static_cast<char>('0' + x);
  return out;
}

const std::vector<SignSeq>& DiagonalPA::basis_seqs(Color c) const { return level(c).seqs; }

int DiagonalPA::seq_index(Color c, const SignSeq& s) const {
  const auto& idx = level(c).index;
  auto it = idx.find(key(s));
  return it == idx.end() ? -1 : it->second;
}

Element DiagonalPA::mul(const Element& x, const Element& y) const {
  if (x.color() != y.color()) throw domain_error("mul: color mismatch");
  Color c = x.color();
  int k = c.k;
  const auto& seqs = basis_seqs(c);
  Accum acc{this, c, {}};
  for (int i = 0; i < x.dim(); ++i) {
    if (x[i].is_zero()) continue;
    const SignSeq& s = seqs[i];
    for (int j = 0; j < y.dim(); ++j) {
      if (y[j].is_zero()) continue;
      const SignSeq& t = seqs[j];
      bool match = true;
      for (int u = 0; u < k && match; ++u) match = s[2 * k - 1 - u] == t[u];
      if (!match) continue;
      SignSeq out(s.begin(), s.begin() + k);
      out.insert(out.end(), t.begin() + k, t.end());
      acc.add(out, x[i] * y[j]);
    }
  }
  return acc.finish();
}

Element DiagonalPA::unit(Color c) const {
  Accum acc{this, c, {}};
  int k = c.k;
  SignSeq w(k, 0);
  for (;;) {
    SignSeq s = signs::concat(w, signs::reversed(w));
    acc.add(s, Scalar::one());
    int i = k - 1;
    while (i >= 0 && w[i] == rank_ - 1) w[i--] = 0;
    if (i < 0) break;
    ++w[i];
  }
  return acc.finish();
}

Element DiagonalPA::star(const Element& x) const {
  Color c = x.color();
  const auto& seqs = basis_seqs(c);
  Element out = Element::zero(c, x.dim());
  for (int i = 0; i < x.dim(); ++i) {
    if (x[i].is_zero()) continue;
    SignSeq r(seqs[i].rbegin(), seqs[i].rend());
    int idx = seq_index(c, r);
    if (idx < 0) throw domain_error("star: reflected sequence outside the basis");
    out[idx] += x[i];
  }
  return out;
}

namespace {
Scalar box_comp(const Element* box, Sign g) {
  if (!box) return Scalar::one();
  return (*box)[g];
}
}  // namespace

Element DiagonalPA::cap_at(const Element& x, int p, const Element* box) const {
  Color c = x.color();
  int n = 2 * c.k;
  if (p < 0 || p + 1 >= n) throw domain_error("cap_at: position out of range");
  Color out{c.sign, c.k - 1};
  const auto& seqs = basis_seqs(c);
  Accum acc{this, out, {}};
  for (int i = 0; i < x.dim(); ++i) {
    if (x[i].is_zero()) continue;
    const SignSeq& s = seqs[i];
    if (s[p] != s[p + 1]) continue;
    SignSeq o(s.begin(), s.begin() + p);
    o.insert(o.end(), s.begin() + p + 2, s.end());
    acc.add(o, x[i] * box_comp(box, s[p]));
  }
  return acc.finish();
}

Element DiagonalPA::cap_outer(const Element& x, const Element* box) const {
  Color c = x.color();
  int n = 2 * c.k;
  if (n < 2) throw domain_error("cap_outer: level 0");
  Color out{-c.sign, c.k - 1};
  const auto& seqs = basis_seqs(c);
  Accum acc{this, out, {}};
  for (int i = 0; i < x.dim(); ++i) {
    if (x[i].is_zero()) continue;
    const SignSeq& s = seqs[i];
    if (s[0] != s[n - 1]) continue;
    SignSeq o(s.begin() + 1, s.end() - 1);
    acc.add(o, x[i] * box_comp(box, s[0]));
  }
  return acc.finish();
}

Element DiagonalPA::cup_at(const Element& x, int p, const Element* box) const {
  Color c = x.color();
  int n = 2 * c.k;
  if (p < 0 || p > n) throw domain_error("cup_at: position out of range");
  Color out{c.sign, c.k + 1};
  const auto& seqs = basis_seqs(c);
  Accum acc{this, out, {}};
  for (int i = 0; i < x.dim(); ++i) {
    if (x[i].is_zero()) continue;
    const SignSeq& s = seqs[i];
    for (Sign g = 0; g < rank_; ++g) {
      SignSeq o(s.begin(), s.begin() + p);
      o.push_back(g);
      o.push_back(g);
      o.insert(o.end(), s.begin() + p, s.end());
      acc.add(o, x[i] * box_comp(box, g));
    }
  }
  return acc.finish();
}

Element DiagonalPA::cup_outer(const Element& x, const Element* box) const {
  Color c = x.color();
  Color out{-c.sign, c.k + 1};
  const auto& seqs = basis_seqs(c);
  Accum acc{this, out, {}};
  for (int i = 0; i < x.dim(); ++i) {
    if (x[i].is_zero()) continue;
    const SignSeq& s = seqs[i];
    for (Sign g = 0; g < rank_; ++g) {
      SignSeq o;
      o.push_back(g);
      o.insert(o.end(), s.begin(), s.end());
      o.push_back(g);
      acc.add(o, x[i] * box_comp(box, g));
    }
  }
  return acc.finish();
}

Element DiagonalPA::glue(const Element& x, const Element& y, int j) const {
  Color cx = x.color(), cy = y.color();
  int nx = 2 * cx.k, ny = 2 * cy.k;
  if (j < 0 || j > std::min(nx, ny)) throw domain_error("glue: bad strand count");
  Color out{cx.sign, cx.k + cy.k - j};
  const auto& xs = basis_seqs(cx);
  const auto& ys = basis_seqs(cy);
  Accum acc{this, out, {}};
  for (int i = 0; i < x.dim(); ++i) {
    if (x[i].is_zero()) continue;
    const SignSeq& s = xs[i];
    for (int l = 0; l < y.dim(); ++l) {
      if (y[l].is_zero()) continue;
      const SignSeq& t = ys[l];
      bool match = true;
      for (int u = 0; u < j && match; ++u) match = s[nx - 1 - u] == t[u];
      if (!match) continue;
      SignSeq o(s.begin(), s.end() - j);
      o.insert(o.end(), t.begin() + j, t.end());
      acc.add(o, x[i] * y[l]);
    }
  }
  return acc.finish();
}

Element DiagonalPA::insert_cycle(const Element& x, const Element& y, int gap) const {
  Color cx = x.color(), cy = y.color();
  int nx = 2 * cx.k;
  if (gap < 0 || gap > nx) throw domain_error("insert_cycle: bad gap");
  int gap_sign = (gap % 2 == 0) ? cx.sign : -cx.sign;
  if (cy.sign != gap_sign) throw domain_error("insert_cycle: shading mismatch at the gap");
  Color out{cx.sign, cx.k + cy.k};
  const auto& xs = basis_seqs(cx);
  const auto& ys = basis_seqs(cy);
  Accum acc{this, out, {}};
  for (int i = 0; i < x.dim(); ++i) {
    if (x[i].is_zero()) continue;
    const SignSeq& s = xs[i];
    for (int l = 0; l < y.dim(); ++l) {
      if (y[l].is_zero()) continue;
      const SignSeq& t = ys[l];
      SignSeq o(s.begin(), s.begin() + gap);
      o.insert(o.end(), t.begin(), t.end());
      o.insert(o.end(), s.begin() + gap, s.end());
      acc.add(o, x[i] * y[l]);
    }
  }
  return acc.finish();
}

Element DiagonalPA::decorated_identity(Color c, const std::vector<const Element*>& boxes) const {
  if (static_cast<int>(boxes.size()) != c.k)
    throw domain_error("decorated_identity: need one box slot per strand");
  Accum acc{this, c, {}};
  int k = c.k;
  SignSeq w(k, 0);
  if (k == 0) {
    acc.add({}, Scalar::one());
    return acc.finish();
  }
  for (;;) {
    Scalar v = Scalar::one();
    for (int i = 0; i < k; ++i) v *= box_comp(boxes[i], w[i]);
    acc.add(signs::concat(w, signs::reversed(w)), v);
    int i = k - 1;
    while (i >= 0 && w[i] == rank_ - 1) w[i--] = 0;
    if (i < 0) break;
    ++w[i];
  }
  return acc.finish();
}

Element DiagonalPA::one_box(const std::vector<Scalar>& comps) const {
  if (static_cast<int>(comps.size()) != rank_) throw domain_error("one_box: need rank entries");
  Element e = Element::zero({+1, 1}, rank_);
  for (int i = 0; i < rank_; ++i) e[i] = comps[i];
  return e;
}

std::shared_ptr<const DiagonalPA> build(int rank, int level_max) {
  return std::make_shared<DiagonalPA>(rank, level_max);
}

std::vector<std::pair<int, long long>> dims(const DiagonalPA& P, int k_max) {
  std::vector<std::pair<int, long long>> out;
  for (int k = 0; k <= k_max; ++k) out.push_back({k, P.dim({+1, k})});
  return out;
}

Scalar twisted_product(const SignSeq& seq, const Scalar& c_minus, const Scalar& c_plus) {
  Scalar v = Scalar::one();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    Sign s = seq[i];
    if (i % 2 == 1) s = static_cast<Sign>(1 - s);  // parity twist (-)^{i-1} eps_i
    v *= (s == signs::kMinus) ? c_minus : c_plus;
  }
  return v;
}

std::vector<Block> block_decomposition(const DiagonalPA& P, int k, const Scalar& c_minus,
                                       const Scalar& c_plus) {
  if (P.rank() != 2) throw domain_error("block_decomposition: rank 2 only");
  if (c_minus == c_plus) throw domain_error("block_decomposition: degenerate spectrum");
  std::vector<Block> blocks;
  for (int j = 0; j <= k; ++j) {
    Scalar v = Scalar::one();
    for (int t = 0; t < j; ++t) v *= c_minus;
    for (int t = j; t < k; ++t) v *= c_plus;
    blocks.push_back({j, v, {}});
  }
  SignSeq w(k, 0);
  for (;;) {
    int j = 0;
    for (int i = 0; i < k; ++i) {
      Sign s = w[i];
      if (i % 2 == 1) s = static_cast<Sign>(1 - s);
      if (s == signs::kMinus) ++j;
    }
    blocks[j].members.push_back(w);
    int i = k - 1;
    while (i >= 0 && w[i] == 1) w[i--] = 0;
    if (i < 0) break;
    ++w[i];
  }
  return blocks;
}

// ---- Temperley-Lieb instance --------------------------------------------------

namespace {

class TLInstance : public pa::Instance {
 public:
  TLInstance(Scalar delta, int level_max) : delta_(std::move(delta)), level_max_(level_max) {
    if (delta_.is_zero()) throw domain_error("TL: delta must be nonzero");
  }

  int level_max() const override { return level_max_; }

  int dim(Color c) const override { return static_cast<int>(level(c.k).size()); }

  std::string basis_label(Color c, int i) const override {
    return tl::to_string(level(c.k).at(i));
  }

  Element mul(const Element& x, const Element& y) const override {
    if (x.color() != y.color()) throw domain_error("mul: color mismatch");
    Color c = x.color();
    const auto& basis = level(c.k);
    Element out = Element::zero(c, dim(c));
    for (int i = 0; i < x.dim(); ++i) {
      if (x[i].is_zero()) continue;
      for (int j = 0; j < y.dim(); ++j) {
        if (y[j].is_zero()) continue;
        tl::TLDiagram top = basis[i], bottom = basis[j];
        top.eps = bottom.eps = c.sign;
        auto r = tl::compose(top, bottom, delta_, delta_);
        out[find(c.k, r.pairing)] += x[i] * y[j] * r.mult;
      }
    }
    return out;
  }

  Element unit(Color c) const override {
    std::vector<int> id(2 * c.k);
    for (int i = 0; i < 2 * c.k; ++i) id[i] = 2 * c.k - 1 - i;
    Element out = Element::zero(c, dim(c));
    out[find(c.k, id)] = Scalar::one();
    return out;
  }

  Element star(const Element& x) const override {
    Color c = x.color();
    int n = 2 * c.k;
    Element out = Element::zero(c, x.dim());
    const auto& basis = level(c.k);
    for (int i = 0; i < x.dim(); ++i) {
      if (x[i].is_zero()) continue;
      std::vector<int> p(n);
      for (int a = 0; a < n; ++a) p[n - 1 - a] = n - 1 - basis[i].pairing[a];
      out[find(c.k, p)] += x[i];
    }
    return out;
  }

  Element cap_at(const Element& x, int p, const Element* box) const override {
    Color c = x.color();
    int n = 2 * c.k;
    if (p < 0 || p + 1 >= n) throw domain_error("cap_at: position out of range");
    return contract(x, p, p + 1, {c.sign, c.k - 1}, box);
  }

  Element cap_outer(const Element& x, const Element* box) const override {
    Color c = x.color();
    int n = 2 * c.k;
    if (n < 2) throw domain_error("cap_outer: level 0");
    return contract(x, n - 1, 0, {-c.sign, c.k - 1}, box);
  }

  Element cup_at(const Element& x, int p, const Element* box) const override {
    Color c = x.color();
    int n = 2 * c.k;
    if (p < 0 || p > n) throw domain_error("cup_at: position out of range");
    Color out_c{c.sign, c.k + 1};
    Scalar b = box_scalar(box);
    const auto& basis = level(c.k);
    Element out = Element::zero(out_c, dim(out_c));
    for (int i = 0; i < x.dim(); ++i) {
      if (x[i].is_zero()) continue;
      std::vector<int> q(n + 2, -1);
      auto np = [&](int a) { return a < p ? a : a + 2; };
      for (int a = 0; a < n; ++a) q[np(a)] = np(basis[i].pairing[a]);
      q[p] = p + 1;
      q[p + 1] = p;
      out[find(out_c.k, q)] += x[i] * b;
    }
    return out;
  }

  Element cup_outer(const Element& x, const Element* box) const override {
    Color c = x.color();
    int n = 2 * c.k;
    Color out_c{-c.sign, c.k + 1};
    Scalar b = box_scalar(box);
    const auto& basis = level(c.k);
    Element out = Element::zero(out_c, dim(out_c));
    for (int i = 0; i < x.dim(); ++i) {
      if (x[i].is_zero()) continue;
      std::vector<int> q(n + 2, -1);
      for (int a = 0; a < n; ++a) q[a + 1] = basis[i].pairing[a] + 1;
      q[0] = n + 1;
      q[n + 1] = 0;
      out[find(out_c.k, q)] += x[i] * b;
    }
    return out;
  }

  Element glue(const Element& x, const Element& y, int j) const override {
    Color cx = x.color(), cy = y.color();
    int nx = 2 * cx.k, ny = 2 * cy.k;
    if (j < 0 || j > std::min(nx, ny)) throw domain_error("glue: bad strand count");
    Color out_c{cx.sign, cx.k + cy.k - j};
    const auto& xb = level(cx.k);
    const auto& yb = level(cy.k);
    Element out = Element::zero(out_c, dim(out_c));
    for (int i = 0; i < x.dim(); ++i) {
      if (x[i].is_zero()) continue;
      for (int l = 0; l < y.dim(); ++l) {
        if (y[l].is_zero()) continue;
        auto [pairing, loops] = glue_pairings(xb[i].pairing, yb[l].pairing, j);
        Scalar v = x[i] * y[l];
        for (int t = 0; t < loops; ++t) v *= delta_;
        out[find(out_c.k, pairing)] += v;
      }
    }
    return out;
  }

  Element insert_cycle(const Element& x, const Element& y, int gap) const override {
    Color cx = x.color(), cy = y.color();
    int nx = 2 * cx.k, ny = 2 * cy.k;
    if (gap < 0 || gap > nx) throw domain_error("insert_cycle: bad gap");
    Color out_c{cx.sign, cx.k + cy.k};
    const auto& xb = level(cx.k);
    const auto& yb = level(cy.k);
    Element out = Element::zero(out_c, dim(out_c));
    for (int i = 0; i < x.dim(); ++i) {
      if (x[i].is_zero()) continue;
      for (int l = 0; l < y.dim(); ++l) {
        if (y[l].is_zero()) continue;
        std::vector<int> q(nx + ny);
        auto xp = [&](int a) { return a < gap ? a : a + ny; };
        for (int a = 0; a < nx; ++a) q[xp(a)] = xp(xb[i].pairing[a]);
        for (int a = 0; a < ny; ++a) q[gap + a] = gap + yb[l].pairing[a];
        out[find(out_c.k, q)] += x[i] * y[l];
      }
    }
    return out;
  }

  Element decorated_identity(Color c, const std::vector<const Element*>& boxes) const override {
    Scalar v = Scalar::one();
    for (const Element* b : boxes) v *= box_scalar(b);
    return unit(c) * v;
  }

  bool supports_decorations() const override { return true; }

 private:
  const std::vector<tl::TLDiagram>& level(int k) const {
    if (k < 0 || k > level_max_) throw domain_error("TL: level out of bounds");
    std::lock_guard<std::mutex> lk(mu_);
    auto it = levels_.find(k);
    if (it != levels_.end()) return it->second;
    return levels_.emplace(k, tl::tl_basis(k)).first->second;
  }

  int find(int k, const std::vector<int>& pairing) const {
    const auto& basis = level(k);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i].pairing == pairing) return static_cast<int>(i);
    throw domain_error("TL: pairing not in basis");
  }

  Scalar box_scalar(const Element* box) const {
    if (!box) return Scalar::one();
    if (box->color() != Color{+1, 1} || box->dim() != 1)
      throw domain_error("TL: arc boxes must live in P_{+1}");
    return (*box)[0];
  }

  // Contract positions a and b (adjacent on the cycle) of each diagram.
  Element contract(const Element& x, int a, int b, Color out_c, const Element* box) const {
    Color c = x.color();
    int n = 2 * c.k;
    Scalar bx = box_scalar(box);
    const auto& basis = level(c.k);
    Element out = Element::zero(out_c, dim(out_c));
    int lo = std::min(a, b), hi = std::max(a, b);
    auto np = [&](int t) {
      int shift = (t > lo ? 1 : 0) + (t > hi ? 1 : 0);
      return t - shift;
    };
    for (int i = 0; i < x.dim(); ++i) {
      if (x[i].is_zero()) continue;
      const auto& pr = basis[i].pairing;
      Scalar v = x[i] * bx;
      std::vector<int> q(n - 2, -1);
      if (pr[a] == b) {
        v *= delta_;  // closed loop
        for (int t = 0; t < n; ++t) {
          if (t == a || t == b) continue;
          q[np(t)] = np(pr[t]);
        }
      } else {
        int pa = pr[a], pb = pr[b];
        for (int t = 0; t < n; ++t) {
          if (t == a || t == b) continue;
          q[np(t)] = (t == pa) ? np(pb) : (t == pb ? np(pa) : np(pr[t]));
        }
      }
      out[find(out_c.k, q)] += v;
    }
    return out;
  }

  static std::pair<std::vector<int>, int> glue_pairings(const std::vector<int>& xp,
                                                        const std::vector<int>& yp, int j) {
    int nx = static_cast<int>(xp.size()), ny = static_cast<int>(yp.size());
    // Global ids: x points 0..nx-1, y points nx..nx+ny-1.
    auto partner = [&](int id) { return id < nx ? xp[id] : nx + yp[id - nx]; };
    // Links: x's last j to y's first j.
    std::vector<int> link(nx + ny, -1);
    for (int t = 0; t < j; ++t) {
      link[nx - 1 - t] = nx + t;
      link[nx + t] = nx - 1 - t;
    }
    std::vector<int> ext_pos(nx + ny, -1);
    int pos = 0;
    for (int a = 0; a < nx - j; ++a) ext_pos[a] = pos++;
    for (int a = j; a < ny; ++a) ext_pos[nx + a] = pos++;
    std::vector<int> out(pos, -1);
    std::vector<char> seen(nx + ny, 0);
    int loops = 0;
    for (int id = 0; id < nx + ny; ++id) {
      if (ext_pos[id] < 0 || seen[id]) continue;
      int cur = partner(id);
      seen[id] = 1;
      while (ext_pos[cur] < 0) {
        seen[cur] = 1;
        cur = link[cur];
        seen[cur] = 1;
        cur = partner(cur);
      }
      seen[cur] = 1;
      out[ext_pos[id]] = ext_pos[cur];
      out[ext_pos[cur]] = ext_pos[id];
    }
    for (int id = 0; id < nx + ny; ++id) {
      if (seen[id] || link[id] < 0) continue;
      ++loops;
      int cur = id;
      while (!seen[cur]) {
        seen[cur] = 1;
        int v = link[cur];
        seen[v] = 1;
        cur = partner(v);
      }
    }
    return {out, loops};
  }

  Scalar delta_;
  int level_max_;
  mutable std::mutex mu_;
  mutable std::map<int, std::vector<tl::TLDiagram>> levels_;
};

}  // namespace

pa::InstancePtr build_tl(const Scalar& delta, int level_max) {
  return std::make_shared<TLInstance>(delta, level_max);
}

// ---- Counting-rule oracle -----------------------------------------------------

namespace {

struct UnionFind {
  std::vector<int> parent;
  int add() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }
  int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
  // Returns true if the two were already connected (a closed loop forms).
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return true;
    parent[a] = b;
    return false;
  }
};

struct Wiring {
  UnionFind uf;
  std::vector<int> out_ports;                      // per output position
  std::map<int, std::vector<int>> input_ports;     // slot -> ports
  int loops = 0;
};

void build_wiring(const pa::TangleExpr& e, Wiring& w) {
  using K = pa::TangleExpr::Kind;
  switch (e.kind()) {
    case K::input: {
      int n = 2 * e.out_color().k;
      if (w.input_ports.count(e.slot())) throw domain_error("counting: slot reused");
      auto& ports = w.input_ports[e.slot()];
      w.out_ports.clear();
      for (int i = 0; i < n; ++i) {
        int p = w.uf.add();
        ports.push_back(p);
        w.out_ports.push_back(p);
      }
      return;
    }
    case K::unit: {
      int k = e.out_color().k;
      w.out_ports.assign(2 * k, -1);
      for (int i = 0; i < k; ++i) {
        int p = w.uf.add();
        w.out_ports[i] = p;
        w.out_ports[2 * k - 1 - i] = p;
      }
      return;
    }
    case K::jones: {
      int K2 = e.out_color().k;
      int k = K2 - 2;
      w.out_ports.assign(2 * K2, -1);
      for (int i = 0; i < k; ++i) {
        int p = w.uf.add();
        w.out_ports[i] = p;
        w.out_ports[2 * K2 - 1 - i] = p;
      }
      int t = w.uf.add();
      w.out_ports[k] = w.out_ports[k + 1] = t;
      int b = w.uf.add();
      w.out_ports[K2] = w.out_ports[K2 + 1] = b;
      return;
    }
    case K::mul: {
      build_wiring(e.child(0), w);
      std::vector<int> top = w.out_ports;
      build_wiring(e.child(1), w);
      std::vector<int> bot = w.out_ports;
      int k = e.out_color().k;
      for (int i = 0; i < k; ++i)
        if (w.uf.unite(top[2 * k - 1 - i], bot[i])) ++w.loops;
      std::vector<int> out(top.begin(), top.begin() + k);
      out.insert(out.end(), bot.begin() + k, bot.end());
      w.out_ports = std::move(out);
      return;
    }
    default: break;
  }
  // Unary kinds.
  build_wiring(e.child(0), w);
  std::vector<int> ch = w.out_ports;
  int n = static_cast<int>(ch.size());
  switch (e.kind()) {
    case K::ident: return;
    case K::right_incl:
    case K::cup: {
      int p = e.kind() == K::right_incl ? n / 2 : e.pos();
      int node = w.uf.add();
      std::vector<int> out(ch.begin(), ch.begin() + p);
      out.push_back(node);
      out.push_back(node);
      out.insert(out.end(), ch.begin() + p, ch.end());
      w.out_ports = std::move(out);
      return;
    }
    case K::left_incl:
    case K::cup_outer: {
      int node = w.uf.add();
      std::vector<int> out;
      out.push_back(node);
      out.insert(out.end(), ch.begin(), ch.end());
      out.push_back(node);
      w.out_ports = std::move(out);
      return;
    }
    case K::right_exp:
    case K::cap: {
      int p = e.kind() == K::right_exp ? n / 2 - 1 : e.pos();
      if (w.uf.unite(ch[p], ch[p + 1])) ++w.loops;
      std::vector<int> out(ch.begin(), ch.begin() + p);
      out.insert(out.end(), ch.begin() + p + 2, ch.end());
      w.out_ports = std::move(out);
      return;
    }
    case K::left_exp:
    case K::cap_outer: {
      if (w.uf.unite(ch[0], ch[n - 1])) ++w.loops;
      w.out_ports = std::vector<int>(ch.begin() + 1, ch.end() - 1);
      return;
    }
    default: throw domain_error("counting: unsupported kind");
  }
}

}  // namespace

Element counting_eval(const DiagonalPA& I, const pa::TangleExpr& expr,
                      const std::vector<Element>& inputs) {
  Wiring w;
  build_wiring(expr, w);
  Color out_c = expr.out_color();
  int out_dim = I.dim(out_c);
  Element result = Element::zero(out_c, out_dim);
  // Multilinear expansion over the inputs' support.
  std::vector<int> slots;
  for (auto& [s, ports] : w.input_ports) slots.push_back(s);
  std::vector<int> pick(slots.size(), 0);
  for (;;) {
    Scalar coeff = Scalar::one();
    bool zero = false;
    for (std::size_t t = 0; t < slots.size() && !zero; ++t) {
      const Element& x = inputs.at(slots[t]);
      if (x[pick[t]].is_zero()) zero = true;
      coeff *= x[pick[t]];
    }
    if (!zero) {
      // Sign assignment per union-find class from the chosen basis sequences.
      std::map<int, Sign> assign;
      bool consistent = true;
      auto set_port = [&](int port, Sign s) {
        int root = w.uf.find(port);
        auto it = assign.find(root);
        if (it == assign.end())
          assign[root] = s;
        else if (it->second != s)
          consistent = false;
      };
      for (std::size_t t = 0; t < slots.size() && consistent; ++t) {
        const Element& x = inputs.at(slots[t]);
        const SignSeq& s = I.basis_seqs(x.color())[pick[t]];
        const auto& ports = w.input_ports[slots[t]];
        for (std::size_t u = 0; u < ports.size() && consistent; ++u) set_port(ports[u], s[u]);
      }
      if (consistent) {
        for (int oi = 0; oi < out_dim; ++oi) {
          const SignSeq& os = I.basis_seqs(out_c)[oi];
          std::map<int, Sign> a2 = assign;
          bool ok = true;
          for (std::size_t u = 0; u < os.size() && ok; ++u) {
            int root = w.uf.find(w.out_ports[u]);
            auto it = a2.find(root);
            if (it == a2.end())
              a2[root] = os[u];
            else if (it->second != os[u])
              ok = false;
          }
          if (!ok) continue;
          // Each closed loop is a free string: |I| colorings.
          Scalar v = coeff;
          for (int t = 0; t < w.loops; ++t) v *= Scalar::integer(I.rank());
          result[oi] += v;
        }
      }
    }
    // advance the odometer over input supports
    if (slots.empty()) break;
    std::size_t t = 0;
    for (;;) {
      ++pick[t];
      if (pick[t] < inputs.at(slots[t]).dim()) break;
      pick[t] = 0;
      ++t;
      if (t == slots.size()) break;
    }
    if (t == slots.size()) break;
  }
  return result;
}

}  // namespace planarly::diag
