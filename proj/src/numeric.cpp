#include "planarly/numeric.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <atomic>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <mutex>
#include <vector>

namespace planarly::num {

namespace {

using boost::multiprecision::cpp_int;
using Float100 = boost::multiprecision::cpp_bin_float_100;

std::atomic<Backend> g_backend{Backend::exact};
thread_local bool g_sqrt_degraded = false;

// ---------------------------------------------------------------------------
// Radical tower. Generator i satisfies g_i^2 = sq_rat * (product of the
// generators in sq_mask). Invariants: sq_mask has at most one bit, every bit
// referenced is < i, and for prime generators sq_mask == 0 with sq_rat a
// prime. Every generator is therefore p^(1/2^k) for some prime p, so distinct
// monomials are linearly independent over Q and canonical forms are faithful.
struct Gen {
  Rational sq_rat;
  std::uint64_t sq_mask;
  double approx;
};

std::mutex g_table_mutex;
std::vector<Gen> g_table;

double gen_approx_unlocked(std::size_t i) { return g_table[i].approx; }

// Multiplies two square-free monomials: returns the rational factor collected
// from squared generators and the reduced mask.
std::pair<Rational, std::uint64_t> mul_masks(std::uint64_t m1, std::uint64_t m2) {
  Rational r = 1;
  std::uint64_t common = m1 & m2;
  std::uint64_t result = m1 ^ m2;
  if (common) {
    std::lock_guard<std::mutex> lk(g_table_mutex);
    while (common) {
      int i = std::countr_zero(common);
      common &= common - 1;
      r *= g_table[static_cast<std::size_t>(i)].sq_rat;
      std::uint64_t extra = g_table[static_cast<std::size_t>(i)].sq_mask;
      // extra has at most one bit, strictly below i; folding it in may expose
      // a new square, which goes back on the work list.
      std::uint64_t clash = result & extra;
      result ^= extra;
      common |= clash;
    }
  }
  return {r, result};
}

std::size_t find_or_add_gen(const Rational& sq_rat, std::uint64_t sq_mask,
                            double approx_of_square) {
  std::lock_guard<std::mutex> lk(g_table_mutex);
  for (std::size_t i = 0; i < g_table.size(); ++i) {
    if (g_table[i].sq_rat == sq_rat && g_table[i].sq_mask == sq_mask) return i;
  }
  if (g_table.size() >= 63) throw domain_error("radical tower exhausted (63 generators)");
  g_table.push_back({sq_rat, sq_mask, std::sqrt(approx_of_square)});
  return g_table.size() - 1;
}

double mask_approx(std::uint64_t m) {
  double v = 1.0;
  std::lock_guard<std::mutex> lk(g_table_mutex);
  while (m) {
    int i = std::countr_zero(m);
    m &= m - 1;
    v *= gen_approx_unlocked(static_cast<std::size_t>(i));
  }
  return v;
}

template <class F>
F mask_eval(std::uint64_t m) {
  // High-precision generator value: recurse through the tower.
  F v = 1;
  std::vector<Gen> snapshot;
  {
    std::lock_guard<std::mutex> lk(g_table_mutex);
    snapshot = g_table;
  }
  // Evaluate each generator by repeated exact square roots of its square.
  std::vector<F> gv(snapshot.size(), F(0));
  for (std::size_t i = 0; i < snapshot.size(); ++i) {
    F sq = snapshot[i].sq_rat.template convert_to<F>();
    std::uint64_t sm = snapshot[i].sq_mask;
    while (sm) {
      int j = std::countr_zero(sm);
      sm &= sm - 1;
      sq *= gv[static_cast<std::size_t>(j)];
    }
    gv[i] = boost::multiprecision::sqrt(sq);
  }
  while (m) {
    int i = std::countr_zero(m);
    m &= m - 1;
    v *= gv[static_cast<std::size_t>(i)];
  }
  return v;
}

constexpr long long kFactorLimit = 1 << 20;

// n = s * t^2 with s square-free. Returns (s-primes, t). Throws if a factor
// beyond the trial-division limit remains.
std::pair<std::vector<long long>, cpp_int> squarefree_split(cpp_int n) {
  std::vector<long long> primes;
  cpp_int t = 1;
  for (long long p = 2; p <= kFactorLimit && cpp_int(p) * p <= n; p == 2 ? p = 3 : p += 2) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int j = 0; j < e / 2; ++j) t *= p;
    if (e % 2) primes.push_back(p);
  }
  if (n > kFactorLimit) return {{-1}, 0};  // sentinel: unfactorable remainder
  if (n > 1) primes.push_back(n.convert_to<long long>());
  return {primes, t};
}

std::string rat_str(const Rational& r) {
  cpp_int num = boost::multiprecision::numerator(r);
  cpp_int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace

Backend backend() { return g_backend.load(); }
void set_backend(Backend b) { g_backend.store(b); }
bool sqrt_degraded() { return g_sqrt_degraded; }
void clear_sqrt_degraded() { g_sqrt_degraded = false; }

Scalar Scalar::make_exact(std::map<std::uint64_t, Rational> t) {
  Scalar s;
  for (auto it = t.begin(); it != t.end();) {
    if (it->second == 0)
      it = t.erase(it);
    else
      ++it;
  }
  s.terms_ = std::move(t);
  return s;
}

Scalar Scalar::integer(long long n) {
  if (backend() == Backend::floating) return from_double(static_cast<double>(n));
  return from_rational(Rational(n));
}

Scalar Scalar::rational(long long p, long long q) {
  if (q == 0) throw domain_error("zero denominator");
  if (backend() == Backend::floating)
    return from_double(static_cast<double>(p) / static_cast<double>(q));
  return from_rational(Rational(cpp_int(p), cpp_int(q)));
}

Scalar Scalar::from_rational(const Rational& r) {
  if (backend() == Backend::floating) return from_double(r.convert_to<double>());
  std::map<std::uint64_t, Rational> t;
  if (r != 0) t[0] = r;
  return make_exact(std::move(t));
}

Scalar Scalar::from_double(double v) {
  Scalar s;
  s.is_float_ = true;
  s.fval_ = v;
  return s;
}

bool Scalar::is_zero() const { return is_float_ ? std::fabs(fval_) <= 1e-9 : terms_.empty(); }

bool Scalar::is_one() const {
  if (is_float_) return std::fabs(fval_ - 1.0) <= 1e-9;
  return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
}

bool Scalar::is_rational() const {
  return !is_float_ && (terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0));
}

Rational Scalar::rational_value() const {
  if (!is_rational()) throw domain_error("not a rational value");
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

double Scalar::approx() const {
  if (is_float_) return fval_;
  double v = 0.0;
  for (const auto& [m, r] : terms_) v += r.convert_to<double>() * mask_approx(m);
  return v;
}

Scalar Scalar::to_float() const { return from_double(approx()); }

Scalar Scalar::operator-() const {
  if (is_float_) return from_double(-fval_);
  auto t = terms_;
  for (auto& [m, r] : t) r = -r;
  return make_exact(std::move(t));
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (is_float_ || o.is_float_) return from_double(approx() + o.approx());
  auto t = terms_;
  for (const auto& [m, r] : o.terms_) t[m] += r;
  return make_exact(std::move(t));
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_float_ || o.is_float_) return from_double(approx() * o.approx());
  std::map<std::uint64_t, Rational> t;
  for (const auto& [m1, r1] : terms_) {
    for (const auto& [m2, r2] : o.terms_) {
      auto [rf, m] = mul_masks(m1, m2);
      t[m] += r1 * r2 * rf;
    }
  }
  return make_exact(std::move(t));
}

Scalar Scalar::inverse() const {
  if (is_float_) {
    if (std::fabs(fval_) <= 1e-300) throw domain_error("inverse of zero");
    return from_double(1.0 / fval_);
  }
  if (terms_.empty()) throw domain_error("inverse of zero");
  if (is_rational()) return from_rational(Rational(1) / terms_.begin()->second);
  // Split by the highest generator h: x = a + b*g_h, then
  // x^{-1} = (a - b*g_h) / (a^2 - b^2*g_h^2), recursing into the subfield.
  std::uint64_t hbit = 0;
  for (const auto& [m, r] : terms_) {
    (void)r;
    if (m) hbit = std::max(hbit, std::uint64_t(1) << (63 - std::countl_zero(m)));
  }
  std::map<std::uint64_t, Rational> at, bt;
  for (const auto& [m, r] : terms_) {
    if (m & hbit)
      bt[m & ~hbit] = r;
    else
      at[m] = r;
  }
  Scalar a = make_exact(std::move(at));
  Scalar b = make_exact(std::move(bt));
  Rational sq_rat;
  std::uint64_t sq_mask;
  {
    std::lock_guard<std::mutex> lk(g_table_mutex);
    const Gen& g = g_table[static_cast<std::size_t>(std::countr_zero(hbit))];
    sq_rat = g.sq_rat;
    sq_mask = g.sq_mask;
  }
  Scalar hsq = make_exact({{sq_mask, sq_rat}});
  Scalar denom = a * a - b * b * hsq;
  if (denom.is_zero()) throw domain_error("inverse: degenerate conjugate");
  Scalar gh = make_exact({{hbit, Rational(1)}});
  return (a - b * gh) * denom.inverse();
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
  if (!is_float_ && !o.is_float_) return terms_ == o.terms_;
  return std::fabs(approx() - o.approx()) <= 1e-9;
}

Scalar sqrt(const Scalar& x) {
  if (x.is_float_) {
    if (x.fval_ < -1e-9) throw domain_error("sqrt of negative value");
    return Scalar::from_double(std::sqrt(std::max(0.0, x.fval_)));
  }
  if (x.terms_.empty()) return Scalar::zero();
  if (!is_positive(x)) throw domain_error("sqrt of negative value");
  auto degrade = [&]() {
    g_sqrt_degraded = true;
    return Scalar::from_double(std::sqrt(x.approx()));
  };
  if (x.terms_.size() != 1) return degrade();
  auto [mask, coeff] = *x.terms_.begin();
  // sqrt(p/q) = sqrt(p*q)/q; split p*q = s*t^2 with s square-free.
  cpp_int num = boost::multiprecision::numerator(coeff);
  cpp_int den = boost::multiprecision::denominator(coeff);
  auto [sprimes, t] = squarefree_split(num * den);
  if (!sprimes.empty() && sprimes.front() == -1) return degrade();
  Rational rat_part(t, den);
  std::uint64_t out_mask = 0;
  Rational out_rat = rat_part;
  for (long long p : sprimes) {
    std::size_t gi = find_or_add_gen(Rational(p), 0, static_cast<double>(p));
    auto [rf, m] = mul_masks(out_mask, std::uint64_t(1) << gi);
    out_rat *= rf;
    out_mask = m;
  }
  // sqrt of each generator in the monomial: look up or add its 2-power root.
  std::uint64_t m = mask;
  while (m) {
    int i = std::countr_zero(m);
    m &= m - 1;
    double gi_approx;
    {
      std::lock_guard<std::mutex> lk(g_table_mutex);
      gi_approx = g_table[static_cast<std::size_t>(i)].approx;
    }
    std::size_t ri = find_or_add_gen(Rational(1), std::uint64_t(1) << i, gi_approx);
    auto [rf, mm] = mul_masks(out_mask, std::uint64_t(1) << ri);
    out_rat *= rf;
    out_mask = mm;
  }
  std::map<std::uint64_t, Rational> tmap;
  tmap[out_mask] = out_rat;
  return Scalar::make_exact(std::move(tmap));
}

bool is_positive(const Scalar& x) {
  if (x.is_float_) return x.fval_ > 0.0;
  if (x.terms_.empty()) return false;
  if (x.is_rational()) return x.terms_.begin()->second > 0;
  double est = 0.0, scale = 0.0;
  for (const auto& [m, r] : x.terms_) {
    double t = r.convert_to<double>() * mask_approx(m);
    est += t;
    scale += std::fabs(t);
  }
  if (std::fabs(est) > 1e-9 * std::max(1.0, scale)) return est > 0;
  // Interval refinement: re-evaluate at 100 decimal digits. A canonically
  // nonzero tower element cannot vanish, so this resolves the sign.
  Float100 v = 0;
  Float100 sc = 0;
  for (const auto& [m, r] : x.terms_) {
    Float100 t = r.convert_to<Float100>() * mask_eval<Float100>(m);
    v += t;
    sc += boost::multiprecision::fabs(t);
  }
  if (boost::multiprecision::fabs(v) > sc * Float100("1e-80")) return v > 0;
  throw domain_error("sign determination failed to converge");
}

bool approx_eq(const Scalar& x, const Scalar& y, const Scalar& tol) {
  if (x.is_exact() && y.is_exact()) return x == y;
  return std::fabs(x.approx() - y.approx()) <= tol.approx();
}

std::string Scalar::str() const {
  if (is_float_) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", fval_);
    return buf;
  }
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, r] : terms_) {
    std::string term;
    Rational rr = r;
    bool neg = rr < 0;
    if (neg) rr = -rr;
    if (m == 0) {
      term = rat_str(rr);
    } else {
      auto [sq_rat, sq_mask] = mul_masks(m, m);
      Scalar sq = make_exact({{sq_mask, sq_rat}});
      term = rat_str(rr) + "*sqrt(" + sq.str() + ")";
    }
    if (first) {
      out = (neg ? "-" : "") + term;
      first = false;
    } else {
      out += (neg ? "-" : "+") + term;
    }
  }
  return out;
}

namespace {

// Minimal recursive-descent parser for the printed scalar grammar:
//   sum     := term (('+'|'-') term)*
//   term    := rational ('*' 'sqrt(' sum ')')*  | 'sqrt(' sum ')'
//   rational:= int ('/' int)?  |  decimal (float backend output)
struct Parser {
  const std::string& s;
  std::size_t i = 0;
  explicit Parser(const std::string& str) : s(str) {}

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool lookahead(const char* kw) {
    skip();
    return s.compare(i, std::strlen(kw), kw) == 0;
  }

  Scalar parse_sum() {
    Scalar v = parse_term();
    for (;;) {
      skip();
      if (eat('+'))
        v += parse_term();
      else if (lookahead("-"))
        v += parse_term();  // sign handled by the term itself
      else
        break;
    }
    return v;
  }

  Scalar parse_term() {
    skip();
    bool neg = eat('-');
    Scalar v;
    if (lookahead("sqrt(")) {
      i += 5;
      Scalar inner = parse_sum();
      if (!eat(')')) throw domain_error("scalar parse: missing ')'");
      v = planarly::num::sqrt(inner);
    } else {
      v = parse_number();
    }
    while (eat('*')) {
      skip();
      if (lookahead("sqrt(")) {
        i += 5;
        Scalar inner = parse_sum();
        if (!eat(')')) throw domain_error("scalar parse: missing ')'");
        v *= planarly::num::sqrt(inner);
      } else {
        v *= parse_number();
      }
    }
    return neg ? -v : v;
  }

  Scalar parse_number() {
    skip();
    std::size_t start = i;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])))) ++i;
    if (start == i) throw domain_error("scalar parse: expected number at '" + s.substr(start) + "'");
    // Decimal floats only show up in float-backend output.
    if (i < s.size() && (s[i] == '.' || s[i] == 'e' || s[i] == 'E')) {
      ++i;
      while (i < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '+' || s[i] == '-' ||
              s[i] == 'e' || s[i] == 'E' || s[i] == '.'))
        ++i;
      return Scalar::from_double(std::stod(s.substr(start, i - start)));
    }
    cpp_int p(s.substr(start, i - start));
    if (eat('/')) {
      skip();
      std::size_t ds = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (ds == i) throw domain_error("scalar parse: expected denominator");
      cpp_int q(s.substr(ds, i - ds));
      if (q == 0) throw domain_error("scalar parse: zero denominator");
      return Scalar::from_rational(Rational(p, q));
    }
    return Scalar::from_rational(Rational(p));
  }
};

}  // namespace

Scalar Scalar::parse(const std::string& text) {
  Parser p(text);
  Scalar v = p.parse_sum();
  p.skip();
  if (p.i != text.size()) throw domain_error("scalar parse: trailing input in '" + text + "'");
  return v;
}

}  // namespace planarly::num
