#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace planarly::num {

using Rational = boost::multiprecision::cpp_rational;

struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Scalar arithmetic backend. The exact backend works in the field of
/// rationals extended by square roots (a tower of 2-power roots of primes);
/// the floating backend is plain double with a 1e-9 comparison tolerance.
enum class Backend { exact, floating };

Backend backend();
void set_backend(Backend b);

/// Sticky flag: set whenever an exact sqrt had to fall back to floating point.
bool sqrt_degraded();
void clear_sqrt_degraded();

/// A number, either an exact element of the radical tower (a rational linear
/// combination of square-free monomials in the tower generators) or a double.
/// Values are immutable and safe to share across threads; the generator table
/// behind the exact backend is global and append-only.
class Scalar {
 public:
  Scalar() = default;  // exact zero

  static Scalar integer(long long n);
  static Scalar rational(long long p, long long q);
  static Scalar from_rational(const Rational& r);
  static Scalar from_double(double v);
  static Scalar zero() { return Scalar(); }
  static Scalar one() { return integer(1); }

  bool is_exact() const { return !is_float_; }
  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;          // exact with no radical part
  Rational rational_value() const;   // throws unless is_rational()

  double approx() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar inverse() const;  // throws domain_error on zero

  /// Exact equality on the exact backend; |x-y| <= 1e-9 when floats are involved.
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string str() const;
  static Scalar parse(const std::string& text);

  friend Scalar sqrt(const Scalar& x);
  friend bool is_positive(const Scalar& x);

 private:
  // Exact representation: monomial mask (bitset of tower generators) -> coeff.
  // Empty map is zero. Mask 0 is the rational part.
  std::map<std::uint64_t, Rational> terms_;
  bool is_float_ = false;
  double fval_ = 0.0;

  static Scalar make_exact(std::map<std::uint64_t, Rational> t);
  Scalar to_float() const;
};

/// Exact square root when the value is a single tower monomial (times a
/// positive rational); otherwise degrades to float and records the flag.
/// Negative input throws domain_error.
Scalar sqrt(const Scalar& x);

/// Strict positivity under the real embedding (exact sign via interval
/// refinement of the generator values).
bool is_positive(const Scalar& x);

/// Exact equality on the exact backend (tol ignored there); |x-y| <= tol on float.
bool approx_eq(const Scalar& x, const Scalar& y, const Scalar& tol);

inline Scalar abs(const Scalar& x) { return is_positive(-x) ? -x : x; }

}  // namespace planarly::num
