#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "planarly/numeric.hpp"

#include <cmath>
#include <random>

using namespace planarly::num;

namespace {

Scalar q(long long p, long long d = 1) { return Scalar::rational(p, d); }

// Random exact value: rational combination of 1, sqrt(2), sqrt(3).
Scalar random_exact(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9), pick(0, 3);
  Scalar v = q(num(rng), den(rng));
  if (pick(rng) > 1) v += q(num(rng), den(rng)) * sqrt(q(2));
  if (pick(rng) > 2) v += q(num(rng), den(rng)) * sqrt(q(3));
  return v;
}

}  // namespace

TEST_CASE("sqrt examples") {
  CHECK(sqrt(q(4, 9)) == q(2, 3));
  Scalar r2 = sqrt(q(2));
  CHECK(r2 * r2 == q(2));
  CHECK(sqrt(Scalar::zero()) == Scalar::zero());
  CHECK_THROWS_AS(sqrt(q(-1)), domain_error);
  CHECK(sqrt(q(8)) == q(2) * sqrt(q(2)));
  CHECK(sqrt(q(1, 2)) == sqrt(q(2)) * q(1, 2));
}

TEST_CASE("tracked radicals square exactly") {
  for (long long d : {2, 3, 5, 6, 7, 10, 15}) {
    Scalar s = sqrt(q(d));
    CHECK(s * s == q(d));
  }
  // sqrt(6) must agree with sqrt(2)*sqrt(3) canonically.
  CHECK(sqrt(q(6)) == sqrt(q(2)) * sqrt(q(3)));
}

TEST_CASE("fourth roots via nested sqrt") {
  Scalar f = sqrt(sqrt(q(2)));
  CHECK(f * f == sqrt(q(2)));
  CHECK(f * f * f * f == q(2));
  CHECK(!sqrt_degraded());
  // Nested composite radicand: sqrt(2*sqrt(3)) squares back exactly.
  Scalar g = sqrt(q(2) * sqrt(q(3)));
  CHECK(g * g == q(2) * sqrt(q(3)));
}

TEST_CASE("sqrt degrades to float on multi-term values") {
  clear_sqrt_degraded();
  Scalar v = sqrt(q(1) + sqrt(q(2)));
  CHECK(sqrt_degraded());
  CHECK(!v.is_exact());
  CHECK(std::fabs(v.approx() - std::sqrt(1.0 + std::sqrt(2.0))) < 1e-12);
  clear_sqrt_degraded();
}

TEST_CASE("is_positive") {
  CHECK(is_positive(q(1) + sqrt(q(2))));
  // Oracle: sqrt(2) lies in (1.414, 1.415) since 1.414^2 < 2 < 1.415^2,
  // so 1 - sqrt(2) is in (-0.415, -0.414): strictly negative.
  CHECK(1.414 * 1.414 < 2.0);
  CHECK(2.0 < 1.415 * 1.415);
  CHECK(!is_positive(q(1) - sqrt(q(2))));
  CHECK(!is_positive(Scalar::zero()));
  // A value whose double estimate is ~1e-17 but which is exactly nonzero.
  Scalar tiny = sqrt(q(2)) * sqrt(q(2)) - q(2) + q(1, 1000000000);
  CHECK(is_positive(tiny));
}

TEST_CASE("approx_eq") {
  Scalar tol = q(1, 1000000000);
  CHECK(approx_eq(q(1, 3), q(1, 3), tol));
  CHECK(approx_eq(sqrt(q(2)) * sqrt(q(2)), q(2), tol));
  CHECK(!approx_eq(q(1, 3), Scalar::from_double(0.3334), tol));
}

TEST_CASE("field axioms on random triples") {
  std::mt19937 rng(7);
  for (int it = 0; it < 1000; ++it) {
    Scalar a = random_exact(rng), b = random_exact(rng), c = random_exact(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero()) CHECK(a * a.inverse() == Scalar::one());
  }
}

TEST_CASE("sign determination matches float estimate away from zero") {
  std::mt19937 rng(11);
  for (int it = 0; it < 500; ++it) {
    Scalar a = random_exact(rng);
    double est = a.approx();
    if (std::fabs(est) > 1e-6) CHECK(is_positive(a) == (est > 0));
  }
}

TEST_CASE("serialization round trip") {
  Scalar v = q(3, 4) + q(-1, 2) * sqrt(q(2));
  CHECK(v.str() == "3/4-1/2*sqrt(2)");
  CHECK(Scalar::parse(v.str()) == v);
  CHECK(Scalar::parse("5").str() == "5");
  CHECK(Scalar::parse("2/3").str() == "2/3");
  Scalar f = sqrt(sqrt(q(2)));
  CHECK(Scalar::parse(f.str()) == f);
}

TEST_CASE("float backend") {
  set_backend(Backend::floating);
  Scalar a = q(1, 3);
  CHECK(!a.is_exact());
  CHECK(a + a == Scalar::from_double(2.0 / 3.0));
  set_backend(Backend::exact);
  CHECK(q(1, 3).is_exact());
}

TEST_CASE("inverse of radical combinations") {
  Scalar v = q(1) + sqrt(q(2)) + sqrt(q(3));
  CHECK(v * v.inverse() == Scalar::one());
  CHECK_THROWS_AS(Scalar::zero().inverse(), domain_error);
}
