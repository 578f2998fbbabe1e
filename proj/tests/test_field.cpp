#include <random>

#include "doctest.h"
#include "ellnet/factor.hpp"
#include "ellnet/field.hpp"

using namespace ellnet;

namespace {

// Naive valuation by repeated division.
long naive_val(Integer n, long p) {
  long e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

bool naive_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("val_p on integers and rationals") {
  CHECK(val_p(Integer(-52272), 2) == 4L);
  CHECK(val_p(Integer(-52272), 3) == 3L);
  CHECK(val_p(Integer(-52272), 11) == 2L);
  CHECK(val_p(Integer(-52272), 5) == 0L);
  CHECK(val_p(Rational(345, 64), 2) == -6L);
  CHECK(val_p(Rational(0), 7).is_infinite());
  CHECK(val_p(Rational(0), 7) > Valuation(1000));
  CHECK(Valuation(2) + Valuation::infinity() == Valuation::infinity());

  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    std::int64_t a = static_cast<std::int64_t>(rng() % 1000000) + 1, b = static_cast<std::int64_t>(rng() % 1000) + 1;
    for (long p : {2L, 3L, 5L, 7L}) {
      Rational x(a, b);
      x.canonicalize();
      CHECK(val_p(x, p) == naive_val(Integer(a), p) - naive_val(Integer(b), p));
    }
  }
}

TEST_CASE("is_prime agrees with trial division") {
  for (std::int64_t n = -5; n < 3000; ++n) CHECK(is_prime(n) == naive_prime(n));
  CHECK(is_prime(Integer("175849593114259")));
  CHECK(is_prime(Integer("638022143238323743")));
  CHECK_FALSE(is_prime(Integer("638022143238323743") * 3));
}

TEST_CASE("rational powers") {
  CHECK(pow(Rational(2), 10) == 1024);
  CHECK(pow(Rational(2), -3) == Rational(1, 8));
  CHECK(pow(Rational(-2, 3), 3) == Rational(-8, 27));
  CHECK(pow(Rational(5), 0) == 1);
  CHECK(is_integer(Rational(-4)));
  CHECK_FALSE(is_integer(Rational(3, 4)));
}

TEST_CASE("Fp matches modular integer arithmetic") {
  std::mt19937_64 rng(2);
  for (std::int64_t p : {2, 5, 7, 11, 89, 1000003}) {
    for (int t = 0; t < 200; ++t) {
      std::int64_t a = static_cast<std::int64_t>(rng() % 2000000) - 1000000;
      std::int64_t b = static_cast<std::int64_t>(rng() % 2000000) - 1000000;
      auto mod = [&](std::int64_t x) { return ((x % p) + p) % p; };
      Fp x(a, p), y(b, p);
      CHECK((x + y).residue() == mod(a + b));
      CHECK((x - y).residue() == mod(a - b));
      CHECK((x * y).residue() == mod(static_cast<std::int64_t>((__int128)mod(a) * mod(b) % p)));
      if (!y.is_zero()) {
        CHECK((x / y * y) == x);
        CHECK((y * y.inverse()).residue() == 1);
      }
    }
  }
  Fp g(3, 7);
  CHECK(g.pow(6).residue() == 1);
  CHECK(g.pow(-1) == g.inverse());
  CHECK(g.pow(Integer("1000000000000000000000")) == g.pow(Integer("1000000000000000000000") % 6));
  CHECK_THROWS_AS(Fp(0, 7).inverse(), Error);
  CHECK_THROWS_AS(Fp(1, 7) + Fp(1, 11), Error);
}

TEST_CASE("reduction of rationals into F_p") {
  PrimeField F(7);
  CHECK(F.from_rational(Rational(1, 2)).residue() == 4);
  CHECK(F.from_rational(Rational(-3, 4)) * F.from_int(4L) == F.from_int(-3L));
  CHECK_THROWS_AS(F.from_rational(Rational(1, 14)), Error);
  CHECK_THROWS_AS(PrimeField(9), Error);
}

TEST_CASE("factorization round-trips") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 1000; ++t) {
    Integer n(static_cast<unsigned long>(rng() >> 4));
    n *= static_cast<unsigned long>(rng() % 100000 + 1);
    if (t % 2) n = -n;
    Factorization f = factorize(n);
    CHECK(f.value() == Rational(n));
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
      CHECK(is_prime(f.factors[i].prime));
      CHECK(f.factors[i].exponent > 0);
      if (i) CHECK(f.factors[i - 1].prime < f.factors[i].prime);
    }
  }
  Rational x(Integer(-23L * 103 * 340789) * Integer("175849593114259"), Integer(1) << 36);
  CHECK(factorize(x).value() == x);
  CHECK(render_factored(x) == "-2^-36 · 23 · 103 · 340789 · 175849593114259");
  CHECK(render_factored(Rational(0)) == "0");
  CHECK(render_factored(Rational(1)) == "1");
  CHECK(render_factored(Rational(-1)) == "-1");
  CHECK(render_factored(Rational(-98864)) == "-2^4 · 37 · 167");
}
