#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ellnet/field.hpp"

namespace ellnet {

struct PrimePower {
  Integer prime;
  long exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// sign * prod prime^exponent with primes strictly increasing.  Exponents
/// are negative for primes of a rational's denominator.
struct Factorization {
  int sign = 1;
  std::vector<PrimePower> factors;

  Rational value() const;
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Trial division followed by Pollard rho (Brent) on the cofactor.
Factorization factorize(const Integer& n);
Factorization factorize(const Rational& x);

/// "-2^-36 · 23 · 103": sign, prime powers ascending, exponent omitted when 1.
/// Zero renders as "0" and units as "1" / "-1".
std::string render_factored(const Rational& x);

}  // namespace ellnet
