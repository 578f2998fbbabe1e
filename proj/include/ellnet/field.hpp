#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace ellnet {

using Integer = mpz_class;
/// Exact rational; gmp keeps it canonical (coprime, positive denominator, 0 = 0/1).
using Rational = mpq_class;

enum class Errc {
  invalid_argument,
  parse,
  rank_deficient,
  domain,
  model_not_integral,
  precondition,
  unsupported_case,
  division_by_zero,
  degenerate_pair,
  degenerate_path,
  degenerate_recursion,
  dependent_points,
  not_a_subgroup,
  small_quotient,
  not_elliptic_sequence,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// p-adic valuation; the valuation of zero is +infinity and compares above
/// every finite value.
class Valuation {
 public:
  constexpr Valuation() = default;  // infinity
  constexpr explicit Valuation(long v) : v_(v) {}
  static constexpr Valuation infinity() { return Valuation(); }

  constexpr bool is_infinite() const { return !v_.has_value(); }
  long value() const {
    if (!v_) throw Error(Errc::domain, "valuation of zero has no finite value");
    return *v_;
  }

  friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
  friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (!a.v_ && !b.v_) return std::strong_ordering::equal;
    if (!a.v_) return std::strong_ordering::greater;
    if (!b.v_) return std::strong_ordering::less;
    return *a.v_ <=> *b.v_;
  }
  friend constexpr bool operator==(const Valuation& a, long b) { return a.v_ && *a.v_ == b; }
  friend constexpr std::strong_ordering operator<=>(const Valuation& a, long b) {
    return a <=> Valuation(b);
  }
  friend constexpr Valuation operator+(const Valuation& a, const Valuation& b) {
    if (!a.v_ || !b.v_) return infinity();
    return Valuation(*a.v_ + *b.v_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Valuation& v) {
    if (v.is_infinite()) return os << "inf";
    return os << *v.v_;
  }

 private:
  std::optional<long> v_;
};

bool is_prime(const Integer& n);
bool is_prime(std::int64_t n);

Valuation val_p(const Integer& x, std::int64_t p);
Valuation val_p(const Rational& x, std::int64_t p);

/// Exact integer power of a rational; negative exponents invert.
Rational pow(const Rational& base, long exponent);

bool is_integer(const Rational& x);

/// Element of F_p.  Carries its modulus so that values are self-describing.
class Fp {
 public:
  Fp() = default;
  Fp(std::int64_t value, std::int64_t p);

  std::int64_t residue() const { return r_; }
  std::int64_t modulus() const { return p_; }
  bool is_zero() const { return r_ == 0; }

  Fp operator-() const { return Fp(raw{}, r_ == 0 ? 0 : p_ - r_, p_); }
  Fp& operator+=(const Fp& o);
  Fp& operator-=(const Fp& o);
  Fp& operator*=(const Fp& o);
  Fp& operator/=(const Fp& o);
  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend bool operator==(const Fp& a, const Fp& b) { return a.r_ == b.r_ && a.p_ == b.p_; }

  Fp inverse() const;
  /// Signed exponent; a negative exponent inverts first.
  Fp pow(const Integer& e) const;
  Fp pow(long e) const { return pow(Integer(e)); }

  friend std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.r_; }

 private:
  struct raw {};
  Fp(raw, std::int64_t r, std::int64_t p) : r_(r), p_(p) {}
  void check_same(const Fp& o) const;

  std::int64_t r_ = 0;
  std::int64_t p_ = 0;
};

/// Field descriptors.  Generic code is written against
///   typename F::Element, F::from_int, F::zero, F::one, F::is_zero
/// so that the same curve/net code runs over Q and over F_p.
struct RationalField {
  using Element = Rational;
  Element from_int(const Integer& n) const { return Rational(n); }
  Element from_int(long n) const { return Rational(n); }
  Element zero() const { return Rational(0); }
  Element one() const { return Rational(1); }
  static bool is_zero(const Element& x) { return sgn(x) == 0; }
  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

struct PrimeField {
  using Element = Fp;
  explicit PrimeField(std::int64_t prime);
  std::int64_t p;

  Element from_int(const Integer& n) const;
  Element from_int(long n) const { return Fp(n, p); }
  /// Reduction of a p-integral rational; p | denominator is a domain error.
  Element from_rational(const Rational& x) const;
  Element zero() const { return Fp(0, p); }
  Element one() const { return Fp(1, p); }
  static bool is_zero(const Element& x) { return x.is_zero(); }
  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p == b.p; }
};

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Fp& x) { return x.is_zero(); }

std::string to_string(const Rational& x);
std::string to_string(const Fp& x);

}  // namespace ellnet
