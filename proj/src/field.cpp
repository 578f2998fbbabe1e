#include "ellnet/field.hpp"

namespace ellnet {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid argument";
    case Errc::parse: return "parse error";
    case Errc::rank_deficient: return "rank deficient";
    case Errc::domain: return "domain error";
    case Errc::model_not_integral: return "model not integral";
    case Errc::precondition: return "precondition violated";
    case Errc::unsupported_case: return "unsupported case";
    case Errc::division_by_zero: return "division by zero";
    case Errc::degenerate_pair: return "degenerate pair";
    case Errc::degenerate_path: return "degenerate path";
    case Errc::degenerate_recursion: return "degenerate recursion";
    case Errc::dependent_points: return "dependent points";
    case Errc::not_a_subgroup: return "zero set is not a subgroup";
    case Errc::small_quotient: return "quotient too small";
    case Errc::not_elliptic_sequence: return "not an elliptic sequence";
  }
  return "unknown error";
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

bool is_prime(std::int64_t n) { return is_prime(Integer(static_cast<long>(n))); }

namespace {

void require_prime(std::int64_t p) {
  if (!is_prime(p)) throw Error(Errc::invalid_argument, std::to_string(p) + " is not prime");
}

long strip(Integer& n, std::int64_t p) {
  const Integer pp(static_cast<long>(p));
  mpz_t q;
  mpz_init(q);
  long e = static_cast<long>(mpz_remove(q, n.get_mpz_t(), pp.get_mpz_t()));
  n = Integer(q);
  mpz_clear(q);
  return e;
}

}  // namespace

Valuation val_p(const Integer& x, std::int64_t p) {
  require_prime(p);
  if (x == 0) return Valuation::infinity();
  Integer n = abs(x);
  return Valuation(strip(n, p));
}

Valuation val_p(const Rational& x, std::int64_t p) {
  require_prime(p);
  if (sgn(x) == 0) return Valuation::infinity();
  Integer num = abs(x.get_num());
  Integer den = x.get_den();
  return Valuation(strip(num, p) - strip(den, p));
}

Rational pow(const Rational& base, long exponent) {
  Rational b = base;
  if (exponent < 0) {
    if (sgn(b) == 0) throw Error(Errc::division_by_zero, "zero to a negative power");
    b = 1 / b;
    exponent = -exponent;
  }
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

Fp::Fp(std::int64_t value, std::int64_t p) : p_(p) {
  if (p < 2) throw Error(Errc::invalid_argument, "modulus must be at least 2");
  std::int64_t r = value % p;
  r_ = r < 0 ? r + p : r;
}

void Fp::check_same(const Fp& o) const {
  if (p_ != o.p_) throw Error(Errc::invalid_argument, "mixed moduli in F_p arithmetic");
}

Fp& Fp::operator+=(const Fp& o) {
  check_same(o);
  r_ += o.r_;
  if (r_ >= p_) r_ -= p_;
  return *this;
}

Fp& Fp::operator-=(const Fp& o) {
  check_same(o);
  r_ -= o.r_;
  if (r_ < 0) r_ += p_;
  return *this;
}

Fp& Fp::operator*=(const Fp& o) {
  check_same(o);
  r_ = static_cast<std::int64_t>(static_cast<__int128>(r_) * o.r_ % p_);
  return *this;
}

Fp& Fp::operator/=(const Fp& o) { return *this *= o.inverse(); }

Fp Fp::inverse() const {
  if (r_ == 0) throw Error(Errc::division_by_zero, "inverse of 0 in F_" + std::to_string(p_));
  // extended Euclid on (r, p)
  std::int64_t a = r_, b = p_, x0 = 1, x1 = 0;
  while (b != 0) {
    std::int64_t q = a / b;
    std::int64_t t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  return Fp(x0, p_);
}

Fp Fp::pow(const Integer& e) const {
  if (p_ == 0) throw Error(Errc::invalid_argument, "uninitialised F_p element");
  Integer exp = e;
  Fp base = *this;
  if (exp < 0) {
    base = inverse();
    exp = -exp;
  }
  if (!base.is_zero()) {
    // Fermat: reduce the exponent modulo p - 1
    Integer m(static_cast<long>(p_ - 1));
    exp %= m;
  }
  Fp result(1, p_);
  while (exp > 0) {
    if (mpz_odd_p(exp.get_mpz_t())) result *= base;
    base *= base;
    exp >>= 1;
  }
  if (e > 0 && this->is_zero()) return Fp(0, p_);
  return result;
}

PrimeField::PrimeField(std::int64_t prime) : p(prime) {
  if (!is_prime(prime)) throw Error(Errc::invalid_argument, std::to_string(prime) + " is not prime");
}

PrimeField::Element PrimeField::from_int(const Integer& n) const {
  Integer r = n % Integer(static_cast<long>(p));
  return Fp(r.get_si(), p);
}

PrimeField::Element PrimeField::from_rational(const Rational& x) const {
  Fp den = from_int(x.get_den());
  if (den.is_zero())
    throw Error(Errc::domain, to_string(x) + " is not integral at " + std::to_string(p));
  return from_int(x.get_num()) / den;
}

std::string to_string(const Rational& x) { return x.get_str(); }
std::string to_string(const Fp& x) { return std::to_string(x.residue()); }

}  // namespace ellnet
