#include "ellnet/factor.hpp"

#include <algorithm>
#include <map>

namespace ellnet {

namespace {

constexpr unsigned long kTrialBound = 1u << 16;

Integer rho_brent(const Integer& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  Integer y = Integer(seed) % n, c = (Integer(seed) * 7919 + 1) % n, m = 128, g = 1, r = 1, q = 1;
  Integer x, ys;
  auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
  while (g == 1) {
    x = y;
    for (Integer i = 0; i < r; ++i) y = f(y);
    Integer k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (Integer i = 0; i < m && i < r - k; ++i) {
        y = f(y);
        q = (q * abs(x - y)) % n;
      }
      g = gcd(q, n);
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = gcd(abs(x - ys), n);
    } while (g == 1);
  }
  return g;
}

void split(const Integer& n, std::map<Integer, long>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  for (unsigned long seed = 2;; ++seed) {
    Integer d = rho_brent(n, seed);
    if (d != n && d != 1) {
      split(d, out);
      split(n / d, out);
      return;
    }
  }
}

void factor_positive(Integer n, std::map<Integer, long>& out, long sign) {
  for (unsigned long p = 2; p < kTrialBound && n > 1; p += (p == 2 ? 1 : 2)) {
    if (Integer(p) * p > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out[Integer(p)] += sign;
      n /= p;
    }
  }
  if (n == 1) return;
  std::map<Integer, long> rest;
  split(n, rest);
  for (auto& [q, e] : rest) out[q] += sign * e;
}

}  // namespace

Rational Factorization::value() const {
  Rational v(sign);
  for (const auto& f : factors) v *= pow(Rational(f.prime), f.exponent);
  return v;
}

Factorization factorize(const Integer& n) {
  if (n == 0) throw Error(Errc::invalid_argument, "cannot factor 0");
  return factorize(Rational(n));
}

Factorization factorize(const Rational& x) {
  if (sgn(x) == 0) throw Error(Errc::invalid_argument, "cannot factor 0");
  std::map<Integer, long> acc;
  factor_positive(abs(x.get_num()), acc, +1);
  factor_positive(x.get_den(), acc, -1);
  Factorization f;
  f.sign = sgn(x) < 0 ? -1 : 1;
  for (auto& [p, e] : acc)
    if (e != 0) f.factors.push_back({p, e});
  return f;
}

std::string render_factored(const Rational& x) {
  if (sgn(x) == 0) return "0";
  Factorization f = factorize(x);
  std::string s = f.sign < 0 ? "-" : "";
  if (f.factors.empty()) return s + "1";
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    if (i) s += " · ";
    s += f.factors[i].prime.get_str();
    if (f.factors[i].exponent != 1) s += "^" + std::to_string(f.factors[i].exponent);
  }
  return s;
}

}  // namespace ellnet
