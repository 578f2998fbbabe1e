#pragma once

#include <map>

#include "ellnet/curve.hpp"

namespace ellnet {

/// psi_n(P) and phi_n(P) for a fixed point, memoized.
///
/// Values come from the two doubling identities
///   psi_{2k+1}       = psi_{k+2} psi_k^3 - psi_{k-1} psi_{k+1}^3
///   psi_{2k} psi_2   = psi_k (psi_{k+2} psi_{k-1}^2 - psi_{k-2} psi_{k+1}^2)
/// so psi_n touches O(log n) memo entries.  Not thread-safe; one context per
/// thread.
template <class Field>
class DivPoly {
 public:
  using Scalar = typename Field::Element;
  using Curve = WeierstrassCurve<Field>;
  using Point = CurvePoint<Scalar>;

  DivPoly(Curve curve, Point p) : curve_(std::move(curve)), p_(std::move(p)) {
    if (p_.infinite) throw Error(Errc::precondition, "division polynomials at the point at infinity");
    if (!curve_.contains(p_)) throw Error(Errc::domain, "point is not on the curve");
    seed();
  }

  const Curve& curve() const { return curve_; }
  const Point& point() const { return p_; }

  Scalar psi(long n) {
    if (n < 0) return Scalar(-psi(-n));
    if (auto it = memo_.find(n); it != memo_.end()) return it->second;
    Scalar r;
    if (n % 2 == 1) {
      long k = (n - 1) / 2;
      Scalar a = psi(k + 2), b = psi(k), c = psi(k - 1), d = psi(k + 1);
      r = a * b * b * b - c * d * d * d;
    } else {
      long k = n / 2;
      const Scalar& two = memo_.at(2);
      if (Field::is_zero(two))
        throw Error(Errc::degenerate_recursion, "psi_2 vanishes; even-index doubling step is undefined");
      Scalar a = psi(k), b = psi(k + 2), c = psi(k - 1), d = psi(k - 2), e = psi(k + 1);
      r = a * (b * c * c - d * e * e) / two;
    }
    return memo_.emplace(n, std::move(r)).first->second;
  }

  /// phi_n = x psi_n^2 - psi_{n+1} psi_{n-1}; even in n.
  Scalar phi(long n) {
    Scalar s = psi(n);
    return p_.x * s * s - psi(n + 1) * psi(n - 1);
  }

  /// n P as (phi_n / psi_n^2, y) with y taken from the group law.  The
  /// x-coordinate is checked against the group law.
  Point multiple(long n) {
    Scalar s = psi(n);
    Point g = curve_.mul_trusted(Integer(n), p_);
    if (Field::is_zero(s)) {
      if (!g.infinite) throw std::logic_error("psi_n vanishes but nP is affine");
      return Point::at_infinity();
    }
    Scalar x = phi(n) / (s * s);
    if (g.infinite || !(g.x == x)) throw std::logic_error("division polynomials disagree with the group law");
    return Point::affine(std::move(x), g.y);
  }

 private:
  void seed() {
    const auto& f = curve_.field();
    auto c = [&](long n) { return Scalar(f.from_int(n)); };
    const auto& b = curve_.b_invariants();
    const Scalar& x = p_.x;
    Scalar x2 = x * x, x3 = x2 * x, x4 = x3 * x;
    Scalar psi2 = c(2) * p_.y + curve_.a1() * x + curve_.a3();
    Scalar psi3 = c(3) * x4 + b.b2 * x3 + c(3) * b.b4 * x2 + c(3) * b.b6 * x + b.b8;
    Scalar quartic = c(2) * x3 * x3 + b.b2 * x4 * x + c(5) * b.b4 * x4 + c(10) * b.b6 * x3 +
                     c(10) * b.b8 * x2 + (b.b2 * b.b8 - b.b4 * b.b6) * x + (b.b4 * b.b8 - b.b6 * b.b6);
    memo_.emplace(0, f.zero());
    memo_.emplace(1, f.one());
    memo_.emplace(2, psi2);
    memo_.emplace(3, psi3);
    memo_.emplace(4, Scalar(psi2 * quartic));
  }

  Curve curve_;
  Point p_;
  std::map<long, Scalar> memo_;
};

}  // namespace ellnet
