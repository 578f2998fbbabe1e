#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include "ellnet/field.hpp"

namespace ellnet {

/// Affine point or the point at infinity.
template <class Scalar>
struct CurvePoint {
  bool infinite = true;
  Scalar x{};
  Scalar y{};

  static CurvePoint at_infinity() { return CurvePoint{}; }
  static CurvePoint affine(Scalar x, Scalar y) { return CurvePoint{false, std::move(x), std::move(y)}; }
  bool is_infinity() const { return infinite; }

  friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.x == b.x && a.y == b.y;
  }
};

template <class Scalar>
struct BInvariants {
  Scalar b2, b4, b6, b8;
  Scalar discriminant;
};

enum class SingularModel { reject, allow };

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over the field F.
///
/// A singular model is only constructible with SingularModel::allow (used for
/// reductions mod p).  On such a model the group law is still available on
/// nonsingular points; operations touching a singular point are refused.
template <class Field>
class WeierstrassCurve {
 public:
  using Scalar = typename Field::Element;
  using Point = CurvePoint<Scalar>;

  WeierstrassCurve(Field field, std::array<Scalar, 5> a, SingularModel policy = SingularModel::reject)
      : field_(std::move(field)), a_(std::move(a)) {
    inv_ = compute_invariants();
    if (policy == SingularModel::reject && Field::is_zero(inv_.discriminant))
      throw Error(Errc::domain, "singular Weierstrass model (discriminant 0)");
  }

  const Field& field() const { return field_; }
  const Scalar& a1() const { return a_[0]; }
  const Scalar& a2() const { return a_[1]; }
  const Scalar& a3() const { return a_[2]; }
  const Scalar& a4() const { return a_[3]; }
  const Scalar& a6() const { return a_[4]; }
  const std::array<Scalar, 5>& coefficients() const { return a_; }

  const BInvariants<Scalar>& b_invariants() const { return inv_; }
  const Scalar& discriminant() const { return inv_.discriminant; }
  bool is_singular() const { return Field::is_zero(inv_.discriminant); }

  /// f(x, y) of the defining polynomial; zero exactly on the curve.
  Scalar f(const Scalar& x, const Scalar& y) const {
    return y * y + a1() * x * y + a3() * y - x * x * x - a2() * x * x - a4() * x - a6();
  }

  bool contains(const Point& p) const { return p.infinite || Field::is_zero(f(p.x, p.y)); }

  /// Both partial derivatives of f vanish at P.
  bool is_singular_point(const Point& p) const {
    if (p.infinite) return false;
    Scalar fy = Scalar(field_.from_int(2L)) * p.y + a1() * p.x + a3();
    Scalar fx = a1() * p.y - Scalar(field_.from_int(3L)) * p.x * p.x -
                Scalar(field_.from_int(2L)) * a2() * p.x - a4();
    return Field::is_zero(fx) && Field::is_zero(fy);
  }

  Point neg(const Point& p) const {
    check(p);
    return neg_trusted(p);
  }
  Point add(const Point& p, const Point& q) const {
    check(p);
    check(q);
    return add_trusted(p, q);
  }
  Point sub(const Point& p, const Point& q) const { return add(p, neg(q)); }

  /// Double-and-add; mul(0, P) is the point at infinity.
  template <class Int>
  Point mul(Int n, const Point& p) const {
    check(p);
    return mul_trusted(Integer(n), p);
  }

  // The *_trusted variants skip the membership checks; callers guarantee that
  // their inputs are nonsingular points of this curve.
  Point neg_trusted(const Point& p) const {
    if (p.infinite) return p;
    return Point::affine(p.x, Scalar(-p.y - a1() * p.x - a3()));
  }

  Point add_trusted(const Point& p, const Point& q) const {
    if (p.infinite) return q;
    if (q.infinite) return p;
    Scalar lambda, nu;
    if (p.x == q.x) {
      Scalar s = p.y + q.y + a1() * q.x + a3();
      if (Field::is_zero(s)) return Point::at_infinity();
      Scalar den = Scalar(field_.from_int(2L)) * p.y + a1() * p.x + a3();
      Scalar three = field_.from_int(3L), two = field_.from_int(2L);
      lambda = (three * p.x * p.x + two * a2() * p.x + a4() - a1() * p.y) / den;
      nu = (-(p.x * p.x * p.x) + a4() * p.x + two * a6() - a3() * p.y) / den;
    } else {
      Scalar dx = q.x - p.x;
      lambda = (q.y - p.y) / dx;
      nu = (p.y * q.x - q.y * p.x) / dx;
    }
    Scalar x3 = lambda * lambda + a1() * lambda - a2() - p.x - q.x;
    Scalar y3 = -(lambda + a1()) * x3 - nu - a3();
    return Point::affine(std::move(x3), std::move(y3));
  }

  Point mul_trusted(Integer n, const Point& p) const {
    Point base = n < 0 ? neg_trusted(p) : p;
    if (n < 0) n = -n;
    Point acc = Point::at_infinity();
    while (n > 0) {
      if (mpz_odd_p(n.get_mpz_t())) acc = add_trusted(acc, base);
      n >>= 1;
      if (n > 0) base = add_trusted(base, base);
    }
    return acc;
  }

  void check(const Point& p) const {
    if (!contains(p)) throw Error(Errc::domain, "point is not on the curve");
    if (is_singular() && is_singular_point(p))
      throw Error(Errc::unsupported_case, "group law at a singular point of a singular model");
  }

 private:
  BInvariants<Scalar> compute_invariants() const {
    auto c = [&](long n) { return Scalar(field_.from_int(n)); };
    BInvariants<Scalar> b;
    b.b2 = a1() * a1() + c(4) * a2();
    b.b4 = c(2) * a4() + a1() * a3();
    b.b6 = a3() * a3() + c(4) * a6();
    b.b8 = a1() * a1() * a6() + c(4) * a2() * a6() - a1() * a3() * a4() + a2() * a3() * a3() -
           a4() * a4();
    b.discriminant = -b.b2 * b.b2 * b.b8 - c(8) * b.b4 * b.b4 * b.b4 - c(27) * b.b6 * b.b6 +
                     c(9) * b.b2 * b.b4 * b.b6;
    return b;
  }

  Field field_;
  std::array<Scalar, 5> a_;
  BInvariants<Scalar> inv_;
};

using RationalCurve = WeierstrassCurve<RationalField>;
using RationalPoint = CurvePoint<Rational>;
using ReducedCurve = WeierstrassCurve<PrimeField>;
using ReducedPoint = CurvePoint<Fp>;

RationalCurve make_curve(const Integer& a1, const Integer& a2, const Integer& a3, const Integer& a4,
                         const Integer& a6);
RationalPoint make_point(const Rational& x, const Rational& y);

bool is_integral(const RationalCurve& curve);

/// P = (A/D^2, B/D^3) with gcd(A, D) = gcd(B, D) = 1 and D >= 1.
struct PointDecomposition {
  Integer A, B, D;
  friend bool operator==(const PointDecomposition&, const PointDecomposition&) = default;
};

PointDecomposition decompose(const RationalCurve& curve, const RationalPoint& p);

/// Reduction of an integral model; may be singular.
ReducedCurve reduce_curve(const RationalCurve& curve, std::int64_t p);

/// Infinity when p | D_P, else the coordinates mod p.
ReducedPoint reduce_mod_p(const RationalCurve& curve, const RationalPoint& pt, std::int64_t p);

/// Both partials of f vanish at the reduction of P.  P must not reduce to
/// infinity.
bool is_singular_reduction(const RationalCurve& curve, const RationalPoint& pt, std::int64_t p);

/// max{-v_p(x(P))/2, 0} + v_p(Delta)/12, valid for nonsingular reduction.
Rational neron_local_height(const RationalCurve& curve, const RationalPoint& pt, std::int64_t p);

std::string to_string(const RationalPoint& p);
std::string to_string(const ReducedPoint& p);

}  // namespace ellnet
