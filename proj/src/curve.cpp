#include "ellnet/curve.hpp"

#include <algorithm>

namespace ellnet {

RationalCurve make_curve(const Integer& a1, const Integer& a2, const Integer& a3, const Integer& a4,
                         const Integer& a6) {
  return RationalCurve(RationalField{},
                       {Rational(a1), Rational(a2), Rational(a3), Rational(a4), Rational(a6)});
}

RationalPoint make_point(const Rational& x, const Rational& y) { return RationalPoint::affine(x, y); }

bool is_integral(const RationalCurve& curve) {
  return std::all_of(curve.coefficients().begin(), curve.coefficients().end(),
                     [](const Rational& a) { return is_integer(a); });
}

namespace {

void require_integral(const RationalCurve& curve) {
  if (!is_integral(curve)) throw Error(Errc::model_not_integral, "curve coefficients must be integers");
}

}  // namespace

PointDecomposition decompose(const RationalCurve& curve, const RationalPoint& p) {
  require_integral(curve);
  if (p.infinite) throw Error(Errc::precondition, "the point at infinity has no decomposition");
  if (!curve.contains(p)) throw Error(Errc::domain, "point is not on the curve");
  const Integer& dx = p.x.get_den();
  Integer root;
  mpz_sqrt(root.get_mpz_t(), dx.get_mpz_t());
  if (root * root != dx)
    throw Error(Errc::model_not_integral, "denominator of x is not a square: " + to_string(p));
  if (p.y.get_den() != root * root * root)
    throw Error(Errc::model_not_integral, "denominator of y is not D^3: " + to_string(p));
  return {p.x.get_num(), p.y.get_num(), root};
}

ReducedCurve reduce_curve(const RationalCurve& curve, std::int64_t p) {
  require_integral(curve);
  PrimeField fp(p);
  std::array<Fp, 5> a;
  for (std::size_t i = 0; i < 5; ++i) a[i] = fp.from_rational(curve.coefficients()[i]);
  return ReducedCurve(fp, a, SingularModel::allow);
}

ReducedPoint reduce_mod_p(const RationalCurve& curve, const RationalPoint& pt, std::int64_t p) {
  PrimeField fp(p);
  if (pt.infinite) return ReducedPoint::at_infinity();
  PointDecomposition d = decompose(curve, pt);
  if (val_p(d.D, p) > 0) return ReducedPoint::at_infinity();
  return ReducedPoint::affine(fp.from_rational(pt.x), fp.from_rational(pt.y));
}

bool is_singular_reduction(const RationalCurve& curve, const RationalPoint& pt, std::int64_t p) {
  ReducedPoint r = reduce_mod_p(curve, pt, p);
  if (r.infinite) throw Error(Errc::precondition, to_string(pt) + " reduces to infinity mod " + std::to_string(p));
  return reduce_curve(curve, p).is_singular_point(r);
}

Rational neron_local_height(const RationalCurve& curve, const RationalPoint& pt, std::int64_t p) {
  if (pt.infinite) throw Error(Errc::domain, "local height is undefined at infinity");
  ReducedPoint r = reduce_mod_p(curve, pt, p);
  if (!r.infinite && reduce_curve(curve, p).is_singular_point(r))
    throw Error(Errc::unsupported_case,
                to_string(pt) + " has singular reduction mod " + std::to_string(p));
  Valuation vx = val_p(pt.x, p);
  Rational h(0);
  if (!vx.is_infinite() && vx.value() < 0) h = Rational(Integer(-vx.value()), Integer(2));
  Valuation vd = val_p(curve.discriminant(), p);
  h += Rational(Integer(vd.value()), Integer(12));
  h.canonicalize();
  return h;
}

std::string to_string(const RationalPoint& p) {
  if (p.infinite) return "inf";
  return "(" + p.x.get_str() + "," + p.y.get_str() + ")";
}

std::string to_string(const ReducedPoint& p) {
  if (p.infinite) return "inf";
  return "(" + std::to_string(p.x.residue()) + "," + std::to_string(p.y.residue()) + ")";
}

}  // namespace ellnet
