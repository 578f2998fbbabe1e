#include "ellnet/theorems.hpp"

#include <unordered_map>

namespace ellnet {

namespace {

void require_good_position(const RationalCurve& curve, const std::vector<RationalPoint>& pts, std::int64_t p) {
  std::vector<ReducedPoint> red;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    red.push_back(reduce_mod_p(curve, pts[i], p));
    if (red.back().infinite)
      throw Error(Errc::precondition, "P_" + std::to_string(i + 1) + " = " + to_string(pts[i]) +
                                          " reduces to infinity mod " + std::to_string(p));
  }
  for (std::size_t i = 0; i < red.size(); ++i)
    for (std::size_t j = i + 1; j < red.size(); ++j)
      if (red[i].x == red[j].x)
        throw Error(Errc::precondition, "P_" + std::to_string(i + 1) + " +- P_" + std::to_string(j + 1) +
                                            " reduces to infinity mod " + std::to_string(p));
}

bool positive(const Rational& x, std::int64_t p) { return val_p(x, p) > 0L; }

template <class F>
void for_cube(Eigen::Index rank, const NetIndex& lo, const NetIndex& hi, F&& f) {
  NetIndex v = lo;
  for (;;) {
    f(v);
    Eigen::Index i = rank - 1;
    while (i >= 0 && v(i) == hi(i)) {
      v(i) = lo(i);
      --i;
    }
    if (i < 0) return;
    ++v(i);
  }
}

NetIndex filled(Eigen::Index rank, std::int64_t c) { return NetIndex::Constant(rank, c); }

}  // namespace

AyadReport ayad_equivalence_report(const RationalCurve& curve, const std::vector<RationalPoint>& points,
                                   std::int64_t p, std::int64_t box_radius, long n_max) {
  if (!is_integral(curve)) throw Error(Errc::model_not_integral, "curve coefficients must be integers");
  require_good_position(curve, points, p);
  RationalNet net(curve, points);
  const Eigen::Index r = net.rank();
  AyadReport rep;
  rep.p = p;
  rep.box_radius = box_radius;
  rep.n_max = n_max;

  for (Eigen::Index i = 0; i < r; ++i) {
    bool by_psi = positive(net(unit_index(r, i, 2)), p) && positive(net(unit_index(r, i, 3)), p);
    bool by_partials = is_singular_reduction(curve, points[i], p);
    rep.singular_by_psi.push_back(by_psi);
    rep.singular_by_partials.push_back(by_partials);
    if (by_psi && !rep.a) rep.a = true, rep.a_axis = i;
    if (by_partials && !rep.e) rep.e = true, rep.e_axis = i;

    bool all = true;
    for (long n = 2; n <= n_max && all; ++n) all = positive(net(unit_index(r, i, n)), p);
    if (all && !rep.b) rep.b = true, rep.b_axis = i;
  }

  for_cube(r, filled(r, -box_radius), filled(r, box_radius), [&](const NetIndex& v) {
    if (is_zero(v) || (rep.c && rep.d)) return;
    if (!positive(net(v), p)) return;
    for (Eigen::Index i = 0; i < r && !rep.c; ++i)
      if (positive(net(NetIndex(v + unit_index(r, i))), p)) {
        rep.c = true;
        rep.c_index = v;
        rep.c_axis = i;
      }
    if (!rep.d && positive(net.numerator(v), p)) {
      rep.d = true;
      rep.d_index = v;
    }
  });
  return rep;
}

ValuationReport valuation_match_report(const RationalCurve& curve, const std::vector<RationalPoint>& points,
                                       std::int64_t p, const NetIndex& lo, const NetIndex& hi, bool gate) {
  if (gate) {
    require_good_position(curve, points, p);
    for (std::size_t i = 0; i < points.size(); ++i)
      if (is_singular_reduction(curve, points[i], p))
        throw Error(Errc::precondition,
                    "P_" + std::to_string(i + 1) + " has singular reduction mod " + std::to_string(p));
  }
  RationalNet net(curve, points);
  QuadraticFormData q = quadratic_form_data(net);
  ValuationReport rep;
  rep.p = p;
  for_cube(net.rank(), lo, hi, [&](const NetIndex& v) {
    if (is_zero(v)) return;
    ValuationEntry e{v, val_p(denominator_net(net, v), p), val_p(scaled_net(net, q, v), p)};
    if (e.denominator != e.scaled) rep.mismatches.push_back(v);
    rep.entries.push_back(std::move(e));
  });
  return rep;
}

UniqueApparition unique_apparition_test(const std::vector<Fp>& values) {
  const auto N = static_cast<long>(values.size()) - 1;
  if (N < 4) throw Error(Errc::invalid_argument, "need W_0 .. W_4 at least");
  auto W = [&](long k) { return k < 0 ? -values[-k] : values[k]; };
  for (long m = 2; m <= N; ++m)
    for (long n = 1; n < m && m + n <= N; ++n) {
      Fp lhs = W(m + n) * W(m - n) * W(1) * W(1);
      Fp rhs = W(m + 1) * W(m - 1) * W(n) * W(n) - W(n + 1) * W(n - 1) * W(m) * W(m);
      if (!(lhs == rhs))
        throw Error(Errc::not_elliptic_sequence,
                    "recurrence fails at m = " + std::to_string(m) + ", n = " + std::to_string(n));
    }
  UniqueApparition u;
  u.unique = !(W(3).is_zero() && W(4).is_zero());
  long rho = 0;
  for (long n = 1; n <= N && rho == 0; ++n)
    if (W(n).is_zero()) rho = n;
  bool pattern = true;
  if (rho != 0)
    for (long n = 1; n <= N; ++n)
      if (W(n).is_zero() != (n % rho == 0)) pattern = false;
  u.zero_pattern_consistent = pattern == u.unique;
  return u;
}

EpsilonReport epsilon_quadratic_check(const RationalCurve& curve, const std::vector<RationalPoint>& points,
                                      std::int64_t p, std::int64_t box_radius) {
  RationalNet net(curve, points);
  return epsilon_quadratic_check(curve, points, p, box_radius, [&](const NetIndex& v) { return net(v); });
}

EpsilonReport epsilon_quadratic_check(const RationalCurve& curve, const std::vector<RationalPoint>& points,
                                      std::int64_t p, std::int64_t box_radius,
                                      const std::function<Rational(const NetIndex&)>& psi) {
  RationalNet net(curve, points);
  const Eigen::Index r = net.rank();
  const Rational disc_term(Integer(val_p(curve.discriminant(), p).value()), Integer(12));
  std::unordered_map<NetIndex, std::optional<Rational>, NetIndexHash> memo;

  auto eps = [&](const NetIndex& v) -> std::optional<Rational> {
    if (is_zero(v)) return Rational(0);
    if (auto it = memo.find(v); it != memo.end()) return it->second;
    std::optional<Rational> out;
    const RationalPoint& pt = net.point(v);
    Valuation vpsi = val_p(psi(v), p);
    if (!pt.infinite && !vpsi.is_infinite()) {
      try {
        Rational e = neron_local_height(curve, pt, p) - disc_term - vpsi.value();
        e.canonicalize();
        out = e;
      } catch (const Error& err) {
        if (err.code() != Errc::unsupported_case) throw;
      }
    }
    memo.emplace(v, out);
    return out;
  };

  EpsilonReport rep;
  NetIndex lo = filled(r, -box_radius), hi = filled(r, box_radius);
  for_cube(r, lo, hi, [&](const NetIndex& v) {
    for_cube(r, lo, hi, [&](const NetIndex& w) {
      auto ev = eps(v), ew = eps(w), es = eps(NetIndex(v + w)), ed = eps(NetIndex(v - w));
      if (!ev || !ew || !es || !ed) {
        ++rep.pairs_skipped;
        return;
      }
      ++rep.pairs_checked;
      for (const auto* x : {&ev, &ew, &es, &ed})
        if (!is_integer(**x)) rep.integer_valued = false;
      if (*es + *ed != 2 * *ev + 2 * *ew) {
        rep.parallelogram = false;
        if (rep.failures.size() < 16) rep.failures.emplace_back(v, w);
      }
    });
  });
  return rep;
}

std::optional<bool> quasi_parallelogram_holds(const RationalCurve& curve, const RationalPoint& P,
                                              const RationalPoint& Q, std::int64_t p) {
  RationalPoint sum = curve.add(P, Q), diff = curve.sub(P, Q);
  for (const RationalPoint* pt : {&P, &Q, static_cast<const RationalPoint*>(&sum), static_cast<const RationalPoint*>(&diff)}) {
    if (pt->infinite) return std::nullopt;
    ReducedPoint r = reduce_mod_p(curve, *pt, p);
    if (!r.infinite && reduce_curve(curve, p).is_singular_point(r)) return std::nullopt;
  }
  Rational lhs = neron_local_height(curve, sum, p) + neron_local_height(curve, diff, p);
  Rational rhs = 2 * neron_local_height(curve, P, p) + 2 * neron_local_height(curve, Q, p) +
                 val_p(Rational(P.x - Q.x), p).value() -
                 Rational(Integer(val_p(curve.discriminant(), p).value()), Integer(6));
  lhs.canonicalize();
  rhs.canonicalize();
  return lhs == rhs;
}

}  // namespace ellnet
