#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "ellnet/curve.hpp"
#include "ellnet/divpoly.hpp"
#include "ellnet/lattice.hpp"

namespace ellnet {

/// The elliptic net v -> Psi_v(P) of a point tuple P = (P_1, ..., P_r).
///
/// Two independent evaluation paths are kept with separate memos:
///
///  * points: walk from v toward the origin along the axis of largest |v_i|,
///    using Psi_{w+u} Psi_{w-u} = -Psi_w^2 Psi_u^2 (X_w - X_u) with u = +-e_i,
///    where X_w = x(w.P) comes from the group law.
///  * recurrence: saturate a box around v with instances of the rank-2 net
///    recurrence, starting only from the initial values.  Rank 1 uses the
///    division polynomial doubling identities instead.
///
/// Over F_p either path may meet a zero divisor; it then throws
/// degenerate_path / degenerate_recursion instead of dividing by zero.
/// Not thread-safe; one evaluator per thread.
template <class Field>
class NetEvaluator {
 public:
  using Scalar = typename Field::Element;
  using Curve = WeierstrassCurve<Field>;
  using Point = CurvePoint<Scalar>;
  enum class Strategy { points, recurrence };

  NetEvaluator(Curve curve, std::vector<Point> points, Strategy strategy = Strategy::points)
      : curve_(std::move(curve)), pts_(std::move(points)), strategy_(strategy) {
    if (pts_.empty()) throw Error(Errc::invalid_argument, "an elliptic net needs at least one point");
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (pts_[i].infinite) throw Error(Errc::precondition, "P_" + std::to_string(i + 1) + " is the point at infinity");
      curve_.check(pts_[i]);
    }
    for (std::size_t i = 0; i < pts_.size(); ++i)
      for (std::size_t j = i + 1; j < pts_.size(); ++j)
        if (pts_[i].x == pts_[j].x)
          throw Error(Errc::degenerate_pair, "P_" + std::to_string(i + 1) + " and P_" + std::to_string(j + 1) +
                                                 " share an x-coordinate, so P_i + P_j or P_i - P_j is infinity");
  }

  Eigen::Index rank() const { return static_cast<Eigen::Index>(pts_.size()); }
  const Curve& curve() const { return curve_; }
  const std::vector<Point>& points() const { return pts_; }
  Strategy strategy() const { return strategy_; }

  Scalar operator()(const NetIndex& v) {
    return strategy_ == Strategy::points ? eval_points(v) : eval_recurrence(v);
  }

  /// Psi_v for v in {e_i, 2e_i, e_i + e_j, 2e_i + e_j}.
  Scalar initial(const NetIndex& v) const {
    check_length(v);
    std::vector<Eigen::Index> nz;
    for (Eigen::Index k = 0; k < v.size(); ++k)
      if (v(k) != 0) nz.push_back(k);
    if (nz.size() == 1 && v(nz[0]) == 1) return one();
    if (nz.size() == 1 && v(nz[0]) == 2) return psi2(nz[0]);
    if (nz.size() == 2) {
      std::int64_t a = v(nz[0]), b = v(nz[1]);
      if (a == 1 && b == 1) return one();
      if (a == 2 && b == 1) return two_plus_one(nz[0], nz[1]);
      if (a == 1 && b == 2) return two_plus_one(nz[1], nz[0]);
    }
    throw Error(Errc::invalid_argument, to_string(v) + " is not an initial index");
  }

  Scalar eval_points(const NetIndex& v) {
    check_length(v);
    if (is_zero(v)) return zero();
    if (auto it = by_points_.find(v); it != by_points_.end()) return it->second;
    Scalar r;
    if (negative_leading(v)) {
      r = -eval_points(NetIndex(-v));
    } else if (max_norm(v) == 1) {
      r = unit_value(v);
    } else if (v.cwiseAbs().sum() == 2) {
      r = psi2(argmax(v));  // v = 2e_i, where the step below would divide by Psi_0
    } else {
      Eigen::Index i = argmax(v);
      std::int64_t s = v(i) > 0 ? 1 : -1;
      NetIndex w = v, z = v;
      w(i) -= s;
      z(i) -= 2 * s;
      Scalar xw = affine_x(w);
      Scalar dz = eval_points(z);
      if (Field::is_zero(dz))
        throw Error(Errc::degenerate_path, "Psi" + to_string(z) + " vanishes on the path to " + to_string(v));
      Scalar pw = eval_points(w);
      r = pw * pw * (pts_[i].x - xw) / dz;
    }
    return by_points_.emplace(v, std::move(r)).first->second;
  }

  Scalar eval_recurrence(const NetIndex& v) {
    check_length(v);
    if (rank() == 1) return divpoly().psi(static_cast<long>(v(0)));
    if (rank() > 2)
      throw Error(Errc::unsupported_case, "the recurrence schedule is only defined for rank <= 2");
    if (by_recurrence_.empty()) seed_recurrence();
    if (auto it = by_recurrence_.find(v); it != by_recurrence_.end()) return it->second;
    saturate(v);
    auto it = by_recurrence_.find(v);
    if (it == by_recurrence_.end())
      throw Error(Errc::degenerate_recursion, "no recurrence instance with nonzero divisor reaches " + to_string(v));
    return it->second;
  }

  /// Phi_v = Psi_v^2 x_1 - Psi_{v+e_1} Psi_{v-e_1}, so that x(v.P) = Phi_v / Psi_v^2.
  Scalar numerator(const NetIndex& v) {
    NetIndex up = v, down = v;
    up(0) += 1;
    down(0) -= 1;
    Scalar s = (*this)(v);
    return s * s * pts_[0].x - (*this)(up) * (*this)(down);
  }

  /// v.P = v_1 P_1 + ... + v_r P_r, memoized along the same walk as eval_points.
  const Point& point(const NetIndex& v) {
    check_length(v);
    if (auto it = points_.find(v); it != points_.end()) return it->second;
    Point r;
    if (!is_zero(v)) {
      Eigen::Index i = argmax(v);
      std::int64_t s = v(i) > 0 ? 1 : -1;
      NetIndex w = v;
      w(i) -= s;
      Point prev = point(w);
      r = curve_.add_trusted(prev, s > 0 ? pts_[i] : curve_.neg_trusted(pts_[i]));
    }
    return points_.emplace(v, std::move(r)).first->second;
  }

 private:
  using Memo = std::unordered_map<NetIndex, Scalar, NetIndexHash>;

  Scalar zero() const { return curve_.field().zero(); }
  Scalar one() const { return curve_.field().one(); }

  void check_length(const NetIndex& v) const {
    if (v.size() != rank())
      throw Error(Errc::invalid_argument, "index " + to_string(v) + " does not have length " + std::to_string(rank()));
  }

  static bool negative_leading(const NetIndex& v) {
    for (Eigen::Index k = 0; k < v.size(); ++k)
      if (v(k) != 0) return v(k) < 0;
    return false;
  }

  static Eigen::Index argmax(const NetIndex& v) {
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < v.size(); ++k)
      if (std::llabs(v(k)) > std::llabs(v(best))) best = k;
    return best;
  }

  Scalar psi2(Eigen::Index i) const {
    const Point& p = pts_[i];
    return Scalar(curve_.field().from_int(2L)) * p.y + curve_.a1() * p.x + curve_.a3();
  }

  Scalar two_plus_one(Eigen::Index i, Eigen::Index j) const {
    const Point &pi = pts_[i], &pj = pts_[j];
    Scalar s = (pj.y - pi.y) / (pj.x - pi.x);
    return Scalar(curve_.field().from_int(2L)) * pi.x + pj.x - s * s - curve_.a1() * s + curve_.a2();
  }

  // v has entries in {-1, 0, 1} and a positive leading entry.
  Scalar unit_value(const NetIndex& v) const {
    std::vector<Eigen::Index> nz;
    for (Eigen::Index k = 0; k < v.size(); ++k)
      if (v(k) != 0) nz.push_back(k);
    if (nz.size() == 1) return one();
    if (nz.size() == 2) {
      if (v(nz[1]) > 0) return one();
      return Scalar(pts_[nz[1]].x - pts_[nz[0]].x);  // Psi_{e_i - e_j} = x_j - x_i
    }
    throw Error(Errc::unsupported_case, "Psi" + to_string(v) + " needs initial values beyond e_i + e_j");
  }

  Scalar affine_x(const NetIndex& w) {
    const Point& p = point(w);
    if (p.infinite) throw Error(Errc::degenerate_path, to_string(w) + ".P is the point at infinity");
    return p.x;
  }

  DivPoly<Field>& divpoly() {
    if (!divpoly_) divpoly_.emplace(curve_, pts_[0]);
    return *divpoly_;
  }

  void seed_recurrence() {
    const Eigen::Index r = rank();
    auto put = [&](NetIndex v, Scalar value) {
      by_recurrence_[NetIndex(-v)] = Scalar(-value);
      by_recurrence_[std::move(v)] = std::move(value);
    };
    by_recurrence_[zero_index(r)] = zero();
    for (Eigen::Index i = 0; i < r; ++i) {
      put(unit_index(r, i), initial(unit_index(r, i)));
      put(unit_index(r, i, 2), initial(unit_index(r, i, 2)));
      for (Eigen::Index j = 0; j < r; ++j) {
        if (i == j) continue;
        NetIndex ij = unit_index(r, i) + unit_index(r, j);
        put(ij, initial(ij));
        NetIndex twoij = unit_index(r, i, 2) + unit_index(r, j);
        put(twoij, initial(twoij));
      }
    }
    // Psi_{e_i - e_j} = Psi_{e_i + 2e_j} - Psi_{2e_i + e_j}
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = i + 1; j < r; ++j) {
        Scalar d = by_recurrence_.at(NetIndex(unit_index(r, i) + unit_index(r, j, 2))) -
                   by_recurrence_.at(NetIndex(unit_index(r, i, 2) + unit_index(r, j)));
        put(NetIndex(unit_index(r, i) - unit_index(r, j)), d);
      }
  }

  // Solve W(p+q) W(p-q) W(r)^2 = W(p+r) W(p-r) W(q)^2 - W(q+r) W(q-r) W(p)^2
  // for W(u) with u = p + q, q and r ranging over the nonzero {-1,0,1}
  // vectors.  Repeated over a box until no new value appears.
  void saturate(const NetIndex& target) {
    const Eigen::Index r = rank();
    std::vector<NetIndex> small;
    for (std::int64_t a = -1; a <= 1; ++a)
      for (std::int64_t b = -1; b <= 1; ++b)
        if (a != 0 || b != 0) small.push_back(make_index({a, b}));

    std::vector<NetIndex> box;
    std::int64_t lo0 = std::min<std::int64_t>(0, target(0)) - 2, hi0 = std::max<std::int64_t>(0, target(0)) + 2;
    std::int64_t lo1 = std::min<std::int64_t>(0, target(1)) - 2, hi1 = std::max<std::int64_t>(0, target(1)) + 2;
    for (std::int64_t a = lo0; a <= hi0; ++a)
      for (std::int64_t b = lo1; b <= hi1; ++b) box.push_back(make_index({a, b}));
    std::stable_sort(box.begin(), box.end(), [](const NetIndex& x, const NetIndex& y) {
      return x.squaredNorm() < y.squaredNorm();
    });
    (void)r;

    auto known = [&](const NetIndex& v) -> const Scalar* {
      auto it = by_recurrence_.find(v);
      return it == by_recurrence_.end() ? nullptr : &it->second;
    };

    for (bool progress = true; progress && !known(target);) {
      progress = false;
      for (const NetIndex& u : box) {
        if (known(u)) continue;
        if (const Scalar* neg = known(NetIndex(-u))) {
          by_recurrence_.emplace(u, Scalar(-*neg));
          progress = true;
          continue;
        }
        for (const NetIndex& q : small) {
          NetIndex p = u - q;
          const Scalar* wp = known(p);
          const Scalar* wpq = known(NetIndex(p - q));
          if (!wp || !wpq || Field::is_zero(*wpq)) continue;
          bool done = false;
          for (const NetIndex& rr : small) {
            if (rr == q || rr == NetIndex(-q)) continue;
            const Scalar* wr = known(rr);
            if (!wr || Field::is_zero(*wr)) continue;
            const Scalar* a = known(NetIndex(p + rr));
            const Scalar* b = known(NetIndex(p - rr));
            const Scalar* c = known(NetIndex(q + rr));
            const Scalar* d = known(NetIndex(q - rr));
            const Scalar* wq = known(q);
            if (!a || !b || !c || !d || !wq) continue;
            Scalar num = *a * *b * *wq * *wq - *c * *d * *wp * *wp;
            Scalar value = num / (*wpq * *wr * *wr);
            by_recurrence_.emplace(u, std::move(value));
            done = true;
            break;
          }
          if (done) {
            progress = true;
            break;
          }
        }
      }
    }
  }

  Curve curve_;
  std::vector<Point> pts_;
  Strategy strategy_;
  Memo by_points_;
  Memo by_recurrence_;
  std::unordered_map<NetIndex, Point, NetIndexHash> points_;
  std::optional<DivPoly<Field>> divpoly_;
};

using RationalNet = NetEvaluator<RationalField>;
using ReducedNetEvaluator = NetEvaluator<PrimeField>;

/// D_{v.P}; D_0 = 0 by convention.  Requires an integral model.
Integer denominator_net(RationalNet& net, const NetIndex& v);

/// A_ii = D_{P_i}, A_ij = D_{P_i + P_j} / (D_{P_i} D_{P_j}), symmetric.
struct QuadraticFormData {
  std::vector<std::vector<Rational>> A;
};

QuadraticFormData quadratic_form_data(RationalNet& net);

/// F_v = prod_{i <= j} A_ij^{v_i v_j}
Rational quadratic_form_F(const QuadraticFormData& q, const NetIndex& v);

/// Psi-hat_v = F_v Psi_v
Rational scaled_net(RationalNet& net, const QuadraticFormData& q, const NetIndex& v);

struct RecurrenceViolation {
  NetIndex p, q, r, s;
};

/// Samples (p, q, r, s) uniformly from [-radius, radius]^rank and evaluates
///   W(p+q+s)W(p-q)W(r+s)W(r) + W(q+r+s)W(q-r)W(p+s)W(p) + W(r+p+s)W(r-p)W(q+s)W(q).
/// W is any callable NetIndex -> Rational or Fp.
template <class Fn>
std::vector<RecurrenceViolation> recurrence_check(Fn&& W, Eigen::Index rank, std::int64_t radius, int trials,
                                                  std::uint64_t seed) {
  using S = std::decay_t<decltype(W(NetIndex()))>;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(-radius, radius);
  auto draw = [&] {
    NetIndex v(rank);
    for (Eigen::Index k = 0; k < rank; ++k) v(k) = coord(rng);
    return v;
  };
  std::vector<RecurrenceViolation> bad;
  for (int t = 0; t < trials; ++t) {
    NetIndex p = draw(), q = draw(), r = draw(), s = draw();
    S t1 = W(NetIndex(p + q + s)) * W(NetIndex(p - q)) * W(NetIndex(r + s)) * W(r);
    S t2 = W(NetIndex(q + r + s)) * W(NetIndex(q - r)) * W(NetIndex(p + s)) * W(p);
    S t3 = W(NetIndex(r + p + s)) * W(NetIndex(r - p)) * W(NetIndex(q + s)) * W(q);
    S sum = t1 + t2 + t3;
    if (!is_zero(sum)) bad.push_back({p, q, r, s});
  }
  return bad;
}

}  // namespace ellnet
