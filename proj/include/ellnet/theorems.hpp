#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ellnet/curve.hpp"
#include "ellnet/lattice.hpp"
#include "ellnet/net.hpp"

namespace ellnet {

/// The five conditions of the valuation criterion for singular reduction,
/// evaluated at p with bounded searches for the existential ones.
struct AyadReport {
  std::int64_t p = 0;
  std::int64_t box_radius = 0;  // (c), (d): v in [-R, R]^r
  long n_max = 0;               // (b): 2 <= n <= n_max
  bool a = false, b = false, c = false, d = false, e = false;
  std::optional<Eigen::Index> a_axis, b_axis, e_axis, c_axis;
  std::optional<NetIndex> c_index, d_index;
  // per point: singular by partial derivatives / by v_p(psi_2), v_p(psi_3) > 0
  std::vector<bool> singular_by_partials, singular_by_psi;

  bool all_agree() const { return a == b && b == c && c == d && d == e; }
  bool singularity_tests_agree() const { return singular_by_partials == singular_by_psi; }
};

/// Throws precondition when P_i or P_i +- P_j reduces to infinity.
AyadReport ayad_equivalence_report(const RationalCurve& curve, const std::vector<RationalPoint>& points,
                                   std::int64_t p, std::int64_t box_radius, long n_max);

struct ValuationEntry {
  NetIndex v;
  Valuation denominator;  // v_p(D_{v.P})
  Valuation scaled;       // v_p(Psi-hat_v)
};

struct ValuationReport {
  std::int64_t p = 0;
  std::vector<ValuationEntry> entries;
  std::vector<NetIndex> mismatches;
};

/// Compares v_p(D_{v.P}) with v_p(Psi-hat_v(P)) for every v != 0 with
/// lo <= v <= hi componentwise.  With `gate`, throws precondition unless each
/// P_i has nonsingular reduction and P_i, P_i +- P_j do not reduce to infinity.
ValuationReport valuation_match_report(const RationalCurve& curve, const std::vector<RationalPoint>& points,
                                       std::int64_t p, const NetIndex& lo, const NetIndex& hi, bool gate = true);

struct UniqueApparition {
  bool unique = false;                  // W_3 != 0 or W_4 != 0
  bool zero_pattern_consistent = false; // agrees with the zeros of W_1..W_N
};

/// values = W_0, ..., W_N of an elliptic sequence over F_p.  Throws
/// not_elliptic_sequence if some W_{m+n} W_{m-n} W_1^2 = W_{m+1} W_{m-1} W_n^2 - W_{n+1} W_{n-1} W_m^2
/// with m + n <= N fails.
UniqueApparition unique_apparition_test(const std::vector<Fp>& values);

struct EpsilonReport {
  bool parallelogram = true;   // eps(v+w) + eps(v-w) = 2 eps(v) + 2 eps(w)
  bool integer_valued = true;
  std::size_t pairs_checked = 0;
  std::size_t pairs_skipped = 0;  // some v.P infinite or singular mod p
  std::vector<std::pair<NetIndex, NetIndex>> failures;
  bool holds() const { return parallelogram && integer_valued; }
};

/// eps(v) = lambda_p(v.P) - v_p(Delta)/12 - v_p(Psi_v(P)), eps(0) = 0, on all
/// pairs v, w in [-R, R]^r.
EpsilonReport epsilon_quadratic_check(const RationalCurve& curve, const std::vector<RationalPoint>& points,
                                      std::int64_t p, std::int64_t box_radius);
/// Same with Psi supplied by the caller.
EpsilonReport epsilon_quadratic_check(const RationalCurve& curve, const std::vector<RationalPoint>& points,
                                      std::int64_t p, std::int64_t box_radius,
                                      const std::function<Rational(const NetIndex&)>& psi);

/// lambda_p(P+Q) + lambda_p(P-Q) = 2 lambda_p(P) + 2 lambda_p(Q) + v_p(x(P) - x(Q)) - v_p(Delta)/6.
/// std::nullopt when one of the four points is infinity or reduces to a
/// singular point.
std::optional<bool> quasi_parallelogram_holds(const RationalCurve& curve, const RationalPoint& P,
                                              const RationalPoint& Q, std::int64_t p);

}  // namespace ellnet
