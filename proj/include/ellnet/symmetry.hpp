#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ellnet/curve.hpp"
#include "ellnet/lattice.hpp"
#include "ellnet/net.hpp"

namespace ellnet {

/// Psi(P) reduced modulo p.
///
/// exact:  Psi_v over Q, then reduced (p-integral under the constructor's
///         preconditions).
/// direct: arithmetic in F_p throughout; on a zero divisor the value is
///         recomputed exactly.
class ReducedNet {
 public:
  enum class Mode { exact, direct };

  /// Requires an integral model, P_i not infinity mod p and P_i +- P_j not
  /// infinity mod p.
  ReducedNet(const RationalCurve& curve, std::vector<RationalPoint> points, std::int64_t p,
             Mode mode = Mode::exact);

  std::int64_t prime() const { return field_.p; }
  Eigen::Index rank() const { return rational_.rank(); }
  Mode mode() const { return mode_; }
  const PrimeField& field() const { return field_; }

  Fp operator()(const NetIndex& v);
  Fp exact(const NetIndex& v);
  /// std::nullopt when the F_p computation meets a zero divisor or the reduced
  /// points are singular.
  std::optional<Fp> direct(const NetIndex& v);

  RationalNet& rational() { return rational_; }
  const ReducedCurve& reduced_curve() const { return reduced_curve_; }
  const std::vector<ReducedPoint>& reduced_points() const { return reduced_points_; }

 private:
  PrimeField field_;
  Mode mode_;
  RationalNet rational_;
  ReducedCurve reduced_curve_;
  std::vector<ReducedPoint> reduced_points_;
  std::optional<ReducedNetEvaluator> fp_;
  std::optional<ReducedNetEvaluator> fp_recurrence_;
};

using NetFunction = std::function<Fp(const NetIndex&)>;

struct Apparition {
  enum class Kind { rank, none, non_unique };
  Kind kind = Kind::none;
  std::int64_t rho = 0;
  std::string diagnostic;
};

/// p + 1 + 2 ceil(sqrt p) + 1
std::int64_t default_apparition_bound(std::int64_t p);

Apparition rank_of_apparition(const NetFunction& W, Eigen::Index rank, Eigen::Index axis, std::int64_t bound);

/// {v : v.P = O in E(F_p)}, from the reduced group law on the box
/// [0, rho_1) x ... x [0, rho_r) plus rho_i e_i.
IntegerLattice zero_lattice(ReducedNet& net, std::optional<std::int64_t> bound = std::nullopt);

/// The same lattice read off the zeros of W in the box; used as a cross-check.
IntegerLattice zero_lattice_from_net(const NetFunction& W, const std::vector<std::int64_t>& rho);

/// delta(lambda, v) = W(lambda + v) / W(v)
Fp delta(const NetFunction& W, const NetIndex& lambda, const NetIndex& v);

/// chi(lambda, v) = delta(lambda, v + a) / delta(lambda, a) for a given auxiliary a.
Fp chi_with_aux(const NetFunction& W, const NetIndex& lambda, const NetIndex& v, const NetIndex& aux);
/// Auxiliary point: first canonical coset representative a with a, v + a not in L.
Fp chi(const NetFunction& W, const IntegerLattice& L, const NetIndex& lambda, const NetIndex& v);

/// xi(lambda) = delta(lambda, v) / chi(lambda, v)
Fp xi_with(const NetFunction& W, const IntegerLattice& L, const NetIndex& lambda, const NetIndex& v);
/// v: first canonical coset representative outside L.
Fp xi(const NetFunction& W, const IntegerLattice& L, const NetIndex& lambda);

struct SymmetryData {
  std::int64_t p;
  IntegerLattice lattice;                     // basis lambda_1..lambda_r = columns
  std::vector<Fp> xi;                         // xi(lambda_i)
  std::vector<std::vector<Fp>> chi_lambda;    // chi(lambda_i, lambda_j)
  std::vector<std::vector<Fp>> chi_unit;      // chi(lambda_i, e_j)
  std::vector<NetIndex> reps;                 // canonical coset representatives
  std::vector<Fp> rep_values;                 // W(reps[k])
};

SymmetryData build_symmetry_data(const NetFunction& W, const IntegerLattice& lattice, std::int64_t p);
SymmetryData build_symmetry_data(ReducedNet& net);

/// W(sum n_i lambda_i + m) =
///   prod xi(lambda_i)^{n_i^2} chi(lambda_i, m)^{n_i} prod_{j<i} chi(lambda_i, lambda_j)^{n_i n_j} W(m)
Fp eval_by_symmetry(const SymmetryData& sd, const NetIndex& target);

/// W(v + (p-1) lambda_k) computed by symmetry equals W(v) computed directly,
/// for `samples` random v and every basis vector lambda_k.
bool periodicity_check(const SymmetryData& sd, const NetFunction& W, int samples, std::uint64_t seed);

}  // namespace ellnet
