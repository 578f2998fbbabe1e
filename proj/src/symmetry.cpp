#include "ellnet/symmetry.hpp"

#include <cmath>
#include <random>

namespace ellnet {

namespace {

std::vector<ReducedPoint> reduce_points(const RationalCurve& curve, const std::vector<RationalPoint>& pts,
                                        std::int64_t p) {
  std::vector<ReducedPoint> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ReducedPoint r = reduce_mod_p(curve, pts[i], p);
    if (r.infinite)
      throw Error(Errc::precondition, "P_" + std::to_string(i + 1) + " reduces to infinity mod " + std::to_string(p));
    out.push_back(r);
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (out[i].x == out[j].x)
        throw Error(Errc::precondition, "P_" + std::to_string(i + 1) + " +- P_" + std::to_string(j + 1) +
                                            " reduces to infinity mod " + std::to_string(p));
  return out;
}

}  // namespace

ReducedNet::ReducedNet(const RationalCurve& curve, std::vector<RationalPoint> points, std::int64_t p, Mode mode)
    : field_(p),
      mode_(mode),
      rational_(curve, points),
      reduced_curve_(reduce_curve(curve, p)),
      reduced_points_(reduce_points(curve, points, p)) {
  try {
    fp_.emplace(reduced_curve_, reduced_points_);
    if (rank() <= 2) fp_recurrence_.emplace(reduced_curve_, reduced_points_, ReducedNetEvaluator::Strategy::recurrence);
  } catch (const Error& e) {
    // singular reduced points: no group law, so only the exact path is available
    if (e.code() != Errc::unsupported_case) throw;
    fp_.reset();
    fp_recurrence_.reset();
  }
}

Fp ReducedNet::exact(const NetIndex& v) { return field_.from_rational(rational_(v)); }

std::optional<Fp> ReducedNet::direct(const NetIndex& v) {
  if (!fp_) return std::nullopt;
  try {
    return fp_->eval_points(v);
  } catch (const Error& e) {
    if (e.code() != Errc::degenerate_path) throw;
  }
  if (!fp_recurrence_) return std::nullopt;
  try {
    return fp_recurrence_->eval_recurrence(v);
  } catch (const Error& e) {
    if (e.code() != Errc::degenerate_recursion) throw;
  }
  return std::nullopt;
}

Fp ReducedNet::operator()(const NetIndex& v) {
  if (mode_ == Mode::direct)
    if (auto d = direct(v)) return *d;
  return exact(v);
}

std::int64_t default_apparition_bound(std::int64_t p) {
  auto root = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(p))));
  while (root * root < p) ++root;
  while ((root - 1) * (root - 1) >= p) --root;
  return p + 1 + 2 * root + 1;
}

Apparition rank_of_apparition(const NetFunction& W, Eigen::Index rank, Eigen::Index axis, std::int64_t bound) {
  auto at = [&](std::int64_t n) { return W(unit_index(rank, axis, n)); };
  Apparition a;
  if (at(3).is_zero() && at(4).is_zero()) {
    a.kind = Apparition::Kind::non_unique;
    a.diagnostic = "W(3e) = W(4e) = 0";
    return a;
  }
  std::vector<bool> zero(static_cast<std::size_t>(bound) + 1, false);
  for (std::int64_t n = 1; n <= bound; ++n) zero[n] = at(n).is_zero();
  std::int64_t rho = 0;
  for (std::int64_t n = 1; n <= bound && rho == 0; ++n)
    if (zero[n]) rho = n;
  if (rho == 0) {
    a.diagnostic = "no zero of W(n e_" + std::to_string(axis + 1) + ") for 1 <= n <= " + std::to_string(bound);
    return a;
  }
  for (std::int64_t n = 1; n <= bound; ++n)
    if (zero[n] != (n % rho == 0)) {
      a.kind = Apparition::Kind::non_unique;
      a.rho = rho;
      a.diagnostic = "first zero at " + std::to_string(rho) + " but W(" + std::to_string(n) + " e) " +
                     (zero[n] ? "vanishes" : "does not vanish");
      return a;
    }
  a.kind = Apparition::Kind::rank;
  a.rho = rho;
  return a;
}

namespace {

std::vector<std::int64_t> apparition_ranks(const NetFunction& W, Eigen::Index rank, std::int64_t bound) {
  std::vector<std::int64_t> rho;
  for (Eigen::Index i = 0; i < rank; ++i) {
    Apparition a = rank_of_apparition(W, rank, i, bound);
    if (a.kind == Apparition::Kind::non_unique)
      throw Error(Errc::not_a_subgroup, "axis " + std::to_string(i + 1) + " has no unique rank of apparition (" +
                                            a.diagnostic + ")");
    if (a.kind == Apparition::Kind::none) throw Error(Errc::precondition, a.diagnostic);
    rho.push_back(a.rho);
  }
  return rho;
}

// Calls f(v) for every v in [0, extent_0) x ... x [0, extent_{r-1}).
template <class F>
void for_box(const std::vector<std::int64_t>& extent, F&& f) {
  const auto r = static_cast<Eigen::Index>(extent.size());
  NetIndex v = NetIndex::Zero(r);
  for (;;) {
    f(v);
    Eigen::Index i = r - 1;
    while (i >= 0 && ++v(i) == extent[i]) v(i--) = 0;
    if (i < 0) return;
  }
}

}  // namespace

IntegerLattice zero_lattice(ReducedNet& net, std::optional<std::int64_t> bound) {
  const Eigen::Index r = net.rank();
  NetFunction W = [&](const NetIndex& v) { return net(v); };
  std::vector<std::int64_t> rho = apparition_ranks(W, r, bound.value_or(default_apparition_bound(net.prime())));

  const ReducedCurve& E = net.reduced_curve();
  const auto& P = net.reduced_points();
  std::vector<NetIndex> gens;
  for (Eigen::Index i = 0; i < r; ++i) gens.push_back(unit_index(r, i, rho[i]));

  // accumulate v.P along the last axis, restarting from the partial sum of the others
  std::vector<std::int64_t> head(rho.begin(), rho.end() - 1);
  auto scan_line = [&](const NetIndex& prefix) {
    ReducedPoint acc = ReducedPoint::at_infinity();
    for (Eigen::Index i = 0; i + 1 < r; ++i) acc = E.add_trusted(acc, E.mul_trusted(Integer(prefix(i)), P[i]));
    for (std::int64_t t = 0; t < rho[r - 1]; ++t) {
      if (acc.infinite) {
        NetIndex v(r);
        v.head(r - 1) = prefix;
        v(r - 1) = t;
        if (!is_zero(v)) gens.push_back(v);
      }
      acc = E.add_trusted(acc, P[r - 1]);
    }
  };
  if (r == 1)
    scan_line(NetIndex(0));
  else
    for_box(head, scan_line);
  return IntegerLattice::from_generators(r, gens);
}

IntegerLattice zero_lattice_from_net(const NetFunction& W, const std::vector<std::int64_t>& rho) {
  const auto r = static_cast<Eigen::Index>(rho.size());
  std::vector<NetIndex> gens;
  for (Eigen::Index i = 0; i < r; ++i) gens.push_back(unit_index(r, i, rho[i]));
  for_box(rho, [&](const NetIndex& v) {
    if (!is_zero(v) && W(v).is_zero()) gens.push_back(v);
  });
  return IntegerLattice::from_generators(r, gens);
}

Fp delta(const NetFunction& W, const NetIndex& lambda, const NetIndex& v) {
  Fp wv = W(v);
  if (wv.is_zero()) throw Error(Errc::division_by_zero, "W" + to_string(v) + " = 0, so delta is undefined");
  return W(NetIndex(lambda + v)) / wv;
}

Fp chi_with_aux(const NetFunction& W, const NetIndex& lambda, const NetIndex& v, const NetIndex& aux) {
  return delta(W, lambda, NetIndex(v + aux)) / delta(W, lambda, aux);
}

namespace {

void require_symmetry_hypotheses(const IntegerLattice& L, const NetIndex& lambda) {
  if (L.index() < 4)
    throw Error(Errc::small_quotient, "|Z^r / Lambda| = " + std::to_string(L.index()) + " < 4");
  if (!L.contains(lambda)) throw Error(Errc::precondition, to_string(lambda) + " is not in the zero lattice");
}

}  // namespace

Fp chi(const NetFunction& W, const IntegerLattice& L, const NetIndex& lambda, const NetIndex& v) {
  require_symmetry_hypotheses(L, lambda);
  for (const NetIndex& a : L.coset_representatives())
    if (!L.contains(a) && !L.contains(NetIndex(v + a))) return chi_with_aux(W, lambda, v, a);
  throw Error(Errc::small_quotient, "no admissible auxiliary point");
}

Fp xi_with(const NetFunction& W, const IntegerLattice& L, const NetIndex& lambda, const NetIndex& v) {
  return delta(W, lambda, v) / chi(W, L, lambda, v);
}

Fp xi(const NetFunction& W, const IntegerLattice& L, const NetIndex& lambda) {
  require_symmetry_hypotheses(L, lambda);
  for (const NetIndex& v : L.coset_representatives())
    if (!L.contains(v)) return xi_with(W, L, lambda, v);
  throw Error(Errc::small_quotient, "no index outside the lattice");
}

SymmetryData build_symmetry_data(const NetFunction& W, const IntegerLattice& lattice, std::int64_t p) {
  const Eigen::Index r = lattice.rank();
  if (lattice.index() < 4)
    throw Error(Errc::small_quotient, "|Z^r / Lambda| = " + std::to_string(lattice.index()) + " < 4");
  SymmetryData sd{p, lattice, {}, {}, {}, lattice.coset_representatives(), {}};
  for (Eigen::Index i = 0; i < r; ++i) {
    NetIndex li = lattice.basis_vector(i);
    sd.xi.push_back(xi(W, lattice, li));
    std::vector<Fp> row_l, row_e;
    for (Eigen::Index j = 0; j < r; ++j) {
      row_l.push_back(chi(W, lattice, li, lattice.basis_vector(j)));
      row_e.push_back(chi(W, lattice, li, unit_index(r, j)));
    }
    sd.chi_lambda.push_back(std::move(row_l));
    sd.chi_unit.push_back(std::move(row_e));
  }
  for (const NetIndex& m : sd.reps) sd.rep_values.push_back(W(m));
  return sd;
}

SymmetryData build_symmetry_data(ReducedNet& net) {
  IntegerLattice L = zero_lattice(net);
  return build_symmetry_data([&](const NetIndex& v) { return net(v); }, L, net.prime());
}

Fp eval_by_symmetry(const SymmetryData& sd, const NetIndex& target) {
  const IntegerLattice& L = sd.lattice;
  const Eigen::Index r = L.rank();
  IntegerLattice::Decomposition d = L.decompose(target);
  std::size_t idx = 0;
  for (Eigen::Index i = 0; i < r; ++i)
    idx = idx * static_cast<std::size_t>(L.diagonal(i)) + static_cast<std::size_t>(d.representative(i));
  Fp value = sd.rep_values.at(idx);
  for (Eigen::Index i = 0; i < r; ++i) {
    Integer ni(static_cast<long>(d.coefficients(i)));
    value *= sd.xi[i].pow(Integer(ni * ni));
    for (Eigen::Index j = 0; j < r; ++j)
      value *= sd.chi_unit[i][j].pow(Integer(ni * static_cast<long>(d.representative(j))));
    for (Eigen::Index j = 0; j < i; ++j)
      value *= sd.chi_lambda[i][j].pow(Integer(ni * static_cast<long>(d.coefficients(j))));
  }
  return value;
}

bool periodicity_check(const SymmetryData& sd, const NetFunction& W, int samples, std::uint64_t seed) {
  const IntegerLattice& L = sd.lattice;
  const Eigen::Index r = L.rank();
  std::int64_t radius = 0;
  for (Eigen::Index i = 0; i < r; ++i) radius = std::max(radius, 2 * L.diagonal(i));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(-radius, radius);
  for (int s = 0; s < samples; ++s) {
    NetIndex v(r);
    for (Eigen::Index i = 0; i < r; ++i) v(i) = coord(rng);
    Fp direct = W(v);
    for (Eigen::Index k = 0; k < r; ++k) {
      NetIndex shifted = v + (sd.p - 1) * L.basis_vector(k);
      if (!(eval_by_symmetry(sd, shifted) == direct)) return false;
    }
  }
  return true;
}

}  // namespace ellnet
