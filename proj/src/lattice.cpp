#include "ellnet/lattice.hpp"

#include <cstdlib>
#include <utility>

#include "ellnet/field.hpp"

namespace ellnet {

NetIndex make_index(std::initializer_list<std::int64_t> coords) {
  NetIndex v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (auto c : coords) v(i++) = c;
  return v;
}

NetIndex unit_index(Eigen::Index rank, Eigen::Index axis, std::int64_t scale) {
  NetIndex v = NetIndex::Zero(rank);
  v(axis) = scale;
  return v;
}

NetIndex zero_index(Eigen::Index rank) { return NetIndex::Zero(rank); }

bool is_zero(const NetIndex& v) { return (v.array() == 0).all(); }

std::int64_t max_norm(const NetIndex& v) {
  return v.size() == 0 ? 0 : v.cwiseAbs().maxCoeff();
}

std::string to_string(const NetIndex& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v(i));
  }
  return s + ")";
}

std::size_t NetIndexHash::operator()(const NetIndex& v) const noexcept {
  std::size_t h = static_cast<std::size_t>(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    h ^= std::hash<std::int64_t>{}(v(i)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::invalid_argument, "lattice entry overflow");
  return r;
}

void sub_column(IntMatrix& m, Eigen::Index dst, Eigen::Index src, std::int64_t q) {
  if (q == 0) return;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::int64_t r;
    if (__builtin_sub_overflow(m(i, dst), checked_mul(q, m(i, src)), &r))
      throw Error(Errc::invalid_argument, "lattice entry overflow");
    m(i, dst) = r;
  }
}

}  // namespace

IntegerLattice IntegerLattice::from_generators(Eigen::Index rank,
                                               const std::vector<NetIndex>& generators) {
  if (rank < 1) throw Error(Errc::invalid_argument, "lattice rank must be positive");
  const auto k = static_cast<Eigen::Index>(generators.size());
  if (k < rank) throw Error(Errc::rank_deficient, "fewer generators than the rank");
  IntMatrix m(rank, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    if (generators[j].size() != rank)
      throw Error(Errc::invalid_argument, "generator " + to_string(generators[j]) + " has wrong length");
    m.col(j) = generators[j];
  }

  for (Eigen::Index i = 0; i < rank; ++i) {
    // Euclid across columns i..k-1 on row i
    for (;;) {
      Eigen::Index pivot = -1;
      for (Eigen::Index j = i; j < k; ++j)
        if (m(i, j) != 0 && (pivot < 0 || std::llabs(m(i, j)) < std::llabs(m(i, pivot)))) pivot = j;
      if (pivot < 0) throw Error(Errc::rank_deficient, "generators span a lower-rank lattice");
      if (pivot != i) m.col(i).swap(m.col(pivot));
      bool done = true;
      for (Eigen::Index j = i + 1; j < k; ++j) {
        if (m(i, j) == 0) continue;
        sub_column(m, j, i, m(i, j) / m(i, i));
        if (m(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (m(i, i) < 0) m.col(i) = -m.col(i);
  }
  for (Eigen::Index j = 0; j < rank; ++j)
    for (Eigen::Index i = j + 1; i < rank; ++i) sub_column(m, j, i, floor_div(m(i, j), m(i, i)));

  return IntegerLattice(m.leftCols(rank));
}

std::int64_t IntegerLattice::index() const {
  std::int64_t d = 1;
  for (Eigen::Index i = 0; i < rank(); ++i) d = checked_mul(d, basis_(i, i));
  return d;
}

IntegerLattice::Decomposition IntegerLattice::decompose(const NetIndex& v) const {
  if (v.size() != rank()) throw Error(Errc::invalid_argument, "index length does not match lattice rank");
  Decomposition d{NetIndex::Zero(rank()), v};
  for (Eigen::Index i = 0; i < rank(); ++i) {
    std::int64_t q = floor_div(d.representative(i), basis_(i, i));
    d.coefficients(i) = q;
    d.representative -= q * basis_.col(i);
  }
  return d;
}

bool IntegerLattice::contains(const NetIndex& v) const { return is_zero(decompose(v).representative); }

std::optional<NetIndex> IntegerLattice::coordinates(const NetIndex& v) const {
  Decomposition d = decompose(v);
  if (!is_zero(d.representative)) return std::nullopt;
  return d.coefficients;
}

std::vector<NetIndex> IntegerLattice::coset_representatives() const {
  std::vector<NetIndex> reps;
  reps.reserve(static_cast<std::size_t>(index()));
  NetIndex m = NetIndex::Zero(rank());
  for (;;) {
    reps.push_back(m);
    Eigen::Index i = rank() - 1;
    while (i >= 0 && ++m(i) == basis_(i, i)) m(i--) = 0;
    if (i < 0) break;
  }
  return reps;
}

}  // namespace ellnet
