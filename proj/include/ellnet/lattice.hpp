#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace ellnet {

/// Index vector v in Z^r of an elliptic net.
using NetIndex = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

NetIndex make_index(std::initializer_list<std::int64_t> coords);
NetIndex unit_index(Eigen::Index rank, Eigen::Index axis, std::int64_t scale = 1);
NetIndex zero_index(Eigen::Index rank);
bool is_zero(const NetIndex& v);
std::int64_t max_norm(const NetIndex& v);
std::string to_string(const NetIndex& v);  // "(1,5)"

struct NetIndexHash {
  std::size_t operator()(const NetIndex& v) const noexcept;
};

/// Full-rank sublattice of Z^r stored in column Hermite normal form: column j
/// is the j-th basis vector, the matrix is lower triangular with positive
/// diagonal, and each entry below the diagonal lies in [0, diagonal of its row).
class IntegerLattice {
 public:
  struct Decomposition {
    NetIndex coefficients;     // with respect to the basis columns
    NetIndex representative;   // 0 <= rep_i < diag_i
  };

  /// Throws Errc::rank_deficient unless the generators span a rank-r lattice.
  static IntegerLattice from_generators(Eigen::Index rank, const std::vector<NetIndex>& generators);

  Eigen::Index rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }
  NetIndex basis_vector(Eigen::Index j) const { return basis_.col(j); }
  std::int64_t diagonal(Eigen::Index i) const { return basis_(i, i); }
  /// |Z^r / L|
  std::int64_t index() const;

  Decomposition decompose(const NetIndex& v) const;
  bool contains(const NetIndex& v) const;
  /// Coefficients of v in the basis when v is a member.
  std::optional<NetIndex> coordinates(const NetIndex& v) const;
  /// Canonical coset representatives in lexicographic order.
  std::vector<NetIndex> coset_representatives() const;

  friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) {
    return a.basis_.rows() == b.basis_.rows() && a.basis_ == b.basis_;
  }

 private:
  explicit IntegerLattice(IntMatrix basis) : basis_(std::move(basis)) {}
  IntMatrix basis_;
};

std::int64_t floor_div(std::int64_t a, std::int64_t b);

}  // namespace ellnet
