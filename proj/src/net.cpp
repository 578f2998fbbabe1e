#include "ellnet/net.hpp"

namespace ellnet {

Integer denominator_net(RationalNet& net, const NetIndex& v) {
  if (is_zero(v)) return 0;
  const RationalPoint& p = net.point(v);
  if (p.infinite) throw Error(Errc::dependent_points, to_string(v) + ".P is the point at infinity");
  return decompose(net.curve(), p).D;
}

QuadraticFormData quadratic_form_data(RationalNet& net) {
  const Eigen::Index r = net.rank();
  QuadraticFormData q;
  q.A.assign(r, std::vector<Rational>(r));
  std::vector<Integer> d(r);
  for (Eigen::Index i = 0; i < r; ++i) d[i] = denominator_net(net, unit_index(r, i));
  for (Eigen::Index i = 0; i < r; ++i) {
    q.A[i][i] = d[i];
    for (Eigen::Index j = i + 1; j < r; ++j) {
      Rational a(denominator_net(net, NetIndex(unit_index(r, i) + unit_index(r, j))), d[i] * d[j]);
      a.canonicalize();
      q.A[i][j] = q.A[j][i] = a;
    }
  }
  return q;
}

Rational quadratic_form_F(const QuadraticFormData& q, const NetIndex& v) {
  const auto r = static_cast<Eigen::Index>(q.A.size());
  if (v.size() != r) throw Error(Errc::invalid_argument, "index length does not match the quadratic form");
  Rational f(1);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = i; j < r; ++j) f *= pow(q.A[i][j], static_cast<long>(v(i) * v(j)));
  return f;
}

Rational scaled_net(RationalNet& net, const QuadraticFormData& q, const NetIndex& v) {
  return quadratic_form_F(q, v) * net(v);
}

}  // namespace ellnet
