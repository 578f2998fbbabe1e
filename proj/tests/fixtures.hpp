#pragma once

#include <cstdint>
#include <vector>

#include "ellnet/curve.hpp"
#include "ellnet/lattice.hpp"
#include "ellnet/net.hpp"
#include "ellnet/symmetry.hpp"

namespace fixtures {

using namespace ellnet;

// y^2 = x^3 - 11
inline RationalCurve e1() { return make_curve(0, 0, 0, 0, -11); }
inline RationalPoint e1_p() { return make_point(3, 4); }
inline RationalPoint e1_q() { return make_point(15, 58); }

// y^2 + 7y = x^3 + x^2 + 28x
inline RationalCurve e2() { return make_curve(0, 1, 7, 28, 0); }
inline RationalPoint e2_p() { return make_point(0, 0); }
inline RationalPoint e2_q() { return make_point(1, 3); }

// y^2 = x^3 + x^2 + 25; (0, 5) reduces to the node of x^2 (x + 1) mod 5
inline RationalCurve e3() { return make_curve(0, 1, 0, 0, 25); }
inline RationalPoint e3_p() { return make_point(0, 5); }

inline NetIndex idx(std::int64_t a, std::int64_t b) { return make_index({a, b}); }

inline NetFunction as_function(ReducedNet& net) {
  return [&net](const NetIndex& v) { return net(v); };
}

template <class F>
void for_box(std::int64_t lo, std::int64_t hi, F&& f) {
  for (std::int64_t a = lo; a <= hi; ++a)
    for (std::int64_t b = lo; b <= hi; ++b) f(idx(a, b));
}

}  // namespace fixtures
