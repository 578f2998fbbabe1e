#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ellnet/curve.hpp"
#include "ellnet/lattice.hpp"
#include "ellnet/symmetry.hpp"
#include "ellnet/theorems.hpp"

namespace ellnet {

// Text input.  All parsers throw Errc::parse with the offending text.

/// "a1,a2,a3,a4,a6" (integers)
RationalCurve parse_curve(const std::string& text);
/// "n" or "n/d"
Rational parse_rational(const std::string& text);
/// "(x,y)" or "inf"
RationalPoint parse_point(const std::string& text);
/// "(x,y);(x,y);..."
std::vector<RationalPoint> parse_points(const std::string& text);
/// "v1,v2,..." with optional surrounding parentheses
NetIndex parse_index(const std::string& text);
struct GridSize {
  std::int64_t cols, rows;
};
/// "CxR"
GridSize parse_grid(const std::string& text);

enum class TableFormat { plain, factored, json };
TableFormat parse_table_format(const std::string& text);

std::string render_plain(const Rational& x);

/// A table of a rank-2 net: column c, row r hold the value at index (c, r);
/// rows are printed from the highest second coordinate down.
using Cell = std::function<std::string(const NetIndex&)>;
std::string render_table(const GridSize& grid, const Cell& cell);

nlohmann::json rational_json(const Rational& x);
/// [{"index": [c, r], "value": ...}, ...] in row-major order from (0, 0).
nlohmann::json table_json(const GridSize& grid, const std::function<nlohmann::json(const NetIndex&)>& value);

nlohmann::json index_json(const NetIndex& v);
nlohmann::json to_json(const SymmetryData& sd);
nlohmann::json to_json(const AyadReport& r);
nlohmann::json to_json(const ValuationReport& r);
nlohmann::json to_json(const EpsilonReport& r);

std::string render_text(const SymmetryData& sd);
std::string render_text(const AyadReport& r);

}  // namespace ellnet
