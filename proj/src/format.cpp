#include "ellnet/format.hpp"

#include <cctype>
#include <sstream>

#include "ellnet/factor.hpp"

namespace ellnet {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

Integer parse_integer(const std::string& text) {
  std::string t = trim(text);
  std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
  if (i == t.size()) throw Error(Errc::parse, "expected an integer, got '" + text + "'");
  for (std::size_t k = i; k < t.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(t[k]))) throw Error(Errc::parse, "expected an integer, got '" + text + "'");
  return Integer(t[0] == '+' ? t.substr(1) : t);
}

std::int64_t parse_small(const std::string& text) {
  Integer n = parse_integer(text);
  if (!n.fits_slong_p()) throw Error(Errc::parse, "'" + text + "' is out of range");
  return n.get_si();
}

std::string strip_parens(const std::string& text) {
  std::string t = trim(text);
  if (t.size() >= 2 && t.front() == '(' && t.back() == ')') return t.substr(1, t.size() - 2);
  return t;
}

}  // namespace

RationalCurve parse_curve(const std::string& text) {
  auto parts = split(text, ',');
  if (parts.size() != 5) throw Error(Errc::parse, "curve needs five coefficients a1,a2,a3,a4,a6: '" + text + "'");
  return make_curve(parse_integer(parts[0]), parse_integer(parts[1]), parse_integer(parts[2]),
                    parse_integer(parts[3]), parse_integer(parts[4]));
}

Rational parse_rational(const std::string& text) {
  auto parts = split(text, '/');
  if (parts.size() == 1) return Rational(parse_integer(parts[0]));
  if (parts.size() != 2) throw Error(Errc::parse, "expected n or n/d, got '" + text + "'");
  Integer d = parse_integer(parts[1]);
  if (d == 0) throw Error(Errc::parse, "zero denominator in '" + text + "'");
  Rational r(parse_integer(parts[0]), d);
  r.canonicalize();
  return r;
}

RationalPoint parse_point(const std::string& text) {
  std::string t = trim(text);
  if (t == "inf") return RationalPoint::at_infinity();
  if (t.size() < 2 || t.front() != '(' || t.back() != ')')
    throw Error(Errc::parse, "expected (x,y) or inf, got '" + text + "'");
  auto parts = split(strip_parens(t), ',');
  if (parts.size() != 2) throw Error(Errc::parse, "expected (x,y), got '" + text + "'");
  return make_point(parse_rational(parts[0]), parse_rational(parts[1]));
}

std::vector<RationalPoint> parse_points(const std::string& text) {
  std::vector<RationalPoint> out;
  for (const std::string& part : split(text, ';'))
    if (!part.empty()) out.push_back(parse_point(part));
  if (out.empty()) throw Error(Errc::parse, "no points in '" + text + "'");
  return out;
}

NetIndex parse_index(const std::string& text) {
  auto parts = split(strip_parens(text), ',');
  NetIndex v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_small(parts[i]);
  return v;
}

GridSize parse_grid(const std::string& text) {
  auto parts = split(text, 'x');
  if (parts.size() != 2) throw Error(Errc::parse, "expected CxR, got '" + text + "'");
  GridSize g{parse_small(parts[0]), parse_small(parts[1])};
  if (g.cols < 1 || g.rows < 1) throw Error(Errc::parse, "grid dimensions must be positive: '" + text + "'");
  return g;
}

TableFormat parse_table_format(const std::string& text) {
  if (text == "plain") return TableFormat::plain;
  if (text == "factored") return TableFormat::factored;
  if (text == "json") return TableFormat::json;
  throw Error(Errc::parse, "unknown format '" + text + "'");
}

std::string render_plain(const Rational& x) { return x.get_str(); }

std::string render_table(const GridSize& grid, const Cell& cell) {
  std::string out;
  for (std::int64_t r = grid.rows - 1; r >= 0; --r) {
    for (std::int64_t c = 0; c < grid.cols; ++c) {
      if (c) out += " | ";
      out += cell(make_index({c, r}));
    }
    out += "\n";
  }
  return out;
}

nlohmann::json rational_json(const Rational& x) {
  return {{"num", x.get_num().get_str()}, {"den", x.get_den().get_str()}};
}

nlohmann::json index_json(const NetIndex& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

nlohmann::json table_json(const GridSize& grid, const std::function<nlohmann::json(const NetIndex&)>& value) {
  nlohmann::json a = nlohmann::json::array();
  for (std::int64_t r = 0; r < grid.rows; ++r)
    for (std::int64_t c = 0; c < grid.cols; ++c) {
      NetIndex v = make_index({c, r});
      a.push_back({{"index", index_json(v)}, {"value", value(v)}});
    }
  return a;
}

nlohmann::json to_json(const SymmetryData& sd) {
  const IntegerLattice& L = sd.lattice;
  const Eigen::Index r = L.rank();
  nlohmann::json j;
  j["p"] = sd.p;
  j["lattice"] = nlohmann::json::array();
  for (Eigen::Index i = 0; i < r; ++i) j["lattice"].push_back(index_json(L.basis_vector(i)));
  j["xi"] = nlohmann::json::array();
  j["chi"] = nlohmann::json::array();
  for (Eigen::Index i = 0; i < r; ++i) {
    NetIndex li = L.basis_vector(i);
    j["xi"].push_back({{"lambda", index_json(li)}, {"value", sd.xi[i].residue()}});
    for (Eigen::Index k = 0; k < r; ++k) {
      j["chi"].push_back({{"lambda", index_json(li)}, {"v", index_json(L.basis_vector(k))},
                          {"value", sd.chi_lambda[i][k].residue()}});
      j["chi"].push_back({{"lambda", index_json(li)}, {"v", index_json(unit_index(r, k))},
                          {"value", sd.chi_unit[i][k].residue()}});
    }
  }
  j["reps"] = nlohmann::json::array();
  for (std::size_t k = 0; k < sd.reps.size(); ++k)
    j["reps"].push_back({{"index", index_json(sd.reps[k])}, {"value", sd.rep_values[k].residue()}});
  return j;
}

namespace {

template <class T>
nlohmann::json optional_json(const std::optional<T>& x) {
  if (!x) return nullptr;
  if constexpr (std::is_same_v<T, NetIndex>)
    return index_json(*x);
  else
    return *x + 1;  // axes are reported 1-based
}

std::string valuation_string(const Valuation& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

nlohmann::json to_json(const AyadReport& r) {
  nlohmann::json j;
  j["p"] = r.p;
  j["bounds"] = {{"box_radius", r.box_radius}, {"n_max", r.n_max}};
  j["properties"] = {{"a", r.a}, {"b", r.b}, {"c", r.c}, {"d", r.d}, {"e", r.e}};
  j["witnesses"] = {{"a_axis", optional_json(r.a_axis)}, {"b_axis", optional_json(r.b_axis)},
                    {"c_index", optional_json(r.c_index)}, {"c_axis", optional_json(r.c_axis)},
                    {"d_index", optional_json(r.d_index)}, {"e_axis", optional_json(r.e_axis)}};
  j["singular_by_partials"] = r.singular_by_partials;
  j["singular_by_psi"] = r.singular_by_psi;
  j["all_agree"] = r.all_agree();
  return j;
}

nlohmann::json to_json(const ValuationReport& r) {
  nlohmann::json j;
  j["p"] = r.p;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : r.entries)
    j["entries"].push_back({{"index", index_json(e.v)},
                            {"v_p_denominator", valuation_string(e.denominator)},
                            {"v_p_scaled", valuation_string(e.scaled)}});
  j["mismatches"] = nlohmann::json::array();
  for (const auto& v : r.mismatches) j["mismatches"].push_back(index_json(v));
  return j;
}

nlohmann::json to_json(const EpsilonReport& r) {
  nlohmann::json j;
  j["parallelogram"] = r.parallelogram;
  j["integer_valued"] = r.integer_valued;
  j["pairs_checked"] = r.pairs_checked;
  j["pairs_skipped"] = r.pairs_skipped;
  j["failures"] = nlohmann::json::array();
  for (const auto& [v, w] : r.failures) j["failures"].push_back({index_json(v), index_json(w)});
  return j;
}

std::string render_text(const SymmetryData& sd) {
  const IntegerLattice& L = sd.lattice;
  const Eigen::Index r = L.rank();
  std::ostringstream os;
  os << "p = " << sd.p << ", |Z^" << r << "/Lambda| = " << L.index() << "\n";
  for (Eigen::Index i = 0; i < r; ++i) {
    NetIndex li = L.basis_vector(i);
    os << "lambda_" << i + 1 << " = " << to_string(li) << "  xi = " << sd.xi[i];
    for (Eigen::Index k = 0; k < r; ++k) os << "  chi(lambda_" << i + 1 << ",lambda_" << k + 1 << ") = " << sd.chi_lambda[i][k];
    for (Eigen::Index k = 0; k < r; ++k) os << "  chi(lambda_" << i + 1 << ",e_" << k + 1 << ") = " << sd.chi_unit[i][k];
    os << "\n";
  }
  os << "representatives:";
  for (std::size_t k = 0; k < sd.reps.size(); ++k) os << " " << to_string(sd.reps[k]) << "=" << sd.rep_values[k];
  os << "\n";
  return os.str();
}

std::string render_text(const AyadReport& r) {
  std::ostringstream os;
  auto yn = [](bool b) { return b ? "true" : "false"; };
  os << "p = " << r.p << " (box radius " << r.box_radius << ", n <= " << r.n_max << ")\n";
  os << "(a) v(Psi_2e) > 0 and v(Psi_3e) > 0: " << yn(r.a) << "\n";
  os << "(b) v(Psi_ne) > 0 for 2 <= n <= " << r.n_max << ": " << yn(r.b) << "\n";
  os << "(c) v(Psi_v) > 0 and v(Psi_v+e) > 0: " << yn(r.c) << "\n";
  os << "(d) v(Psi_v) > 0 and v(Phi_v) > 0: " << yn(r.d) << "\n";
  os << "(e) singular reduction: " << yn(r.e) << "\n";
  os << (r.all_agree() ? "all equivalent\n" : "NOT equivalent\n");
  return os.str();
}

}  // namespace ellnet
