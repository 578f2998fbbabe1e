// ellnet: elliptic nets, denominator nets and their reductions from the command line.
#include <iostream>
#include <mutex>
#include <thread>

#include "CLI11.hpp"
#include "ellnet/factor.hpp"
#include "ellnet/format.hpp"
#include "ellnet/net.hpp"
#include "ellnet/symmetry.hpp"
#include "ellnet/theorems.hpp"

using namespace ellnet;

namespace {

constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct Config {
  std::string curve, points, grid = "5x10", format = "plain", orientation = "qp";
  std::string index, lambdas, check;
  std::int64_t prime = 0;
  std::int64_t radius = 3;
  int trials = 500;
  int jobs = 1;
  std::uint64_t seed = 1;
};

struct Input {
  RationalCurve curve;
  std::vector<RationalPoint> points;
};

Input load(const Config& cfg) {
  if (cfg.curve.empty()) throw Error(Errc::parse, "--curve is required");
  if (cfg.points.empty()) throw Error(Errc::parse, "--points is required");
  Input in{parse_curve(cfg.curve), parse_points(cfg.points)};
  if (cfg.orientation == "pq") {
    if (in.points.size() != 2) throw Error(Errc::parse, "--orientation pq needs exactly two points");
    std::swap(in.points[0], in.points[1]);
  } else if (cfg.orientation != "qp") {
    throw Error(Errc::parse, "--orientation must be qp or pq");
  }
  return in;
}

std::int64_t require_prime(const Config& cfg) {
  if (cfg.prime <= 0) throw Error(Errc::parse, "--prime is required");
  if (!is_prime(cfg.prime)) throw Error(Errc::parse, std::to_string(cfg.prime) + " is not prime");
  return cfg.prime;
}

// Fills a grid of strings, splitting columns over `jobs` threads, each with its
// own evaluator (evaluators are not shared across threads).
template <class MakeEval, class CellFn>
std::vector<std::vector<std::string>> fill_grid(const GridSize& g, int jobs, MakeEval make, CellFn cell) {
  std::vector<std::vector<std::string>> out(g.cols, std::vector<std::string>(g.rows));
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(g.cols)));
  std::exception_ptr failure;
  std::mutex m;
  auto work = [&](int t) {
    try {
      auto eval = make();
      for (std::int64_t c = t; c < g.cols; c += jobs)
        for (std::int64_t r = 0; r < g.rows; ++r) out[c][r] = cell(eval, make_index({c, r}));
    } catch (...) {
      std::lock_guard<std::mutex> lock(m);
      if (!failure) failure = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

void print_grid(const GridSize& g, const std::vector<std::vector<std::string>>& cells, TableFormat fmt) {
  if (fmt == TableFormat::json) {
    std::cout << table_json(g, [&](const NetIndex& v) { return nlohmann::json::parse(cells[v(0)][v(1)]); }).dump(2)
              << "\n";
    return;
  }
  std::cout << render_table(g, [&](const NetIndex& v) { return cells[v(0)][v(1)]; });
}

std::string rational_cell(const Rational& x, TableFormat fmt) {
  switch (fmt) {
    case TableFormat::plain: return render_plain(x);
    case TableFormat::factored: return render_factored(x);
    case TableFormat::json: return rational_json(x).dump();
  }
  return {};
}

int cmd_denom_table(const Config& cfg) {
  Input in = load(cfg);
  GridSize g = parse_grid(cfg.grid);
  TableFormat fmt = parse_table_format(cfg.format);
  auto cells = fill_grid(
      g, cfg.jobs, [&] { return RationalNet(in.curve, in.points); },
      [&](RationalNet& net, const NetIndex& v) { return rational_cell(Rational(denominator_net(net, v)), fmt); });
  print_grid(g, cells, fmt);
  return 0;
}

int cmd_net_table(const Config& cfg) {
  Input in = load(cfg);
  GridSize g = parse_grid(cfg.grid);
  TableFormat fmt = parse_table_format(cfg.format);
  auto cells = fill_grid(
      g, cfg.jobs, [&] { return RationalNet(in.curve, in.points); },
      [&](RationalNet& net, const NetIndex& v) { return rational_cell(net(v), fmt); });
  print_grid(g, cells, fmt);
  return 0;
}

int cmd_reduced_table(const Config& cfg) {
  Input in = load(cfg);
  std::int64_t p = require_prime(cfg);
  GridSize g = parse_grid(cfg.grid);
  TableFormat fmt = parse_table_format(cfg.format);
  auto cells = fill_grid(
      g, cfg.jobs, [&] { return ReducedNet(in.curve, in.points, p); },
      [&](ReducedNet& net, const NetIndex& v) { return std::to_string(net(v).residue()); });
  print_grid(g, cells, fmt);
  return 0;
}

std::vector<NetIndex> parse_lambdas(const std::string& text) {
  std::vector<NetIndex> out;
  std::string cur;
  for (char c : text + ";") {
    if (c == ';') {
      if (!cur.empty()) out.push_back(parse_index(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

int cmd_symmetry(const Config& cfg) {
  Input in = load(cfg);
  std::int64_t p = require_prime(cfg);
  ReducedNet net(in.curve, in.points, p);
  SymmetryData sd = build_symmetry_data(net);
  NetFunction W = [&](const NetIndex& v) { return net(v); };

  nlohmann::json custom = nlohmann::json::array();
  std::vector<NetIndex> lambdas = parse_lambdas(cfg.lambdas);
  for (const NetIndex& l : lambdas) {
    nlohmann::json e{{"lambda", index_json(l)}, {"xi", xi(W, sd.lattice, l).residue()}};
    for (const NetIndex& k : lambdas) e["chi_lambda"].push_back(chi(W, sd.lattice, l, k).residue());
    for (Eigen::Index j = 0; j < net.rank(); ++j)
      e["chi_unit"].push_back(chi(W, sd.lattice, l, unit_index(net.rank(), j)).residue());
    custom.push_back(e);
  }

  if (cfg.format == "json") {
    nlohmann::json j = to_json(sd);
    if (!lambdas.empty()) j["requested"] = custom;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << render_text(sd);
  for (const auto& e : custom) std::cout << "requested " << e.dump() << "\n";
  return 0;
}

int cmd_eval(const Config& cfg) {
  Input in = load(cfg);
  if (cfg.index.empty()) throw Error(Errc::parse, "--index is required");
  NetIndex v = parse_index(cfg.index);
  if (cfg.prime == 0) {
    RationalNet net(in.curve, in.points);
    Rational x = net(v);
    std::cout << (cfg.format == "factored" ? render_factored(x) : render_plain(x)) << "\n";
    return 0;
  }
  std::int64_t p = require_prime(cfg);
  ReducedNet net(in.curve, in.points, p);
  if (is_zero(v)) {
    std::cout << 0 << "\n";
    return 0;
  }
  SymmetryData sd = build_symmetry_data(net);
  Fp by_symmetry = eval_by_symmetry(sd, v);
  if (cfg.check.empty()) {
    std::cout << by_symmetry << "\n";
    return 0;
  }
  Fp direct = net(v);
  std::cout << by_symmetry << " (direct " << direct << ")\n";
  return by_symmetry == direct ? 0 : kVerifyFailed;
}

int report(bool ok, const std::string& what) {
  std::cout << (ok ? "PASS " : "FAIL ") << what << "\n";
  return ok ? 0 : kVerifyFailed;
}

int cmd_verify(const Config& cfg) {
  Input in = load(cfg);
  const std::string& what = cfg.check;
  const bool json = cfg.format == "json";
  if (what == "ayad") {
    AyadReport r = ayad_equivalence_report(in.curve, in.points, require_prime(cfg), cfg.radius, 12);
    if (json)
      std::cout << to_json(r).dump(2) << "\n";
    else
      std::cout << render_text(r);
    return report(r.all_agree() && r.singularity_tests_agree(), "ayad equivalence");
  }
  if (what == "valuation") {
    GridSize g = parse_grid(cfg.grid);
    const auto r = static_cast<Eigen::Index>(in.points.size());
    NetIndex lo = NetIndex::Zero(r), hi = NetIndex::Zero(r);
    hi(0) = g.cols - 1;
    if (r > 1) hi(1) = g.rows - 1;
    ValuationReport rep = valuation_match_report(in.curve, in.points, require_prime(cfg), lo, hi);
    if (json) std::cout << to_json(rep).dump(2) << "\n";
    return report(rep.mismatches.empty(), "valuation identity on " + std::to_string(rep.entries.size()) + " indices");
  }
  if (what == "recurrence") {
    const auto r = static_cast<Eigen::Index>(in.points.size());
    std::size_t bad;
    if (cfg.prime) {
      ReducedNet net(in.curve, in.points, require_prime(cfg));
      bad = recurrence_check([&](const NetIndex& v) { return net(v); }, r, cfg.radius, cfg.trials, cfg.seed).size();
    } else {
      RationalNet net(in.curve, in.points);
      bad = recurrence_check([&](const NetIndex& v) { return net(v); }, r, cfg.radius, cfg.trials, cfg.seed).size();
    }
    return report(bad == 0, "net recurrence, " + std::to_string(cfg.trials) + " quadruples, " + std::to_string(bad) +
                                " violations");
  }
  if (what == "symmetry-props") {
    ReducedNet net(in.curve, in.points, require_prime(cfg));
    SymmetryData sd = build_symmetry_data(net);
    NetFunction W = [&](const NetIndex& v) { return net(v); };
    bool ok = periodicity_check(sd, W, 50, cfg.seed);
    const Eigen::Index r = net.rank();
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < r; ++j) {
        ok = ok && sd.chi_lambda[i][j] == sd.chi_lambda[j][i];
        NetIndex sum = sd.lattice.basis_vector(i) + sd.lattice.basis_vector(j);
        ok = ok && xi(W, sd.lattice, sum) == sd.xi[i] * sd.xi[j] * sd.chi_lambda[i][j];
      }
    return report(ok, "symmetry properties mod " + std::to_string(sd.p));
  }
  if (what == "epsilon") {
    EpsilonReport r = epsilon_quadratic_check(in.curve, in.points, require_prime(cfg), cfg.radius);
    if (json) std::cout << to_json(r).dump(2) << "\n";
    return report(r.holds(), "epsilon is an integer quadratic form (" + std::to_string(r.pairs_checked) + " pairs)");
  }
  throw Error(Errc::parse, "unknown check '" + what + "' (ayad, valuation, recurrence, symmetry-props, epsilon)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elliptic nets over Q and F_p"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--curve", cfg.curve, "a1,a2,a3,a4,a6");
    sub->add_option("--points", cfg.points, "(x,y);(x,y)");
    sub->add_option("--orientation", cfg.orientation, "qp keeps the given order, pq swaps the two points");
    sub->add_option("--format", cfg.format, "plain | factored | json");
    sub->add_option("--prime", cfg.prime, "prime p");
    sub->add_option("--grid", cfg.grid, "CxR");
    sub->add_option("--jobs", cfg.jobs, "worker threads for table cells");
    return sub;
  };
  auto* denom = common(app.add_subcommand("denom-table", "denominator net D_{v.P} on a grid"));
  auto* nett = common(app.add_subcommand("net-table", "elliptic net Psi_v(P) on a grid"));
  auto* reduced = common(app.add_subcommand("reduced-table", "Psi_v(P) mod p on a grid"));
  auto* sym = common(app.add_subcommand("symmetry", "zero lattice and the xi / chi tables mod p"));
  sym->add_option("--lambda", cfg.lambdas, "lattice vectors to evaluate xi / chi at, e.g. \"1,5;0,13\"");
  auto* eval = common(app.add_subcommand("eval", "one net value (exact, or mod p by symmetry)"));
  eval->add_option("--index", cfg.index, "v1,v2,...")->required();
  eval->add_flag("--check", [&](std::int64_t) { cfg.check = "direct"; }, "also evaluate directly and compare");
  auto* verify = common(app.add_subcommand("verify", "check a theorem instance"));
  verify->add_option("check", cfg.check, "ayad | valuation | recurrence | symmetry-props | epsilon")->required();
  verify->add_option("--radius", cfg.radius, "box radius");
  verify->add_option("--trials", cfg.trials, "random quadruples for the recurrence check");
  verify->add_option("--seed", cfg.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*denom) return cmd_denom_table(cfg);
    if (*nett) return cmd_net_table(cfg);
    if (*reduced) return cmd_reduced_table(cfg);
    if (*sym) return cmd_symmetry(cfg);
    if (*eval) return cmd_eval(cfg);
    if (*verify) return cmd_verify(cfg);
  } catch (const Error& e) {
    std::cerr << "ellnet: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
