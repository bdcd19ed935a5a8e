#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "exactone/closed_forms.hpp"
#include "exactone/optimizer.hpp"
#include "exactone/oracle.hpp"
#include "exactone/partial_disk.hpp"

namespace exactone::cli {

using nlohmann::json;

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

const char* kSweepHeader = "t,gamma_rad,rho_eq,phi1,phi2,phi3,case,area,probability";

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Command parse_command(const std::string& name) {
  if (name == "analyze") return Command::kAnalyze;
  if (name == "sweep") return Command::kSweep;
  if (name == "optimize") return Command::kOptimize;
  if (name == "verify") return Command::kVerify;
  if (name == "profile") return Command::kProfile;
  throw InputError("unknown command '" + name + "'");
}

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  throw InputError("unknown format '" + name + "' (expected csv or json)");
}

bool needs_lattice(Command c) {
  return c == Command::kAnalyze || c == Command::kVerify || c == Command::kProfile;
}

// Raw flag values; a flag overrides the config file only when it was given.
struct Flags {
  std::string command;
  double t = 0.0;
  double gamma_deg = 0.0;
  std::string a;
  std::string b;
  double rho = 0.0;
  std::int64_t samples = 0;
  std::string seed;
  int grid = 0;
  int resolution = 0;
  std::string out;
  std::string format;
  std::string config;
  std::string restrict_to;
  int coarse = 0;
  double tol = 0.0;
  int threads = 0;
};

void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw InputError("config file must hold a JSON object");
  const auto vec_of = [](const json& v) {
    if (v.is_string()) return parse_vec2(v.get<std::string>());
    if (v.is_array() && v.size() == 2) return Vec2{v[0].get<double>(), v[1].get<double>()};
    throw InputError("vector entries must be \"x,y\" or [x, y]");
  };
  try {
    if (j.contains("t")) cfg.t = j["t"].get<double>();
    if (j.contains("gamma_deg")) cfg.gamma_deg = j["gamma_deg"].get<double>();
    if (j.contains("a")) cfg.a = vec_of(j["a"]);
    if (j.contains("b")) cfg.b = vec_of(j["b"]);
    if (j.contains("rho")) cfg.rho = j["rho"].get<double>();
    if (j.contains("samples")) cfg.samples = j["samples"].get<std::int64_t>();
    if (j.contains("seed")) {
      cfg.seed = j["seed"].is_string() ? parse_seed(j["seed"].get<std::string>())
                                       : j["seed"].get<std::uint64_t>();
    }
    if (j.contains("grid")) cfg.grid = j["grid"].get<int>();
    if (j.contains("resolution")) cfg.resolution = j["resolution"].get<int>();
    if (j.contains("out")) cfg.out_path = j["out"].get<std::string>();
    if (j.contains("format")) cfg.format = parse_format(j["format"].get<std::string>());
    if (j.contains("restrict")) cfg.restrict_to = j["restrict"].get<std::string>();
    if (j.contains("coarse")) cfg.coarse = j["coarse"].get<int>();
    if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
  } catch (const json::exception& e) {
    throw InputError(std::string("config file has a mistyped entry: ") + e.what());
  }
}

ReducedBasis lattice_of(const RunConfig& cfg) {
  const bool params = cfg.t.has_value() || cfg.gamma_deg.has_value();
  const bool vectors = cfg.a.has_value() || cfg.b.has_value();
  if (params == vectors) {
    throw InputError("give exactly one of (--t, --gamma-deg) or (--a, --b)");
  }
  try {
    if (params) {
      if (!cfg.t || !cfg.gamma_deg) throw InputError("--t and --gamma-deg must be given together");
      return lattice_from_params(*cfg.t, *cfg.gamma_deg * kDegToRad);
    }
    if (!cfg.a || !cfg.b) throw InputError("--a and --b must be given together");
    return reduce_basis({*cfg.a, *cfg.b});
  } catch (const std::domain_error& e) {
    throw InputError(e.what());
  } catch (const DegenerateBasisError& e) {
    throw InputError(e.what());
  }
}

void check_positive(bool ok, const char* what) {
  if (!ok) throw InputError(what);
}

// CSV/JSON emission helpers.

std::string join_csv(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) line += ',';
    line += cells[k];
  }
  return line + '\n';
}

json record_json(const optimizer::SweepRecord& r) {
  return {{"t", r.t},           {"gamma_rad", r.gamma}, {"rho_eq", r.rho_eq},
          {"phi1", r.phi1},     {"phi2", r.phi2},       {"phi3", r.phi3},
          {"case", r.case_index}, {"area", r.area},     {"probability", r.probability}};
}

std::string record_csv(const optimizer::SweepRecord& r) {
  return join_csv({fmt(r.t), fmt(r.gamma), fmt(r.rho_eq), fmt(r.phi1), fmt(r.phi2), fmt(r.phi3),
                   std::to_string(r.case_index), fmt(r.area), fmt(r.probability)});
}

void cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const ReducedBasis rb = lattice_of(cfg);
  const RadiiProfile r = radii(rb);
  const VoronoiCell cell = voronoi_cell(rb);
  const EquilibriumSolution sol = equilibrium_probability(rb);
  const double det = det_lattice(rb);

  if (cfg.format == Format::kJson) {
    json vertices = json::array();
    for (const Vec2& v : cell.vertices) vertices.push_back({v.x, v.y});
    json j = {{"a_x", rb.a().x},         {"a_y", rb.a().y},         {"b_x", rb.b().x},
              {"b_y", rb.b().y},         {"len_a", rb.lenA()},      {"len_b", rb.lenB()},
              {"len_c", rb.lenC()},      {"gamma_rad", rb.gamma()}, {"det", det},
              {"r_pack", r.r_pack},      {"r_cover", r.r_cover},    {"voronoi", vertices},
              {"rho_eq", sol.rho_eq},    {"phi1", sol.arcs.phi1},   {"phi2", sol.arcs.phi2},
              {"phi3", sol.arcs.phi3},   {"case", sol.case_index},  {"area", sol.area},
              {"probability", sol.probability}};
    out << j.dump(2) << '\n';
    return;
  }
  std::string voronoi;
  for (const Vec2& v : cell.vertices) {
    if (!voronoi.empty()) voronoi += ';';
    voronoi += fmt(v.x) + ' ' + fmt(v.y);
  }
  out << "a_x,a_y,b_x,b_y,len_a,len_b,len_c,gamma_rad,det,r_pack,r_cover,voronoi,rho_eq,phi1,"
         "phi2,phi3,case,area,probability\n";
  out << join_csv({fmt(rb.a().x), fmt(rb.a().y), fmt(rb.b().x), fmt(rb.b().y), fmt(rb.lenA()),
                   fmt(rb.lenB()), fmt(rb.lenC()), fmt(rb.gamma()), fmt(det), fmt(r.r_pack),
                   fmt(r.r_cover), voronoi, fmt(sol.rho_eq), fmt(sol.arcs.phi1),
                   fmt(sol.arcs.phi2), fmt(sol.arcs.phi3), std::to_string(sol.case_index),
                   fmt(sol.area), fmt(sol.probability)});
}

void cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  check_positive(cfg.grid >= 2, "--grid must be at least 2");
  const auto records = optimizer::sweep(cfg.grid, cfg.grid, cfg.threads);
  if (cfg.format == Format::kJson) {
    json arr = json::array();
    for (const auto& r : records) arr.push_back(record_json(r));
    out << arr.dump(2) << '\n';
    return;
  }
  out << kSweepHeader << '\n';
  for (const auto& r : records) out << record_csv(r);
}

void cmd_profile(const RunConfig& cfg, std::ostream& out) {
  check_positive(cfg.grid >= 2, "--grid must be at least 2");
  const auto points = area_profile(lattice_of(cfg), cfg.grid);
  if (cfg.format == Format::kJson) {
    json arr = json::array();
    for (const auto& p : points) {
      arr.push_back({{"rho", p.rho}, {"area", p.area}, {"probability", p.probability}});
    }
    out << arr.dump(2) << '\n';
    return;
  }
  out << "rho,area,probability\n";
  for (const auto& p : points) out << join_csv({fmt(p.rho), fmt(p.area), fmt(p.probability)});
}

void cmd_optimize(const RunConfig& cfg, std::ostream& out) {
  optimizer::Restriction restriction{};
  try {
    restriction = optimizer::parse_restriction(cfg.restrict_to);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  check_positive(cfg.coarse >= 2, "--coarse must be at least 2");
  check_positive(cfg.tol > 0.0, "--tol must be positive");
  const optimizer::Optimum opt = optimizer::global_optimize(cfg.coarse, cfg.tol, restriction);

  struct Row {
    std::string label;
    double t;
    double gamma;
    double rho;
    double probability;
  };
  const auto c1 = closed_forms::case1_optimum();
  const auto c2 = closed_forms::case2_optimum();
  const auto c3 = closed_forms::case3_optimum();
  const std::vector<Row> rows = {
      {"optimum", opt.record.t, opt.record.gamma, opt.record.rho_eq, opt.record.probability},
      {"case1", c1.t_opt, c1.gamma_opt, c1.rho_opt, c1.probability},
      {"case2", c2.t_opt, c2.gamma_opt, c2.rho_opt, c2.probability},
      {"case3", c3.t_opt, c3.gamma_opt, c3.rho_opt, c3.probability}};

  if (cfg.format == Format::kJson) {
    json j = {{"restrict", optimizer::to_string(restriction)},
              {"case", opt.record.case_index},
              {"refined", opt.refined},
              {"objective_gap_bound", opt.objective_gap_bound}};
    for (const Row& r : rows) {
      j[r.label] = {{"t", r.t}, {"gamma_deg", r.gamma / kDegToRad}, {"rho_eq", r.rho},
                    {"probability", r.probability}};
    }
    out << j.dump(2) << '\n';
    return;
  }
  out << "label,t,gamma_deg,rho_eq,probability\n";
  for (const Row& r : rows) {
    out << join_csv({r.label, fmt(r.t), fmt(r.gamma / kDegToRad), fmt(r.rho), fmt(r.probability)});
  }
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ReducedBasis rb = lattice_of(cfg);
  check_positive(cfg.samples >= 1, "--samples must be at least 1");
  check_positive(cfg.resolution >= 16, "--resolution must be at least 16");
  const RadiiProfile r = radii(rb);
  const double rho = cfg.rho.value_or(equilibrium_radius(rb));
  if (!(rho >= r.r_pack * (1.0 - kRelTol) && rho <= r.r_cover * (1.0 + kRelTol))) {
    throw InputError("--rho must lie in [r_pack, r_cover] = [" + fmt(r.r_pack) + ", " +
                     fmt(r.r_cover) + "] for an analytic comparison");
  }
  if (rho > segments_disjoint_limit(rb) * (1.0 + kRelTol)) {
    err << "warning: rho exceeds " << fmt(segments_disjoint_limit(rb))
        << ", where the disk segments start to overlap; the analytic area is not the exactly-one "
           "area there\n";
  }
  const double det = det_lattice(rb);
  const double area = area_exactly_one(rb, rho);
  const double analytic = area / det;
  const auto mc = oracle::mc_exactly_one(rb, rho, cfg.samples, cfg.seed, cfg.threads);
  const double grid_area = oracle::grid_area_exactly_one(rb, rho, cfg.resolution, cfg.threads);
  const double grid_bound = 5.0 * (r.r_cover * 4.0 / cfg.resolution) * r.r_cover;
  const bool mc_pass = std::abs(mc.mean - analytic) < 4.0 * mc.std_error ||
                       (mc.std_error == 0.0 && mc.mean == analytic);
  const bool grid_pass = std::abs(grid_area - area) < grid_bound;
  const bool pass = mc_pass && grid_pass;

  if (cfg.format == Format::kJson) {
    json j = {{"rho", rho},
              {"analytic_probability", analytic},
              {"mc_mean", mc.mean},
              {"mc_std_error", mc.std_error},
              {"mc_samples", mc.n_samples},
              {"seed", mc.seed},
              {"grid_probability", grid_area / det},
              {"grid_bound", grid_bound / det},
              {"mc_pass", mc_pass},
              {"grid_pass", grid_pass},
              {"result", pass ? "PASS" : "FAIL"}};
    out << j.dump(2) << '\n';
  } else {
    out << "rho,analytic_probability,mc_mean,mc_std_error,mc_samples,seed,grid_probability,"
           "grid_bound,mc_pass,grid_pass,result\n";
    out << join_csv({fmt(rho), fmt(analytic), fmt(mc.mean), fmt(mc.std_error),
                     std::to_string(mc.n_samples), std::to_string(mc.seed),
                     fmt(grid_area / det), fmt(grid_bound / det), mc_pass ? "PASS" : "FAIL",
                     grid_pass ? "PASS" : "FAIL", pass ? "PASS" : "FAIL"});
  }
  return pass ? kExitOk : kExitVerifyFail;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.command) {
    case Command::kAnalyze: cmd_analyze(cfg, out); return kExitOk;
    case Command::kSweep: cmd_sweep(cfg, out); return kExitOk;
    case Command::kOptimize: cmd_optimize(cfg, out); return kExitOk;
    case Command::kVerify: return cmd_verify(cfg, out, err);
    case Command::kProfile: cmd_profile(cfg, out); return kExitOk;
  }
  return kExitOk;
}

}  // namespace

std::uint64_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  std::uint64_t value = 0;
  try {
    const bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
    value = std::stoull(hex ? text.substr(2) : text, &used, hex ? 16 : 10);
    if (hex) used += 2;
  } catch (const std::exception&) {
    throw InputError("seed '" + text + "' is not a decimal or 0x-hex integer");
  }
  if (used != text.size() || text.empty() || text[0] == '-') {
    throw InputError("seed '" + text + "' is not a decimal or 0x-hex integer");
  }
  return value;
}

Vec2 parse_vec2(const std::string& text) {
  std::istringstream in(text);
  Vec2 v;
  char comma = 0;
  if (!(in >> v.x >> comma >> v.y) || comma != ',' || !(in >> std::ws).eof() || !v.finite()) {
    throw InputError("vector '" + text + "' must be given as x,y");
  }
  return v;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exactly-one coverage analysis of planar disk lattices", "exactone"};
  Flags f;
  app.add_option("command", f.command, "analyze | sweep | optimize | verify | profile")->required();
  auto* o_t = app.add_option("--t", f.t, "ratio |a|/|b| in (0, 1]");
  auto* o_gamma = app.add_option("--gamma-deg", f.gamma_deg, "angle between a and b in degrees");
  auto* o_a = app.add_option("--a", f.a, "first generator as x,y");
  auto* o_b = app.add_option("--b", f.b, "second generator as x,y");
  auto* o_rho = app.add_option("--rho", f.rho, "radius for verify (default: equilibrium)");
  auto* o_samples = app.add_option("--samples", f.samples, "Monte Carlo samples (default 1000000)");
  auto* o_seed = app.add_option("--seed", f.seed, "seed, decimal or 0x-hex (default 0x5EED)");
  auto* o_grid = app.add_option("--grid", f.grid, "sweep grid / profile points (default 101)");
  auto* o_res = app.add_option("--resolution", f.resolution, "quadrature resolution (default 1024)");
  auto* o_out = app.add_option("--out", f.out, "output path (default stdout)");
  auto* o_format = app.add_option("--format", f.format, "csv | json (default csv)");
  auto* o_config = app.add_option("--config", f.config, "JSON config file");
  auto* o_restrict = app.add_option("--restrict", f.restrict_to, "optimize domain: none | case1 | case2 | rect");
  auto* o_coarse = app.add_option("--coarse", f.coarse, "optimize coarse grid (default 64)");
  auto* o_tol = app.add_option("--tol", f.tol, "optimize refinement tolerance (default 1e-10)");
  auto* o_threads = app.add_option("--threads", f.threads, "worker threads (default 1)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }

  RunConfig cfg;
  try {
    cfg.command = parse_command(f.command);
    if (const char* env = std::getenv(kSeedEnv); env && *env) cfg.seed = parse_seed(env);
    if (o_config->count()) apply_config_file(f.config, cfg);
    if (o_t->count()) cfg.t = f.t;
    if (o_gamma->count()) cfg.gamma_deg = f.gamma_deg;
    if (o_a->count()) cfg.a = parse_vec2(f.a);
    if (o_b->count()) cfg.b = parse_vec2(f.b);
    if (o_rho->count()) cfg.rho = f.rho;
    if (o_samples->count()) cfg.samples = f.samples;
    if (o_seed->count()) cfg.seed = parse_seed(f.seed);
    if (o_grid->count()) cfg.grid = f.grid;
    if (o_res->count()) cfg.resolution = f.resolution;
    if (o_out->count()) cfg.out_path = f.out;
    if (o_format->count()) cfg.format = parse_format(f.format);
    if (o_restrict->count()) cfg.restrict_to = f.restrict_to;
    if (o_coarse->count()) cfg.coarse = f.coarse;
    if (o_tol->count()) cfg.tol = f.tol;
    if (o_threads->count()) cfg.threads = f.threads;
    check_positive(cfg.threads >= 1, "--threads must be at least 1");
    if (needs_lattice(cfg.command)) lattice_of(cfg);

    std::ostringstream buffer;
    const int code = dispatch(cfg, buffer, err);
    if (cfg.out_path) {
      std::ofstream file(*cfg.out_path, std::ios::binary);
      if (!file || !(file << buffer.str()) || !file.flush()) {
        throw IoError("cannot write output file '" + *cfg.out_path + "'");
      }
    } else {
      out << buffer.str();
    }
    return code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIoError;
  }
}

}  // namespace exactone::cli
