#include "detfield/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "detfield/flows.hpp"
#include "detfield/fredholm.hpp"
#include "detfield/glsolver.hpp"
#include "detfield/gramian.hpp"
#include "detfield/kernels.hpp"
#include "detfield/verify.hpp"

namespace detfield::cli {
namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

[[noreturn]] void usage(const std::string& msg) { throw UsageError(msg); }

double as_number(const json& j, const std::string& what) {
  if (!j.is_number()) usage(what + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) usage(what + ": non-finite value");
  return v;
}

Complex as_complex(const json& j, const std::string& what) {
  if (j.is_number()) return as_number(j, what);
  if (j.is_array() && j.size() == 2) return {as_number(j[0], what), as_number(j[1], what)};
  usage(what + ": expected a number or [re, im]");
}

Matrix as_matrix(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) usage(what + ": expected a non-empty array");
  // A flat list of entries is a column (B) or row (C) depending on the caller.
  const bool nested = j[0].is_array() && !(j[0].size() == 2 && j[0][0].is_number());
  if (!nested) {
    Matrix m(static_cast<Index>(j.size()), 1);
    for (std::size_t i = 0; i < j.size(); ++i) m(static_cast<Index>(i), 0) = as_complex(j[i], what);
    return m;
  }
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) usage(what + ": ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Index>(i), static_cast<Index>(k)) = as_complex(j[i][k], what);
    }
  }
  return m;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
  for (const auto& item : obj.items()) {
    bool found = false;
    for (const char* k : known) found = found || item.key() == k;
    if (!found) usage(where + ": unknown field '" + item.key() + "'");
  }
}

SystemSpec system_from_json(const json& j) {
  if (!j.is_object()) usage("system: expected an object");
  SystemSpec spec;
  try {
    if (j.contains("bound_states")) {
      reject_unknown(j, {"bound_states"}, "system");
      const json& list = j["bound_states"];
      if (!list.is_array()) usage("system.bound_states: expected an array");
      std::vector<BoundState> states;
      for (const json& s : list) {
        if (!s.is_object() || !s.contains("kappa") || !s.contains("c")) {
          usage("system.bound_states: each entry needs kappa and c");
        }
        reject_unknown(s, {"kappa", "c"}, "system.bound_states");
        states.push_back({as_number(s["kappa"], "kappa"), as_number(s["c"], "c")});
      }
      spec.bound_states = ScatteringData(std::move(states));
      return spec;
    }
    if (!j.contains("A") || !j.contains("B") || !j.contains("C")) {
      usage("system: need either bound_states or A, B, C");
    }
    reject_unknown(j, {"A", "B", "C"}, "system");
    const Matrix a = as_matrix(j["A"], "system.A");
    const Matrix b = as_matrix(j["B"], "system.B");
    Matrix c = as_matrix(j["C"], "system.C");
    if (c.cols() == 1 && c.rows() > 1) c.transposeInPlace();
    spec.matrices = StateSpaceSystem(a, b, c);
  } catch (const InvalidArgument& e) {
    usage(std::string("system: ") + e.what());
  }
  return spec;
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    usage(what + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) usage("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FieldCase parse_case(const std::string& s) {
  if (s == "self_adjoint") return FieldCase::self_adjoint;
  if (s == "real_symbol") return FieldCase::real_symbol;
  if (s == "general") return FieldCase::general;
  usage("params.case: expected self_adjoint, real_symbol or general");
}

Params parse_params(const json& j) {
  Params p;
  if (j.is_null()) return p;
  if (!j.is_object()) usage("params: expected an object");
  reject_unknown(j, {"lambda", "z", "t", "case", "kind", "method", "N", "L", "seed"}, "params");
  if (j.contains("lambda")) p.lambda = as_complex(j["lambda"], "params.lambda");
  if (j.contains("z")) p.z = as_complex(j["z"], "params.z");
  if (j.contains("t")) {
    p.times.clear();
    if (j["t"].is_array()) {
      for (const json& t : j["t"]) p.times.push_back(as_number(t, "params.t"));
    } else {
      p.times.push_back(as_number(j["t"], "params.t"));
    }
    if (p.times.empty()) usage("params.t: empty list");
  }
  if (j.contains("case")) {
    if (!j["case"].is_string()) usage("params.case: expected a string");
    p.field_case = parse_case(j["case"].get<std::string>());
  }
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) usage("params.kind: expected a string");
    const std::string k = j["kind"].get<std::string>();
    if (k == "scalar") {
      p.zs = false;
    } else if (k == "gramian") {
      p.det_kind = DetKind::gramian;
    } else if (k == "hankel") {
      p.det_kind = DetKind::hankel;
    } else if (k == "square") {
      p.det_kind = DetKind::square;
    } else if (k == "zs") {
      p.det_kind = DetKind::zs;
      p.zs = true;
    } else {
      usage("params.kind: expected scalar, gramian, hankel, square or zs");
    }
  }
  if (j.contains("method")) {
    const std::string m = j["method"].is_string() ? j["method"].get<std::string>() : "";
    if (m != "closed" && m != "nystrom") usage("params.method: expected closed or nystrom");
    p.nystrom = m == "nystrom";
  }
  if (j.contains("N")) {
    if (!j["N"].is_number_unsigned() || j["N"].get<std::size_t>() == 0) {
      usage("params.N: expected a positive integer");
    }
    p.nodes = j["N"].get<std::size_t>();
  }
  if (j.contains("L")) {
    p.length = as_number(j["L"], "params.L");
    if (p.length < 0.0) usage("params.L: must be nonnegative");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) usage("params.seed: expected a nonnegative integer");
    p.seed = j["seed"].get<std::uint64_t>();
  }
  return p;
}

bool needs_system(Command c) { return c != Command::tw2 && c != Command::verify; }

Complex det_closed(const StateSpaceSystem& sys, double x, const Params& p) {
  switch (p.det_kind) {
    case DetKind::gramian:
      return det_gramian(sys, x, p.lambda);
    case DetKind::hankel:
      return det_hankel_via_R(sys, x, p.lambda);
    case DetKind::square:
      return det_square(sys, x, p.lambda);
    case DetKind::zs:
      return det_zs(sys, x, p.z);
  }
  return 0.0;
}

Complex det_nystrom(const StateSpaceSystem& sys, double x, const Params& p) {
  if (p.det_kind == DetKind::gramian) {
    return det_shifted(nystrom_gramian_kernel(sys, x, p.nodes, p.length).M, 1.0 - p.lambda);
  }
  const Matrix m = nystrom_hankel(sys, x, p.nodes, p.length).M;
  switch (p.det_kind) {
    case DetKind::hankel:
      return det_shifted(m, 1.0 - p.lambda);
    case DetKind::square:
      return det_shifted(m * m, 1.0 - p.lambda * p.lambda);
    default:
      return det_shifted(m * m.adjoint(), p.z);
  }
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  static const std::pair<const char*, Command> names[] = {
      {"phi", Command::phi},       {"gramian", Command::gramian}, {"det", Command::det},
      {"gap", Command::gap},       {"counts", Command::counts},   {"recover", Command::recover},
      {"evolve", Command::evolve}, {"tw2", Command::tw2},         {"verify", Command::verify}};
  for (const auto& [n, c] : names) {
    if (name == n) return c;
  }
  return std::nullopt;
}

std::string command_name(Command command) {
  switch (command) {
    case Command::phi: return "phi";
    case Command::gramian: return "gramian";
    case Command::det: return "det";
    case Command::gap: return "gap";
    case Command::counts: return "counts";
    case Command::recover: return "recover";
    case Command::evolve: return "evolve";
    case Command::tw2: return "tw2";
    case Command::verify: return "verify";
  }
  return "";
}

std::vector<double> Grid::points() const {
  std::vector<double> out(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    out[i] = i == steps ? stop : start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps);
  }
  return out;
}

StateSpaceSystem SystemSpec::system() const {
  if (matrices) return *matrices;
  if (bound_states) return realize_from_bound_states(*bound_states);
  throw InvalidArgument("no system given");
}

SystemSpec parse_system(const std::string& text) { return system_from_json(parse_json(text, "system")); }

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  const json j = parse_json(text, "config");
  if (!j.is_object()) usage("config: expected a JSON object");
  reject_unknown(j, {"version", "command", "system", "grid", "params", "output", "format"}, "config");
  if (!j.contains("version") || j["version"] != 1) usage("config: \"version\": 1 is required");

  RunConfig cfg;
  if (j.contains("command")) {
    if (!j["command"].is_string()) usage("config.command: expected a string");
    const auto c = parse_command(j["command"].get<std::string>());
    if (!c) usage("config.command: unknown command '" + j["command"].get<std::string>() + "'");
    cfg.command = *c;
    cfg.command_set = true;
  }
  if (j.contains("system")) {
    const json& s = j["system"];
    if (s.is_string()) {
      std::filesystem::path p = s.get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      cfg.system = parse_system(read_file(p));
    } else {
      cfg.system = system_from_json(s);
    }
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    if (!g.is_object() || !g.contains("start") || !g.contains("stop") || !g.contains("steps")) {
      usage("grid: need start, stop and steps");
    }
    reject_unknown(g, {"start", "stop", "steps"}, "grid");
    cfg.grid.start = as_number(g["start"], "grid.start");
    cfg.grid.stop = as_number(g["stop"], "grid.stop");
    if (!g["steps"].is_number_unsigned() || g["steps"].get<std::size_t>() < 1) {
      usage("grid.steps: expected an integer >= 1");
    }
    cfg.grid.steps = g["steps"].get<std::size_t>();
    if (!(cfg.grid.start < cfg.grid.stop)) usage("grid: start must be below stop");
  }
  cfg.params = parse_params(j.contains("params") ? j["params"] : json());
  if (j.contains("output")) {
    if (!j["output"].is_string()) usage("config.output: expected a string");
    cfg.output = j["output"].get<std::string>();
  }
  if (j.contains("format")) {
    const std::string f = j["format"].is_string() ? j["format"].get<std::string>() : "";
    if (f != "csv" && f != "json") usage("config.format: expected csv or json");
    cfg.format = f == "json" ? OutputFormat::json : OutputFormat::csv;
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path), path.parent_path());
}

Table run(const RunConfig& config) {
  Table t;
  const Params& p = config.params;
  if (needs_system(config.command) && !config.system) {
    usage(command_name(config.command) + ": a system is required");
  }
  const std::vector<double> xs = config.grid.points();
  auto num = [](double v) { return Cell(v); };

  switch (config.command) {
    case Command::phi: {
      const StateSpaceSystem sys = config.system->system();
      t.columns = {"x", "phi_re", "phi_im"};
      for (double x : xs) {
        const Complex v = phi(sys, x);
        t.rows.push_back({num(x), num(v.real()), num(v.imag())});
      }
      break;
    }
    case Command::gramian: {
      const StateSpaceSystem sys = config.system->system();
      t.columns = {"x", "trace_Q", "trace_L", "trace_R", "norm_Q", "norm_L", "lyapunov_residual"};
      for (double x : xs) {
        const GramianBundle g = gramians(sys, x);
        t.rows.push_back({num(x), num(g.Q.trace().real()), num(g.L.trace().real()),
                          num(g.R.trace().real()), num(operator_norm(g.Q)), num(operator_norm(g.L)),
                          num(lyapunov_residual(sys, x, g.Q, g.L))});
      }
      break;
    }
    case Command::det: {
      const StateSpaceSystem sys = config.system->system();
      t.columns = {"x", "det_re", "det_im"};
      for (double x : xs) {
        const Complex d = p.nystrom ? det_nystrom(sys, x, p) : det_closed(sys, x, p);
        t.rows.push_back({num(x), num(d.real()), num(d.imag())});
      }
      break;
    }
    case Command::gap: {
      const StateSpaceSystem sys = config.system->system();
      t.columns = {"x", "F", "dlogF"};
      for (double x : xs) t.rows.push_back({num(x), num(det_gap(sys, x)), num(density_ratio(sys, x))});
      break;
    }
    case Command::counts: {
      const StateSpaceSystem sys = config.system->system();
      t.columns = {"x", "mean", "sample"};
      for (Index n = 0; n <= sys.dim(); ++n) t.columns.push_back("p" + std::to_string(n));
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const CountDistribution cd = count_distribution(spectrum_for_case(sys, xs[i], p.field_case));
        std::vector<Cell> row{num(xs[i]), num(cd.mean()),
                              num(static_cast<double>(sample_count(cd, p.seed + i)))};
        for (std::size_t n = 0; n <= static_cast<std::size_t>(sys.dim()); ++n) {
          row.push_back(num(n < cd.probabilities().size() ? cd.probabilities()[n] : 0.0));
        }
        t.rows.push_back(std::move(row));
      }
      break;
    }
    case Command::recover: {
      const StateSpaceSystem sys = config.system->system();
      if (p.zs) {
        const GLSolution sol(sys, p.lambda, GLKind::zs);
        t.columns = {"x", "V_re", "V_im", "q_re", "q_im", "q_abs_sq"};
        for (double x : xs) {
          const Complex v = zs_V(sol, x, x);
          const Complex q = zs_potential(sol, x);
          t.rows.push_back({num(x), num(v.real()), num(v.imag()), num(q.real()), num(q.imag()),
                            num(nls_potential_sq(sol, x))});
        }
      } else {
        const GLSolution sol(sys, p.lambda, GLKind::scalar);
        t.columns = {"x", "T_re", "T_im", "q"};
        for (double x : xs) {
          const Complex v = gl_T(sol, x, x);
          t.rows.push_back({num(x), num(v.real()), num(v.imag()), num(potential_q_analytic(sol, x))});
        }
      }
      break;
    }
    case Command::evolve: {
      if (!config.system->bound_states) usage("evolve: the system must be given by bound_states");
      t.columns = {"t", "x", "u"};
      for (double time : p.times) {
        for (double x : xs) t.rows.push_back({num(time), num(x), num(kdv_potential(*config.system->bound_states, x, time))});
      }
      break;
    }
    case Command::tw2: {
      t.columns = {"s", "F2"};
      for (double s : xs) t.rows.push_back({num(s), num(tw_gap(s, std::max<std::size_t>(p.nodes, 100)))});
      break;
    }
    case Command::verify: {
      const VerifyReport report = run_verification();
      t.columns = {"identity", "status", "error", "tolerance", "detail"};
      for (const VerifyRow& r : report.rows) {
        t.rows.push_back({r.name, std::string(r.passed ? "PASS" : "FAIL"), num(r.error),
                          num(r.tolerance), r.detail});
      }
      t.ok = report.all_passed();
      break;
    }
  }
  return t;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

void write_table(std::ostream& out, const Table& table, OutputFormat format) {
  if (format == OutputFormat::csv) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << (i ? "," : "") << csv_text(table.columns[i]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << (i ? "," : "");
        if (const double* d = std::get_if<double>(&row[i])) {
          out << format_number(*d);
        } else {
          out << csv_text(std::get<std::string>(row[i]));
        }
      }
      out << '\n';
    }
    return;
  }
  // JSON written by hand so that numbers keep 17 significant digits.
  out << "{\"columns\":" << json(table.columns).dump() << ",\"rows\":[";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << (r ? ",\n" : "\n") << '[';
    const auto& row = table.rows[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "");
      if (const double* d = std::get_if<double>(&row[i])) {
        out << (std::isfinite(*d) ? format_number(*d) : "null");
      } else {
        out << json(std::get<std::string>(row[i])).dump();
      }
    }
    out << ']';
  }
  out << "\n],\"ok\":" << (table.ok ? "true" : "false") << "}\n";
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Determinant formulas for linear systems, integrable flows and point fields", "detfield"};
  std::string command;
  std::string config_path;
  std::string out_path;
  std::string format;
  app.add_option("command", command, "phi, gramian, det, gap, counts, recover, evolve, tw2 or verify")
      ->required();
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_path, "Output file (default: standard output)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    const auto cmd = parse_command(command);
    if (!cmd) usage("unknown command '" + command + "'");
    RunConfig cfg;
    if (!config_path.empty()) {
      cfg = load_config(config_path);
      if (cfg.command_set && cfg.command != *cmd) {
        usage("command '" + command + "' does not match config command '" + command_name(cfg.command) + "'");
      }
    } else if (*cmd != Command::verify && *cmd != Command::tw2) {
      usage("--config is required for " + command);
    }
    if (config_path.empty() && *cmd == Command::tw2) {
      cfg.grid = {-4.0, 2.0, 6};
    }
    cfg.command = *cmd;
    if (!out_path.empty()) cfg.output = out_path;
    if (!format.empty()) cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv;

    const Table table = run(cfg);
    if (cfg.output.empty()) {
      write_table(out, table, cfg.format);
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) usage("cannot write " + cfg.output);
      write_table(file, table, cfg.format);
    }
    if (!table.ok) {
      err << "verify: at least one identity failed\n";
      return kExitVerifyFailed;
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const HypothesisViolation& e) {
    err << "domain error: hypothesis violated: " << e.what() << '\n';
    return kExitDomain;
  } catch (const Error& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace detfield::cli
