#include "degdiff/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "degdiff/continuum.hpp"
#include "degdiff/oracle.hpp"
#include "degdiff/solver.hpp"

namespace degdiff::cli {
namespace {

enum class Kind { number, integer, number_list, integer_list, text };

const std::map<std::string, Kind, std::less<>>& schema() {
  static const std::map<std::string, Kind, std::less<>> keys = {
      {"u_minus", Kind::number},         {"u_plus", Kind::number},
      {"breakpoints", Kind::number_list}, {"coefficients", Kind::number_list},
      {"grad_tol", Kind::number},        {"max_iters", Kind::integer},
      {"samples", Kind::integer},        {"eval_t", Kind::number_list},
      {"eval_x", Kind::number_list},     {"T", Kind::number},
      {"dx", Kind::number_list},         {"diffusion_table", Kind::text},
      {"diffusion_u", Kind::number_list}, {"diffusion_a", Kind::number_list},
      {"N", Kind::integer_list},
  };
  return keys;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(std::string_view s, std::size_t line, std::string_view key) {
  s = trim(s);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || !std::isfinite(value)) {
    throw ConfigError(line, "'" + std::string(key) + "': not a finite number: '" + std::string(s) + "'");
  }
  return value;
}

std::size_t parse_integer(std::string_view s, std::size_t line, std::string_view key) {
  s = trim(s);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError(line, "'" + std::string(key) + "': not a nonnegative integer: '" + std::string(s) + "'");
  }
  return value;
}

std::vector<std::string_view> split_list(std::string_view s, std::size_t line, std::string_view key) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw ConfigError(line, "'" + std::string(key) + "': expected a list in brackets");
  }
  s = trim(s.substr(1, s.size() - 2));
  std::vector<std::string_view> items;
  if (s.empty()) return items;
  while (true) {
    const auto comma = s.find(',');
    items.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s = s.substr(comma + 1);
  }
  return items;
}

void append_row(std::string& out, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out += ',';
    out += c;
    first = false;
  }
  out += '\n';
}

std::string num(double v) { return format_number(v); }
std::string num(std::size_t v) { return std::to_string(v); }

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return out;
}

Solution solve_config(const RunConfig& config) {
  return solve(*config.u_minus, *config.u_plus, config.partition(), config.solve_options);
}

void emit_solve(const RunConfig& config, const Solution& sol, RunOutput& out) {
  std::string boundaries = "slot,xi,classification,residual\n";
  std::size_t last_slot = static_cast<std::size_t>(-1);
  if (sol.optimization) {
    for (const JumpReport& r : jump_residuals(sol.problem, sol.layout, sol.profile)) {
      if (r.slot == last_slot) continue;
      last_slot = r.slot;
      append_row(boundaries, {num(r.slot + 1), num(r.xi), std::string(to_string(r.classification)), num(r.residual)});
    }
  }
  out.files["boundaries.csv"] = std::move(boundaries);

  std::string profile = "xi,v_left,v_right\n";
  const double r = 1.2 * plot_radius(sol);
  for (double xi : linspace(-r, r, config.samples)) {
    const Sided v = eval_selfsimilar(sol.profile, xi);
    append_row(profile, {num(xi), num(v.left), num(v.right)});
  }
  out.files["profile.csv"] = std::move(profile);

  std::string trace = "iteration,entropy,grad_norm,step_length,polish\n";
  if (sol.optimization) {
    const auto& tr = sol.optimization->trace;
    for (std::size_t i = 0; i < tr.size(); ++i) {
      append_row(trace, {num(i), num(tr[i].value), num(tr[i].grad_norm), num(tr[i].step_length),
                         tr[i].polish ? "1" : "0"});
    }
  }
  out.files["trace.csv"] = std::move(trace);

  std::ostringstream s;
  s << "solve: " << sol.layout.m << " free boundaries";
  if (sol.optimization) {
    s << ", entropy " << num(sol.optimization->entropy) << ", gradient " << num(sol.optimization->grad_norm)
      << " after " << sol.optimization->iterations << " iterations";
  }
  s << '\n';
  out.summary = s.str();
}

void emit_evaluate(const RunConfig& config, const Solution& sol, RunOutput& out) {
  std::string csv = "t,x,xi,u_left,u_right\n";
  for (double t : config.eval_t) {
    for (double x : config.eval_x) {
      const Sided v = eval_solution(sol.profile, t, x);
      append_row(csv, {num(t), num(x), num(x / std::sqrt(t)), num(v.left), num(v.right)});
    }
  }
  out.files["evaluation.csv"] = std::move(csv);
  out.summary = "evaluate: " + std::to_string(config.eval_t.size() * config.eval_x.size()) + " samples\n";
}

void emit_validate(const RunConfig& config, const Solution& sol, unsigned threads, RunOutput& out) {
  std::string csv = "dx,cells,steps,l1,l1_relative,linf_collar,ratio\n";
  double previous = std::nan("");
  std::ostringstream s;
  for (double dx : config.dx) {
    oracle::FDOptions opts;
    opts.T = config.T;
    opts.dx = dx;
    opts.threads = threads;
    const oracle::FDGrid grid = oracle::fd_solve(sol.problem, opts);
    const oracle::ProfileComparison cmp = oracle::compare_profiles(grid, sol.profile, sol.problem);
    const std::string ratio = std::isnan(previous) ? "" : num(previous / cmp.l1);
    append_row(csv, {num(dx), num(grid.u.size()), num(grid.steps), num(cmp.l1), num(cmp.l1_relative),
                     num(cmp.linf_collar), ratio});
    s << "validate: dx " << num(dx) << " L1 " << num(cmp.l1) << " (relative " << num(cmp.l1_relative) << ")\n";
    previous = cmp.l1;
  }
  out.files["validation.csv"] = std::move(csv);
  out.summary = s.str();
}

void emit_continuum(const RunConfig& config, RunOutput& out) {
  std::vector<std::pair<double, double>> samples;
  if (!config.diffusion_table.empty()) {
    samples = read_diffusion_table(config.diffusion_table);
  } else {
    for (std::size_t i = 0; i < config.diffusion_u.size(); ++i) {
      samples.emplace_back(config.diffusion_u[i], config.diffusion_a[i]);
    }
  }
  const continuum::DiffusionFunction f(std::move(samples));
  const continuum::ConvergenceStudy study = continuum::convergence_study(f, config.N);

  std::string table = "N,converged,shifted_entropy,distance_to_finest,distance_to_previous\n";
  std::string profiles = "N,u,xi\n";
  bool all_converged = true;
  for (const auto& row : study.rows) {
    all_converged = all_converged && row.converged;
    append_row(table, {num(row.cells), row.converged ? "1" : "0", num(row.shifted_entropy),
                       num(row.distance_to_finest),
                       std::isnan(row.distance_to_previous) ? "" : num(row.distance_to_previous)});
    for (std::size_t j = 0; j < row.inverse.grid.size(); ++j) {
      append_row(profiles, {num(row.cells), num(row.inverse.grid[j]), num(row.inverse.xi[j])});
    }
  }
  out.files["convergence.csv"] = std::move(table);
  out.files["continuum_profiles.csv"] = std::move(profiles);
  out.summary = "continuum: " + std::to_string(study.rows.size()) + " refinement levels\n";
  if (!all_converged) {
    out.status = 1;
    out.summary += "error: entropy minimization did not converge for every N\n";
  }
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  if (name == "solve") return Command::solve;
  if (name == "evaluate") return Command::evaluate;
  if (name == "validate") return Command::validate;
  if (name == "continuum") return Command::continuum;
  return std::nullopt;
}

std::string_view to_string(Command command) {
  switch (command) {
    case Command::solve: return "solve";
    case Command::evaluate: return "evaluate";
    case Command::validate: return "validate";
    case Command::continuum: return "continuum";
  }
  return "?";
}

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

PhasePartition RunConfig::partition() const {
  PhasePartition p;
  p.breakpoints.push_back(std::min(*u_minus, *u_plus));
  p.breakpoints.insert(p.breakpoints.end(), breakpoints.begin(), breakpoints.end());
  p.breakpoints.push_back(std::max(*u_minus, *u_plus));
  p.coefficients = coefficients;
  return p;
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = schema().find(key);
    if (it == schema().end()) throw ConfigError(line_no, "unknown key '" + key + "'");
    if (config.has(key)) {
      throw ConfigError(line_no, "duplicate key '" + key + "' (first set on line " +
                                     std::to_string(config.keys.at(key)) + ")");
    }
    config.keys.emplace(key, line_no);

    auto numbers = [&] {
      std::vector<double> out;
      for (auto item : split_list(value, line_no, key)) out.push_back(parse_number(item, line_no, key));
      return out;
    };
    if (key == "u_minus") config.u_minus = parse_number(value, line_no, key);
    else if (key == "u_plus") config.u_plus = parse_number(value, line_no, key);
    else if (key == "breakpoints") config.breakpoints = numbers();
    else if (key == "coefficients") config.coefficients = numbers();
    else if (key == "grad_tol") config.solve_options.grad_tol = parse_number(value, line_no, key);
    else if (key == "max_iters") config.solve_options.max_iters = static_cast<int>(parse_integer(value, line_no, key));
    else if (key == "samples") config.samples = parse_integer(value, line_no, key);
    else if (key == "eval_t") config.eval_t = numbers();
    else if (key == "eval_x") config.eval_x = numbers();
    else if (key == "T") config.T = parse_number(value, line_no, key);
    else if (key == "dx") config.dx = numbers();
    else if (key == "diffusion_table") config.diffusion_table = std::string(value);
    else if (key == "diffusion_u") config.diffusion_u = numbers();
    else if (key == "diffusion_a") config.diffusion_a = numbers();
    else if (key == "N") {
      config.N.clear();
      for (auto item : split_list(value, line_no, key)) config.N.push_back(parse_integer(item, line_no, key));
    }

    if ((key == "coefficients" || key == "breakpoints") && config.has("coefficients") &&
        config.has("breakpoints") && config.coefficients.size() != config.breakpoints.size() + 1) {
      throw ConfigError(line_no, "coefficients has " + std::to_string(config.coefficients.size()) +
                                     " entries but breakpoints has " + std::to_string(config.breakpoints.size()) +
                                     " (expected " + std::to_string(config.breakpoints.size() + 1) +
                                     " coefficients)");
    }
    if ((key == "diffusion_u" || key == "diffusion_a") && config.has("diffusion_u") &&
        config.has("diffusion_a") && config.diffusion_u.size() != config.diffusion_a.size()) {
      throw ConfigError(line_no, "diffusion_u has " + std::to_string(config.diffusion_u.size()) +
                                     " entries but diffusion_a has " + std::to_string(config.diffusion_a.size()));
    }
  }
  if (config.has("coefficients") && !config.has("breakpoints") && config.coefficients.size() != 1) {
    throw ConfigError(config.keys.at("coefficients"),
                      "coefficients has " + std::to_string(config.coefficients.size()) +
                          " entries but breakpoints has 0 (expected 1 coefficients)");
  }
  if (config.has("samples") && config.samples < 2) throw ConfigError(config.keys.at("samples"), "samples must be >= 2");
  return config;
}

void check_command(const RunConfig& config) {
  auto require = [&](const char* key) {
    if (!config.has(key)) {
      throw ConfigError(0, "missing key '" + std::string(key) + "' for command " + std::string(to_string(config.command)));
    }
  };
  if (config.command == Command::continuum) {
    require("N");
    if (!config.has("diffusion_table")) {
      require("diffusion_u");
      require("diffusion_a");
    }
    return;
  }
  require("u_minus");
  require("u_plus");
  require("coefficients");
  if (config.command == Command::evaluate) {
    require("eval_t");
    require("eval_x");
  }
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::vector<std::pair<double, double>> read_diffusion_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open diffusion table '" + path + "'");
  std::vector<std::pair<double, double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto comma = view.find(',');
    if (comma == std::string_view::npos) throw ConfigError(line_no, path + ": expected 'u,a'");
    if (rows.empty() && line_no == 1 && !std::isdigit(static_cast<unsigned char>(view.front())) &&
        view.front() != '-' && view.front() != '.' && view.front() != '+') {
      continue;  // header
    }
    rows.emplace_back(parse_number(view.substr(0, comma), line_no, "u"),
                      parse_number(view.substr(comma + 1), line_no, "a"));
  }
  return rows;
}

RunOutput execute(const RunConfig& config, unsigned threads) {
  check_command(config);
  RunOutput out;
  if (config.command == Command::continuum) {
    emit_continuum(config, out);
    return out;
  }
  if (*config.u_minus != *config.u_plus) {
    if (auto v = validate(config.partition())) {
      out.status = 1;
      out.summary = "error: invalid partition: " + v->message + "\n";
      return out;
    }
  }
  const Solution sol = solve_config(config);
  if (!sol.converged()) {
    out.status = 1;
    out.summary = "error: entropy minimization did not converge (gradient " +
                  format_number(sol.optimization->grad_norm) + ")\n";
    return out;
  }
  switch (config.command) {
    case Command::solve: emit_solve(config, sol, out); break;
    case Command::evaluate: emit_evaluate(config, sol, out); break;
    case Command::validate: emit_validate(config, sol, threads, out); break;
    case Command::continuum: break;
  }
  return out;
}

int run(const RunConfig& config, const std::string& prefix, std::ostream& log, unsigned threads) {
  RunOutput out;
  try {
    out = execute(config, threads);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return 1;
  }
  log << out.summary;
  if (out.status != 0) return out.status;

  std::vector<std::filesystem::path> written;
  for (const auto& [name, content] : out.files) {
    const std::filesystem::path path = prefix + name;
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (file) written.push_back(path);
    file << content;
    file.close();
    if (!file) {
      log << "error: cannot write " << path.string() << '\n';
      for (const auto& p : written) std::filesystem::remove(p);
      return 1;
    }
  }
  return 0;
}

}  // namespace degdiff::cli
