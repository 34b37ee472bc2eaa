#include "degdiff/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "degdiff/entropy.hpp"
#include "degdiff/solver.hpp"
#include "degdiff/special_functions.hpp"

namespace degdiff::continuum {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Cell {
  double h;
  double a;
  double slope;
  double mid_xi;
};

Cell cell(const DiffusionFunction& f, const InverseProfile& p, std::size_t i) {
  const double h = p.grid[i + 1] - p.grid[i];
  return {h, f(0.5 * (p.grid[i] + p.grid[i + 1])), (p.xi[i + 1] - p.xi[i]) / h,
          0.5 * (p.xi[i] + p.xi[i + 1])};
}

void require_increasing(const InverseProfile& p) {
  if (p.grid.size() != p.xi.size() || p.grid.size() < 2) {
    throw std::invalid_argument("inverse profile: grid and xi sizes differ or fewer than two nodes");
  }
  for (std::size_t i = 1; i < p.xi.size(); ++i) {
    if (!(p.xi[i] > p.xi[i - 1]) || !std::isfinite(p.xi[i])) {
      throw std::domain_error("inverse profile must be strictly increasing");
    }
  }
}

double sup_distance(std::span<const double> x, std::span<const double> y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::isfinite(x[i]) && std::isfinite(y[i])) d = std::max(d, std::abs(x[i] - y[i]));
  }
  return d;
}

struct FunctionalObjective {
  const DiffusionFunction& f;
  const std::vector<double>& grid;

  InverseProfile wrap(std::span<const double> x) const { return {grid, {x.begin(), x.end()}}; }
  bool feasible(std::span<const double> x) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!std::isfinite(x[i]) || (i > 0 && !(x[i] > x[i - 1]))) return false;
    }
    return true;
  }
  double value(std::span<const double> x) const { return functional_J(f, wrap(x)); }
  std::vector<double> gradient(std::span<const double> x) const {
    return functional_J_gradient(f, wrap(x));
  }
  SymTridiagonal hessian(std::span<const double> x) const { return functional_J_hessian(f, wrap(x)); }
};

}  // namespace

DiffusionFunction::DiffusionFunction(std::vector<std::pair<double, double>> samples)
    : samples_(std::move(samples)) {
  if (samples_.size() < 2) throw std::invalid_argument("diffusion table needs at least two samples");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto [u, a] = samples_[i];
    if (!std::isfinite(u) || !std::isfinite(a)) throw std::invalid_argument("diffusion table: non-finite entry");
    if (a < 0.0) throw std::invalid_argument("diffusion table: negative a at row " + std::to_string(i));
    if (i > 0 && !(u > samples_[i - 1].first)) {
      throw std::invalid_argument("diffusion table: u not increasing at row " + std::to_string(i));
    }
  }
}

DiffusionFunction DiffusionFunction::from_function(const std::function<double(double)>& a, double u_lo,
                                                   double u_hi, std::size_t intervals) {
  std::vector<std::pair<double, double>> samples;
  samples.reserve(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double u = i == intervals ? u_hi
                                    : u_lo + (u_hi - u_lo) * static_cast<double>(i) / static_cast<double>(intervals);
    samples.emplace_back(u, a(u));
  }
  return DiffusionFunction(std::move(samples));
}

double DiffusionFunction::operator()(double u) const {
  if (u <= samples_.front().first) return samples_.front().second;
  if (u >= samples_.back().first) return samples_.back().second;
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), u,
                                   [](double v, const auto& s) { return v < s.first; });
  const auto& [u1, a1] = *it;
  const auto& [u0, a0] = *(it - 1);
  const double w = (u - u0) / (u1 - u0);
  return a0 + w * (a1 - a0);
}

Discretization discretize(const DiffusionFunction& f, std::size_t cells) {
  if (cells == 0) throw std::invalid_argument("discretize: requires at least one cell");
  const double lo = f.lower();
  const double hi = f.upper();
  Discretization out;
  auto& bp = out.partition.breakpoints;
  auto& co = out.partition.coefficients;
  bp.push_back(lo);
  for (std::size_t c = 0; c < cells; ++c) {
    const double left = lo + (hi - lo) * static_cast<double>(c) / static_cast<double>(cells);
    const double right = c + 1 == cells ? hi
                                        : lo + (hi - lo) * static_cast<double>(c + 1) / static_cast<double>(cells);
    double a = f(0.5 * (left + right));
    if (!co.empty() && a == co.back()) {
      if (a == 0.0) {
        // Absorb into the previous zero cell.
        bp.back() = right;
        ++out.merged_zero_cells;
        continue;
      }
      a *= 1.0 + 1e-12;
      out.jittered.push_back(co.size());
    }
    co.push_back(a);
    bp.push_back(right);
  }
  return out;
}

double functional_J(const DiffusionFunction& f, const InverseProfile& profile) {
  require_increasing(profile);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < profile.grid.size(); ++i) {
    const Cell c = cell(f, profile, i);
    const double log_term = c.a > 0.0 ? -c.a * c.a * std::log(c.slope) : 0.0;
    total += c.h * (log_term + c.mid_xi * c.mid_xi / 4.0);
  }
  return total;
}

double functional_J_unsimplified(const DiffusionFunction& f, const InverseProfile& profile) {
  require_increasing(profile);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < profile.grid.size(); ++i) {
    const Cell c = cell(f, profile, i);
    if (c.a > 0.0) {
      total -= c.h * c.a * c.a * (sf::log_F_prime(c.mid_xi / c.a) + std::log(c.slope));
    } else {
      total += c.h * c.mid_xi * c.mid_xi / 4.0;
    }
  }
  return total;
}

std::vector<double> functional_J_gradient(const DiffusionFunction& f, const InverseProfile& profile) {
  require_increasing(profile);
  std::vector<double> grad(profile.xi.size(), 0.0);
  for (std::size_t i = 0; i + 1 < profile.grid.size(); ++i) {
    const Cell c = cell(f, profile, i);
    const double barrier = c.a > 0.0 ? c.a * c.a / c.slope : 0.0;
    const double quad = c.h * c.mid_xi / 4.0;
    grad[i] += barrier + quad;
    grad[i + 1] += -barrier + quad;
  }
  return grad;
}

SymTridiagonal functional_J_hessian(const DiffusionFunction& f, const InverseProfile& profile) {
  require_increasing(profile);
  SymTridiagonal h(profile.xi.size());
  for (std::size_t i = 0; i + 1 < profile.grid.size(); ++i) {
    const Cell c = cell(f, profile, i);
    const double curv = c.a > 0.0 ? c.a * c.a / (c.slope * c.slope * c.h) : 0.0;
    h.diag[i] += curv + c.h / 8.0;
    h.diag[i + 1] += curv + c.h / 8.0;
    h.off[i] += -curv + c.h / 8.0;
  }
  return h;
}

MinimizedJ minimize_functional(const DiffusionFunction& f, std::size_t cells, const SolveOptions& options) {
  if (cells < 1) throw std::invalid_argument("minimize_functional: requires at least one cell");
  const double lo = f.lower();
  const double hi = f.upper();
  std::vector<double> grid(cells + 1);
  double a_max = 0.0;
  for (std::size_t i = 0; i <= cells; ++i) {
    grid[i] = i == cells ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(cells);
  }
  for (std::size_t i = 0; i < cells; ++i) {
    const double a = f(0.5 * (grid[i] + grid[i + 1]));
    if (!(a > 0.0)) throw std::invalid_argument("minimize_functional: zero diffusion on a cell");
    a_max = std::max(a_max, a);
  }
  std::vector<double> start(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) {
    start[i] = a_max * sf::F_inverse((static_cast<double>(i) + 0.5) / static_cast<double>(cells + 1));
  }
  const FunctionalObjective objective{f, grid};
  NewtonOutcome run = damped_newton(objective, std::move(start), options);
  MinimizedJ out;
  out.profile = {grid, std::move(run.x)};
  out.value = run.value;
  out.converged = run.converged;
  out.iterations = run.iterations;
  return out;
}

std::vector<std::optional<double>> euler_lagrange_residual(const DiffusionFunction& f,
                                                           const InverseProfile& profile) {
  require_increasing(profile);
  const std::size_t nodes = profile.grid.size();
  std::vector<std::optional<double>> out;
  for (std::size_t i = 1; i + 1 < nodes; ++i) {
    const Cell left = cell(f, profile, i - 1);
    const Cell right = cell(f, profile, i);
    if (!(left.a > 0.0) || !(right.a > 0.0)) {
      out.emplace_back(std::nullopt);
      continue;
    }
    const double spacing = 0.5 * (left.h + right.h);
    out.emplace_back(profile.xi[i] / 2.0 +
                     (right.a * right.a / right.slope - left.a * left.a / left.slope) / spacing);
  }
  return out;
}

std::vector<std::optional<double>> selfsimilar_ode_residual(const DiffusionFunction& f,
                                                            const InverseProfile& profile) {
  require_increasing(profile);
  const std::size_t nodes = profile.grid.size();
  std::vector<std::optional<double>> out;
  for (std::size_t i = 1; i + 1 < nodes; ++i) {
    const Cell left = cell(f, profile, i - 1);
    const Cell right = cell(f, profile, i);
    if (!(left.a > 0.0) || !(right.a > 0.0)) {
      out.emplace_back(std::nullopt);
      continue;
    }
    // u' = 1/xi' at cell midpoints; derivatives in xi across the node.
    const double xi_span = right.mid_xi - left.mid_xi;
    const double flux_jump = right.a * right.a / right.slope - left.a * left.a / left.slope;
    const double du_dxi = (profile.grid[i + 1] - profile.grid[i - 1]) / (profile.xi[i + 1] - profile.xi[i - 1]);
    out.emplace_back(flux_jump / xi_span + profile.xi[i] * du_dxi / 2.0);
  }
  return out;
}

ConvergenceStudy convergence_study(const DiffusionFunction& f, std::span<const std::size_t> cells_list,
                                   const std::function<double(double)>& reference, std::size_t grid_points) {
  for (std::size_t i = 1; i < cells_list.size(); ++i) {
    if (!(cells_list[i] > cells_list[i - 1])) throw std::invalid_argument("convergence_study: N list must increase");
  }
  const double lo = f.lower();
  const double hi = f.upper();
  ConvergenceStudy study;
  for (std::size_t j = 1; j <= grid_points; ++j) {
    study.common_grid.push_back(lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(grid_points + 1));
  }
  std::vector<double> ref(study.common_grid.size(), kNaN);
  if (reference) {
    for (std::size_t j = 0; j < ref.size(); ++j) ref[j] = reference(study.common_grid[j]);
  }

  for (std::size_t cells : cells_list) {
    ConvergenceRow row;
    row.cells = cells;
    const Discretization disc = discretize(f, cells);
    const Solution sol = solve(lo, hi, disc.partition);
    row.converged = sol.converged();
    row.shifted_entropy = sol.optimization
                              ? entropy_shifted(sol.problem, sol.layout, sol.optimization->minimizer)
                              : kNaN;
    row.inverse.grid = study.common_grid;
    for (double u : study.common_grid) row.inverse.xi.push_back(invert(sol.profile, u));
    row.distance_to_reference = reference ? sup_distance(row.inverse.xi, ref) : kNaN;
    row.distance_to_previous =
        study.rows.empty() ? kNaN : sup_distance(row.inverse.xi, study.rows.back().inverse.xi);
    study.rows.push_back(std::move(row));
  }
  if (!study.rows.empty()) {
    const auto& finest = study.rows.back().inverse.xi;
    for (auto& row : study.rows) row.distance_to_finest = sup_distance(row.inverse.xi, finest);
  }
  return study;
}

}  // namespace degdiff::continuum
