#include "degdiff/oracle.hpp"

#include <algorithm>
#include <barrier>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "degdiff/entropy.hpp"

namespace degdiff::oracle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Visits every strictly increasing lattice point centre[j] + i_j * step,
// |i_j| <= half_count.
template <class Visit>
void scan_lattice(std::vector<double>& point, std::size_t dim, const std::vector<double>& centre,
                  long half_count, double step, Visit&& visit) {
  if (dim == point.size()) {
    visit(point);
    return;
  }
  for (long i = -half_count; i <= half_count; ++i) {
    point[dim] = centre[dim] + static_cast<double>(i) * step;
    if (dim > 0 && !(point[dim] > point[dim - 1])) continue;
    scan_lattice(point, dim + 1, centre, half_count, step, visit);
  }
}

}  // namespace

GridSearchResult grid_search_min(const RiemannProblem& problem, const BoundaryLayout& layout,
                                 double box_radius, double coarse_step) {
  const std::size_t m = layout.m;
  if (m == 0 || m > 3) throw std::invalid_argument("grid_search_min: requires 1 <= m <= 3");
  if (!(box_radius > 0.0) || !(coarse_step > 0.0)) {
    throw std::invalid_argument("grid_search_min: box radius and step must be positive");
  }

  GridSearchResult result;
  result.entropy = kInf;
  auto consider = [&](const std::vector<double>& p) {
    const double e = entropy_value(problem, layout, p);
    if (e < result.entropy) {
      result.entropy = e;
      result.minimizer = p;
    }
  };

  std::vector<double> point(m);
  const long half = static_cast<long>(std::floor(box_radius / coarse_step));
  scan_lattice(point, 0, std::vector<double>(m, 0.0), half, coarse_step, consider);
  if (result.minimizer.empty()) throw std::runtime_error("grid_search_min: no feasible lattice point");
  result.round_minima.push_back(result.entropy);

  double step = coarse_step;
  for (int round = 0; round < 3; ++round) {
    step /= 10.0;
    const std::vector<double> centre = result.minimizer;
    scan_lattice(point, 0, centre, 10, step, consider);
    result.round_minima.push_back(result.entropy);
  }
  result.final_step = step;
  return result;
}

double stefan_residual(const RiemannProblem& problem, double xi) {
  const auto& part = problem.partition;
  const auto& a = part.coefficients;
  const double inv_norm = 1.0 / (2.0 * std::sqrt(std::numbers::pi));
  if (a[0] == 0.0) {
    // -(u_1 - u_-) xi/2 = a_1 (u_+ - u_1) F'(xi/a_1) / (1 - F(xi/a_1))
    const double x = xi / a[1];
    const double tail = 0.5 * std::erfc(x / 2.0);
    return part.width(0) * xi / 2.0 + a[1] * part.width(1) * inv_norm * std::exp(-x * x / 4.0) / tail;
  }
  // (u_+ - u_1) xi/2 = a_0 (u_1 - u_-) F'(xi/a_0) / F(xi/a_0)
  const double x = xi / a[0];
  const double head = 0.5 * std::erfc(-x / 2.0);
  return part.width(1) * xi / 2.0 - a[0] * part.width(0) * inv_norm * std::exp(-x * x / 4.0) / head;
}

double stefan_bisection(const RiemannProblem& problem) {
  const auto& a = problem.partition.coefficients;
  if (a.size() != 2 || (a[0] != 0.0 && a[1] != 0.0)) {
    throw std::invalid_argument("stefan_bisection: requires one boundary next to a degenerate edge");
  }
  // The residual is increasing; its root is negative for a zero left edge
  // and positive for a zero right edge.
  double lo = -1.0;
  double hi = 1.0;
  if (a[0] == 0.0) {
    hi = 0.0;
    while (stefan_residual(problem, lo) > 0.0) lo *= 2.0;
  } else {
    lo = 0.0;
    while (stefan_residual(problem, hi) < 0.0) hi *= 2.0;
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (stefan_residual(problem, mid) > 0.0) hi = mid; else lo = mid;
  }
  const double r_lo = std::abs(stefan_residual(problem, lo));
  const double r_hi = std::abs(stefan_residual(problem, hi));
  return r_lo <= r_hi ? lo : hi;
}

FDGrid fd_initial(const RiemannProblem& problem, const FDOptions& options) {
  if (!(options.T > 0.0)) throw std::invalid_argument("fd_solve: requires T > 0");
  if (!(options.dx > 0.0)) throw std::invalid_argument("fd_solve: requires dx > 0");
  const double a_max = problem.partition.max_coefficient();
  const double containment = 10.0 * a_max * std::sqrt(options.T);
  if (options.half_width > 0.0 && options.half_width < containment) {
    throw std::invalid_argument("fd_solve: half width below 10 * max(a) * sqrt(T)");
  }
  const double wanted = options.half_width > 0.0 ? options.half_width : std::max(containment, 1.0);
  const auto half_cells = static_cast<std::size_t>(std::ceil(wanted / options.dx - 1e-9));

  FDGrid grid;
  grid.dx = options.dx;
  grid.half_width = static_cast<double>(half_cells) * options.dx;
  grid.T = options.T;
  if (a_max > 0.0) {
    const double bound = options.dx * options.dx / (2.0 * a_max * a_max);
    grid.steps = static_cast<std::size_t>(std::ceil(options.T / (0.9 * bound)));
    grid.dt = options.T / static_cast<double>(grid.steps);
  } else {
    grid.dt = options.T;
  }
  const std::size_t cells = 2 * half_cells;
  grid.x.resize(cells);
  grid.u.resize(cells);
  const double left = problem.original_left();
  const double right = problem.original_right();
  for (std::size_t i = 0; i < cells; ++i) {
    grid.x[i] = (static_cast<double>(i) - static_cast<double>(half_cells) + 0.5) * options.dx;
    grid.u[i] = i < half_cells ? left : right;
  }
  return grid;
}

FDGrid fd_solve(const RiemannProblem& problem, const FDOptions& options) {
  FDGrid grid = fd_initial(problem, options);
  const std::size_t cells = grid.u.size();
  if (grid.steps == 0 || cells < 3) return grid;

  const PhasePartition& part = problem.partition;
  const double lambda = grid.dt / (grid.dx * grid.dx);
  std::vector<double> cur = grid.u;
  std::vector<double> next = grid.u;
  std::vector<double> potential(cells);

  auto potentials = [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) potential[i] = phase_potential(part, cur[i]);
  };
  auto update = [&](std::size_t b, std::size_t e) {
    b = std::max<std::size_t>(b, 1);
    e = std::min(e, cells - 1);
    for (std::size_t i = b; i < e; ++i) {
      next[i] = cur[i] + lambda * (potential[i + 1] - 2.0 * potential[i] + potential[i - 1]);
    }
  };

  const unsigned threads = std::clamp<unsigned>(options.threads, 1, static_cast<unsigned>(cells));
  if (threads == 1) {
    for (std::size_t s = 0; s < grid.steps; ++s) {
      potentials(0, cells);
      update(0, cells);
      std::swap(cur, next);
    }
  } else {
    std::size_t phase = 0;
    std::barrier sync(static_cast<std::ptrdiff_t>(threads), [&]() noexcept {
      if (++phase % 2 == 0) std::swap(cur, next);
    });
    auto worker = [&](unsigned id) {
      const std::size_t b = cells * id / threads;
      const std::size_t e = cells * (id + 1) / threads;
      for (std::size_t s = 0; s < grid.steps; ++s) {
        potentials(b, e);
        sync.arrive_and_wait();
        update(b, e);
        sync.arrive_and_wait();
      }
    };
    std::vector<std::jthread> pool;
    for (unsigned id = 1; id < threads; ++id) pool.emplace_back(worker, id);
    worker(0);
  }
  grid.u = std::move(cur);
  return grid;
}

ProfileComparison compare_profiles(const FDGrid& fd, const SelfSimilarProfile& profile,
                                   const RiemannProblem& problem) {
  const double root_t = std::sqrt(fd.T);
  std::vector<double> jumps;
  for (const Piece& p : profile.oriented_pieces()) {
    if (const auto* j = std::get_if<Jump>(&p)) jumps.push_back(j->at * root_t);
  }
  const double left = problem.original_left();
  const double right = problem.original_right();

  ProfileComparison out;
  const std::size_t cells = fd.u.size();
  std::vector<double> err(cells), moved(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const Sided v = eval_solution(profile, fd.T, fd.x[i]);
    const double exact = 0.5 * (v.left + v.right);
    err[i] = std::abs(fd.u[i] - exact);
    moved[i] = std::abs(exact - (fd.x[i] < 0.0 ? left : right));
    const bool in_collar = std::any_of(jumps.begin(), jumps.end(),
                                       [&](double xj) { return std::abs(fd.x[i] - xj) <= fd.dx; });
    if (!in_collar) out.linf_collar = std::max(out.linf_collar, err[i]);
  }
  for (std::size_t i = 0; i + 1 < cells; ++i) {
    out.l1 += 0.5 * fd.dx * (err[i] + err[i + 1]);
    out.diffused_mass += 0.5 * fd.dx * (moved[i] + moved[i + 1]);
  }
  out.l1_relative = out.diffused_mass > 0.0 ? out.l1 / out.diffused_mass : 0.0;
  return out;
}

}  // namespace degdiff::oracle
