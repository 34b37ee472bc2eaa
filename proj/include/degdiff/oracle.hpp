#ifndef DEGDIFF_ORACLE_HPP
#define DEGDIFF_ORACLE_HPP

#include <cstddef>
#include <vector>

#include "degdiff/problem.hpp"
#include "degdiff/profile.hpp"

namespace degdiff::oracle {

// Independent checks for the optimizer and the profile. None of these
// reuse the entropy gradient or the Newton iteration.

struct GridSearchResult {
  std::vector<double> minimizer;
  double entropy = 0.0;
  double final_step = 0.0;
  std::vector<double> round_minima;  // coarse scan, then each refinement
};

/// Exhaustive lattice scan of [-box_radius, box_radius]^m followed by three
/// rounds of 10x local refinement. Throws std::invalid_argument for m > 3.
GridSearchResult grid_search_min(const RiemannProblem& problem, const BoundaryLayout& layout,
                                 double box_radius, double coarse_step);

/// Single free boundary next to a degenerate edge (n = 1 with a_0 = 0 or
/// a_1 = 0): solves the scalar Stefan relation by bisection.
/// Throws std::invalid_argument for any other shape.
double stefan_bisection(const RiemannProblem& problem);

/// Residual of the scalar Stefan relation coded directly from erfc.
double stefan_residual(const RiemannProblem& problem, double xi);

struct FDGrid {
  double half_width = 0.0;
  double dx = 0.0;
  double dt = 0.0;
  double T = 0.0;
  std::size_t steps = 0;
  std::vector<double> x;  // cell centres -L + (i + 1/2) dx, step between cells
  std::vector<double> u;
};

struct FDOptions {
  double T = 1.0;
  double dx = 0.01;
  double half_width = 0.0;  // 0 selects 10 * max(a) * sqrt(T), at least 1
  unsigned threads = 1;
};

/// Explicit scheme u_i += dt/dx^2 (A(u_{i+1}) - 2 A(u_i) + A(u_{i-1})) for
/// u_t = A(u)_xx from the Riemann step, with dt at 0.9 of the stability
/// bound and the end cells held at the far-field states. The result does
/// not depend on the thread count.
FDGrid fd_solve(const RiemannProblem& problem, const FDOptions& options);

/// Grid with the initial step only.
FDGrid fd_initial(const RiemannProblem& problem, const FDOptions& options);

struct ProfileComparison {
  double l1 = 0.0;            // trapezoid integral of |u_fd - u|
  double linf_collar = 0.0;   // max |u_fd - u| outside a dx collar around strong jumps
  double diffused_mass = 0.0; // trapezoid integral of |u(T, x) - u(0, x)|
  double l1_relative = 0.0;   // l1 / diffused_mass
};

ProfileComparison compare_profiles(const FDGrid& fd, const SelfSimilarProfile& profile,
                                   const RiemannProblem& problem);

}  // namespace degdiff::oracle

#endif  // DEGDIFF_ORACLE_HPP
