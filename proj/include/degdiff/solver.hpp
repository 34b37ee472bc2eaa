#ifndef DEGDIFF_SOLVER_HPP
#define DEGDIFF_SOLVER_HPP

#include <optional>

#include "degdiff/optimizer.hpp"
#include "degdiff/problem.hpp"
#include "degdiff/profile.hpp"

namespace degdiff {

struct Solution {
  RiemannProblem problem;
  BoundaryLayout layout;
  std::optional<SolveResult> optimization;  // absent when no boundary is free
  SelfSimilarProfile profile;

  bool converged() const { return !optimization || optimization->converged; }
};

/// Full pipeline: validation, orientation, layout, entropy minimization and
/// profile reconstruction. Equal states give the constant solution and a
/// single interval gives its closed form without calling the optimizer.
Solution solve(double u_minus, double u_plus, const PhasePartition& partition,
               const SolveOptions& options = {});

/// Radius of the xi-window used for sampling and plotting a solution: wide
/// enough for every boundary plus arc tails down to 1e-9 of the far-field
/// states, and never smaller than the sublevel box at the minimum entropy.
double plot_radius(const Solution& solution);

}  // namespace degdiff

#endif  // DEGDIFF_SOLVER_HPP
