#ifndef DEGDIFF_ENTROPY_HPP
#define DEGDIFF_ENTROPY_HPP

#include <span>
#include <vector>

#include "degdiff/problem.hpp"
#include "degdiff/tridiagonal.hpp"

namespace degdiff {

// Entropy of the free-boundary positions. With xi_0 = -inf, xi_{n+1} = +inf
// and du_k = u_{k+1} - u_k,
//
//   E = - sum_{a_k > 0} a_k^2 du_k ln(F(xi_{k+1}/a_k) - F(xi_k/a_k))
//       + sum_{a_k = 0} du_k xi_k^2 / 4,
//
// where a zero edge interval uses its single finite boundary (xi_1 or xi_n)
// and a zero inner interval identifies xi_k with xi_{k+1}. All functions
// below take the free slot values (size layout.m) and throw
// std::domain_error when they are not strictly increasing and finite.

struct EntropyReport {
  double value = 0.0;
  std::vector<double> gradient;
  SymTridiagonal hessian;
};

bool feasible(const BoundaryLayout& layout, std::span<const double> xi);

double entropy_value(const RiemannProblem& problem, const BoundaryLayout& layout,
                     std::span<const double> xi);

/// dE/d(slot). Zero exactly when every boundary satisfies its matching
/// condition: flux continuity at nondegenerate interior boundaries, the
/// Stefan relation at a degenerate edge, the merged relation at a zero
/// inner interval.
std::vector<double> entropy_gradient(const RiemannProblem& problem, const BoundaryLayout& layout,
                                     std::span<const double> xi);

SymTridiagonal entropy_hessian(const RiemannProblem& problem, const BoundaryLayout& layout,
                               std::span<const double> xi);

EntropyReport evaluate_entropy(const RiemannProblem& problem, const BoundaryLayout& layout,
                               std::span<const double> xi);

/// sum_{a_k > 0} a_k^2 du_k ln(du_k / a_k): the offset between E and E_1.
double entropy_shift(const RiemannProblem& problem);

/// E_1 = E + entropy_shift.
double entropy_shifted(const RiemannProblem& problem, const BoundaryLayout& layout,
                       std::span<const double> xi);

/// Box containing the sublevel set {E <= level}: every slot lies in
/// [-radius, radius] and consecutive slots differ by at least gap.
struct SublevelBox {
  double radius = 0.0;
  double gap = 0.0;
  double delta = 0.0;  // lower bound on each F difference of a log term
  bool empty = false;  // level too small for any feasible point
};

SublevelBox sublevel_bounds(const RiemannProblem& problem, const BoundaryLayout& layout, double level);

}  // namespace degdiff

#endif  // DEGDIFF_ENTROPY_HPP
