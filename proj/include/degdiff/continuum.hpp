#ifndef DEGDIFF_CONTINUUM_HPP
#define DEGDIFF_CONTINUUM_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "degdiff/newton.hpp"
#include "degdiff/problem.hpp"

namespace degdiff::continuum {

/// Tabulated a(u) >= 0, linearly interpolated between samples.
class DiffusionFunction {
 public:
  /// Throws std::invalid_argument unless u is strictly increasing, a >= 0
  /// and there are at least two samples.
  explicit DiffusionFunction(std::vector<std::pair<double, double>> samples);

  static DiffusionFunction from_function(const std::function<double(double)>& a, double u_lo,
                                         double u_hi, std::size_t intervals = 1024);

  double operator()(double u) const;
  double lower() const { return samples_.front().first; }
  double upper() const { return samples_.back().first; }
  const std::vector<std::pair<double, double>>& samples() const { return samples_; }

 private:
  std::vector<std::pair<double, double>> samples_;
};

struct Discretization {
  PhasePartition partition;
  std::vector<std::size_t> jittered;  // cell indices nudged by a relative 1e-12
  std::size_t merged_zero_cells = 0;  // zero cells absorbed into a zero neighbour
};

/// N uniform cells, coefficient = a(cell midpoint). An equal nonzero
/// neighbour is nudged by a relative 1e-12; adjacent zero cells are merged.
Discretization discretize(const DiffusionFunction& f, std::size_t cells);

/// xi(u) sampled on a u-grid: the inverse of a self-similar profile.
struct InverseProfile {
  std::vector<double> grid;
  std::vector<double> xi;
};

/// J(xi) = -int a^2 ln xi' du + 1/4 int xi^2 du, midpoint rule per cell
/// with forward-difference slopes; 0 * ln xi' = 0 on zero cells.
/// Throws std::domain_error unless xi is strictly increasing.
double functional_J(const DiffusionFunction& f, const InverseProfile& profile);

/// The same functional written as -int_{a>0} a^2 ln(F'(xi/a) xi') + int_{a=0} xi^2/4,
/// which differs from functional_J by int a^2 ln(2 sqrt(pi)).
double functional_J_unsimplified(const DiffusionFunction& f, const InverseProfile& profile);

std::vector<double> functional_J_gradient(const DiffusionFunction& f, const InverseProfile& profile);
SymTridiagonal functional_J_hessian(const DiffusionFunction& f, const InverseProfile& profile);

struct MinimizedJ {
  InverseProfile profile;
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Minimizes the discrete J over the node values on a uniform grid of
/// `cells` cells. Requires a > 0 at every cell midpoint.
MinimizedJ minimize_functional(const DiffusionFunction& f, std::size_t cells,
                               const SolveOptions& options = {});

/// xi_i/2 + (a^2/xi')_{i+1/2} - (a^2/xi')_{i-1/2} over the midpoint spacing,
/// at interior nodes; nullopt next to a zero cell.
std::vector<std::optional<double>> euler_lagrange_residual(const DiffusionFunction& f,
                                                           const InverseProfile& profile);

/// Residual of (a^2 u')' + xi u'/2 = 0 for the forward profile u(xi) given
/// by an inverse profile, at interior nodes, by finite differences in u.
std::vector<std::optional<double>> selfsimilar_ode_residual(const DiffusionFunction& f,
                                                            const InverseProfile& profile);

struct ConvergenceRow {
  std::size_t cells = 0;
  bool converged = false;
  double shifted_entropy = 0.0;  // E_1 at the discrete minimizer
  InverseProfile inverse;        // discrete minimizer inverted on the common grid
  double distance_to_finest = 0.0;
  double distance_to_previous = 0.0;   // NaN for the first row
  double distance_to_reference = 0.0;  // NaN without a reference
};

struct ConvergenceStudy {
  std::vector<double> common_grid;
  std::vector<ConvergenceRow> rows;
};

/// For each N: discretize, minimize the entropy, invert the profile onto a
/// common interior u-grid and compare in the sup norm.
ConvergenceStudy convergence_study(const DiffusionFunction& f, std::span<const std::size_t> cells_list,
                                   const std::function<double(double)>& reference = {},
                                   std::size_t grid_points = 255);

}  // namespace degdiff::continuum

#endif  // DEGDIFF_CONTINUUM_HPP
