#ifndef DEGDIFF_PROBLEM_HPP
#define DEGDIFF_PROBLEM_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace degdiff {

/// Piecewise-constant diffusion a(u) = coefficients[k] on
/// (breakpoints[k], breakpoints[k + 1]), k = 0..n.
struct PhasePartition {
  std::vector<double> breakpoints;   // u_0 < u_1 < ... < u_{n+1}
  std::vector<double> coefficients;  // a_0, ..., a_n >= 0

  /// Number of interior breakpoints n (also the number of nominal boundaries).
  std::size_t interior_count() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
  std::size_t interval_count() const { return coefficients.size(); }
  double lower() const { return breakpoints.front(); }
  double upper() const { return breakpoints.back(); }
  double width(std::size_t k) const { return breakpoints[k + 1] - breakpoints[k]; }
  double max_coefficient() const;
};

struct Violation {
  enum class Kind {
    size_mismatch,
    not_finite,
    breakpoints_not_increasing,
    negative_coefficient,
    adjacent_equal,
  };
  Kind kind;
  std::size_t index;
  std::string message;
};

/// Reports the first violated partition invariant, or nullopt.
std::optional<Violation> validate(const PhasePartition& partition);

/// Mirror image u -> u_0 + u_{n+1} - u; breakpoints and coefficients reversed.
PhasePartition reflect(const PhasePartition& partition);

/// A(u) = int_{u_0}^{u} a^2, continuous and piecewise linear; clamped to
/// the partition range.
double phase_potential(const PhasePartition& partition, double u);

/// Thrown by normalize_orientation when u_minus == u_plus.
class TrivialProblem : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Riemann data in solver orientation: the partition always runs from the
/// smaller state to the larger one; orientation_flipped records x -> -x.
struct RiemannProblem {
  double u_minus = 0.0;
  double u_plus = 0.0;
  PhasePartition partition;
  bool orientation_flipped = false;

  /// States as the caller posed them (before any flip).
  double original_left() const { return orientation_flipped ? u_plus : u_minus; }
  double original_right() const { return orientation_flipped ? u_minus : u_plus; }
};

/// Validates the partition against the states and orients the problem so
/// that u_plus > u_minus internally. Throws TrivialProblem for equal
/// states and std::invalid_argument for any other inconsistency.
RiemannProblem normalize_orientation(double u_minus, double u_plus, PhasePartition partition);

/// Map from nominal boundaries xi_1..xi_n onto free-variable slots. Slots
/// and nominal indices are 0-based here: nominal k (1-based) is entry k - 1.
struct BoundaryLayout {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::size_t> free_index;  // size n, nondecreasing, onto 0..m-1
  bool edge_left_degenerate = false;
  bool edge_right_degenerate = false;
  std::vector<std::size_t> inner_degenerate;  // interval indices k, 0 < k < n

  /// Expands slot values to the n nominal boundaries.
  std::vector<double> expand(std::span<const double> slots) const;
  /// Slot of nominal boundary k, 1 <= k <= n.
  std::size_t slot_of(std::size_t k) const { return free_index[k - 1]; }
  /// First nominal boundary (1-based) mapped to the slot.
  std::size_t first_nominal(std::size_t slot) const;
};

BoundaryLayout build_layout(const PhasePartition& partition);

/// Layout re-derived from nominal values: boundaries with equal value share
/// a slot. Used to check that expand() is consistent with the merging rule.
BoundaryLayout layout_from_nominal(const PhasePartition& partition, std::span<const double> nominal);

}  // namespace degdiff

#endif  // DEGDIFF_PROBLEM_HPP
