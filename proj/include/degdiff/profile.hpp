#ifndef DEGDIFF_PROFILE_HPP
#define DEGDIFF_PROFILE_HPP

#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "degdiff/problem.hpp"

namespace degdiff {

/// Error-function arc v = u_lo + (u_hi - u_lo) (F(xi/a) - F(lo/a)) / dF on (lo, hi).
struct Arc {
  double lo;
  double hi;
  double u_lo;
  double u_hi;
  double a;
  double log_dF;  // ln(F(hi/a) - F(lo/a))
};

struct Constant {
  double lo;
  double hi;
  double value;
};

/// Strong discontinuity at xi = at.
struct Jump {
  double at;
  double left;
  double right;
};

using Piece = std::variant<Arc, Constant, Jump>;

/// Self-similar solution v(xi), u(t, x) = v(x / sqrt(t)).
///
/// pieces and nominal are stored in solver orientation (increasing v);
/// when mirrored is set the public evaluators return v(xi) = w(-xi).
struct SelfSimilarProfile {
  std::vector<Piece> pieces;
  std::vector<double> nominal;  // xi_1..xi_n, merged boundaries repeated
  bool mirrored = false;

  /// Nominal boundaries in caller orientation, ascending.
  std::vector<double> boundaries() const;
  /// Pieces in caller orientation, left to right.
  std::vector<Piece> oriented_pieces() const;
};

/// One-sided limits; equal away from strong discontinuities.
struct Sided {
  double left;
  double right;
};

SelfSimilarProfile build_profile(const RiemannProblem& problem, const BoundaryLayout& layout,
                                 std::span<const double> minimizer);

/// Closed forms without free boundaries: the heat profile for a single
/// interval with a > 0, the frozen step for a = 0, the constant solution
/// for equal states.
SelfSimilarProfile single_interval_profile(double u_lo, double u_hi, double a, bool mirrored);
SelfSimilarProfile constant_profile(double u);

Sided eval_selfsimilar(const SelfSimilarProfile& profile, double xi);

/// Throws std::domain_error for t <= 0.
Sided eval_solution(const SelfSimilarProfile& profile, double t, double x);

/// Self-similar flux d/dxi A(v) = a^2 v'(xi), one-sided at boundaries.
Sided flux(const SelfSimilarProfile& profile, double xi);

/// xi with v(xi) = u; a state inside a strong jump maps to the jump.
double invert(const SelfSimilarProfile& profile, double u);

enum class Discontinuity { weak, strong };
std::string_view to_string(Discontinuity d);

/// Jump conditions on one nominal boundary, in caller orientation.
/// residual = [v] xi / 2 + [A(v)'], the self-similar form of
/// [u] x'(t) + [A(u)_x] = 0 with x = xi sqrt(t).
struct JumpReport {
  std::size_t boundary;  // 1-based, ascending in xi
  std::size_t slot;      // 0-based free slot, ascending in xi
  double xi;
  double u_left;
  double u_right;
  double A_jump;
  double residual;
  Discontinuity classification;
};

std::vector<JumpReport> jump_residuals(const RiemannProblem& problem, const BoundaryLayout& layout,
                                       const SelfSimilarProfile& profile);

}  // namespace degdiff

#endif  // DEGDIFF_PROFILE_HPP
