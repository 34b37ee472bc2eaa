#include "degdiff/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "degdiff/special_functions.hpp"

namespace degdiff {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double arc_value(const Arc& arc, double xi) {
  const double x = xi / arc.a;
  const double x_lo = arc.lo / arc.a;
  const double x_hi = arc.hi / arc.a;
  if (x <= x_lo) return arc.u_lo;
  if (x >= x_hi) return arc.u_hi;
  const double du = arc.u_hi - arc.u_lo;
  const double from_left = sf::log_F_diff(x, x_lo);
  const double from_right = sf::log_F_diff(x_hi, x);
  // Measure from the nearer end to keep the small fraction accurate.
  if (from_left <= from_right) return arc.u_lo + du * std::exp(from_left - arc.log_dF);
  return arc.u_hi - du * std::exp(from_right - arc.log_dF);
}

double arc_flux(const Arc& arc, double xi) {
  if (!std::isfinite(xi)) return 0.0;
  const double du = arc.u_hi - arc.u_lo;
  return arc.a * du * std::exp(sf::log_F_prime(xi / arc.a) - arc.log_dF);
}

double log_add(double x, double y) {
  if (x < y) std::swap(x, y);
  if (y == -kInf) return x;
  return x + std::log1p(std::exp(y - x));
}

double arc_inverse(const Arc& arc, double u) {
  const double du = arc.u_hi - arc.u_lo;
  const double theta = (u - arc.u_lo) / du;
  if (theta <= 0.0) return arc.lo;
  if (theta >= 1.0) return arc.hi;
  // Solve in log space from whichever tail holds the target, so arcs deep
  // in a Gaussian tail stay resolvable.
  const double lower = std::isfinite(arc.lo) ? sf::log_F_diff(arc.lo / arc.a, -kInf) : -kInf;
  const double log_below = log_add(lower, std::log(theta) + arc.log_dF);
  double x;
  if (log_below <= -std::numbers::ln2) {
    x = sf::F_inverse_log(log_below);
  } else {
    const double upper = std::isfinite(arc.hi) ? sf::log_F_upper(arc.hi / arc.a) : -kInf;
    x = -sf::F_inverse_log(log_add(upper, std::log1p(-theta) + arc.log_dF));
  }
  return std::clamp(arc.a * x, arc.lo, arc.hi);
}

// Segments are the arcs and constants; strong jumps sit where consecutive
// segments disagree, so one-sided limits come from the neighbouring segment.
struct Segment {
  double lo;
  double hi;
  const Piece* piece;
};

std::vector<Segment> segments(const SelfSimilarProfile& profile) {
  std::vector<Segment> out;
  for (const Piece& p : profile.pieces) {
    std::visit(Overloaded{
                   [&](const Arc& a) { out.push_back({a.lo, a.hi, &p}); },
                   [&](const Constant& c) { out.push_back({c.lo, c.hi, &p}); },
                   [](const Jump&) {},
               },
               p);
  }
  return out;
}

const Segment& segment_right_of(const std::vector<Segment>& segs, double xi) {
  for (const Segment& s : segs) {
    if (xi < s.hi) return s;
  }
  return segs.back();
}

const Segment& segment_left_of(const std::vector<Segment>& segs, double xi) {
  for (const Segment& s : segs) {
    if (xi <= s.hi) return s;
  }
  return segs.back();
}

double segment_value(const Segment& s, double xi) {
  if (const auto* arc = std::get_if<Arc>(s.piece)) return arc_value(*arc, xi);
  return std::get<Constant>(*s.piece).value;
}

double segment_flux(const Segment& s, double xi) {
  if (const auto* arc = std::get_if<Arc>(s.piece)) return arc_flux(*arc, xi);
  return 0.0;
}

Sided internal_value(const SelfSimilarProfile& profile, double xi) {
  const auto segs = segments(profile);
  return {segment_value(segment_left_of(segs, xi), xi), segment_value(segment_right_of(segs, xi), xi)};
}

Sided internal_flux(const SelfSimilarProfile& profile, double xi) {
  const auto segs = segments(profile);
  return {segment_flux(segment_left_of(segs, xi), xi), segment_flux(segment_right_of(segs, xi), xi)};
}

double internal_inverse(const SelfSimilarProfile& profile, double u) {
  for (const Piece& p : profile.pieces) {
    if (const auto* arc = std::get_if<Arc>(&p)) {
      if (u >= arc->u_lo && u <= arc->u_hi) return arc_inverse(*arc, u);
    } else if (const auto* jump = std::get_if<Jump>(&p)) {
      if (u >= jump->left && u <= jump->right) return jump->at;
    } else {
      const auto& c = std::get<Constant>(p);
      if (u == c.value) return std::isfinite(c.lo) ? (std::isfinite(c.hi) ? c.lo : kInf) : -kInf;
    }
  }
  const auto segs = segments(profile);
  return u < segment_value(segs.front(), -kInf) ? -kInf : kInf;
}

}  // namespace

std::vector<double> SelfSimilarProfile::boundaries() const {
  if (!mirrored) return nominal;
  std::vector<double> out;
  out.reserve(nominal.size());
  for (auto it = nominal.rbegin(); it != nominal.rend(); ++it) out.push_back(-*it);
  return out;
}

std::vector<Piece> SelfSimilarProfile::oriented_pieces() const {
  if (!mirrored) return pieces;
  std::vector<Piece> out;
  out.reserve(pieces.size());
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
    std::visit(Overloaded{
                   [&](const Arc& a) { out.push_back(Arc{-a.hi, -a.lo, a.u_hi, a.u_lo, a.a, a.log_dF}); },
                   [&](const Constant& c) { out.push_back(Constant{-c.hi, -c.lo, c.value}); },
                   [&](const Jump& j) { out.push_back(Jump{-j.at, j.right, j.left}); },
               },
               *it);
  }
  return out;
}

SelfSimilarProfile build_profile(const RiemannProblem& problem, const BoundaryLayout& layout,
                                 std::span<const double> minimizer) {
  const auto& part = problem.partition;
  const auto& u = part.breakpoints;
  const std::size_t n = layout.n;
  if (n == 0) return single_interval_profile(problem.u_minus, problem.u_plus, part.coefficients[0],
                                             problem.orientation_flipped);

  SelfSimilarProfile profile;
  profile.mirrored = problem.orientation_flipped;
  profile.nominal = layout.expand(minimizer);
  const auto& xi = profile.nominal;
  for (std::size_t k = 0; k <= n; ++k) {
    const double a = part.coefficients[k];
    const double lo = k == 0 ? -kInf : xi[k - 1];
    const double hi = k == n ? kInf : xi[k];
    if (a > 0.0) {
      profile.pieces.push_back(Arc{lo, hi, u[k], u[k + 1], a, sf::log_F_diff(hi / a, lo / a)});
    } else if (k == 0) {
      profile.pieces.push_back(Constant{-kInf, hi, u[0]});
      profile.pieces.push_back(Jump{hi, u[0], u[1]});
    } else if (k == n) {
      profile.pieces.push_back(Jump{lo, u[n], u[n + 1]});
      profile.pieces.push_back(Constant{lo, kInf, u[n + 1]});
    } else {
      profile.pieces.push_back(Jump{lo, u[k], u[k + 1]});
    }
  }
  return profile;
}

SelfSimilarProfile single_interval_profile(double u_lo, double u_hi, double a, bool mirrored) {
  SelfSimilarProfile profile;
  profile.mirrored = mirrored;
  if (a > 0.0) {
    profile.pieces.push_back(Arc{-kInf, kInf, u_lo, u_hi, a, 0.0});
  } else {
    profile.pieces.push_back(Constant{-kInf, 0.0, u_lo});
    profile.pieces.push_back(Jump{0.0, u_lo, u_hi});
    profile.pieces.push_back(Constant{0.0, kInf, u_hi});
  }
  return profile;
}

SelfSimilarProfile constant_profile(double u) {
  SelfSimilarProfile profile;
  profile.pieces.push_back(Constant{-kInf, kInf, u});
  return profile;
}

Sided eval_selfsimilar(const SelfSimilarProfile& profile, double xi) {
  if (!profile.mirrored) return internal_value(profile, xi);
  const Sided s = internal_value(profile, -xi);
  return {s.right, s.left};
}

Sided eval_solution(const SelfSimilarProfile& profile, double t, double x) {
  if (!(t > 0.0)) throw std::domain_error("eval_solution: requires t > 0");
  return eval_selfsimilar(profile, x / std::sqrt(t));
}

Sided flux(const SelfSimilarProfile& profile, double xi) {
  if (!profile.mirrored) return internal_flux(profile, xi);
  const Sided s = internal_flux(profile, -xi);
  return {-s.right, -s.left};
}

double invert(const SelfSimilarProfile& profile, double u) {
  if (!profile.mirrored) return internal_inverse(profile, u);
  return -internal_inverse(profile, u);
}

std::string_view to_string(Discontinuity d) {
  return d == Discontinuity::strong ? "strong" : "weak";
}

std::vector<JumpReport> jump_residuals(const RiemannProblem& problem, const BoundaryLayout& layout,
                                       const SelfSimilarProfile& profile) {
  const auto& part = problem.partition;
  const std::size_t n = profile.nominal.size();
  std::vector<JumpReport> reports(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const double xi = profile.nominal[k - 1];
    const Sided v = internal_value(profile, xi);
    const Sided f = internal_flux(profile, xi);
    JumpReport r;
    r.boundary = k;
    r.slot = layout.slot_of(k);
    r.xi = xi;
    r.u_left = v.left;
    r.u_right = v.right;
    r.A_jump = phase_potential(part, v.right) - phase_potential(part, v.left);
    r.residual = (v.right - v.left) * xi / 2.0 + (f.right - f.left);
    r.classification = v.left != v.right ? Discontinuity::strong : Discontinuity::weak;
    if (profile.mirrored) {
      // [v] xi and [A(v)'] are both invariant under xi -> -xi.
      r.boundary = n + 1 - k;
      r.slot = layout.m - 1 - r.slot;
      r.xi = -xi;
      std::swap(r.u_left, r.u_right);
      r.A_jump = -r.A_jump;
    }
    reports[r.boundary - 1] = r;
  }
  return reports;
}

}  // namespace degdiff
