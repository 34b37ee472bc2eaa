#include "degdiff/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "degdiff/special_functions.hpp"

namespace degdiff {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  std::size_t k;
  double a;
  double du;
  double lo;  // xi_k, -inf for k = 0
  double hi;  // xi_{k+1}, +inf for k = n
  std::size_t lo_slot;
  std::size_t hi_slot;
};

void require_feasible(const BoundaryLayout& layout, std::span<const double> xi) {
  if (!feasible(layout, xi)) throw std::domain_error("free boundaries are not strictly increasing");
}

// Walks the n + 1 intervals with their end positions and slots.
template <class Visit>
void for_each_interval(const RiemannProblem& problem, const BoundaryLayout& layout,
                       std::span<const double> xi, Visit&& visit) {
  const auto& part = problem.partition;
  const std::size_t n = layout.n;
  for (std::size_t k = 0; k <= n; ++k) {
    Interval iv{k, part.coefficients[k], part.width(k), -kInf, kInf, 0, 0};
    if (k >= 1) {
      iv.lo_slot = layout.slot_of(k);
      iv.lo = xi[iv.lo_slot];
    }
    if (k + 1 <= n) {
      iv.hi_slot = layout.slot_of(k + 1);
      iv.hi = xi[iv.hi_slot];
    }
    visit(iv);
  }
}

// Slot whose position enters the quadratic term of a zero interval.
std::size_t quadratic_slot(const Interval& iv) {
  return std::isfinite(iv.lo) ? iv.lo_slot : iv.hi_slot;
}

double quadratic_position(const Interval& iv) {
  return std::isfinite(iv.lo) ? iv.lo : iv.hi;
}

// Ratios F'(x)/(F(x) - F(y)) at the two ends of a log term, in log space.
struct EndRatios {
  double log_dF;
  double right;  // at x = hi/a, zero when hi = +inf
  double left;   // at y = lo/a, zero when lo = -inf
};

EndRatios end_ratios(const Interval& iv) {
  const double x = iv.hi / iv.a;
  const double y = iv.lo / iv.a;
  EndRatios r{sf::log_F_diff(x, y), 0.0, 0.0};
  if (std::isfinite(x)) r.right = std::exp(sf::log_F_prime(x) - r.log_dF);
  if (std::isfinite(y)) r.left = std::exp(sf::log_F_prime(y) - r.log_dF);
  return r;
}

}  // namespace

bool feasible(const BoundaryLayout& layout, std::span<const double> xi) {
  if (xi.size() != layout.m) return false;
  for (std::size_t j = 0; j < xi.size(); ++j) {
    if (!std::isfinite(xi[j])) return false;
    if (j > 0 && !(xi[j] > xi[j - 1])) return false;
  }
  return true;
}

double entropy_value(const RiemannProblem& problem, const BoundaryLayout& layout,
                     std::span<const double> xi) {
  require_feasible(layout, xi);
  double value = 0.0;
  for_each_interval(problem, layout, xi, [&](const Interval& iv) {
    if (iv.a > 0.0) {
      value -= iv.a * iv.a * iv.du * sf::log_F_diff(iv.hi / iv.a, iv.lo / iv.a);
    } else {
      const double s = quadratic_position(iv);
      value += iv.du * s * s / 4.0;
    }
  });
  return value;
}

std::vector<double> entropy_gradient(const RiemannProblem& problem, const BoundaryLayout& layout,
                                     std::span<const double> xi) {
  require_feasible(layout, xi);
  std::vector<double> grad(layout.m, 0.0);
  for_each_interval(problem, layout, xi, [&](const Interval& iv) {
    if (iv.a > 0.0) {
      // d/d(hi) of -a^2 du ln(F(hi/a) - F(lo/a)) = -a du F'(hi/a)/dF, and
      // d/d(lo) = +a du F'(lo/a)/dF: the one-sided fluxes a^2 v' at the ends.
      const EndRatios r = end_ratios(iv);
      if (std::isfinite(iv.hi)) grad[iv.hi_slot] -= iv.a * iv.du * r.right;
      if (std::isfinite(iv.lo)) grad[iv.lo_slot] += iv.a * iv.du * r.left;
    } else {
      grad[quadratic_slot(iv)] += iv.du * quadratic_position(iv) / 2.0;
    }
  });
  return grad;
}

SymTridiagonal entropy_hessian(const RiemannProblem& problem, const BoundaryLayout& layout,
                               std::span<const double> xi) {
  require_feasible(layout, xi);
  SymTridiagonal h(layout.m);
  for_each_interval(problem, layout, xi, [&](const Interval& iv) {
    if (iv.a > 0.0) {
      // P(x, y) = -ln(F(x) - F(y)); with r_x = F'(x)/dF, r_y = F'(y)/dF and
      // F'' = -(s/2) F':  P_xx = r_x^2 + x r_x / 2,  P_yy = r_y^2 - y r_y / 2,
      // P_xy = -r_x r_y. The a^2 prefactor cancels the two 1/a chain factors.
      const EndRatios r = end_ratios(iv);
      const double x = iv.hi / iv.a;
      const double y = iv.lo / iv.a;
      if (std::isfinite(x)) h.diag[iv.hi_slot] += iv.du * (r.right * r.right + x * r.right / 2.0);
      if (std::isfinite(y)) h.diag[iv.lo_slot] += iv.du * (r.left * r.left - y * r.left / 2.0);
      if (std::isfinite(x) && std::isfinite(y)) h.off[iv.lo_slot] -= iv.du * r.right * r.left;
    } else {
      h.diag[quadratic_slot(iv)] += iv.du / 2.0;
    }
  });
  return h;
}

EntropyReport evaluate_entropy(const RiemannProblem& problem, const BoundaryLayout& layout,
                               std::span<const double> xi) {
  return {entropy_value(problem, layout, xi), entropy_gradient(problem, layout, xi),
          entropy_hessian(problem, layout, xi)};
}

double entropy_shift(const RiemannProblem& problem) {
  const auto& part = problem.partition;
  double shift = 0.0;
  for (std::size_t k = 0; k < part.interval_count(); ++k) {
    const double a = part.coefficients[k];
    if (a > 0.0) shift += a * a * part.width(k) * std::log(part.width(k) / a);
  }
  return shift;
}

double entropy_shifted(const RiemannProblem& problem, const BoundaryLayout& layout,
                       std::span<const double> xi) {
  return entropy_value(problem, layout, xi) + entropy_shift(problem);
}

SublevelBox sublevel_bounds(const RiemannProblem& problem, const BoundaryLayout& layout, double level) {
  const auto& part = problem.partition;
  const auto& a = part.coefficients;
  const std::size_t n = layout.n;
  SublevelBox box;
  if (n == 0) return box;
  if (!(level > 0.0)) {
    box.empty = true;
    return box;
  }

  // Every term is nonnegative, so each one is bounded by the level itself.
  double weight = kInf;
  double min_a = kInf;
  for (std::size_t k = 0; k <= n; ++k) {
    if (a[k] > 0.0) {
      weight = std::min(weight, a[k] * a[k] * part.width(k));
      min_a = std::min(min_a, a[k]);
    }
  }
  const double log_delta = -level / weight;
  box.delta = std::exp(log_delta);

  // Outer boundaries: a log term with one infinite end bounds the tail mass
  // F(xi_1/a_0) >= delta (resp. 1 - F(xi_n/a_n)); a quadratic edge term
  // bounds |xi| directly.
  auto edge_radius = [&](std::size_t k) {
    if (a[k] > 0.0) {
      if (log_delta >= std::log(0.5)) return 0.0;
      return -a[k] * sf::F_inverse_log(log_delta);
    }
    return 2.0 * std::sqrt(level / part.width(k));
  };
  box.radius = std::max(edge_radius(0), edge_radius(n));
  // Inner zero intervals pin their merged slot the same way.
  for (std::size_t k : layout.inner_degenerate) {
    box.radius = std::max(box.radius, 2.0 * std::sqrt(level / part.width(k)));
  }
  // F is Lipschitz with constant below 1, so dF >= delta forces a gap of a * delta.
  box.gap = box.delta * min_a;
  return box;
}

}  // namespace degdiff
