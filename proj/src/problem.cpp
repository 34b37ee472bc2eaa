#include "degdiff/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace degdiff {

double PhasePartition::max_coefficient() const {
  return coefficients.empty() ? 0.0 : *std::max_element(coefficients.begin(), coefficients.end());
}

std::optional<Violation> validate(const PhasePartition& partition) {
  const auto& u = partition.breakpoints;
  const auto& a = partition.coefficients;
  if (a.empty() || u.size() != a.size() + 1) {
    std::ostringstream msg;
    msg << "expected " << a.size() + 1 << " breakpoints for " << a.size()
        << " coefficients, got " << u.size();
    return Violation{Violation::Kind::size_mismatch, 0, msg.str()};
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i])) {
      return Violation{Violation::Kind::not_finite, i,
                       "breakpoint not finite at index " + std::to_string(i)};
    }
  }
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!std::isfinite(a[k])) {
      return Violation{Violation::Kind::not_finite, k,
                       "coefficient not finite at k=" + std::to_string(k)};
    }
  }
  for (std::size_t i = 1; i < u.size(); ++i) {
    if (!(u[i] > u[i - 1])) {
      return Violation{Violation::Kind::breakpoints_not_increasing, i,
                       "breakpoints not increasing at index " + std::to_string(i)};
    }
  }
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] < 0.0) {
      return Violation{Violation::Kind::negative_coefficient, k,
                       "negative coefficient at k=" + std::to_string(k)};
    }
  }
  for (std::size_t k = 0; k + 1 < a.size(); ++k) {
    if (a[k] == a[k + 1]) {
      return Violation{Violation::Kind::adjacent_equal, k,
                       "adjacent equal at k=" + std::to_string(k)};
    }
  }
  return std::nullopt;
}

PhasePartition reflect(const PhasePartition& partition) {
  PhasePartition out;
  const double s = partition.lower() + partition.upper();
  out.breakpoints.reserve(partition.breakpoints.size());
  for (auto it = partition.breakpoints.rbegin(); it != partition.breakpoints.rend(); ++it) {
    out.breakpoints.push_back(s - *it);
  }
  // Keep the end states bit-exact.
  out.breakpoints.front() = partition.lower();
  out.breakpoints.back() = partition.upper();
  out.coefficients.assign(partition.coefficients.rbegin(), partition.coefficients.rend());
  return out;
}

double phase_potential(const PhasePartition& partition, double u) {
  const auto& b = partition.breakpoints;
  const auto& a = partition.coefficients;
  double total = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (u <= b[k]) break;
    const double top = std::min(u, b[k + 1]);
    total += a[k] * a[k] * (top - b[k]);
  }
  return total;
}

RiemannProblem normalize_orientation(double u_minus, double u_plus, PhasePartition partition) {
  if (u_minus == u_plus) throw TrivialProblem("u_minus equals u_plus: the solution is constant");
  if (auto v = validate(partition)) throw std::invalid_argument("invalid partition: " + v->message);
  const double lo = std::min(u_minus, u_plus);
  const double hi = std::max(u_minus, u_plus);
  if (partition.lower() != lo || partition.upper() != hi) {
    std::ostringstream msg;
    msg << "partition spans [" << partition.lower() << ", " << partition.upper()
        << "] but the states span [" << lo << ", " << hi << "]";
    throw std::invalid_argument(msg.str());
  }
  RiemannProblem problem;
  problem.u_minus = lo;
  problem.u_plus = hi;
  problem.partition = std::move(partition);
  problem.orientation_flipped = u_minus > u_plus;
  return problem;
}

std::vector<double> BoundaryLayout::expand(std::span<const double> slots) const {
  if (slots.size() != m) throw std::invalid_argument("expand: expected " + std::to_string(m) + " slots");
  std::vector<double> nominal(n);
  for (std::size_t k = 0; k < n; ++k) nominal[k] = slots[free_index[k]];
  return nominal;
}

std::size_t BoundaryLayout::first_nominal(std::size_t slot) const {
  for (std::size_t k = 0; k < n; ++k) {
    if (free_index[k] == slot) return k + 1;
  }
  throw std::out_of_range("first_nominal: slot out of range");
}

BoundaryLayout build_layout(const PhasePartition& partition) {
  BoundaryLayout layout;
  const auto& a = partition.coefficients;
  layout.n = partition.interior_count();
  layout.free_index.resize(layout.n);
  layout.edge_left_degenerate = layout.n >= 1 && a.front() == 0.0;
  layout.edge_right_degenerate = layout.n >= 1 && a.back() == 0.0;
  std::size_t slot = 0;
  for (std::size_t k = 1; k <= layout.n; ++k) {
    // Boundaries k - 1 and k are identified across an inner zero interval.
    if (k >= 2 && a[k - 1] == 0.0) {
      layout.inner_degenerate.push_back(k - 1);
    } else if (k >= 2) {
      ++slot;
    }
    layout.free_index[k - 1] = slot;
  }
  layout.m = layout.n == 0 ? 0 : slot + 1;
  return layout;
}

BoundaryLayout layout_from_nominal(const PhasePartition& partition, std::span<const double> nominal) {
  BoundaryLayout layout;
  const auto& a = partition.coefficients;
  layout.n = nominal.size();
  layout.free_index.resize(layout.n);
  layout.edge_left_degenerate = layout.n >= 1 && a.front() == 0.0;
  layout.edge_right_degenerate = layout.n >= 1 && a.back() == 0.0;
  std::size_t slot = 0;
  for (std::size_t k = 1; k <= layout.n; ++k) {
    if (k >= 2 && nominal[k - 1] == nominal[k - 2]) {
      layout.inner_degenerate.push_back(k - 1);
    } else if (k >= 2) {
      ++slot;
    }
    layout.free_index[k - 1] = slot;
  }
  layout.m = layout.n == 0 ? 0 : slot + 1;
  return layout;
}

}  // namespace degdiff
