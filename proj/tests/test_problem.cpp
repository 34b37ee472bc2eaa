#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "degdiff/problem.hpp"
#include "degdiff/solver.hpp"
#include "support.hpp"

using namespace degdiff;

namespace {

PhasePartition make(std::vector<double> u, std::vector<double> a) { return {std::move(u), std::move(a)}; }

}  // namespace

TEST(Validate, AcceptsWellFormedPartition) {
  EXPECT_FALSE(validate(make({0, 1, 2}, {1, 2})).has_value());
}

TEST(Validate, ReportsEqualAdjacentCoefficients) {
  const auto v = validate(make({0, 1, 2}, {0, 0}));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, Violation::Kind::adjacent_equal);
  EXPECT_EQ(v->index, 0u);
  EXPECT_EQ(v->message, "adjacent equal at k=0");
}

TEST(Validate, ReportsNonIncreasingBreakpoints) {
  const auto v = validate(make({0, 2, 1}, {1, 2}));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, Violation::Kind::breakpoints_not_increasing);
  EXPECT_EQ(v->index, 2u);
  EXPECT_EQ(v->message, "breakpoints not increasing at index 2");
}

TEST(Validate, ReportsOtherViolations) {
  EXPECT_EQ(validate(make({0, 1, 2}, {1, -2}))->kind, Violation::Kind::negative_coefficient);
  EXPECT_EQ(validate(make({0, 1, 2}, {1}))->kind, Violation::Kind::size_mismatch);
  EXPECT_EQ(validate(make({0, NAN, 2}, {1, 2}))->kind, Violation::Kind::not_finite);
  EXPECT_EQ(validate(make({0, 1}, {INFINITY}))->kind, Violation::Kind::not_finite);
}

TEST(Orientation, IncreasingStatesUnchanged) {
  const auto p = normalize_orientation(0, 2, make({0, 1, 2}, {1, 2}));
  EXPECT_FALSE(p.orientation_flipped);
  EXPECT_EQ(p.u_minus, 0);
  EXPECT_EQ(p.u_plus, 2);
}

TEST(Orientation, DecreasingStatesFlipped) {
  const auto p = normalize_orientation(2, 0, make({0, 1, 2}, {1, 2}));
  EXPECT_TRUE(p.orientation_flipped);
  EXPECT_EQ(p.u_minus, 0);
  EXPECT_EQ(p.u_plus, 2);
  EXPECT_EQ(p.original_left(), 2);
  EXPECT_EQ(p.original_right(), 0);
}

TEST(Orientation, RejectsEqualStatesAndMismatchedSpan) {
  EXPECT_THROW(normalize_orientation(1, 1, make({0, 1, 2}, {1, 2})), TrivialProblem);
  EXPECT_THROW(normalize_orientation(0, 3, make({0, 1, 2}, {1, 2})), std::invalid_argument);
  EXPECT_THROW(normalize_orientation(0, 2, make({0, 1, 2}, {1, 1})), std::invalid_argument);
}

TEST(Orientation, FlippedSolveIsMirrorImage) {
  const auto part = make({0, 0.5, 1.2, 2}, {1, 0.4, 2});
  const Solution up = solve(0, 2, part);
  const Solution down = solve(2, 0, part);
  ASSERT_TRUE(up.converged());
  ASSERT_TRUE(down.converged());
  const auto a = up.profile.boundaries();
  const auto b = down.profile.boundaries();
  ASSERT_EQ(a.size(), b.size());
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(b[k], -a[n - 1 - k], 1e-12);
  for (double xi = -3; xi <= 3; xi += 0.25) {
    EXPECT_NEAR(eval_selfsimilar(down.profile, xi).left, eval_selfsimilar(up.profile, -xi).right, 1e-12);
  }
}

TEST(Layout, NondegenerateHasNoMerging) {
  const auto l = build_layout(make({0, 1, 2, 3}, {1, 2, 1}));
  EXPECT_EQ(l.n, 2u);
  EXPECT_EQ(l.m, 2u);
  EXPECT_EQ(l.free_index, (std::vector<std::size_t>{0, 1}));
  EXPECT_FALSE(l.edge_left_degenerate || l.edge_right_degenerate);
  EXPECT_TRUE(l.inner_degenerate.empty());
}

TEST(Layout, InnerZeroMergesNeighbours) {
  const auto l = build_layout(make({0, 1, 2, 3, 4}, {1, 0, 1, 2}));
  EXPECT_EQ(l.n, 3u);
  EXPECT_EQ(l.m, 2u);
  EXPECT_EQ(l.slot_of(1), 0u);
  EXPECT_EQ(l.slot_of(2), 0u);
  EXPECT_EQ(l.slot_of(3), 1u);
  EXPECT_EQ(l.inner_degenerate, (std::vector<std::size_t>{1}));
  EXPECT_EQ(l.first_nominal(1), 3u);
}

TEST(Layout, DegenerateEdge) {
  const auto l = build_layout(make({0, 1, 2}, {0, 1}));
  EXPECT_EQ(l.m, 1u);
  EXPECT_TRUE(l.edge_left_degenerate);
  EXPECT_FALSE(l.edge_right_degenerate);
}

TEST(Layout, EdgeAndInnerDegeneracyCompose) {
  const auto l = build_layout(make({0, 1, 2, 3, 4, 5}, {0, 1, 0, 2, 0}));
  EXPECT_EQ(l.n, 4u);
  EXPECT_EQ(l.m, 3u);
  EXPECT_TRUE(l.edge_left_degenerate);
  EXPECT_TRUE(l.edge_right_degenerate);
  EXPECT_EQ(l.free_index, (std::vector<std::size_t>{0, 1, 1, 2}));
}

TEST(Layout, RoundTripThroughNominalValues) {
  testkit::ProblemGenerator gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto part = gen.partition(trial % 7);
    ASSERT_FALSE(validate(part).has_value());
    const auto layout = build_layout(part);
    EXPECT_EQ(layout.m, layout.n - layout.inner_degenerate.size());
    const auto slots = gen.feasible_point(layout.m, 5.0);
    const auto nominal = layout.expand(slots);
    const auto again = layout_from_nominal(part, nominal);
    EXPECT_EQ(again.free_index, layout.free_index);
    EXPECT_EQ(again.m, layout.m);
    EXPECT_EQ(again.expand(slots), nominal);
  }
}

TEST(Layout, ReflectionReversesLayout) {
  testkit::ProblemGenerator gen(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto part = gen.partition(trial % 7);
    const auto l = build_layout(part);
    const auto r = build_layout(reflect(part));
    ASSERT_EQ(r.n, l.n);
    ASSERT_EQ(r.m, l.m);
    EXPECT_EQ(r.edge_left_degenerate, l.edge_right_degenerate);
    EXPECT_EQ(r.edge_right_degenerate, l.edge_left_degenerate);
    for (std::size_t k = 1; k <= l.n; ++k) EXPECT_EQ(r.slot_of(k), l.m - 1 - l.slot_of(l.n + 1 - k));
    std::vector<std::size_t> mirrored;
    for (auto k : l.inner_degenerate) mirrored.push_back(l.n - k);
    std::sort(mirrored.begin(), mirrored.end());
    EXPECT_EQ(r.inner_degenerate, mirrored);
  }
}

TEST(PhasePotential, PiecewiseLinearIntegralOfSquare) {
  const auto part = make({0, 1, 3}, {2, 0.5});
  EXPECT_DOUBLE_EQ(phase_potential(part, 0), 0);
  EXPECT_DOUBLE_EQ(phase_potential(part, 0.5), 2);
  EXPECT_DOUBLE_EQ(phase_potential(part, 1), 4);
  EXPECT_DOUBLE_EQ(phase_potential(part, 3), 4.5);
  EXPECT_DOUBLE_EQ(phase_potential(part, 10), 4.5);
}
