#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "degdiff/continuum.hpp"
#include "degdiff/entropy.hpp"
#include "degdiff/optimizer.hpp"
#include "degdiff/oracle.hpp"
#include "degdiff/special_functions.hpp"
#include "support.hpp"

using namespace degdiff;
using testkit::ProblemGenerator;

namespace {

RiemannProblem make_problem(std::vector<double> u, std::vector<double> a) {
  PhasePartition p{std::move(u), std::move(a)};
  const double lo = p.lower();
  const double hi = p.upper();
  return normalize_orientation(lo, hi, std::move(p));
}

}  // namespace

TEST(InitialGuess, TwoPhaseAtOrigin) {
  const auto p = make_problem({0, 1, 2}, {1, 2});
  EXPECT_EQ(initial_guess(p, build_layout(p.partition)), std::vector<double>{0.0});
}

TEST(InitialGuess, ExactForSplitHeatProblem) {
  const auto one = continuum::DiffusionFunction({{0.0, 1.0}, {1.0, 1.0}});
  const auto d = continuum::discretize(one, 8);
  const auto p = normalize_orientation(0.0, 1.0, d.partition);
  const auto l = build_layout(p.partition);
  const auto guess = initial_guess(p, l);
  const auto result = minimize(p, l);
  ASSERT_TRUE(result.converged);
  for (std::size_t k = 1; k < 8; ++k) {
    EXPECT_NEAR(guess[k - 1], sf::F_inverse(k / 8.0), 1e-11);
    EXPECT_NEAR(result.minimizer[k - 1], guess[k - 1], 1e-10);
  }
}

TEST(InitialGuess, AlwaysFeasible) {
  ProblemGenerator gen(31);
  for (int trial = 0; trial < 1000; ++trial) {
    gen.zero_p = (trial % 4) * 0.15;
    const auto p = gen.problem(1 + trial % 8);
    const auto l = build_layout(p.partition);
    EXPECT_TRUE(feasible(l, initial_guess(p, l))) << "trial " << trial;
  }
}

TEST(Minimize, ReflectionPair) {
  const auto p = make_problem({0, 1, 2}, {1, 2});
  const auto r = make_problem({0, 1, 2}, {2, 1});
  const auto a = minimize(p, build_layout(p.partition));
  const auto b = minimize(r, build_layout(r.partition));
  ASSERT_TRUE(a.converged && b.converged);
  EXPECT_NEAR(a.minimizer[0], -b.minimizer[0], 1e-12);
  EXPECT_NEAR(a.entropy, b.entropy, 1e-12);
}

TEST(Minimize, AgreesWithGridSearch) {
  const auto p = make_problem({0, 1, 2}, {1, 2});
  const auto l = build_layout(p.partition);
  const auto result = minimize(p, l);
  const auto grid = oracle::grid_search_min(p, l, 6.0, 0.1);
  EXPECT_LE(grid.final_step, 1e-4);
  EXPECT_NEAR(result.minimizer[0], grid.minimizer[0], 1e-4);
  EXPECT_LE(result.entropy, grid.entropy);
}

TEST(Minimize, AgreesWithGridSearchInTwoDimensions) {
  for (auto [u, a] : {std::pair{std::vector<double>{0, 1, 2, 3}, std::vector<double>{1, 2, 0.7}},
                      std::pair{std::vector<double>{0, 0.5, 1.5, 2}, std::vector<double>{0, 1.5, 0}},
                      std::pair{std::vector<double>{0, 1, 2, 3, 4}, std::vector<double>{2, 0, 1, 0.5}}}) {
    const auto p = make_problem(u, a);
    const auto l = build_layout(p.partition);
    ASSERT_EQ(l.m, 2u);
    const auto result = minimize(p, l);
    const auto grid = oracle::grid_search_min(p, l, 5.0, 0.05);
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(result.minimizer[j], grid.minimizer[j], 1e-4);
  }
}

TEST(Minimize, DegenerateEdgeMatchesStefanBisection) {
  for (auto a : {std::vector<double>{0, 1}, std::vector<double>{1, 0}, std::vector<double>{0, 0.3},
                 std::vector<double>{4, 0}}) {
    const auto p = make_problem({0, 1, 2}, a);
    const auto result = minimize(p, build_layout(p.partition));
    ASSERT_TRUE(result.converged);
    EXPECT_NEAR(result.minimizer[0], oracle::stefan_bisection(p), 1e-10);
  }
}

TEST(Minimize, TraceDescendsAndConvergesQuadratically) {
  ProblemGenerator gen(32);
  const double eps = std::numeric_limits<double>::epsilon();
  for (int trial = 0; trial < 100; ++trial) {
    gen.zero_p = 0.2;
    const auto p = gen.problem(1 + trial % 6);
    const auto l = build_layout(p.partition);
    const auto r = minimize(p, l);
    ASSERT_TRUE(r.converged) << "trial " << trial;
    EXPECT_LE(r.grad_norm, r.grad_tol);
    EXPECT_EQ(r.trace.size(), static_cast<std::size_t>(r.iterations) + 1);
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
      const auto& prev = r.trace[i - 1];
      const auto& cur = r.trace[i];
      if (cur.polish) {
        EXPECT_LT(cur.grad_norm, prev.grad_norm);
        EXPECT_LE(cur.value, prev.value + 64 * eps * (std::abs(prev.value) + 1));
      } else {
        EXPECT_LT(cur.value, prev.value) << "trial " << trial << " step " << i;
      }
    }
    for (std::size_t i = r.trace.size() - 1; i-- > 0;) {
      if (r.trace[i].grad_norm > 1e-9) {
        EXPECT_LE(r.trace[i + 1].grad_norm, std::max(r.trace[i].grad_norm * 1e-3, r.grad_tol))
            << "trial " << trial;
        break;
      }
    }
  }
}

TEST(Minimize, ScaleCovariance) {
  const std::vector<double> u{0, 0.6, 1.4, 2.1, 3};
  const std::vector<double> a{0.8, 2.0, 0.0, 1.3};
  const auto base = make_problem(u, a);
  const auto ref = minimize(base, build_layout(base.partition));
  ASSERT_TRUE(ref.converged);
  for (double lambda : {0.5, 2.0, 10.0}) {
    std::vector<double> scaled = a;
    for (double& v : scaled) v *= lambda;
    const auto p = make_problem(u, scaled);
    const auto r = minimize(p, build_layout(p.partition));
    ASSERT_TRUE(r.converged);
    for (std::size_t j = 0; j < r.minimizer.size(); ++j) {
      EXPECT_NEAR(r.minimizer[j], lambda * ref.minimizer[j], 1e-8) << "lambda " << lambda;
    }
  }
}

TEST(Minimize, RandomRestartsAgree) {
  ProblemGenerator gen(33);
  for (int trial = 0; trial < 20; ++trial) {
    gen.zero_p = 0.3;
    const auto p = gen.problem(1 + trial % 6);
    const auto l = build_layout(p.partition);
    const auto ref = minimize(p, l);
    ASSERT_TRUE(ref.converged);
    for (int restart = 0; restart < 10; ++restart) {
      const auto start = gen.feasible_point(l.m, 3.0 * p.partition.max_coefficient(), 0.05);
      const auto r = minimize(p, l, {}, start);
      ASSERT_TRUE(r.converged) << "trial " << trial << " restart " << restart;
      for (std::size_t j = 0; j < l.m; ++j) EXPECT_NEAR(r.minimizer[j], ref.minimizer[j], 1e-9);
    }
  }
}

TEST(Minimize, RejectsBadInput) {
  const auto p = make_problem({0, 1, 2, 3}, {1, 2, 1});
  const auto l = build_layout(p.partition);
  EXPECT_THROW(minimize(p, l, {}, std::vector<double>{1.0, 0.0}), std::domain_error);
  const auto single = make_problem({0, 1}, {1});
  EXPECT_THROW(minimize(single, build_layout(single.partition)), std::invalid_argument);
}

TEST(Minimize, ReportsNonConvergenceWithTrace) {
  const auto p = make_problem({0, 1, 2, 3}, {1, 2, 0.5});
  SolveOptions opts;
  opts.max_iters = 1;
  const auto start = std::vector<double>{-6.0, 5.0};
  const auto r = minimize(p, build_layout(p.partition), opts, start);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.trace.size(), 2u);
}
