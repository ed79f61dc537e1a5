#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "mscs/problem.hpp"
#include "mscs/trial.hpp"

using namespace mscs;

namespace {

ObjectiveProblem box2() {
  ObjectiveProblem p;
  p.name = "box2";
  p.lower = {-1.0, 0.0};
  p.upper = {1.0, 10.0};
  p.objective = [](std::span<const double> x, RngStream*) { return x[0] * x[0] + x[1]; };
  return p;
}

}  // namespace

TEST(Problem, ValidateRejectsBadBounds) {
  auto p = box2();
  EXPECT_NO_THROW(p.validate());
  p.upper[0] = -1.0;
  EXPECT_THROW(p.validate(), ParameterError);
  p = box2();
  p.upper.pop_back();
  EXPECT_THROW(p.validate(), ParameterError);
  p = box2();
  p.objective = nullptr;
  EXPECT_THROW(p.validate(), ParameterError);
  p = box2();
  p.integer_dims = {{5, 1.0, 0.0}};
  EXPECT_THROW(p.validate(), ParameterError);
}

TEST(ErrorMetric, AbsoluteDifference) {
  EXPECT_EQ(error_metric(3.0, 1.0).e_f, 2.0);
  EXPECT_EQ(error_metric(1.0, 3.0).e_f, 2.0);
  EXPECT_EQ(error_metric(-450.0, -450.0).e_f, 0.0);
  EXPECT_THROW(error_metric(std::nan(""), 0.0), EvaluationError);
  EXPECT_THROW(error_metric(0.0, std::numeric_limits<double>::infinity()), EvaluationError);
}

TEST(Penalty, FeasiblePointIsUnpenalized) {
  auto p = box2();
  p.constraints = {[](std::span<const double> x) { return x[0] - 0.5; }};
  const Vec x{0.25, 1.0};
  EXPECT_EQ(constraint_violation(p, x), 0.0);
  EXPECT_EQ(evaluate_penalized(p, x, {}), p.value(x));
}

TEST(Penalty, QuadraticInViolation) {
  auto p = box2();
  p.constraints = {[](std::span<const double> x) { return x[0] - 0.5; },
                   [](std::span<const double> x) { return x[1] - 2.0; }};
  const Vec x{0.75, 3.0};
  EXPECT_DOUBLE_EQ(constraint_violation(p, x), 0.25 * 0.25 + 1.0);
  EXPECT_DOUBLE_EQ(evaluate_penalized(p, x, {1e9}), p.value(x) + 1e9 * (0.0625 + 1.0));
  EXPECT_DOUBLE_EQ(max_constraint(p, x), 1.0);
}

TEST(Penalty, NonFiniteConstraintNamesIndex) {
  auto p = box2();
  p.constraints = {[](std::span<const double>) { return 0.0; },
                   [](std::span<const double>) { return std::nan(""); }};
  try {
    (void)evaluate_penalized(p, Vec{0.0, 0.0}, {});
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_EQ(e.index(), 1u);
  }
}

TEST(Penalty, NonFiniteObjectiveThrows) {
  auto p = box2();
  p.objective = [](std::span<const double>, RngStream*) { return std::numeric_limits<double>::infinity(); };
  EXPECT_THROW((void)evaluate_penalized(p, Vec{0.0, 0.0}, {}), EvaluationError);
}

TEST(Clamp, ClipsToBounds) {
  const auto p = box2();
  EXPECT_EQ(clamp_and_snap(Vec{-5.0, 20.0}, p), (Vec{-1.0, 10.0}));
  EXPECT_EQ(clamp_and_snap(Vec{0.5, 5.0}, p), (Vec{0.5, 5.0}));
}

TEST(Clamp, SnapsIntegerDimsInsideBounds) {
  auto p = box2();
  p.lower = {0.0625, 17.0};
  p.upper = {6.1875, 28.0};
  p.integer_dims = {{0, 0.0625, 0.0}, {1, 1.0, 0.0}};
  EXPECT_EQ(clamp_and_snap(Vec{0.8, 17.4}, p), (Vec{0.8125, 17.0}));
  EXPECT_EQ(clamp_and_snap(Vec{0.0, 100.0}, p), (Vec{0.0625, 28.0}));
  // Bounds that are not grid points round inwards.
  p.lower = {0.1, 16.5};
  p.upper = {0.2, 27.5};
  EXPECT_EQ(clamp_and_snap(Vec{0.0, 16.5}, p), (Vec{0.125, 17.0}));
  EXPECT_EQ(clamp_and_snap(Vec{1.0, 99.0}, p), (Vec{0.1875, 27.0}));
}

// clamp_and_snap(clamp_and_snap(x)) == clamp_and_snap(x), and the result is
// always in bounds and on the grid.
TEST(Clamp, IdempotentProperty) {
  auto p = box2();
  p.lower = {-3.0, 0.0625, 17.0};
  p.upper = {3.0, 6.1875, 28.0};
  p.integer_dims = {{1, 0.0625, 0.0}, {2, 1.0, 0.0}};
  RngStream r(77);
  for (int i = 0; i < 10000; ++i) {
    Vec x{r.normal(0, 10), r.normal(0, 10), r.normal(20, 20)};
    const Vec once = clamp_and_snap(x, p);
    ASSERT_EQ(clamp_and_snap(once, p), once);
    for (std::size_t d = 0; d < 3; ++d) {
      ASSERT_GE(once[d], p.lower[d]);
      ASSERT_LE(once[d], p.upper[d]);
    }
    ASSERT_EQ(std::fmod(once[1], 0.0625), 0.0);
    ASSERT_EQ(once[2], std::round(once[2]));
  }
}

TEST(Evaluator, CountsAndEnforcesBudget) {
  const auto p = box2();
  RngStream r(1);
  Evaluator eval(p, {}, r, 3);
  EXPECT_EQ(eval(Vec{0.5, 1.0}), 1.25);
  EXPECT_EQ(eval(Vec{0.0, 0.5}), 0.5);
  EXPECT_EQ(eval(Vec{1.0, 1.0}), 2.0);
  EXPECT_EQ(eval.used(), 3u);
  EXPECT_THROW(eval(Vec{0.0, 0.0}), BudgetExhausted);
  EXPECT_EQ(eval.used(), 3u);
  EXPECT_EQ(eval.best().f, 0.5);
  EXPECT_EQ(eval.best().x, (Vec{0.0, 0.5}));
}

TEST(TrialResult, ErrorOnlyWithKnownMinimum) {
  auto p = box2();
  RngStream r(1);
  Evaluator eval(p, {}, r);
  (void)eval(Vec{0.0, 2.0});
  auto res = make_trial_result(eval, {2.0}, 1);
  EXPECT_FALSE(res.e_f.has_value());
  p.known_min = 0.0;
  Evaluator eval2(p, {}, r);
  (void)eval2(Vec{0.0, 2.0});
  res = make_trial_result(eval2, {2.0}, 1);
  ASSERT_TRUE(res.e_f.has_value());
  EXPECT_EQ(res.e_f->e_f, 2.0);
  EXPECT_EQ(res.fe_used, 1u);
}

TEST(RandomPoint, InsideBounds) {
  const auto p = box2();
  RngStream r(3);
  for (int i = 0; i < 1000; ++i) {
    const Vec x = random_point(p, r);
    ASSERT_GE(x[0], -1.0);
    ASSERT_LT(x[0], 1.0);
    ASSERT_GE(x[1], 0.0);
    ASSERT_LT(x[1], 10.0);
  }
}
