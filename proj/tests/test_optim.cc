#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "depthwarp/optim.h"
#include "scene_fixtures.h"

using namespace depthwarp;

TEST_CASE("the schedule starts at the initial rate and decays to zero") {
  CHECK(lr_schedule(0, 2000, 1e-4) == 1e-4);
  CHECK(lr_schedule(2000, 2000, 1e-4) == 0.0);
  // Scalar evaluation oracle at the halfway point.
  const double expected = 1e-4 * std::pow(0.5, 0.9);
  CHECK(lr_schedule(1000, 2000, 1e-4) == expected);
  CHECK(expected == doctest::Approx(5.359e-5).epsilon(1e-4));
  CHECK_THROWS_AS(lr_schedule(-1, 10, 1e-4), InvalidInputError);
  CHECK_THROWS_AS(lr_schedule(11, 10, 1e-4), InvalidInputError);
}

TEST_CASE("adam leaves the field unchanged under zero gradients") {
  AdamState state(2, 2);
  ScalarGrid field(2, 2, 0.7);
  for (int i = 0; i < 5; ++i) {
    adam_step(state, field, ScalarGrid(2, 2, 0.0), 0.1);
  }
  for (double v : field.values) CHECK(v == 0.7);
  for (double v : state.m.values) CHECK(v == 0.0);
  for (double v : state.v.values) CHECK(v == 0.0);
}

TEST_CASE("the first adam step moves by roughly the learning rate") {
  AdamState state(1, 1);
  ScalarGrid field(1, 1, 0.0);
  adam_step(state, field, ScalarGrid(1, 1, 1.0), 0.1);
  // Bias-corrected m_hat = v_hat = 1, so the update is -lr/(1 + eps).
  CHECK(field.at(0, 0) == doctest::Approx(-0.1).epsilon(1e-7));
  CHECK(state.step == 1);
}

TEST_CASE("non-finite gradients abort as divergence") {
  AdamState state(1, 2);
  ScalarGrid field(1, 2, 0.0);
  ScalarGrid grad(1, 2, 0.0);
  grad.at(0, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(adam_step(state, field, grad, 0.1), DivergedError);
}

TEST_CASE("optimization is bit-reproducible") {
  const fixtures::PairBundle b = fixtures::small_pair();
  OptimConfig config;
  config.max_iterations = 12;
  config.initial_lr = 1e-2;
  config.record_every = 3;
  config.weights.num_scales = 3;
  const OptimResult a = optimize(b.pair, config);
  const OptimResult c = optimize(b.pair, config);
  REQUIRE_FALSE(a.diverged);
  CHECK(a.field1.values == c.field1.values);
  CHECK(a.field2.values == c.field2.values);
  REQUIRE(a.trajectory.size() == c.trajectory.size());
  for (size_t i = 0; i < a.trajectory.size(); ++i) {
    CHECK(a.trajectory[i].breakdown.total == c.trajectory[i].breakdown.total);
  }
  // records at 0, 3, 6, 9, 12
  CHECK(a.trajectory.size() == 5);
  CHECK(a.trajectory.back().iteration == 12);
}

TEST_CASE("zero weights leave the fields at their initialization") {
  const fixtures::PairBundle b = fixtures::small_pair();
  OptimConfig config;
  config.max_iterations = 8;
  config.weights.lambda_ph = 0.0;
  config.weights.lambda_gc = 0.0;
  config.weights.lambda_ssim = 0.0;
  config.weights.lambda_smooth_base = 0.0;
  config.weights.num_scales = 3;
  const OptimResult r = optimize(b.pair, config);
  REQUIRE_FALSE(r.diverged);
  for (double v : r.field1.values) CHECK(v == 0.0);
  for (double v : r.field2.values) CHECK(v == 0.0);
  // Zero fields mean depth = mu exactly.
  const DepthMap d = scale_transform(r.field1, b.pair.mu1);
  for (double v : d.grid.values) CHECK(v == b.pair.mu1.value);
}

TEST_CASE("a GT-initialized identity pair is an exact stationary point") {
  const ScenePair pair = fixtures::identity_pair();
  const ScalarGrid gt_field(16, 16, 0.0);  // log(GT/mu) = log(1) = 0
  LossWeights w;
  w.num_scales = 3;
  const GradientPair grads = total_loss_gradient(pair, gt_field, gt_field, w);
  for (double v : grads.grad1.values) CHECK(v == 0.0);
  for (double v : grads.grad2.values) CHECK(v == 0.0);
}

TEST_CASE("GT-initialized fields stay near-stationary over ten steps") {
  const fixtures::PairBundle b =
      fixtures::reference_pair(fixtures::smooth_scene());
  OptimConfig config;
  config.max_iterations = 10;
  config.record_every = 1;
  config.initial_lr = 1e-4;
  config.weights.lambda_smooth_base = 0.0;  // GT is not smoothness-stationary
  // Run from the GT initialization by seeding the fields manually.
  const ScalarGrid f1 = fixtures::gt_field(*b.pair.gt_depth1, b.pair.mu1);
  const ScalarGrid f2 = fixtures::gt_field(*b.pair.gt_depth2, b.pair.mu2);

  ScalarGrid field1 = f1;
  ScalarGrid field2 = f2;
  AdamState s1(64, 64), s2(64, 64);
  const LossBreakdown initial =
      total_loss(b.pair, field1, field2, config.weights);
  double prev_total = initial.total;
  double final_ph = 0.0;
  for (long it = 0; it < config.max_iterations; ++it) {
    const LossEvaluation eval =
        total_loss_with_gradient(b.pair, field1, field2, config.weights);
    const double lr =
        lr_schedule(it, config.max_iterations, config.initial_lr);
    adam_step(s1, field1, eval.grad1, lr);
    adam_step(s2, field2, eval.grad2, lr);
    const LossBreakdown now = total_loss(b.pair, field1, field2,
                                         config.weights);
    CHECK(now.total <= prev_total + 1e-9);
    prev_total = now.total;
    final_ph = now.scales[0].ph[0] + now.scales[0].ph[1];
  }
  const double initial_ph = initial.scales[0].ph[0] + initial.scales[0].ph[1];
  CHECK(final_ph < initial_ph + 1e-9);
}

TEST_CASE("a short optimization strictly reduces the loss") {
  const fixtures::PairBundle b =
      fixtures::reference_pair(fixtures::rich_scene());
  OptimConfig config;
  config.max_iterations = 60;
  config.initial_lr = 1e-2;
  config.record_every = 10;
  const OptimResult r = optimize(b.pair, config);
  REQUIRE_FALSE(r.diverged);
  CHECK(r.trajectory.back().breakdown.total <
        0.9 * r.trajectory.front().breakdown.total);
}

TEST_CASE("an absurd learning rate diverges with a partial trajectory") {
  const fixtures::PairBundle b = fixtures::small_pair();
  OptimConfig config;
  config.max_iterations = 400;
  config.initial_lr = 1e6;  // drives exp() into overflow
  config.record_every = 1;
  config.weights.num_scales = 3;
  const OptimResult r = optimize(b.pair, config);
  CHECK(r.diverged);
  CHECK_FALSE(r.message.empty());
  CHECK_FALSE(r.trajectory.empty());
}

TEST_CASE("trajectory csv has the documented layout") {
  const fixtures::PairBundle b = fixtures::small_pair();
  OptimConfig config;
  config.max_iterations = 4;
  config.record_every = 2;
  config.weights.num_scales = 2;
  const OptimResult r = optimize(b.pair, config);
  const std::string csv = trajectory_to_csv(r.trajectory);
  CHECK(csv.find("iteration,lr,ph_s1,gc_s1,ssim_s1,smooth_s1,ph_s2,gc_s2,"
                 "ssim_s2,smooth_s2,total\n") == 0);
  // header + records at iterations 0, 2, 4
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("config invariants are enforced") {
  OptimConfig config;
  config.max_iterations = 0;
  CHECK_THROWS_AS(validate_config(config), InvalidInputError);
  config.max_iterations = 10;
  config.initial_lr = 0.0;
  CHECK_THROWS_AS(validate_config(config), InvalidInputError);
  config.initial_lr = 1e-4;
  config.record_every = 0;
  CHECK_THROWS_AS(validate_config(config), InvalidInputError);
}
