#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "depthwarp/losses.h"

namespace depthwarp {

// Polynomial-decay schedule: initial_lr * (1 - iteration/max_iterations)^0.9.
// Full at iteration 0, zero at iteration max_iterations.
double lr_schedule(long iteration, long max_iterations, double initial_lr);

// Elementwise Adam with bias correction. One state per optimized field.
struct AdamState {
  ScalarGrid m;  // first moment
  ScalarGrid v;  // second moment
  long step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  AdamState() = default;
  AdamState(int height, int width) : m(height, width, 0.0), v(height, width, 0.0) {}
};

// In-place update of `field`. A non-finite gradient entry raises
// DivergedError.
void adam_step(AdamState& state, ScalarGrid& field, const ScalarGrid& gradient,
               double lr);

struct OptimConfig {
  long max_iterations = 2000;
  double initial_lr = 1e-2;
  LossWeights weights;
  uint64_t seed = 0;
  long record_every = 10;
};
void validate_config(const OptimConfig& config);

struct TrajectoryRecord {
  long iteration = 0;
  double lr = 0.0;
  LossBreakdown breakdown;
};

struct OptimResult {
  ScalarGrid field1, field2;
  std::vector<TrajectoryRecord> trajectory;
  bool diverged = false;
  std::string message;  // set when diverged
};

// Direct optimization of the two relative-depth fields against the total
// loss. Fields start at zero, i.e. depth = mu everywhere. The loss is
// recorded at iteration 0, every record_every steps, and after the last
// step. Divergence (non-finite loss) stops early and returns the trajectory
// gathered so far.
OptimResult optimize(const ScenePair& pair, const OptimConfig& config);

// Trajectory CSV: iteration, lr, unweighted term sums per scale, total.
std::string trajectory_to_csv(const std::vector<TrajectoryRecord>& trajectory);

}  // namespace depthwarp
