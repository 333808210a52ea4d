#include "depthwarp/optim.h"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace depthwarp {

double lr_schedule(long iteration, long max_iterations, double initial_lr) {
  if (iteration < 0 || iteration > max_iterations) {
    throw InvalidInputError("lr_schedule iteration out of [0, max] range");
  }
  const double progress =
      static_cast<double>(iteration) / static_cast<double>(max_iterations);
  return initial_lr * std::pow(1.0 - progress, 0.9);
}

void adam_step(AdamState& state, ScalarGrid& field, const ScalarGrid& gradient,
               double lr) {
  if (!field.same_shape(gradient) || !field.same_shape(state.m)) {
    throw InvalidInputError("adam_step requires matching dimensions");
  }
  state.step += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, state.step);
  const double bc2 = 1.0 - std::pow(state.beta2, state.step);
  for (size_t i = 0; i < field.values.size(); ++i) {
    const double g = gradient.values[i];
    if (!std::isfinite(g)) {
      throw DivergedError("non-finite gradient entry at index " +
                          std::to_string(i));
    }
    state.m.values[i] = state.beta1 * state.m.values[i] +
                        (1.0 - state.beta1) * g;
    state.v.values[i] = state.beta2 * state.v.values[i] +
                        (1.0 - state.beta2) * g * g;
    const double m_hat = state.m.values[i] / bc1;
    const double v_hat = state.v.values[i] / bc2;
    field.values[i] -= lr * m_hat / (std::sqrt(v_hat) + state.epsilon);
  }
}

void validate_config(const OptimConfig& config) {
  if (config.max_iterations < 1) {
    throw InvalidInputError("max_iterations must be at least 1");
  }
  if (!(config.initial_lr > 0.0)) {
    throw InvalidInputError("initial_lr must be positive");
  }
  if (config.record_every < 1) {
    throw InvalidInputError("record_every must be at least 1");
  }
  validate_weights(config.weights);
}

OptimResult optimize(const ScenePair& pair, const OptimConfig& config) {
  validate_config(config);
  validate_pair(pair);
  const int h = pair.image1.height;
  const int w = pair.image1.width;

  OptimResult result;
  result.field1 = ScalarGrid(h, w, 0.0);
  result.field2 = ScalarGrid(h, w, 0.0);

  // Zero fields mean depth = mu exactly; e^0 is exact, so this holds
  // bitwise and pins the documented initialization.
  {
    const DepthMap d0 = scale_transform(result.field1, pair.mu1);
    for (double v : d0.grid.values) {
      if (v != pair.mu1.value) {
        throw InvalidInputError("zero field did not map to depth == mu");
      }
    }
  }

  AdamState state1(h, w);
  AdamState state2(h, w);

  for (long it = 0; it <= config.max_iterations; ++it) {
    LossEvaluation eval;
    try {
      eval = total_loss_with_gradient(pair, result.field1, result.field2,
                                      config.weights);
    } catch (const InvalidInputError& err) {
      // Depth overflowed the scale transform: treat as divergence.
      result.diverged = true;
      result.message = err.what();
      return result;
    }
    if (!std::isfinite(eval.breakdown.total)) {
      result.diverged = true;
      result.message = "loss became non-finite at iteration " +
                       std::to_string(it);
      return result;
    }
    const double lr = lr_schedule(it, config.max_iterations,
                                  config.initial_lr);
    if (it % config.record_every == 0 || it == config.max_iterations) {
      result.trajectory.push_back(
          TrajectoryRecord{it, lr, eval.breakdown});
    }
    if (it == config.max_iterations) break;
    try {
      adam_step(state1, result.field1, eval.grad1, lr);
      adam_step(state2, result.field2, eval.grad2, lr);
    } catch (const DivergedError& err) {
      result.diverged = true;
      result.message = err.what();
      return result;
    }
  }
  return result;
}

std::string trajectory_to_csv(
    const std::vector<TrajectoryRecord>& trajectory) {
  std::ostringstream out;
  out << "iteration,lr";
  if (!trajectory.empty()) {
    for (const auto& s : trajectory.front().breakdown.scales) {
      const int f = s.downsample_factor;
      out << ",ph_s" << f << ",gc_s" << f << ",ssim_s" << f << ",smooth_s"
          << f;
    }
  }
  out << ",total\n";
  char buf[64];
  const auto emit = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << ',' << buf;
  };
  for (const TrajectoryRecord& r : trajectory) {
    out << r.iteration;
    emit(r.lr);
    for (const auto& s : r.breakdown.scales) {
      emit(s.ph[0] + s.ph[1]);
      emit(s.gc[0] + s.gc[1]);
      emit(s.ssim[0] + s.ssim[1]);
      emit(s.smooth[0] + s.smooth[1]);
    }
    emit(r.breakdown.total);
    out << '\n';
  }
  return out.str();
}

}  // namespace depthwarp
