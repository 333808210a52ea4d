#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "depthwarp/camera.h"
#include "depthwarp/grid.h"
#include "depthwarp/projection.h"
#include "depthwarp/scale.h"

namespace depthwarp {

// Which definition of the global residual normalizer the adaptive smoothness
// weight uses. kLiteral multiplies the per-pixel residual by the mean
// residual (sigma = 1/mean); kMeanResidual divides by it (sigma = mean).
enum class SigmaMode { kLiteral, kMeanResidual };

struct LossWeights {
  double lambda_ph = 0.15;
  double lambda_gc = 0.1;
  double lambda_ssim = 0.85;
  double lambda_smooth_base = 0.01;  // per-scale weight = base / s
  double c = 5.0;                    // adaptive-weight scale factor
  int num_scales = 4;                // pyramid levels, in [1, 4]
  SigmaMode sigma_mode = SigmaMode::kLiteral;
};
void validate_weights(const LossWeights& w);

// Two views of a static scene with calibration, camera-to-world poses and
// per-view median scene depths. Ground-truth depth is carried for
// evaluation only; the losses never look at it.
struct ScenePair {
  Image image1, image2;
  CameraIntrinsics k1, k2;
  RigidPose world_pose1, world_pose2;
  MedianDepth mu1, mu2;
  std::optional<DepthMap> gt_depth1, gt_depth2;
};
void validate_pair(const ScenePair& pair);

// Per-term, per-scale, per-view loss values. The view index is the view
// being reconstructed (0-based). Term values are unweighted; `total` is the
// weighted multi-scale sum.
struct LossBreakdown {
  struct ScaleTerms {
    int downsample_factor = 1;
    std::array<double, 2> ph{};
    std::array<double, 2> gc{};
    std::array<double, 2> ssim{};
    std::array<double, 2> smooth{};
    std::array<long, 2> valid_count{};
  };
  std::vector<ScaleTerms> scales;
  double total = 0.0;

  // One CSV row per (scale, term, view): scale,term,view,value,valid_count.
  std::string to_csv() const;
};

// --- Individual loss terms -------------------------------------------------

struct PhotometricResult {
  double value = 0.0;
  ScalarGrid per_pixel_residual;  // masked channel-averaged |target - rec|
};

// Mean over valid pixels of the channel-averaged masked L1 residual.
// Zero valid pixels raise NoOverlapError.
PhotometricResult photometric_loss(const Image& target,
                                   const Image& reconstructed,
                                   const ValidityMask& mask);

// Sum over both view roles of the masked mean of (1 - SSIM(view, recon)).
double ssim_loss(const Image& a, const Image& a_rec, const Image& b,
                 const Image& b_rec, const ValidityMask& mask_a,
                 const ValidityMask& mask_b);

// alpha(p) = exp(-c * residual(p) / sigma). An all-zero residual is the
// converged case and yields alpha = 1 everywhere.
ScalarGrid adaptive_weights(const ScalarGrid& residual, double c,
                            SigmaMode mode = SigmaMode::kLiteral);

// Mean over all pixels of alpha * (|dx rel| * exp(-|dx img|) +
// |dy rel| * exp(-|dy img|)) with Sobel gradients; image gradients are
// channel-averaged before the absolute value.
double smoothness_loss(const ScalarGrid& relative, const Image& image,
                       const ScalarGrid& alpha);

// Normalized symmetric depth consistency: per valid pixel
// |d_proj - d_sampled| / (d_proj + d_sampled), averaged per direction and
// summed over the two directions. proj_ab carries view a's depth projected
// into view b; depth_b is sampled at its coordinates (and vice versa).
double geometric_consistency_loss(const ProjectionMap& proj_ab,
                                  const ProjectionMap& proj_ba,
                                  const DepthMap& depth_a,
                                  const DepthMap& depth_b,
                                  const ValidityMask& mask_ab,
                                  const ValidityMask& mask_ba);

// --- Multi-scale total loss and its gradient --------------------------------

// Bilinear-cell occupancy of one evaluation: for every scale, direction and
// pixel, the flattened floor cell of the projected coordinate, or -1 when
// the pixel is masked. Two evaluations whose traces differ straddle a cell
// or mask boundary, where central differences are not meaningful.
struct EvalTrace {
  std::vector<std::array<std::vector<int32_t>, 2>> scales;
  bool operator==(const EvalTrace&) const = default;
};

using AlphaPyramid = std::vector<std::array<ScalarGrid, 2>>;

struct TotalLossOptions {
  // Evaluate with these adaptive weights instead of recomputing them from
  // the photometric residual (the finite-difference checker pins them, since
  // the analytic gradient treats them as constants).
  const AlphaPyramid* frozen_alpha = nullptr;
  // Out-parameters, filled when non-null.
  AlphaPyramid* alpha_out = nullptr;
  EvalTrace* trace_out = nullptr;
};

// Full forward pass: pyramids of images and fields, scale transform,
// cross-view projection, reconstruction, all four terms for both views at
// every scale. NoOverlapError carries the scale index. Relative fields must
// match the finest raster; raster dimensions must stay even down to the
// coarsest level and at least 3x3 there.
LossBreakdown total_loss(const ScenePair& pair, const ScalarGrid& rel_field_1,
                         const ScalarGrid& rel_field_2, const LossWeights& w,
                         const TotalLossOptions& opts = {});

// Exact reverse-mode gradients of LossBreakdown::total with respect to every
// entry of both relative fields. Medians, poses, intrinsics, masks and the
// adaptive weights are treated as constants.
struct GradientPair {
  ScalarGrid grad1, grad2;
};
GradientPair total_loss_gradient(const ScenePair& pair,
                                 const ScalarGrid& rel_field_1,
                                 const ScalarGrid& rel_field_2,
                                 const LossWeights& w);

// Forward and backward in one pass; what the optimizer consumes.
struct LossEvaluation {
  LossBreakdown breakdown;
  ScalarGrid grad1, grad2;
};
LossEvaluation total_loss_with_gradient(const ScenePair& pair,
                                        const ScalarGrid& rel_field_1,
                                        const ScalarGrid& rel_field_2,
                                        const LossWeights& w);

}  // namespace depthwarp
