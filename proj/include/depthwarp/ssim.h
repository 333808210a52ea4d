#pragma once

#include "depthwarp/grid.h"

namespace depthwarp {

// SSIM constants at unit dynamic range.
constexpr double kSsimC1 = 0.01 * 0.01;
constexpr double kSsimC2 = 0.03 * 0.03;

// Per-pixel SSIM over 3x3 unweighted box patches with replicate padding,
// averaged across channels. Output entries lie in [-1, 1] and equal 1
// exactly where the two patches are identical.
ScalarGrid ssim_map(const Image& a, const Image& b);

// Gradient of ssim_map with respect to the second image. `upstream` holds
// dL/d(ssim value) per pixel; accumulates into grad_b.
void ssim_map_backward_b(const Image& a, const Image& b,
                         const ScalarGrid& upstream, Image* grad_b);

}  // namespace depthwarp
