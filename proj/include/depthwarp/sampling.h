#pragma once

#include "depthwarp/grid.h"
#include "depthwarp/projection.h"

namespace depthwarp {

// Differentiable bilinear sampling at the continuous coordinates of a
// ProjectionMap. A pixel is valid iff its coordinate lies inside
// [0, width-1] x [0, height-1] and the projected point is in front of the
// camera; everything else samples to 0 with mask 0. Out-of-bounds
// coordinates are never an error.
struct SampledGrid {
  ScalarGrid values;
  ValidityMask mask;
};
struct SampledImage {
  Image values;
  ValidityMask mask;
};

SampledGrid bilinear_sample(const ScalarGrid& source,
                            const ProjectionMap& coords);
SampledImage bilinear_sample(const Image& source, const ProjectionMap& coords);

// Reverse-mode companion of bilinear_sample. Accumulates (does not reset)
// into the gradient buffers:
//   grad_source  += d(sampled)/d(source values)   (may be null)
//   grad_u/grad_v += d(sampled)/d(coords)         (may be null)
// `upstream` holds dL/d(sampled value) and must match the sampled shape.
// Masked-out pixels contribute nothing. Gradients at exact integer
// coordinates take the right/down subgradient.
void bilinear_sample_backward(const ScalarGrid& source,
                              const ProjectionMap& coords,
                              const ValidityMask& mask,
                              const ScalarGrid& upstream,
                              ScalarGrid* grad_source, ScalarGrid* grad_u,
                              ScalarGrid* grad_v);
void bilinear_sample_backward(const Image& source, const ProjectionMap& coords,
                              const ValidityMask& mask, const Image& upstream,
                              Image* grad_source, ScalarGrid* grad_u,
                              ScalarGrid* grad_v);

}  // namespace depthwarp
