#pragma once

#include "depthwarp/grid.h"

namespace depthwarp {

// 3x3 Sobel gradients with replicate boundary padding. gx responds to
// horizontal change (positive for values increasing with x), gy to vertical
// change (positive downward). Grids smaller than 3x3 are rejected.
struct SobelGradients {
  ScalarGrid gx;
  ScalarGrid gy;
};
SobelGradients sobel_gradients(const ScalarGrid& grid);

// Adjoint of sobel_gradients: accumulates the transpose action of the Sobel
// operators (with the same replicate padding) into grad_input.
void sobel_backward(const ScalarGrid& upstream_gx,
                    const ScalarGrid& upstream_gy, ScalarGrid* grad_input);

// 2x block-mean downsampling. Dimensions must be even.
ScalarGrid downsample2x(const ScalarGrid& grid);
Image downsample2x(const Image& image);

// Adjoint of downsample2x for gradient propagation across pyramid levels:
// every coarse-grid gradient entry contributes a quarter to each of its four
// fine-grid children. Accumulates into grad_fine.
void downsample2x_backward(const ScalarGrid& upstream_coarse,
                           ScalarGrid* grad_fine);

}  // namespace depthwarp
