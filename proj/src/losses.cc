#include "depthwarp/losses.h"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "depthwarp/filters.h"
#include "depthwarp/sampling.h"
#include "depthwarp/ssim.h"

namespace depthwarp {

namespace {

inline double sign_of(double x) {
  return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
}

// Forward state of one warp direction at one scale. Index k is the view
// being reconstructed; everything here is what the backward pass needs.
struct DirectionForward {
  ProjectionMap proj;         // view k pixels projected into the other view
  SampledImage recon;         // I'_k
  SampledGrid sampled_depth;  // other view's depth at the projected coords
  ScalarGrid residual;        // masked channel-averaged |I_k - I'_k|
  ScalarGrid ssim;            // ssim_map(I_k, I'_k)
  ScalarGrid alpha;           // adaptive smoothness weights actually used
  SobelGradients rel_grad;    // Sobel of the view's relative field
  ScalarGrid img_wx, img_wy;  // exp(-|channel-mean image Sobel|)
  long valid_count = 0;
  double l_ph = 0.0, l_ssim = 0.0, l_gc = 0.0, l_smooth = 0.0;
};

struct ScaleForward {
  int factor = 1;
  std::array<ScalarGrid, 2> rel;
  std::array<Image, 2> img;
  std::array<CameraIntrinsics, 2> intr;
  std::array<DepthMap, 2> depth;
  std::array<DirectionForward, 2> dir;
};

ScalarGrid channel_mean(const Image& image) {
  ScalarGrid out(image.height, image.width, 0.0);
  const double inv_c = 1.0 / image.channels;
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      double acc = 0.0;
      for (int c = 0; c < image.channels; ++c) acc += image.at(y, x, c);
      out.at(y, x) = acc * inv_c;
    }
  }
  return out;
}

DirectionForward forward_direction(int k, const ScaleForward& scale,
                                   const RigidPose& pose_k_to_other,
                                   const LossWeights& w,
                                   const ScalarGrid* frozen_alpha) {
  const int other = 1 - k;
  DirectionForward fwd;
  fwd.proj = project_pixels(scale.depth[k], scale.intr[k], scale.intr[other],
                            pose_k_to_other);
  fwd.recon = bilinear_sample(scale.img[other], fwd.proj);
  fwd.sampled_depth = bilinear_sample(scale.depth[other].grid, fwd.proj);
  fwd.valid_count = fwd.recon.mask.count();
  if (fwd.valid_count == 0) {
    throw NoOverlapError("no valid pixels reconstructing view " +
                         std::to_string(k + 1) + " at scale factor " +
                         std::to_string(scale.factor));
  }

  const Image& target = scale.img[k];
  const ValidityMask& mask = fwd.recon.mask;
  const long count = fwd.valid_count;

  // Photometric residual and loss.
  fwd.residual = ScalarGrid(target.height, target.width, 0.0);
  const double inv_c = 1.0 / target.channels;
  double ph_acc = 0.0;
  for (int y = 0; y < target.height; ++y) {
    for (int x = 0; x < target.width; ++x) {
      if (!mask.valid(y, x)) continue;
      double r = 0.0;
      for (int c = 0; c < target.channels; ++c) {
        r += std::abs(target.at(y, x, c) - fwd.recon.values.at(y, x, c));
      }
      r *= inv_c;
      fwd.residual.at(y, x) = r;
      ph_acc += r;
    }
  }
  fwd.l_ph = ph_acc / static_cast<double>(count);

  // SSIM loss over the same validity mask.
  fwd.ssim = ssim_map(target, fwd.recon.values);
  double ssim_acc = 0.0;
  for (size_t i = 0; i < fwd.ssim.values.size(); ++i) {
    if (mask.grid.values[i] != 0.0) ssim_acc += 1.0 - fwd.ssim.values[i];
  }
  fwd.l_ssim = ssim_acc / static_cast<double>(count);

  // Geometric consistency: projected depth vs the other view's predicted
  // depth sampled at the projected coordinates.
  double gc_acc = 0.0;
  for (int y = 0; y < target.height; ++y) {
    for (int x = 0; x < target.width; ++x) {
      if (!mask.valid(y, x)) continue;
      const size_t i = fwd.proj.index(y, x);
      const double a = fwd.proj.depth[i];
      const double b = fwd.sampled_depth.values.at(y, x);
      gc_acc += std::abs(a - b) / (a + b);
    }
  }
  fwd.l_gc = gc_acc / static_cast<double>(count);

  // Adaptive smoothness weights and the smoothness term.
  if (frozen_alpha != nullptr) {
    fwd.alpha = *frozen_alpha;
  } else {
    fwd.alpha = adaptive_weights(fwd.residual, w.c, w.sigma_mode);
  }
  fwd.rel_grad = sobel_gradients(scale.rel[k]);
  const SobelGradients img_grad = sobel_gradients(channel_mean(target));
  fwd.img_wx = ScalarGrid(target.height, target.width, 0.0);
  fwd.img_wy = ScalarGrid(target.height, target.width, 0.0);
  double sm_acc = 0.0;
  for (size_t i = 0; i < fwd.img_wx.values.size(); ++i) {
    fwd.img_wx.values[i] = std::exp(-std::abs(img_grad.gx.values[i]));
    fwd.img_wy.values[i] = std::exp(-std::abs(img_grad.gy.values[i]));
    sm_acc += fwd.alpha.values[i] *
              (std::abs(fwd.rel_grad.gx.values[i]) * fwd.img_wx.values[i] +
               std::abs(fwd.rel_grad.gy.values[i]) * fwd.img_wy.values[i]);
  }
  fwd.l_smooth = sm_acc / static_cast<double>(fwd.img_wx.values.size());
  return fwd;
}

// Reverse-mode pass of one direction. Accumulates d(total)/d(depth) for both
// views into grad_depth and the direct Sobel path into grad_rel.
void backward_direction(int k, const ScaleForward& scale,
                        const RigidPose& pose_k_to_other, const LossWeights& w,
                        std::array<ScalarGrid, 2>* grad_depth,
                        std::array<ScalarGrid, 2>* grad_rel) {
  const int other = 1 - k;
  const DirectionForward& fwd = scale.dir[k];
  const Image& target = scale.img[k];
  const ValidityMask& mask = fwd.recon.mask;
  const int h = target.height;
  const int wdt = target.width;
  const double count = static_cast<double>(fwd.valid_count);
  const double w_smooth = w.lambda_smooth_base / scale.factor;

  // dL/d(reconstructed image): photometric term ...
  Image d_recon(h, wdt, target.channels, 0.0);
  const double ph_coef = w.lambda_ph / (count * target.channels);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < wdt; ++x) {
      if (!mask.valid(y, x)) continue;
      for (int c = 0; c < target.channels; ++c) {
        const double diff = target.at(y, x, c) - fwd.recon.values.at(y, x, c);
        d_recon.at(y, x, c) -= ph_coef * sign_of(diff);
      }
    }
  }
  // ... plus the SSIM term through the 3x3 patch statistics.
  ScalarGrid up_ssim(h, wdt, 0.0);
  for (size_t i = 0; i < up_ssim.values.size(); ++i) {
    if (mask.grid.values[i] != 0.0) {
      up_ssim.values[i] = -w.lambda_ssim / count;
    }
  }
  ssim_map_backward_b(target, fwd.recon.values, up_ssim, &d_recon);

  // Image resampling: gradients flow into the projected coordinates only
  // (the source image is an input, not a parameter).
  ScalarGrid grad_u(h, wdt, 0.0);
  ScalarGrid grad_v(h, wdt, 0.0);
  bilinear_sample_backward(scale.img[other], fwd.proj, mask, d_recon, nullptr,
                           &grad_u, &grad_v);

  // Geometric consistency: both the projected depth a and the sampled depth
  // b carry gradients; b also moves with the coordinates.
  ScalarGrid d_proj_depth(h, wdt, 0.0);
  ScalarGrid d_sampled(h, wdt, 0.0);
  const double gc_coef = w.lambda_gc / count;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < wdt; ++x) {
      if (!mask.valid(y, x)) continue;
      const size_t i = fwd.proj.index(y, x);
      const double a = fwd.proj.depth[i];
      const double b = fwd.sampled_depth.values.at(y, x);
      const double s = sign_of(a - b);
      const double ab = a + b;
      const double num = std::abs(a - b);
      const double inv_ab2 = 1.0 / (ab * ab);
      d_proj_depth.at(y, x) = gc_coef * (s * ab - num) * inv_ab2;
      d_sampled.at(y, x) = gc_coef * (-s * ab - num) * inv_ab2;
    }
  }
  bilinear_sample_backward(scale.depth[other].grid, fwd.proj, mask, d_sampled,
                           &(*grad_depth)[other], &grad_u, &grad_v);

  // Chain coordinate and projected-depth gradients through the projection
  // into this view's depth map.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < wdt; ++x) {
      const double gu = grad_u.at(y, x);
      const double gv = grad_v.at(y, x);
      const double ga = d_proj_depth.at(y, x);
      if (gu == 0.0 && gv == 0.0 && ga == 0.0) continue;
      const PixelProjection jac =
          project_point(x, y, scale.depth[k].grid.at(y, x), scale.intr[k],
                        scale.intr[other], pose_k_to_other);
      (*grad_depth)[k].at(y, x) +=
          gu * jac.du_ddepth + gv * jac.dv_ddepth + ga * jac.ddepth_ddepth;
    }
  }

  // Smoothness: adjoint of the Sobel operators, alpha held constant.
  ScalarGrid u_gx(h, wdt, 0.0);
  ScalarGrid u_gy(h, wdt, 0.0);
  const double sm_coef = w_smooth / static_cast<double>(u_gx.values.size());
  for (size_t i = 0; i < u_gx.values.size(); ++i) {
    const double a = sm_coef * fwd.alpha.values[i];
    u_gx.values[i] = a * sign_of(fwd.rel_grad.gx.values[i]) *
                     fwd.img_wx.values[i];
    u_gy.values[i] = a * sign_of(fwd.rel_grad.gy.values[i]) *
                     fwd.img_wy.values[i];
  }
  sobel_backward(u_gx, u_gy, &(*grad_rel)[k]);
}

std::vector<ScaleForward> forward_all(const ScenePair& pair,
                                      const ScalarGrid& rel1,
                                      const ScalarGrid& rel2,
                                      const LossWeights& w,
                                      const TotalLossOptions& opts,
                                      const RigidPose& pose12,
                                      const RigidPose& pose21) {
  std::vector<ScaleForward> scales(w.num_scales);
  for (int si = 0; si < w.num_scales; ++si) {
    ScaleForward& s = scales[si];
    if (si == 0) {
      s.factor = 1;
      s.rel = {rel1, rel2};
      s.img = {pair.image1, pair.image2};
      s.intr = {pair.k1, pair.k2};
    } else {
      const ScaleForward& prev = scales[si - 1];
      s.factor = prev.factor * 2;
      s.rel = {downsample2x(prev.rel[0]), downsample2x(prev.rel[1])};
      s.img = {downsample2x(prev.img[0]), downsample2x(prev.img[1])};
      s.intr = {downscale_intrinsics(prev.intr[0], 1),
                downscale_intrinsics(prev.intr[1], 1)};
    }
    s.depth[0] = scale_transform(s.rel[0], pair.mu1);
    s.depth[1] = scale_transform(s.rel[1], pair.mu2);
    for (int k = 0; k < 2; ++k) {
      const ScalarGrid* frozen = nullptr;
      if (opts.frozen_alpha != nullptr) {
        frozen = &(*opts.frozen_alpha)[si][k];
      }
      s.dir[k] = forward_direction(k, s, k == 0 ? pose12 : pose21, w, frozen);
    }
  }
  return scales;
}

LossBreakdown summarize(const std::vector<ScaleForward>& scales,
                        const LossWeights& w) {
  LossBreakdown out;
  out.scales.resize(scales.size());
  double total = 0.0;
  for (size_t si = 0; si < scales.size(); ++si) {
    const ScaleForward& s = scales[si];
    LossBreakdown::ScaleTerms& t = out.scales[si];
    t.downsample_factor = s.factor;
    for (int k = 0; k < 2; ++k) {
      t.ph[k] = s.dir[k].l_ph;
      t.gc[k] = s.dir[k].l_gc;
      t.ssim[k] = s.dir[k].l_ssim;
      t.smooth[k] = s.dir[k].l_smooth;
      t.valid_count[k] = s.dir[k].valid_count;
    }
    total += w.lambda_ph * (t.ph[0] + t.ph[1]) +
             w.lambda_gc * (t.gc[0] + t.gc[1]) +
             w.lambda_ssim * (t.ssim[0] + t.ssim[1]) +
             (w.lambda_smooth_base / s.factor) * (t.smooth[0] + t.smooth[1]);
  }
  out.total = total;
  return out;
}

void capture_trace(const std::vector<ScaleForward>& scales, EvalTrace* trace) {
  trace->scales.resize(scales.size());
  for (size_t si = 0; si < scales.size(); ++si) {
    for (int k = 0; k < 2; ++k) {
      const DirectionForward& d = scales[si].dir[k];
      std::vector<int32_t>& cells = trace->scales[si][k];
      cells.assign(d.proj.u.size(), -1);
      const int ow = scales[si].img[1 - k].width;
      for (size_t i = 0; i < d.proj.u.size(); ++i) {
        if (d.recon.mask.grid.values[i] != 0.0) {
          cells[i] = static_cast<int32_t>(std::floor(d.proj.v[i])) * ow +
                     static_cast<int32_t>(std::floor(d.proj.u[i]));
        }
      }
    }
  }
}

}  // namespace

void validate_weights(const LossWeights& w) {
  if (w.lambda_ph < 0.0 || w.lambda_gc < 0.0 || w.lambda_ssim < 0.0 ||
      w.lambda_smooth_base < 0.0) {
    throw InvalidInputError("loss weights must be non-negative");
  }
  if (!(w.c > 0.0)) {
    throw InvalidInputError("adaptive-weight scale factor c must be positive");
  }
  if (w.num_scales < 1 || w.num_scales > 4) {
    throw InvalidInputError("num_scales must lie in [1, 4]");
  }
}

void validate_pair(const ScenePair& pair) {
  if (pair.image1.height != pair.image2.height ||
      pair.image1.width != pair.image2.width ||
      pair.image1.channels != pair.image2.channels) {
    throw InvalidInputError("scene pair images must have identical shape");
  }
  validate_image_range(pair.image1, "view 1 image");
  validate_image_range(pair.image2, "view 2 image");
  if (!(pair.mu1.value > 0.0) || !(pair.mu2.value > 0.0)) {
    throw InvalidInputError("median depths must be positive");
  }
}

PhotometricResult photometric_loss(const Image& target,
                                   const Image& reconstructed,
                                   const ValidityMask& mask) {
  if (!target.same_shape(reconstructed) ||
      target.height != mask.grid.height || target.width != mask.grid.width) {
    throw InvalidInputError("photometric_loss requires matching dimensions");
  }
  const long count = mask.count();
  if (count == 0) {
    throw NoOverlapError("photometric loss has zero valid pixels");
  }
  PhotometricResult out;
  out.per_pixel_residual = ScalarGrid(target.height, target.width, 0.0);
  const double inv_c = 1.0 / target.channels;
  double acc = 0.0;
  for (int y = 0; y < target.height; ++y) {
    for (int x = 0; x < target.width; ++x) {
      if (!mask.valid(y, x)) continue;
      double r = 0.0;
      for (int c = 0; c < target.channels; ++c) {
        r += std::abs(target.at(y, x, c) - reconstructed.at(y, x, c));
      }
      r *= inv_c;
      out.per_pixel_residual.at(y, x) = r;
      acc += r;
    }
  }
  out.value = acc / static_cast<double>(count);
  return out;
}

double ssim_loss(const Image& a, const Image& a_rec, const Image& b,
                 const Image& b_rec, const ValidityMask& mask_a,
                 const ValidityMask& mask_b) {
  const long count_a = mask_a.count();
  const long count_b = mask_b.count();
  if (count_a == 0 || count_b == 0) {
    throw NoOverlapError("ssim loss has zero valid pixels");
  }
  const ScalarGrid sa = ssim_map(a, a_rec);
  const ScalarGrid sb = ssim_map(b, b_rec);
  double acc_a = 0.0;
  for (size_t i = 0; i < sa.values.size(); ++i) {
    if (mask_a.grid.values[i] != 0.0) acc_a += 1.0 - sa.values[i];
  }
  double acc_b = 0.0;
  for (size_t i = 0; i < sb.values.size(); ++i) {
    if (mask_b.grid.values[i] != 0.0) acc_b += 1.0 - sb.values[i];
  }
  return acc_a / static_cast<double>(count_a) +
         acc_b / static_cast<double>(count_b);
}

ScalarGrid adaptive_weights(const ScalarGrid& residual, double c,
                            SigmaMode mode) {
  double mean = 0.0;
  for (double v : residual.values) {
    if (v < 0.0) {
      throw InvalidInputError("adaptive_weights requires residuals >= 0");
    }
    mean += v;
  }
  mean /= static_cast<double>(residual.values.size());
  ScalarGrid alpha(residual.height, residual.width, 1.0);
  if (mean == 0.0) {
    return alpha;  // converged case: alpha = 1 everywhere
  }
  const double scale =
      mode == SigmaMode::kLiteral ? c * mean : c / mean;
  for (size_t i = 0; i < alpha.values.size(); ++i) {
    alpha.values[i] = std::exp(-scale * residual.values[i]);
  }
  return alpha;
}

double smoothness_loss(const ScalarGrid& relative, const Image& image,
                       const ScalarGrid& alpha) {
  if (relative.height != image.height || relative.width != image.width ||
      !relative.same_shape(alpha)) {
    throw InvalidInputError("smoothness_loss requires matching dimensions");
  }
  const SobelGradients rel_grad = sobel_gradients(relative);
  const SobelGradients img_grad = sobel_gradients(channel_mean(image));
  double acc = 0.0;
  for (size_t i = 0; i < relative.values.size(); ++i) {
    acc += alpha.values[i] *
           (std::abs(rel_grad.gx.values[i]) *
                std::exp(-std::abs(img_grad.gx.values[i])) +
            std::abs(rel_grad.gy.values[i]) *
                std::exp(-std::abs(img_grad.gy.values[i])));
  }
  return acc / static_cast<double>(relative.values.size());
}

double geometric_consistency_loss(const ProjectionMap& proj_ab,
                                  const ProjectionMap& proj_ba,
                                  const DepthMap& depth_a,
                                  const DepthMap& depth_b,
                                  const ValidityMask& mask_ab,
                                  const ValidityMask& mask_ba) {
  const SampledGrid sb = bilinear_sample(depth_b.grid, proj_ab);
  const SampledGrid sa = bilinear_sample(depth_a.grid, proj_ba);
  double total = 0.0;
  const struct {
    const ProjectionMap* proj;
    const SampledGrid* sampled;
    const ValidityMask* mask;
  } dirs[2] = {{&proj_ab, &sb, &mask_ab}, {&proj_ba, &sa, &mask_ba}};
  for (const auto& d : dirs) {
    long count = d.mask->count();
    if (count == 0) {
      throw NoOverlapError("geometric consistency has zero valid pixels");
    }
    double acc = 0.0;
    for (int y = 0; y < d.proj->height; ++y) {
      for (int x = 0; x < d.proj->width; ++x) {
        if (!d.mask->valid(y, x)) continue;
        const double a = d.proj->depth[d.proj->index(y, x)];
        const double b = d.sampled->values.at(y, x);
        acc += std::abs(a - b) / (a + b);
      }
    }
    total += acc / static_cast<double>(count);
  }
  return total;
}

LossBreakdown total_loss(const ScenePair& pair, const ScalarGrid& rel_field_1,
                         const ScalarGrid& rel_field_2, const LossWeights& w,
                         const TotalLossOptions& opts) {
  validate_weights(w);
  validate_pair(pair);
  if (rel_field_1.height != pair.image1.height ||
      rel_field_1.width != pair.image1.width ||
      !rel_field_1.same_shape(rel_field_2)) {
    throw InvalidInputError(
        "relative fields must match the finest raster dimensions");
  }
  const RigidPose pose12 = relative_pose(pair.world_pose1, pair.world_pose2);
  const RigidPose pose21 = relative_pose(pair.world_pose2, pair.world_pose1);
  const std::vector<ScaleForward> scales =
      forward_all(pair, rel_field_1, rel_field_2, w, opts, pose12, pose21);
  if (opts.alpha_out != nullptr) {
    opts.alpha_out->resize(scales.size());
    for (size_t si = 0; si < scales.size(); ++si) {
      (*opts.alpha_out)[si] = {scales[si].dir[0].alpha,
                               scales[si].dir[1].alpha};
    }
  }
  if (opts.trace_out != nullptr) {
    capture_trace(scales, opts.trace_out);
  }
  return summarize(scales, w);
}

LossEvaluation total_loss_with_gradient(const ScenePair& pair,
                                        const ScalarGrid& rel_field_1,
                                        const ScalarGrid& rel_field_2,
                                        const LossWeights& w) {
  validate_weights(w);
  validate_pair(pair);
  if (rel_field_1.height != pair.image1.height ||
      rel_field_1.width != pair.image1.width ||
      !rel_field_1.same_shape(rel_field_2)) {
    throw InvalidInputError(
        "relative fields must match the finest raster dimensions");
  }
  const RigidPose pose12 = relative_pose(pair.world_pose1, pair.world_pose2);
  const RigidPose pose21 = relative_pose(pair.world_pose2, pair.world_pose1);
  const std::vector<ScaleForward> scales =
      forward_all(pair, rel_field_1, rel_field_2, w, {}, pose12, pose21);

  // Per-scale gradients with respect to the per-scale fields.
  std::vector<std::array<ScalarGrid, 2>> grad_rel(scales.size());
  for (size_t si = 0; si < scales.size(); ++si) {
    const ScaleForward& s = scales[si];
    std::array<ScalarGrid, 2> grad_depth = {
        ScalarGrid(s.rel[0].height, s.rel[0].width, 0.0),
        ScalarGrid(s.rel[1].height, s.rel[1].width, 0.0)};
    grad_rel[si] = {ScalarGrid(s.rel[0].height, s.rel[0].width, 0.0),
                    ScalarGrid(s.rel[1].height, s.rel[1].width, 0.0)};
    for (int k = 0; k < 2; ++k) {
      backward_direction(k, s, k == 0 ? pose12 : pose21, w, &grad_depth,
                         &grad_rel[si]);
    }
    // d(depth)/d(rel) = depth itself (mu * exp chain).
    for (int k = 0; k < 2; ++k) {
      for (size_t i = 0; i < grad_rel[si][k].values.size(); ++i) {
        grad_rel[si][k].values[i] +=
            grad_depth[k].values[i] * s.depth[k].grid.values[i];
      }
    }
  }

  // Collapse the pyramid: coarse fields are block means of the finest field,
  // so their gradients distribute back through the downsampling adjoint.
  LossEvaluation out;
  for (int k = 0; k < 2; ++k) {
    ScalarGrid acc = grad_rel.back()[k];
    for (size_t si = scales.size() - 1; si >= 1; --si) {
      ScalarGrid finer(scales[si - 1].rel[k].height,
                       scales[si - 1].rel[k].width, 0.0);
      downsample2x_backward(acc, &finer);
      for (size_t i = 0; i < finer.values.size(); ++i) {
        finer.values[i] += grad_rel[si - 1][k].values[i];
      }
      acc = std::move(finer);
    }
    if (k == 0) {
      out.grad1 = std::move(acc);
    } else {
      out.grad2 = std::move(acc);
    }
  }
  out.breakdown = summarize(scales, w);
  return out;
}

GradientPair total_loss_gradient(const ScenePair& pair,
                                 const ScalarGrid& rel_field_1,
                                 const ScalarGrid& rel_field_2,
                                 const LossWeights& w) {
  LossEvaluation eval =
      total_loss_with_gradient(pair, rel_field_1, rel_field_2, w);
  return {std::move(eval.grad1), std::move(eval.grad2)};
}

std::string LossBreakdown::to_csv() const {
  std::ostringstream out;
  out << "scale,term,view,value,valid_count\n";
  char buf[64];
  const auto row = [&](int factor, const char* term, int view, double value,
                       long count) {
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    out << factor << ',' << term << ',' << view << ',' << buf << ',' << count
        << '\n';
  };
  for (const ScaleTerms& s : scales) {
    for (int k = 0; k < 2; ++k) {
      row(s.downsample_factor, "ph", k + 1, s.ph[k], s.valid_count[k]);
      row(s.downsample_factor, "gc", k + 1, s.gc[k], s.valid_count[k]);
      row(s.downsample_factor, "ssim", k + 1, s.ssim[k], s.valid_count[k]);
      row(s.downsample_factor, "smooth", k + 1, s.smooth[k], s.valid_count[k]);
    }
  }
  std::snprintf(buf, sizeof(buf), "%.17g", total);
  out << "0,total,0," << buf << ",0\n";
  return out.str();
}

}  // namespace depthwarp
