#include "depthwarp/ssim.h"

#include <algorithm>
#include <array>

namespace depthwarp {

namespace {

struct PatchStats {
  std::array<double, 9> av, bv;  // patch values, row-major tap order
  double mu_a, mu_b;
  double var_a, var_b, cov;
};

inline int clamp_index(int i, int n) { return std::clamp(i, 0, n - 1); }

// Central-moment form keeps the variances non-negative.
PatchStats patch_stats(const Image& a, const Image& b, int y, int x, int c) {
  PatchStats s;
  int k = 0;
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (int dy = -1; dy <= 1; ++dy) {
    const int yy = clamp_index(y + dy, a.height);
    for (int dx = -1; dx <= 1; ++dx) {
      const int xx = clamp_index(x + dx, a.width);
      s.av[k] = a.at(yy, xx, c);
      s.bv[k] = b.at(yy, xx, c);
      sum_a += s.av[k];
      sum_b += s.bv[k];
      ++k;
    }
  }
  s.mu_a = sum_a / 9.0;
  s.mu_b = sum_b / 9.0;
  double va = 0.0;
  double vb = 0.0;
  double cov = 0.0;
  for (int i = 0; i < 9; ++i) {
    const double da = s.av[i] - s.mu_a;
    const double db = s.bv[i] - s.mu_b;
    va += da * da;
    vb += db * db;
    cov += da * db;
  }
  s.var_a = va / 9.0;
  s.var_b = vb / 9.0;
  s.cov = cov / 9.0;
  return s;
}

inline double ssim_from_stats(const PatchStats& s) {
  const double n1 = 2.0 * s.mu_a * s.mu_b + kSsimC1;
  const double n2 = 2.0 * s.cov + kSsimC2;
  const double d1 = s.mu_a * s.mu_a + s.mu_b * s.mu_b + kSsimC1;
  const double d2 = s.var_a + s.var_b + kSsimC2;
  return (n1 * n2) / (d1 * d2);
}

void check_same_shape(const Image& a, const Image& b) {
  if (!a.same_shape(b)) {
    throw InvalidInputError("ssim_map requires images of identical shape");
  }
}

}  // namespace

ScalarGrid ssim_map(const Image& a, const Image& b) {
  check_same_shape(a, b);
  ScalarGrid out(a.height, a.width, 0.0);
  const double inv_c = 1.0 / a.channels;
  for (int y = 0; y < a.height; ++y) {
    for (int x = 0; x < a.width; ++x) {
      double acc = 0.0;
      for (int c = 0; c < a.channels; ++c) {
        acc += ssim_from_stats(patch_stats(a, b, y, x, c));
      }
      out.at(y, x) = acc * inv_c;
    }
  }
  return out;
}

void ssim_map_backward_b(const Image& a, const Image& b,
                         const ScalarGrid& upstream, Image* grad_b) {
  check_same_shape(a, b);
  const double inv_c = 1.0 / a.channels;
  for (int y = 0; y < a.height; ++y) {
    for (int x = 0; x < a.width; ++x) {
      const double up = upstream.at(y, x) * inv_c;
      if (up == 0.0) continue;
      for (int c = 0; c < a.channels; ++c) {
        const PatchStats s = patch_stats(a, b, y, x, c);
        const double n1 = 2.0 * s.mu_a * s.mu_b + kSsimC1;
        const double n2 = 2.0 * s.cov + kSsimC2;
        const double d1 = s.mu_a * s.mu_a + s.mu_b * s.mu_b + kSsimC1;
        const double d2 = s.var_a + s.var_b + kSsimC2;
        const double ssim = (n1 * n2) / (d1 * d2);

        // Partials with respect to the b-side statistics. var_b and cov do
        // not depend on mu_b beyond the taps themselves: centred sums vanish.
        const double d_mu =
            2.0 * s.mu_a * n2 / (d1 * d2) - ssim * 2.0 * s.mu_b / d1;
        const double d_var = -ssim / d2;
        const double d_cov = 2.0 * n1 / (d1 * d2);

        int k = 0;
        for (int dy = -1; dy <= 1; ++dy) {
          const int yy = clamp_index(y + dy, a.height);
          for (int dx = -1; dx <= 1; ++dx) {
            const int xx = clamp_index(x + dx, a.width);
            const double db = s.bv[k] - s.mu_b;
            const double da = s.av[k] - s.mu_a;
            grad_b->at(yy, xx, c) +=
                up * (d_mu + 2.0 * d_var * db + d_cov * da) / 9.0;
            ++k;
          }
        }
      }
    }
  }
}

}  // namespace depthwarp
