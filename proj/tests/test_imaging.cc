#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "depthwarp/errors.h"
#include "depthwarp/filters.h"
#include "depthwarp/sampling.h"
#include "depthwarp/ssim.h"

using namespace depthwarp;

namespace {

ProjectionMap single_coord(double u, double v, bool in_front = true) {
  ProjectionMap map(1, 1);
  map.u[0] = u;
  map.v[0] = v;
  map.depth[0] = in_front ? 1.0 : -1.0;
  map.in_front[0] = in_front ? 1 : 0;
  return map;
}

Image random_image(int h, int w, int c, uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Image img(h, w, c);
  for (double& v : img.values) v = dist(rng);
  return img;
}

ScalarGrid random_grid(int h, int w, uint32_t seed, double lo = 0.0,
                       double hi = 1.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  ScalarGrid g(h, w);
  for (double& v : g.values) v = dist(rng);
  return g;
}

// Definitional SSIM at one pixel: raw-moment statistics over the clamped
// 3x3 patch, written independently of the library's implementation.
double ssim_reference(const Image& a, const Image& b, int y, int x) {
  double acc = 0.0;
  for (int c = 0; c < a.channels; ++c) {
    double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int yy = std::clamp(y + dy, 0, a.height - 1);
        const int xx = std::clamp(x + dx, 0, a.width - 1);
        const double va = a.at(yy, xx, c);
        const double vb = b.at(yy, xx, c);
        sa += va;
        sb += vb;
        saa += va * va;
        sbb += vb * vb;
        sab += va * vb;
      }
    }
    const double mu_a = sa / 9, mu_b = sb / 9;
    const double var_a = saa / 9 - mu_a * mu_a;
    const double var_b = sbb / 9 - mu_b * mu_b;
    const double cov = sab / 9 - mu_a * mu_b;
    acc += ((2 * mu_a * mu_b + kSsimC1) * (2 * cov + kSsimC2)) /
           ((mu_a * mu_a + mu_b * mu_b + kSsimC1) * (var_a + var_b + kSsimC2));
  }
  return acc / a.channels;
}

}  // namespace

TEST_CASE("bilinear sampling at an integer coordinate is exact") {
  ScalarGrid src = random_grid(5, 6, 1);
  const SampledGrid out = bilinear_sample(src, single_coord(3.0, 2.0));
  CHECK(out.values.at(0, 0) == src.at(2, 3));
  CHECK(out.mask.valid(0, 0));
}

TEST_CASE("bilinear sampling at the cell center averages the corners") {
  ScalarGrid src(2, 2);
  src.at(0, 0) = 0.0;
  src.at(0, 1) = 1.0;
  src.at(1, 0) = 2.0;
  src.at(1, 1) = 3.0;
  const SampledGrid out = bilinear_sample(src, single_coord(0.5, 0.5));
  CHECK(out.values.at(0, 0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(out.mask.valid(0, 0));
}

TEST_CASE("out-of-bounds and behind-camera coordinates are masked to zero") {
  ScalarGrid src = random_grid(4, 4, 2);
  for (const auto& coord :
       {single_coord(-0.1, 0.0), single_coord(0.0, 3.0001),
        single_coord(1.0, 1.0, false)}) {
    const SampledGrid out = bilinear_sample(src, coord);
    CHECK(out.values.at(0, 0) == 0.0);
    CHECK_FALSE(out.mask.valid(0, 0));
  }
  // The closed upper boundary is still valid.
  const SampledGrid edge = bilinear_sample(src, single_coord(3.0, 3.0));
  CHECK(edge.mask.valid(0, 0));
  CHECK(edge.values.at(0, 0) == src.at(3, 3));
}

TEST_CASE("bilinear value stays within the corner bounds") {
  ScalarGrid src = random_grid(7, 7, 3);
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> dist(0.0, 6.0);
  for (int trial = 0; trial < 300; ++trial) {
    const double u = dist(rng);
    const double v = dist(rng);
    const SampledGrid out = bilinear_sample(src, single_coord(u, v));
    REQUIRE(out.mask.valid(0, 0));
    const int x0 = static_cast<int>(std::floor(u));
    const int y0 = static_cast<int>(std::floor(v));
    const int x1 = std::min(x0 + 1, 6);
    const int y1 = std::min(y0 + 1, 6);
    const double lo = std::min(std::min(src.at(y0, x0), src.at(y0, x1)),
                               std::min(src.at(y1, x0), src.at(y1, x1)));
    const double hi = std::max(std::max(src.at(y0, x0), src.at(y0, x1)),
                               std::max(src.at(y1, x0), src.at(y1, x1)));
    CHECK(out.values.at(0, 0) >= lo - 1e-15);
    CHECK(out.values.at(0, 0) <= hi + 1e-15);
  }
}

TEST_CASE("bilinear gradients match central finite differences") {
  ScalarGrid src = random_grid(6, 6, 5);
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> dist(0.1, 4.9);
  const double h = 1e-5;
  for (int trial = 0; trial < 200; ++trial) {
    double u = dist(rng);
    double v = dist(rng);
    // Keep away from lattice lines where the subgradient convention kicks in.
    if (std::abs(u - std::round(u)) < 1e-3 ||
        std::abs(v - std::round(v)) < 1e-3) {
      continue;
    }
    const ProjectionMap at = single_coord(u, v);
    const SampledGrid base = bilinear_sample(src, at);

    ScalarGrid up(1, 1, 1.0);
    ScalarGrid grad_src(6, 6, 0.0), grad_u(1, 1, 0.0), grad_v(1, 1, 0.0);
    bilinear_sample_backward(src, at, base.mask, up, &grad_src, &grad_u,
                             &grad_v);

    const double vu_p = bilinear_sample(src, single_coord(u + h, v))
                            .values.at(0, 0);
    const double vu_m = bilinear_sample(src, single_coord(u - h, v))
                            .values.at(0, 0);
    const double fd_u = (vu_p - vu_m) / (2 * h);
    CHECK(std::abs(grad_u.at(0, 0) - fd_u) <=
          1e-6 * std::max(std::abs(fd_u), 1e-6));

    const double vv_p = bilinear_sample(src, single_coord(u, v + h))
                            .values.at(0, 0);
    const double vv_m = bilinear_sample(src, single_coord(u, v - h))
                            .values.at(0, 0);
    const double fd_v = (vv_p - vv_m) / (2 * h);
    CHECK(std::abs(grad_v.at(0, 0) - fd_v) <=
          1e-6 * std::max(std::abs(fd_v), 1e-6));

    // Source-value gradients: the four corner weights, which sum to one.
    double weight_sum = 0.0;
    for (size_t i = 0; i < grad_src.values.size(); ++i) {
      weight_sum += grad_src.values[i];
      if (grad_src.values[i] == 0.0) continue;
      ScalarGrid bumped = src;
      bumped.values[i] += h;
      const double fd =
          (bilinear_sample(bumped, at).values.at(0, 0) - base.values.at(0, 0)) /
          h;
      CHECK(std::abs(grad_src.values[i] - fd) <= 1e-6);
    }
    CHECK(weight_sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("sobel of a constant grid vanishes") {
  const SobelGradients g = sobel_gradients(ScalarGrid(5, 7, 3.25));
  for (double v : g.gx.values) CHECK(v == 0.0);
  for (double v : g.gy.values) CHECK(v == 0.0);
}

TEST_CASE("sobel of a unit horizontal ramp is 8 in the interior") {
  ScalarGrid ramp(5, 6);
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 6; ++x) ramp.at(y, x) = static_cast<double>(x);
  }
  const SobelGradients g = sobel_gradients(ramp);
  for (int y = 0; y < 5; ++y) {
    for (int x = 1; x < 5; ++x) {
      CHECK(g.gx.at(y, x) == 8.0);
    }
    CHECK(g.gy.at(y, 2) == 0.0);
    // Replicate padding halves the response on the edge columns.
    CHECK(g.gx.at(y, 0) == 4.0);
    CHECK(g.gx.at(y, 5) == 4.0);
  }
}

TEST_CASE("transposing the input swaps the sobel responses") {
  ScalarGrid g = random_grid(6, 6, 8);
  ScalarGrid gt(6, 6);
  for (int y = 0; y < 6; ++y) {
    for (int x = 0; x < 6; ++x) gt.at(x, y) = g.at(y, x);
  }
  const SobelGradients a = sobel_gradients(g);
  const SobelGradients b = sobel_gradients(gt);
  for (int y = 0; y < 6; ++y) {
    for (int x = 0; x < 6; ++x) {
      CHECK(a.gx.at(y, x) == doctest::Approx(b.gy.at(x, y)).epsilon(1e-14));
      CHECK(a.gy.at(y, x) == doctest::Approx(b.gx.at(x, y)).epsilon(1e-14));
    }
  }
}

TEST_CASE("sobel rejects grids smaller than 3x3") {
  CHECK_THROWS_AS(sobel_gradients(ScalarGrid(2, 5, 0.0)), InvalidInputError);
  CHECK_THROWS_AS(sobel_gradients(ScalarGrid(3, 2, 0.0)), InvalidInputError);
}

TEST_CASE("sobel adjoint matches the forward operator") {
  // <Sobel(g), u> == <g, SobelAdjoint(u)> for random g, u.
  ScalarGrid g = random_grid(5, 5, 9, -1.0, 1.0);
  ScalarGrid ux = random_grid(5, 5, 10, -1.0, 1.0);
  ScalarGrid uy = random_grid(5, 5, 11, -1.0, 1.0);
  const SobelGradients fwd = sobel_gradients(g);
  double lhs = 0.0;
  for (size_t i = 0; i < g.values.size(); ++i) {
    lhs += fwd.gx.values[i] * ux.values[i] + fwd.gy.values[i] * uy.values[i];
  }
  ScalarGrid adj(5, 5, 0.0);
  sobel_backward(ux, uy, &adj);
  double rhs = 0.0;
  for (size_t i = 0; i < g.values.size(); ++i) {
    rhs += g.values[i] * adj.values[i];
  }
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("downsampling block-averages and rejects odd dimensions") {
  ScalarGrid g(2, 2);
  g.at(0, 0) = 0.0;
  g.at(0, 1) = 1.0;
  g.at(1, 0) = 2.0;
  g.at(1, 1) = 3.0;
  const ScalarGrid half = downsample2x(g);
  CHECK(half.height == 1);
  CHECK(half.width == 1);
  CHECK(half.at(0, 0) == 1.5);

  const ScalarGrid constant = downsample2x(ScalarGrid(8, 6, 0.75));
  for (double v : constant.values) CHECK(v == 0.75);

  CHECK_THROWS_AS(downsample2x(ScalarGrid(3, 4, 0.0)), InvalidInputError);
  CHECK_THROWS_AS(downsample2x(Image(4, 7, 3, 0.0)), InvalidInputError);
}

TEST_CASE("double downsampling preserves a 4k x 4k constant grid") {
  const ScalarGrid big(4096, 4096, 1.25);
  const ScalarGrid once = downsample2x(big);
  const ScalarGrid twice = downsample2x(once);
  CHECK(twice.height == 1024);
  CHECK(twice.width == 1024);
  for (double v : twice.values) {
    REQUIRE(v == 1.25);
  }
}

TEST_CASE("ssim of an image with itself is exactly one") {
  const Image img = random_image(8, 8, 3, 21);
  const ScalarGrid map = ssim_map(img, img);
  for (double v : map.values) CHECK(v == 1.0);
}

TEST_CASE("ssim of constant 0 vs constant 1 hits the closed form") {
  const Image zeros(6, 6, 1, 0.0);
  const Image ones(6, 6, 1, 1.0);
  const double expected = kSsimC1 / (1.0 + kSsimC1);
  const ScalarGrid map = ssim_map(zeros, ones);
  for (double v : map.values) {
    CHECK(v == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(expected == doctest::Approx(9.999e-5).epsilon(1e-4));
}

TEST_CASE("ssim is symmetric in its arguments") {
  const Image a = random_image(8, 8, 3, 22);
  const Image b = random_image(8, 8, 3, 23);
  const ScalarGrid ab = ssim_map(a, b);
  const ScalarGrid ba = ssim_map(b, a);
  for (size_t i = 0; i < ab.values.size(); ++i) {
    CHECK(ab.values[i] == ba.values[i]);
  }
}

TEST_CASE("ssim lies in [-1, 1] and is 1 only for identical patches") {
  const Image a = random_image(9, 9, 1, 24);
  Image b = a;
  b.at(4, 4, 0) = 1.0 - b.at(4, 4, 0) * 0.9;
  const ScalarGrid map = ssim_map(a, b);
  for (int y = 0; y < 9; ++y) {
    for (int x = 0; x < 9; ++x) {
      CHECK(map.at(y, x) >= -1.0);
      CHECK(map.at(y, x) <= 1.0);
      const bool touches_diff = std::abs(y - 4) <= 1 && std::abs(x - 4) <= 1;
      if (touches_diff) {
        CHECK(map.at(y, x) < 1.0);
      } else {
        CHECK(map.at(y, x) == 1.0);
      }
    }
  }
}

TEST_CASE("ssim matches the definitional computation on random images") {
  const Image a = random_image(8, 8, 3, 25);
  const Image b = random_image(8, 8, 3, 26);
  const ScalarGrid map = ssim_map(a, b);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      CHECK(std::abs(map.at(y, x) - ssim_reference(a, b, y, x)) < 1e-12);
    }
  }
}

TEST_CASE("ssim shape mismatch is rejected") {
  CHECK_THROWS_AS(ssim_map(Image(4, 4, 3, 0.5), Image(4, 5, 3, 0.5)),
                  InvalidInputError);
}

TEST_CASE("ssim backward matches central finite differences") {
  const Image a = random_image(6, 6, 2, 27);
  Image b = random_image(6, 6, 2, 28);
  ScalarGrid upstream = random_grid(6, 6, 29, -1.0, 1.0);

  Image grad(6, 6, 2, 0.0);
  ssim_map_backward_b(a, b, upstream, &grad);

  const auto weighted_sum = [&](const Image& bb) {
    const ScalarGrid map = ssim_map(a, bb);
    double acc = 0.0;
    for (size_t i = 0; i < map.values.size(); ++i) {
      acc += map.values[i] * upstream.values[i];
    }
    return acc;
  };

  const double h = 1e-6;
  std::mt19937 rng(30);
  std::uniform_int_distribution<size_t> pick(0, b.values.size() - 1);
  for (int trial = 0; trial < 40; ++trial) {
    const size_t i = pick(rng);
    Image hi = b;
    hi.values[i] += h;
    Image lo = b;
    lo.values[i] -= h;
    const double fd = (weighted_sum(hi) - weighted_sum(lo)) / (2 * h);
    CHECK(std::abs(grad.values[i] - fd) <=
          1e-5 * std::max(std::abs(fd), 1e-4));
  }
}
