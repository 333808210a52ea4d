#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "depthwarp/cli.h"
#include "depthwarp/errors.h"
#include "depthwarp/image_io.h"

using namespace depthwarp;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("ppm write/read/write round-trips byte-identically") {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Image img(13, 9, 3);
  for (double& v : img.values) v = dist(rng);

  const std::string p1 = temp_path("dw_roundtrip_a.ppm");
  const std::string p2 = temp_path("dw_roundtrip_b.ppm");
  write_ppm(p1, img);
  const Image back = read_ppm(p1);
  CHECK(back.height == 13);
  CHECK(back.width == 9);
  CHECK(back.channels == 3);
  write_ppm(p2, back);
  CHECK(read_bytes(p1) == read_bytes(p2));

  // Quantization error is bounded by half a step.
  for (size_t i = 0; i < img.values.size(); ++i) {
    CHECK(std::abs(back.values[i] - img.values[i]) <= 0.5 / 255.0 + 1e-12);
  }
}

TEST_CASE("pfm write/read/write round-trips byte-identically") {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> dist(0.01, 80.0);
  ScalarGrid grid(11, 7);
  for (double& v : grid.values) v = dist(rng);

  const std::string p1 = temp_path("dw_roundtrip_a.pfm");
  const std::string p2 = temp_path("dw_roundtrip_b.pfm");
  write_pfm(p1, grid);
  const ScalarGrid back = read_pfm(p1);
  CHECK(back.height == 11);
  CHECK(back.width == 7);
  write_pfm(p2, back);
  CHECK(read_bytes(p1) == read_bytes(p2));

  for (size_t i = 0; i < grid.values.size(); ++i) {
    CHECK(back.values[i] ==
          static_cast<double>(static_cast<float>(grid.values[i])));
  }
}

TEST_CASE("pfm values exactly representable in float survive unchanged") {
  ScalarGrid grid(2, 2);
  grid.at(0, 0) = 2.0;
  grid.at(0, 1) = 0.5;
  grid.at(1, 0) = 3.25;
  grid.at(1, 1) = 80.0;
  const std::string p = temp_path("dw_exact.pfm");
  write_pfm(p, grid);
  const ScalarGrid back = read_pfm(p);
  for (size_t i = 0; i < grid.values.size(); ++i) {
    CHECK(back.values[i] == grid.values[i]);
  }
}

TEST_CASE("malformed image headers are parse errors") {
  const std::string p = temp_path("dw_bad_header");
  {
    std::ofstream out(p, std::ios::binary);
    out << "P5\n4 4\n255\n";
  }
  CHECK_THROWS_AS(read_ppm(p), ParseError);
  {
    std::ofstream out(p, std::ios::binary);
    out << "PF\n4 4\n-1.0\n";  // color PFM unsupported
  }
  CHECK_THROWS_AS(read_pfm(p), ParseError);
  {
    std::ofstream out(p, std::ios::binary);
    out << "Pf\n4 4\n-1.0\nxx";  // truncated payload
  }
  CHECK_THROWS_AS(read_pfm(p), ParseError);
  CHECK_THROWS_AS(read_ppm(temp_path("dw_does_not_exist.ppm")),
                  InvalidInputError);
}

TEST_CASE("cameras file round-trips intrinsics and poses") {
  CamerasFile cams;
  cams.k1 = CameraIntrinsics(60.0, 58.0, 31.5, 23.5);
  cams.k2 = CameraIntrinsics(55.0, 54.0, 30.5, 22.5);
  Eigen::Matrix3d r =
      Eigen::AngleAxisd(0.21, Eigen::Vector3d(0.3, 1.0, 0.2).normalized())
          .toRotationMatrix();
  cams.pose2 = RigidPose(r, Eigen::Vector3d(0.4, -0.2, 0.1));
  const std::string p = temp_path("dw_cameras.txt");
  write_cameras_file(p, cams);
  const CamerasFile back = read_cameras_file(p);
  CHECK(back.k1.fx == cams.k1.fx);
  CHECK(back.k1.cy == cams.k1.cy);
  CHECK(back.k2.fy == cams.k2.fy);
  CHECK((back.pose2.rotation - cams.pose2.rotation).norm() == 0.0);
  CHECK((back.pose2.translation - cams.pose2.translation).norm() == 0.0);
  CHECK((back.pose1.rotation - Eigen::Matrix3d::Identity()).norm() == 0.0);
}
