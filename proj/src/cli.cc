#include "depthwarp/cli.h"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "depthwarp/config.h"
#include "depthwarp/grad_check.h"
#include "depthwarp/image_io.h"
#include "depthwarp/metrics.h"
#include "depthwarp/optim.h"
#include "depthwarp/random.h"
#include "depthwarp/synth.h"

namespace depthwarp {

namespace fs = std::filesystem;

namespace {

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InvalidInputError("cannot open " + path + " for writing");
  }
  out << content;
}

std::string format_row(const double* values, int count) {
  std::string line;
  char buf[64];
  for (int i = 0; i < count; ++i) {
    std::snprintf(buf, sizeof(buf), i == 0 ? "%.17g" : " %.17g", values[i]);
    line += buf;
  }
  line += '\n';
  return line;
}

// Shared loss/optimization keys of the optimize and gradcheck configs.
// Unknown keys are an error so typos in lambda names cannot pass silently.
struct ConfigCommon {
  std::string scene_dir;
  std::string out_dir;
  LossWeights weights;
  uint64_t seed = 0;
};

bool consume_common_key(const KeyValueEntry& e, const std::string& path,
                        ConfigCommon* c) {
  if (e.key == "scene_dir") {
    c->scene_dir = e.value;
  } else if (e.key == "out_dir") {
    c->out_dir = e.value;
  } else if (e.key == "lambda_ph") {
    c->weights.lambda_ph = parse_double(e, path);
  } else if (e.key == "lambda_gc") {
    c->weights.lambda_gc = parse_double(e, path);
  } else if (e.key == "lambda_ssim") {
    c->weights.lambda_ssim = parse_double(e, path);
  } else if (e.key == "lambda_smooth") {
    c->weights.lambda_smooth_base = parse_double(e, path);
  } else if (e.key == "scale_factor_c") {
    c->weights.c = parse_double(e, path);
  } else if (e.key == "num_scales") {
    c->weights.num_scales = static_cast<int>(parse_long(e, path));
  } else if (e.key == "sigma_mode") {
    if (e.value == "literal") {
      c->weights.sigma_mode = SigmaMode::kLiteral;
    } else if (e.value == "mean") {
      c->weights.sigma_mode = SigmaMode::kMeanResidual;
    } else {
      throw ParseError(path + ":" + std::to_string(e.line) +
                       ": sigma_mode must be 'literal' or 'mean'");
    }
  } else if (e.key == "seed") {
    c->seed = static_cast<uint64_t>(parse_long(e, path));
  } else {
    return false;
  }
  return true;
}

void require_dirs(const ConfigCommon& c, const std::string& path) {
  if (c.scene_dir.empty() || c.out_dir.empty()) {
    throw ParseError(path + ": config requires scene_dir and out_dir");
  }
}

MedianDepth view_median(const SparsePointCloud& cloud,
                        const CameraIntrinsics& k, const RigidPose& pose,
                        int height, int width, int view) {
  const std::vector<SparseViewDepth> samples =
      sparse_view_depths(cloud, k, pose, height, width);
  if (samples.empty()) {
    throw InsufficientDataError("no sparse points project into view " +
                                std::to_string(view));
  }
  std::vector<double> depths;
  depths.reserve(samples.size());
  for (const SparseViewDepth& s : samples) depths.push_back(s.depth);
  return median_depth(std::move(depths));
}

int cmd_synth(const std::string& descriptor_path, const std::string& out_dir,
              std::optional<uint64_t> seed_override) {
  SceneDescriptor d = parse_scene_descriptor(descriptor_path);
  if (seed_override.has_value()) d.seed = *seed_override;
  fs::create_directories(out_dir);

  const RenderedView view1 =
      render_view(d.scene, d.k1, d.pose1, d.height, d.width);
  const RenderedView view2 =
      render_view(d.scene, d.k2, d.pose2, d.height, d.width);
  const SparsePointCloud cloud =
      sample_correspondences(d.scene, d.k1, d.pose1, d.k2, d.pose2, d.height,
                             d.width, d.sparse_points, d.seed);

  write_ppm(out_dir + "/view1.ppm", view1.image);
  write_ppm(out_dir + "/view2.ppm", view2.image);
  write_pfm(out_dir + "/gt1.pfm", view1.depth.grid);
  write_pfm(out_dir + "/gt2.pfm", view2.depth.grid);
  save_point_cloud(out_dir + "/sparse.txt", cloud);
  write_cameras_file(out_dir + "/cameras.txt",
                     CamerasFile{d.k1, d.k2, d.pose1, d.pose2});
  std::cout << "wrote scene (" << d.width << "x" << d.height << ", "
            << cloud.points.size() << " sparse points) to " << out_dir
            << "\n";
  return kExitSuccess;
}

int cmd_optimize(const std::string& config_path,
                 std::optional<uint64_t> seed_override,
                 std::optional<int> scales_override) {
  ConfigCommon common;
  OptimConfig config;
  const std::vector<KeyValueEntry> entries = parse_key_value_file(config_path);
  for (const KeyValueEntry& e : entries) {
    if (consume_common_key(e, config_path, &common)) continue;
    if (e.key == "max_iterations") {
      config.max_iterations = parse_long(e, config_path);
    } else if (e.key == "initial_lr") {
      config.initial_lr = parse_double(e, config_path);
    } else if (e.key == "record_every") {
      config.record_every = parse_long(e, config_path);
    } else {
      throw ParseError(config_path + ":" + std::to_string(e.line) +
                       ": unknown key '" + e.key + "'");
    }
  }
  require_dirs(common, config_path);
  if (seed_override.has_value()) common.seed = *seed_override;
  if (scales_override.has_value()) {
    common.weights.num_scales = *scales_override;
  }
  config.weights = common.weights;
  config.seed = common.seed;
  validate_config(config);

  const ScenePair pair = load_scene_pair(common.scene_dir);
  fs::create_directories(common.out_dir);
  const OptimResult result = optimize(pair, config);
  write_text_file(common.out_dir + "/trajectory.csv",
                  trajectory_to_csv(result.trajectory));
  if (result.diverged) {
    std::cerr << "optimization diverged: " << result.message << "\n";
    return kExitNumerical;
  }
  write_pfm(common.out_dir + "/rel1.pfm", result.field1);
  write_pfm(common.out_dir + "/rel2.pfm", result.field2);
  write_pfm(common.out_dir + "/depth1.pfm",
            scale_transform(result.field1, pair.mu1).grid);
  write_pfm(common.out_dir + "/depth2.pfm",
            scale_transform(result.field2, pair.mu2).grid);
  std::cout << "final total loss "
            << result.trajectory.back().breakdown.total << " after "
            << config.max_iterations << " iterations\n";
  return kExitSuccess;
}

int cmd_gradcheck(const std::string& config_path,
                  std::optional<uint64_t> seed_override,
                  std::optional<int> scales_override,
                  std::optional<double> threshold_override) {
  ConfigCommon common;
  FiniteDiffOptions options;
  double threshold = 1e-5;
  double field_amplitude = 0.25;
  const std::vector<KeyValueEntry> entries = parse_key_value_file(config_path);
  for (const KeyValueEntry& e : entries) {
    if (consume_common_key(e, config_path, &common)) continue;
    if (e.key == "step") {
      options.step = parse_double(e, config_path);
    } else if (e.key == "sample_count") {
      options.sample_count = parse_long(e, config_path);
    } else if (e.key == "threshold") {
      threshold = parse_double(e, config_path);
    } else if (e.key == "field_amplitude") {
      field_amplitude = parse_double(e, config_path);
    } else if (e.key == "debug_corrupt_entry") {
      options.corrupt_entry = parse_long(e, config_path);
    } else if (e.key == "debug_corrupt_delta") {
      options.corrupt_delta = parse_double(e, config_path);
    } else {
      throw ParseError(config_path + ":" + std::to_string(e.line) +
                       ": unknown key '" + e.key + "'");
    }
  }
  if (common.scene_dir.empty()) {
    throw ParseError(config_path + ": config requires scene_dir");
  }
  if (seed_override.has_value()) common.seed = *seed_override;
  if (scales_override.has_value()) {
    common.weights.num_scales = *scales_override;
  }
  if (threshold_override.has_value()) threshold = *threshold_override;
  options.seed = common.seed;

  const ScenePair pair = load_scene_pair(common.scene_dir);
  const int h = pair.image1.height;
  const int w = pair.image1.width;
  DeterministicRng rng(common.seed);
  ScalarGrid f1(h, w, 0.0);
  ScalarGrid f2(h, w, 0.0);
  for (double& v : f1.values) v = rng.uniform(-field_amplitude, field_amplitude);
  for (double& v : f2.values) v = rng.uniform(-field_amplitude, field_amplitude);

  const FiniteDiffReport report =
      finite_diff_check(pair, f1, f2, common.weights, options);
  const std::string text = report.to_text(threshold);
  std::cout << text;
  if (!common.out_dir.empty()) {
    fs::create_directories(common.out_dir);
    write_text_file(common.out_dir + "/gradcheck.txt", text);
  }
  if (report.max_rel_error >= threshold) {
    std::cerr << "gradient check failed: max relative error "
              << report.max_rel_error << " >= " << threshold << "\n";
    return kExitNumerical;
  }
  return kExitSuccess;
}

int cmd_eval(const std::string& pred_path, const std::string& gt_path,
             bool no_align) {
  const DepthMap pred(read_pfm(pred_path));
  const DepthMap gt(read_pfm(gt_path));
  const DepthMap* used = &pred;
  DepthMap aligned;
  if (!no_align) {
    aligned = median_align(pred, gt);
    used = &aligned;
  }
  const MetricReport report = compute_metrics(*used, gt);
  std::cout << (no_align ? "alignment: none\n"
                         : "alignment: median-scaled prediction\n");
  std::cout << report.to_text();
  std::cout << report.to_csv();
  return kExitSuccess;
}

}  // namespace

void write_cameras_file(const std::string& path, const CamerasFile& cameras) {
  std::string content;
  const auto emit_view = [&](const CameraIntrinsics& k, const RigidPose& p) {
    const double kv[4] = {k.fx, k.fy, k.cx, k.cy};
    content += format_row(kv, 4);
    for (int row = 0; row < 3; ++row) {
      const double rv[4] = {p.rotation(row, 0), p.rotation(row, 1),
                            p.rotation(row, 2), p.translation(row)};
      content += format_row(rv, 4);
    }
  };
  emit_view(cameras.k1, cameras.pose1);
  emit_view(cameras.k2, cameras.pose2);
  write_text_file(path, content);
}

CamerasFile read_cameras_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInputError("cannot open " + path + " for reading");
  }
  const auto read_view = [&](CameraIntrinsics* k, RigidPose* pose) {
    double fx, fy, cx, cy;
    Eigen::Matrix3d r;
    Eigen::Vector3d t;
    if (!(in >> fx >> fy >> cx >> cy)) {
      throw ParseError(path + ": malformed camera intrinsics line");
    }
    for (int row = 0; row < 3; ++row) {
      if (!(in >> r(row, 0) >> r(row, 1) >> r(row, 2) >> t(row))) {
        throw ParseError(path + ": malformed camera pose row");
      }
    }
    *k = CameraIntrinsics(fx, fy, cx, cy);
    *pose = RigidPose(r, t);
  };
  CamerasFile cams;
  read_view(&cams.k1, &cams.pose1);
  read_view(&cams.k2, &cams.pose2);
  return cams;
}

ScenePair load_scene_pair(const std::string& scene_dir) {
  ScenePair pair;
  pair.image1 = read_ppm(scene_dir + "/view1.ppm");
  pair.image2 = read_ppm(scene_dir + "/view2.ppm");
  const CamerasFile cams = read_cameras_file(scene_dir + "/cameras.txt");
  pair.k1 = cams.k1;
  pair.k2 = cams.k2;
  pair.world_pose1 = cams.pose1;
  pair.world_pose2 = cams.pose2;
  const SparsePointCloud cloud = load_point_cloud(scene_dir + "/sparse.txt");
  pair.mu1 = view_median(cloud, pair.k1, pair.world_pose1, pair.image1.height,
                         pair.image1.width, 1);
  pair.mu2 = view_median(cloud, pair.k2, pair.world_pose2, pair.image2.height,
                         pair.image2.width, 2);
  if (fs::exists(scene_dir + "/gt1.pfm")) {
    pair.gt_depth1 = DepthMap(read_pfm(scene_dir + "/gt1.pfm"));
  }
  if (fs::exists(scene_dir + "/gt2.pfm")) {
    pair.gt_depth2 = DepthMap(read_pfm(scene_dir + "/gt2.pfm"));
  }
  return pair;
}

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"self-supervised real-depth objective over synthetic "
               "two-view scenes"};
  app.require_subcommand(1);

  std::string descriptor_path, out_dir, config_path, pred_path, gt_path;
  std::optional<uint64_t> seed;
  std::optional<int> scales;
  std::optional<double> threshold;
  bool no_align = false;

  CLI::App* synth = app.add_subcommand(
      "synth", "render a two-view scene with ground truth");
  synth->add_option("descriptor", descriptor_path, "scene descriptor file")
      ->required();
  synth->add_option("out_dir", out_dir, "output directory")->required();
  synth->add_option("--seed", seed, "override the descriptor seed");

  CLI::App* optimize = app.add_subcommand(
      "optimize", "optimize relative-depth fields for a scene");
  optimize->add_option("config", config_path, "optimization config file")
      ->required();
  optimize->add_option("--seed", seed, "override the config seed");
  optimize->add_option("--scales", scales, "override the pyramid levels");

  CLI::App* gradcheck = app.add_subcommand(
      "gradcheck", "verify analytic gradients with central differences");
  gradcheck->add_option("config", config_path, "gradient check config file")
      ->required();
  gradcheck->add_option("--seed", seed, "override the config seed");
  gradcheck->add_option("--scales", scales, "override the pyramid levels");
  gradcheck->add_option("--threshold", threshold,
                        "override the failure threshold");

  CLI::App* eval =
      app.add_subcommand("eval", "depth metrics against ground truth");
  eval->add_option("pred", pred_path, "predicted depth PFM")->required();
  eval->add_option("gt", gt_path, "ground-truth depth PFM")->required();
  eval->add_flag("--no-align", no_align, "skip median alignment");

  std::vector<const char*> argv;
  argv.push_back("depthwarp");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()),
              const_cast<char**>(argv.data()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitValidation;
  }

  try {
    if (synth->parsed()) {
      return cmd_synth(descriptor_path, out_dir, seed);
    }
    if (optimize->parsed()) {
      return cmd_optimize(config_path, seed, scales);
    }
    if (gradcheck->parsed()) {
      return cmd_gradcheck(config_path, seed, scales, threshold);
    }
    if (eval->parsed()) {
      return cmd_eval(pred_path, gt_path, no_align);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InvalidInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const SceneConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InsufficientDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NoOverlapError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const DivergedError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const DegenerateGeometryError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitValidation;
}

}  // namespace depthwarp
