#include "depthwarp/metrics.h"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "depthwarp/scale.h"

namespace depthwarp {

namespace {

void check_shapes(const DepthMap& pred, const DepthMap& gt) {
  if (!pred.grid.same_shape(gt.grid)) {
    throw InvalidInputError(
        "prediction and ground truth dimensions differ: " +
        std::to_string(pred.grid.width) + "x" +
        std::to_string(pred.grid.height) + " vs " +
        std::to_string(gt.grid.width) + "x" + std::to_string(gt.grid.height));
  }
}

}  // namespace

DepthMap median_align(const DepthMap& pred, const DepthMap& gt) {
  check_shapes(pred, gt);
  const double med_pred = median_depth(pred.grid.values).value;
  const double med_gt = median_depth(gt.grid.values).value;
  const double scale = med_gt / med_pred;
  ScalarGrid aligned = pred.grid;
  for (double& v : aligned.values) v *= scale;
  return DepthMap(std::move(aligned));
}

MetricReport compute_metrics(const DepthMap& pred, const DepthMap& gt) {
  check_shapes(pred, gt);
  MetricReport r;
  r.pixel_count = static_cast<long>(gt.grid.values.size());
  const double inv_n = 1.0 / static_cast<double>(r.pixel_count);
  double abs_rel = 0.0, sq_rel = 0.0, sq = 0.0, sq_log = 0.0;
  for (size_t i = 0; i < gt.grid.values.size(); ++i) {
    const double p = pred.grid.values[i];
    const double g = gt.grid.values[i];
    const double d = p - g;
    abs_rel += std::abs(d) / g;
    sq_rel += d * d / g;
    sq += d * d;
    const double dl = std::log10(p) - std::log10(g);
    sq_log += dl * dl;
  }
  r.abs_rel = abs_rel * inv_n;
  r.sq_rel = sq_rel * inv_n;
  r.rms = std::sqrt(sq * inv_n);
  r.rms_log = std::sqrt(sq_log * inv_n);
  return r;
}

std::string MetricReport::to_text() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "metric            value\n"
                "Abs Rel     %11.6f\n"
                "Sq Rel      %11.6f\n"
                "RMS         %11.6f\n"
                "RMS(log10)  %11.6f\n"
                "pixels      %11ld\n",
                abs_rel, sq_rel, rms, rms_log, pixel_count);
  return buf;
}

std::string MetricReport::to_csv() const {
  std::ostringstream out;
  out << "abs_rel,sq_rel,rms,rms_log10,pixels\n";
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%ld\n", abs_rel,
                sq_rel, rms, rms_log, pixel_count);
  out << buf;
  return out.str();
}

}  // namespace depthwarp
