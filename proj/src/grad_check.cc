#include "depthwarp/grad_check.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "depthwarp/random.h"

namespace depthwarp {

namespace {

double relative_error(double a, double b, double zero_floor) {
  const double denom = std::max(std::abs(a), std::abs(b));
  if (denom < zero_floor) return 0.0;
  return std::abs(a - b) / denom;
}

}  // namespace

double FiniteDiffReport::pass_fraction(double threshold) const {
  if (checked_count == 0) return 1.0;
  long pass = 0;
  for (const FiniteDiffEntry& e : entries) {
    if (!e.flagged && e.rel_error < threshold) ++pass;
  }
  return static_cast<double>(pass) / static_cast<double>(checked_count);
}

std::string FiniteDiffReport::to_text(double threshold) const {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "checked %ld entries (%ld flagged as cell-straddling)\n"
                "max relative error  %.3e\n"
                "mean relative error %.3e\n",
                checked_count, flagged_count, max_rel_error, mean_rel_error);
  out << buf;
  bool any = false;
  for (const FiniteDiffEntry& e : entries) {
    if (e.flagged || e.rel_error < threshold) continue;
    if (!any) {
      out << "entries exceeding threshold " << threshold << ":\n";
      any = true;
    }
    std::snprintf(buf, sizeof(buf),
                  "  view %d pixel (%d, %d): analytic %.12e numeric %.12e "
                  "rel %.3e\n",
                  e.view, e.x, e.y, e.analytic, e.numeric, e.rel_error);
    out << buf;
  }
  if (!any) {
    out << "all non-flagged entries below threshold " << threshold << "\n";
  }
  return out.str();
}

FiniteDiffReport finite_diff_check(const ScenePair& pair,
                                   const ScalarGrid& rel_field_1,
                                   const ScalarGrid& rel_field_2,
                                   const LossWeights& weights,
                                   const FiniteDiffOptions& options) {
  if (!(options.step > 0.0)) {
    throw InvalidInputError("finite difference step must be positive");
  }

  // Base forward pass: analytic gradients plus the adaptive weights that the
  // perturbed evaluations will reuse.
  AlphaPyramid alphas;
  TotalLossOptions base_opts;
  base_opts.alpha_out = &alphas;
  (void)total_loss(pair, rel_field_1, rel_field_2, weights, base_opts);
  GradientPair grads =
      total_loss_gradient(pair, rel_field_1, rel_field_2, weights);
  if (options.corrupt_entry >= 0 &&
      options.corrupt_entry <
          static_cast<long>(grads.grad1.values.size())) {
    grads.grad1.values[static_cast<size_t>(options.corrupt_entry)] +=
        options.corrupt_delta;
  }

  const size_t per_field = rel_field_1.values.size();
  const size_t total_entries = 2 * per_field;
  const long want =
      std::min<long>(options.sample_count, static_cast<long>(total_entries));

  // Seeded sample without replacement (partial Fisher-Yates).
  std::vector<size_t> indices(total_entries);
  for (size_t i = 0; i < total_entries; ++i) indices[i] = i;
  DeterministicRng rng(options.seed);
  for (long i = 0; i < want; ++i) {
    const size_t j =
        i + static_cast<size_t>(rng.next() % (total_entries - i));
    std::swap(indices[i], indices[j]);
  }

  FiniteDiffReport report;
  report.entries.reserve(want);
  double err_sum = 0.0;
  for (long s = 0; s < want; ++s) {
    const size_t idx = indices[s];
    const int view = idx < per_field ? 1 : 2;
    const size_t fi = idx % per_field;

    ScalarGrid f1 = rel_field_1;
    ScalarGrid f2 = rel_field_2;
    ScalarGrid& target = view == 1 ? f1 : f2;
    const double base = target.values[fi];

    EvalTrace trace_plus, trace_minus;
    TotalLossOptions opts_plus;
    opts_plus.frozen_alpha = &alphas;
    opts_plus.trace_out = &trace_plus;
    TotalLossOptions opts_minus;
    opts_minus.frozen_alpha = &alphas;
    opts_minus.trace_out = &trace_minus;

    target.values[fi] = base + options.step;
    const double loss_plus = total_loss(pair, f1, f2, weights, opts_plus).total;
    target.values[fi] = base - options.step;
    const double loss_minus =
        total_loss(pair, f1, f2, weights, opts_minus).total;

    FiniteDiffEntry entry;
    entry.view = view;
    entry.y = static_cast<int>(fi) / rel_field_1.width;
    entry.x = static_cast<int>(fi) % rel_field_1.width;
    entry.analytic = view == 1 ? grads.grad1.values[fi]
                               : grads.grad2.values[fi];
    entry.numeric = (loss_plus - loss_minus) / (2.0 * options.step);
    entry.flagged = !(trace_plus == trace_minus);
    entry.rel_error =
        relative_error(entry.analytic, entry.numeric, options.zero_floor);
    if (!entry.flagged) {
      report.max_rel_error = std::max(report.max_rel_error, entry.rel_error);
      err_sum += entry.rel_error;
      ++report.checked_count;
    } else {
      ++report.flagged_count;
    }
    report.entries.push_back(entry);
  }
  report.mean_rel_error =
      report.checked_count > 0
          ? err_sum / static_cast<double>(report.checked_count)
          : 0.0;
  return report;
}

}  // namespace depthwarp
