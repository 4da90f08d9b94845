#include "roomdepth/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace roomdepth {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

MetricsReport eval_metrics(const DepthMap& pred, const DepthMap& gt, const SegMap* mask) {
  require_same_grid(pred.grid(), gt.grid(), "eval_metrics");
  if (mask != nullptr) require_same_grid(gt.grid(), mask->grid(), "eval_metrics mask");

  CompensatedSum abs_rel, sq_rel, sq, abs;
  std::size_t n = 0;
  std::size_t within[3] = {0, 0, 0};
  const double thresholds[3] = {1.25, 1.25 * 1.25, 1.25 * 1.25 * 1.25};
  for (std::size_t i = 0; i < gt.size(); ++i) {
    const double g = gt[i];
    if (g <= 0.0) continue;
    if (mask != nullptr && (*mask)[i] < 0.5) continue;
    const double p = pred[i];
    const double err = p - g;
    abs_rel.add(std::abs(err) / g);
    sq_rel.add(err * err / g);
    sq.add(err * err);
    abs.add(std::abs(err));
    const double ratio = std::max(p / g, g / p);
    for (int t = 0; t < 3; ++t) {
      if (ratio < thresholds[t]) ++within[t];
    }
    ++n;
  }
  if (n == 0) {
    throw Error(ErrorCode::kNoValidPixels, "no valid pixels to evaluate");
  }
  const double count = static_cast<double>(n);
  MetricsReport report;
  report.abs_rel = abs_rel.value() / count;
  report.sq_rel = sq_rel.value() / count;
  report.rmse = std::sqrt(sq.value() / count);
  report.mae = abs.value() / count;
  report.delta1 = within[0] / count;
  report.delta2 = within[1] / count;
  report.delta3 = within[2] / count;
  report.valid_pixels = n;
  return report;
}

std::string metrics_to_json(const MetricsReport& report) {
  const std::pair<const char*, double> fields[] = {
      {"abs_rel", report.abs_rel}, {"sq_rel", report.sq_rel}, {"rmse", report.rmse},
      {"mae", report.mae},         {"delta1", report.delta1}, {"delta2", report.delta2},
      {"delta3", report.delta3},
  };
  std::string out = "{";
  char buffer[64];
  for (std::size_t i = 0; i < std::size(fields); ++i) {
    std::snprintf(buffer, sizeof(buffer), "%s\"%s\": %.9g", i == 0 ? "" : ", ",
                  fields[i].first, fields[i].second);
    out += buffer;
  }
  out += "}\n";
  return out;
}

double focal_loss(const SegMap& pred, const SegMap& labels, const FocalParams& params) {
  require_same_grid(pred.grid(), labels.grid(), "focal_loss");
  if (!(params.alpha > 0.0 && params.alpha <= 1.0) || !(params.eta >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "focal parameters need alpha in (0, 1], eta >= 0");
  }
  CompensatedSum sum;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double p = std::clamp(pred[i], kFocalClampEps, 1.0 - kFocalClampEps);
    const double q = labels[i] >= 0.5 ? p : 1.0 - p;
    sum.add(params.alpha * std::pow(1.0 - q, params.eta) * std::log(q));
  }
  return -sum.value() / static_cast<double>(pred.size());
}

double focal_loss_batch(std::span<const SegMap> preds, std::span<const SegMap> labels,
                        const FocalParams& params) {
  if (preds.empty() || preds.size() != labels.size()) {
    throw Error(ErrorCode::kInvalidArgument, "focal batch needs matching non-empty inputs");
  }
  CompensatedSum sum;
  for (std::size_t m = 0; m < preds.size(); ++m) sum.add(focal_loss(preds[m], labels[m], params));
  return sum.value() / static_cast<double>(preds.size());
}

double total_loss(double layout_loss, double depth_loss, double seg_loss,
                  const LossWeights& weights) {
  return weights.layout * layout_loss + weights.depth * depth_loss + weights.seg * seg_loss;
}

}  // namespace roomdepth
