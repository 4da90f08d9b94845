#pragma once

#include <optional>
#include <span>
#include <string>

#include "roomdepth/maps.h"

namespace roomdepth {

struct MetricsReport {
  double abs_rel = 0.0;
  double sq_rel = 0.0;
  double rmse = 0.0;
  double mae = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double delta3 = 0.0;
  std::size_t valid_pixels = 0;
};

// Standard depth metrics over pixels with gt > 0 (and mask >= 0.5 when a mask
// is given). delta_t counts max(p/g, g/p) < 1.25^t. Sums are compensated so
// results do not depend on evaluation order. Throws Error(kNoValidPixels).
MetricsReport eval_metrics(const DepthMap& pred, const DepthMap& gt,
                           const SegMap* mask = nullptr);

// JSON object with the seven metric fields, 9 significant digits.
std::string metrics_to_json(const MetricsReport& report);

struct FocalParams {
  double alpha = 0.5;
  double eta = 2.0;
};

inline constexpr double kFocalClampEps = 1e-7;

// -mean(alpha * (1 - q)^eta * ln q), q = p for label 1 and 1 - p otherwise,
// p clamped to [eps, 1 - eps]. Throws Error(kShapeMismatch).
double focal_loss(const SegMap& pred, const SegMap& labels, const FocalParams& params = {});

// Mean of per-map focal losses. Throws Error(kInvalidArgument) when empty or
// sizes differ.
double focal_loss_batch(std::span<const SegMap> preds, std::span<const SegMap> labels,
                        const FocalParams& params = {});

struct LossWeights {
  double layout = 0.01;
  double depth = 1.0;
  double seg = 0.4;
};

double total_loss(double layout_loss, double depth_loss, double seg_loss,
                  const LossWeights& weights = {});

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace roomdepth
