#include "roomdepth/fusion.h"

#include <cmath>

namespace roomdepth {

DepthMap fuse_depth(const DepthMap& coarse, const DepthMap& background, const SegMap& seg) {
  require_same_grid(coarse.grid(), background.grid(), "fuse_depth (coarse vs background)");
  require_same_grid(coarse.grid(), seg.grid(), "fuse_depth (coarse vs segmentation)");
  DepthMap out(coarse.grid());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double d_coarse = coarse[i];
    const double d_back = background[i];
    if (d_back <= 0.0) {
      out[i] = d_coarse;
    } else if (d_coarse <= 0.0) {
      out[i] = d_back;
    } else {
      const double p = seg[i];
      out[i] = d_back * p + d_coarse * (1.0 - p);
    }
  }
  return out;
}

SegMap derive_seg_labels(const DepthMap& gt, const DepthMap& background, double gamma) {
  require_same_grid(gt.grid(), background.grid(), "derive_seg_labels");
  if (!(gamma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
  }
  SegMap labels(gt.grid());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (gt[i] <= 0.0) continue;
    labels[i] = std::abs(gt[i] - background[i]) < gamma ? 1.0 : 0.0;
  }
  return labels;
}

}  // namespace roomdepth
