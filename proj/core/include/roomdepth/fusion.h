#pragma once

#include "roomdepth/maps.h"

namespace roomdepth {

inline constexpr double kDefaultSegGamma = 0.1;  // meters

// d = d_back * p + d_coarse * (1 - p). Where one input is invalid (0) the
// other is used; both invalid gives 0. Throws Error(kShapeMismatch).
DepthMap fuse_depth(const DepthMap& coarse, const DepthMap& background,
                    const SegMap& seg);

// Label 1 where |gt - background| < gamma (strict), else 0. Invalid gt pixels
// are 0. Throws Error(kShapeMismatch), Error(kInvalidArgument) for gamma <= 0.
SegMap derive_seg_labels(const DepthMap& gt, const DepthMap& background,
                         double gamma = kDefaultSegGamma);

}  // namespace roomdepth
