// roomdepth: batch command-line front end for the background depth pipeline.
//
// Every failure prints exactly one line to stderr of the form
//   error: <code>: <message>
// and exits nonzero.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "roomdepth/bgdepth.h"
#include "roomdepth/denoise.h"
#include "roomdepth/error.h"
#include "roomdepth/fusion.h"
#include "roomdepth/io.h"
#include "roomdepth/metrics.h"
#include "roomdepth/synth.h"

namespace fs = std::filesystem;
using namespace roomdepth;

namespace {

struct SynthArgs {
  std::uint64_t seed = 0;
  int count = 1;
  FloorPlanKind plan = FloorPlanKind::kRect;
  std::string out_dir;
  int width = 1024;
  int max_boxes = 4;
};

void run_synth(const SynthArgs& args) {
  const GridSpec grid(args.width, args.width / 2);
  fs::create_directories(args.out_dir);
  SceneConfig config;
  config.plan = args.plan;
  config.max_boxes = args.max_boxes;
  for (int k = 0; k < args.count; ++k) {
    const SceneSpec scene = generate_scene(derive_scene_seed(args.seed, k), config);
    char name[32];
    std::snprintf(name, sizeof(name), "scene_%04d", k);
    const fs::path dir = fs::path(args.out_dir) / name;
    fs::create_directories(dir);

    const DepthMap gt = raycast_depth(scene, grid, true);
    const DepthMap background = raycast_depth(scene, grid, false);
    SegMap mask(grid);
    for (std::size_t i = 0; i < mask.size(); ++i) {
      mask[i] = std::abs(gt[i] - background[i]) <= 1e-6 ? 1.0 : 0.0;
    }
    write_file_atomic(dir / "scene.json", scene_to_json(scene));
    write_pfm(gt, dir / "gt.pfm");
    write_pfm(background, dir / "bg_gt.pfm");
    write_file_atomic(dir / "layout.json", layout_to_json(room_to_layout(scene.room, grid)));
    write_pfm(mask, dir / "segmask.pfm");
  }
}

struct BgArgs {
  std::string layout, coarse, out;
  ResolveMode mode = ResolveMode::kExact;
  HeightAggregator aggregator = HeightAggregator::kMedian;
  BoundarySampling sampling = BoundarySampling::kPlaneExtrapolated;
};

void run_bg(const BgArgs& args) {
  const LayoutMap layout = layout_from_json(read_file(args.layout));
  const DepthMap coarse = read_depth_pfm(args.coarse);
  HeightOptions options;
  options.aggregator = args.aggregator;
  options.sampling = args.sampling;
  const CameraHeights heights = resolve_camera_heights(layout, coarse, options);
  write_pfm(resolve_background_depth(layout, heights, args.mode), args.out);
  std::printf("{\"up\": %.9g, \"down\": %.9g}\n", heights.up, heights.down);
}

template <typename T>
CLI::Transformer choice(const std::map<std::string, T>& mapping) {
  return CLI::Transformer(mapping, CLI::ignore_case);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Room-geometry background depth toolkit for equirectangular panoramas"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate seeded synthetic rooms and renders");
  synth_cmd->add_option("--seed", synth.seed, "Base seed")->required();
  synth_cmd->add_option("--count", synth.count, "Number of scenes")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--plan", synth.plan, "Floor plan kind")
      ->transform(choice<FloorPlanKind>(
          {{"rect", FloorPlanKind::kRect}, {"lshape", FloorPlanKind::kLShape}}));
  synth_cmd->add_option("--out-dir", synth.out_dir, "Output directory")->required();
  synth_cmd->add_option("--width", synth.width, "Panorama width (height is width/2)")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--max-boxes", synth.max_boxes, "Upper bound on foreground boxes")
      ->check(CLI::NonNegativeNumber);

  BgArgs bg;
  auto* bg_cmd = app.add_subcommand("bg", "Resolve camera heights and the background depth");
  bg_cmd->add_option("--layout", bg.layout, "Layout JSON")->required();
  bg_cmd->add_option("--coarse", bg.coarse, "Coarse depth PFM")->required();
  bg_cmd->add_option("--mode", bg.mode, "exact | paper-literal")
      ->transform(choice<ResolveMode>(
          {{"exact", ResolveMode::kExact}, {"paper-literal", ResolveMode::kPaperLiteral}}));
  bg_cmd->add_option("--aggregator", bg.aggregator, "median | mean")
      ->transform(choice<HeightAggregator>(
          {{"median", HeightAggregator::kMedian}, {"mean", HeightAggregator::kMean}}));
  bg_cmd->add_option("--sampling", bg.sampling, "plane | bilinear boundary sampling")
      ->transform(choice<BoundarySampling>({{"plane", BoundarySampling::kPlaneExtrapolated},
                                            {"bilinear", BoundarySampling::kBilinear}}));
  bg_cmd->add_option("--out", bg.out, "Output PFM")->required();

  std::string coarse_path, bg_path, seg_path, gt_path, room_path, out_path;
  std::string pred_path, mask_path, json_path, depth_path;
  double gamma = kDefaultSegGamma;
  double slack = kDefaultShellSlack;

  auto* fuse_cmd = app.add_subcommand("fuse", "Blend coarse and background depth");
  fuse_cmd->add_option("--coarse", coarse_path)->required();
  fuse_cmd->add_option("--bg", bg_path)->required();
  fuse_cmd->add_option("--seg", seg_path)->required();
  fuse_cmd->add_option("--out", out_path)->required();

  auto* seglabel_cmd = app.add_subcommand("seglabel", "Derive background labels");
  seglabel_cmd->add_option("--gt", gt_path)->required();
  seglabel_cmd->add_option("--bg", bg_path)->required();
  seglabel_cmd->add_option("--gamma", gamma, "Residual threshold in meters");
  seglabel_cmd->add_option("--out", out_path)->required();

  auto* denoise_cmd = app.add_subcommand("denoise", "Replace out-of-room depth noise");
  denoise_cmd->add_option("--gt", gt_path)->required();
  denoise_cmd->add_option("--bg", bg_path)->required();
  denoise_cmd->add_option("--room", room_path)->required();
  denoise_cmd->add_option("--slack", slack, "Allowed distance outside the room, meters");
  denoise_cmd->add_option("--out", out_path)->required();

  auto* eval_cmd = app.add_subcommand("eval", "Depth metrics as JSON");
  eval_cmd->add_option("--pred", pred_path)->required();
  eval_cmd->add_option("--gt", gt_path)->required();
  eval_cmd->add_option("--mask", mask_path);
  eval_cmd->add_option("--json", json_path)->required();

  auto* cloud_cmd = app.add_subcommand("pointcloud", "Export an ASCII PLY point cloud");
  cloud_cmd->add_option("--depth", depth_path)->required();
  cloud_cmd->add_option("--out", out_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  }

  try {
    if (synth_cmd->parsed()) {
      run_synth(synth);
    } else if (bg_cmd->parsed()) {
      run_bg(bg);
    } else if (fuse_cmd->parsed()) {
      write_pfm(fuse_depth(read_depth_pfm(coarse_path), read_depth_pfm(bg_path),
                           read_seg_pfm(seg_path)),
                out_path);
    } else if (seglabel_cmd->parsed()) {
      write_pfm(derive_seg_labels(read_depth_pfm(gt_path), read_depth_pfm(bg_path), gamma),
                out_path);
    } else if (denoise_cmd->parsed()) {
      write_pfm(denoise_depth(read_depth_pfm(gt_path), read_depth_pfm(bg_path),
                              room_from_json(read_file(room_path)), slack),
                out_path);
    } else if (eval_cmd->parsed()) {
      const DepthMap pred = read_depth_pfm(pred_path);
      const DepthMap gt = read_depth_pfm(gt_path);
      MetricsReport report;
      if (mask_path.empty()) {
        report = eval_metrics(pred, gt);
      } else {
        const SegMap mask = read_seg_pfm(mask_path);
        report = eval_metrics(pred, gt, &mask);
      }
      write_file_atomic(json_path, metrics_to_json(report));
    } else if (cloud_cmd->parsed()) {
      write_file_atomic(out_path, depth_to_ply(read_depth_pfm(depth_path)));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
