#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "roomdepth/layout.h"
#include "roomdepth/maps.h"
#include "roomdepth/metrics.h"
#include "roomdepth/synth.h"

namespace roomdepth {

// Portable float map, single channel, any dimensions. Payload rows run
// bottom-to-top on disk.
struct PfmImage {
  int width = 0;
  int height = 0;
  std::vector<float> values;  // row-major, top row first
  bool little_endian = true;
};

// "Pf\n{W} {H}\n-1.0\n" followed by little-endian float32 rows, bottom first.
std::string encode_pfm(const PfmImage& image);
// Accepts both byte orders. Throws Error(kPfmBadMagic), Error(kPfmBadHeader)
// or Error(kPfmTruncated).
PfmImage decode_pfm(const std::string& bytes);

PfmImage to_pfm(std::span<const double> values, const GridSpec& grid);
// Throw Error(kShapeMismatch) unless the image is 2:1.
DepthMap pfm_to_depth(const PfmImage& image);
SegMap pfm_to_seg(const PfmImage& image);

void write_pfm(const DepthMap& map, const std::filesystem::path& path);
void write_pfm(const SegMap& map, const std::filesystem::path& path);
PfmImage read_pfm(const std::filesystem::path& path);
DepthMap read_depth_pfm(const std::filesystem::path& path);
SegMap read_seg_pfm(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

// JSON documents. Parse errors raise Error(kParse).
std::string layout_to_json(const LayoutMap& layout);
LayoutMap layout_from_json(const std::string& text);
std::string room_to_json(const ManhattanRoom& room);
ManhattanRoom room_from_json(const std::string& text);
std::string scene_to_json(const SceneSpec& scene);
SceneSpec scene_from_json(const std::string& text);

// ASCII PLY with one vertex per valid pixel (origin + d * ray).
std::string depth_to_ply(const DepthMap& depth);

}  // namespace roomdepth
