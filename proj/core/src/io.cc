#include "roomdepth/io.h"

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "roomdepth/error.h"

namespace roomdepth {
namespace {

using ordered_json = nlohmann::ordered_json;

bool is_space(char c) { return c == ' ' || c == '\n' || c == '\r' || c == '\t'; }

// Reads one whitespace-delimited header token starting at `pos`.
std::string_view next_token(const std::string& bytes, std::size_t& pos) {
  while (pos < bytes.size() && is_space(bytes[pos])) ++pos;
  const std::size_t begin = pos;
  while (pos < bytes.size() && !is_space(bytes[pos])) ++pos;
  if (begin == pos) {
    throw Error(ErrorCode::kPfmBadHeader, "PFM header ends early");
  }
  return std::string_view(bytes).substr(begin, pos - begin);
}

template <typename T>
T parse_number(std::string_view token, const char* what) {
  T value{};
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size()) {
    throw Error(ErrorCode::kPfmBadHeader,
                std::string("PFM header has a malformed ") + what + ": '" + std::string(token) +
                    "'");
  }
  return value;
}

void append_float(std::string& out, float value, bool little_endian) {
  const auto bits = std::bit_cast<std::uint32_t>(value);
  for (int k = 0; k < 4; ++k) {
    const int shift = little_endian ? 8 * k : 8 * (3 - k);
    out.push_back(static_cast<char>((bits >> shift) & 0xFFu));
  }
}

float read_float(const char* p, bool little_endian) {
  std::uint32_t bits = 0;
  for (int k = 0; k < 4; ++k) {
    const auto byte = static_cast<std::uint32_t>(static_cast<unsigned char>(p[k]));
    const int shift = little_endian ? 8 * k : 8 * (3 - k);
    bits |= byte << shift;
  }
  return std::bit_cast<float>(bits);
}

template <typename Fn>
auto parse_json(const std::string& text, const char* what, Fn&& fn) {
  try {
    return fn(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string(what) + ": " + e.what());
  }
}

ordered_json vertices_json(const std::vector<Eigen::Vector2d>& vertices) {
  ordered_json out = ordered_json::array();
  for (const auto& v : vertices) out.push_back({v.x(), v.y()});
  return out;
}

std::vector<Eigen::Vector2d> vertices_from(const nlohmann::json& j) {
  std::vector<Eigen::Vector2d> out;
  for (const auto& v : j.at("vertices")) {
    if (v.size() != 2) throw Error(ErrorCode::kParse, "vertex must be [x, y]");
    out.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
  }
  return out;
}

ordered_json vec3_json(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

Eigen::Vector3d vec3_from(const nlohmann::json& j) {
  if (j.size() != 3) throw Error(ErrorCode::kParse, "expected [x, y, z]");
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

}  // namespace

std::string encode_pfm(const PfmImage& image) {
  const int w = image.width;
  const int h = image.height;
  if (w <= 0 || h <= 0 ||
      image.values.size() != static_cast<std::size_t>(w) * static_cast<std::size_t>(h)) {
    throw Error(ErrorCode::kShapeMismatch, "PFM payload does not match its grid");
  }
  std::string out = "Pf\n" + std::to_string(w) + " " + std::to_string(h) + "\n" +
                    (image.little_endian ? "-1.0\n" : "1.0\n");
  out.reserve(out.size() + image.values.size() * 4);
  for (int row = h - 1; row >= 0; --row) {
    for (int col = 0; col < w; ++col) {
      append_float(out, image.values[static_cast<std::size_t>(row) * w + col],
                   image.little_endian);
    }
  }
  return out;
}

PfmImage decode_pfm(const std::string& bytes) {
  if (bytes.size() < 3 || bytes[0] != 'P' || bytes[1] != 'f' || !is_space(bytes[2])) {
    throw Error(ErrorCode::kPfmBadMagic, "not a single-channel PFM file (expected 'Pf')");
  }
  std::size_t pos = 2;
  const int w = parse_number<int>(next_token(bytes, pos), "width");
  const int h = parse_number<int>(next_token(bytes, pos), "height");
  const double scale = parse_number<double>(next_token(bytes, pos), "scale");
  if (pos >= bytes.size() || !is_space(bytes[pos])) {
    throw Error(ErrorCode::kPfmTruncated, "PFM header is not terminated");
  }
  ++pos;
  if (w <= 0 || h <= 0 || scale == 0.0) {
    throw Error(ErrorCode::kPfmBadHeader, "PFM header has non-positive size or zero scale");
  }
  PfmImage image{w, h, {}, scale < 0.0};
  const std::size_t count = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  const std::size_t payload = bytes.size() - pos;
  if (payload / 4 < count) {
    throw Error(ErrorCode::kPfmTruncated, "PFM payload has " + std::to_string(payload) +
                                              " bytes, header needs " +
                                              std::to_string(count * 4));
  }
  if (payload != count * 4) {
    throw Error(ErrorCode::kPfmBadHeader, "PFM payload is longer than the header declares");
  }
  image.values.resize(count);
  const char* data = bytes.data() + pos;
  for (int row = h - 1; row >= 0; --row) {
    for (int col = 0; col < w; ++col, data += 4) {
      image.values[static_cast<std::size_t>(row) * w + col] =
          read_float(data, image.little_endian);
    }
  }
  return image;
}

PfmImage to_pfm(std::span<const double> values, const GridSpec& grid) {
  PfmImage image{grid.width(), grid.height(), std::vector<float>(values.size()), true};
  for (std::size_t i = 0; i < values.size(); ++i) image.values[i] = static_cast<float>(values[i]);
  return image;
}

namespace {

GridSpec pfm_grid(const PfmImage& image) {
  if (image.height <= 0 || image.width != 2 * image.height) {
    throw Error(ErrorCode::kShapeMismatch,
                "PFM image is " + std::to_string(image.width) + "x" +
                    std::to_string(image.height) + ", not a 2:1 equirectangular map");
  }
  return GridSpec(image.width, image.height);
}

}  // namespace

DepthMap pfm_to_depth(const PfmImage& image) {
  return DepthMap(pfm_grid(image), std::vector<double>(image.values.begin(), image.values.end()));
}

SegMap pfm_to_seg(const PfmImage& image) {
  return SegMap(pfm_grid(image), std::vector<double>(image.values.begin(), image.values.end()));
}

void write_pfm(const DepthMap& map, const std::filesystem::path& path) {
  write_file_atomic(path, encode_pfm(to_pfm(map.values(), map.grid())));
}

void write_pfm(const SegMap& map, const std::filesystem::path& path) {
  write_file_atomic(path, encode_pfm(to_pfm(map.values(), map.grid())));
}

PfmImage read_pfm(const std::filesystem::path& path) { return decode_pfm(read_file(path)); }

DepthMap read_depth_pfm(const std::filesystem::path& path) {
  return pfm_to_depth(read_pfm(path));
}

SegMap read_seg_pfm(const std::filesystem::path& path) { return pfm_to_seg(read_pfm(path)); }

void write_file_atomic(const std::filesystem::path& path, const std::string& bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::kIo, "failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot move " + tmp.string() + " to " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "failed reading " + path.string());
  return buffer.str();
}

std::string layout_to_json(const LayoutMap& layout) {
  ordered_json j;
  j["width"] = layout.grid().width();
  j["height"] = layout.grid().height();
  j["ceil"] = layout.ceil_rows();
  j["floor"] = layout.floor_rows();
  j["corner_prob"] = layout.corner_prob();
  return j.dump(1) + "\n";
}

LayoutMap layout_from_json(const std::string& text) {
  return parse_json(text, "layout JSON", [](const nlohmann::json& j) {
    return LayoutMap(GridSpec(j.at("width").get<int>(), j.at("height").get<int>()),
                     j.at("ceil").get<std::vector<double>>(),
                     j.at("floor").get<std::vector<double>>(),
                     j.at("corner_prob").get<std::vector<double>>());
  });
}

std::string room_to_json(const ManhattanRoom& room) {
  ordered_json j;
  j["vertices"] = vertices_json(room.floor_plan);
  j["cam_to_floor"] = room.cam_to_floor;
  j["cam_to_ceil"] = room.cam_to_ceil;
  return j.dump(1) + "\n";
}

ManhattanRoom room_from_json(const std::string& text) {
  ManhattanRoom room = parse_json(text, "room JSON", [](const nlohmann::json& j) {
    return ManhattanRoom{vertices_from(j), j.at("cam_to_floor").get<double>(),
                         j.at("cam_to_ceil").get<double>()};
  });
  validate_room(room);
  return room;
}

std::string scene_to_json(const SceneSpec& scene) {
  ordered_json j;
  j["vertices"] = vertices_json(scene.room.floor_plan);
  j["cam_to_floor"] = scene.room.cam_to_floor;
  j["cam_to_ceil"] = scene.room.cam_to_ceil;
  ordered_json boxes = ordered_json::array();
  for (const Box& box : scene.boxes) {
    ordered_json b;
    b["min"] = vec3_json(box.min);
    b["max"] = vec3_json(box.max);
    boxes.push_back(std::move(b));
  }
  j["boxes"] = std::move(boxes);
  j["seed"] = scene.seed;
  return j.dump(1) + "\n";
}

SceneSpec scene_from_json(const std::string& text) {
  SceneSpec scene = parse_json(text, "scene JSON", [](const nlohmann::json& j) {
    SceneSpec s;
    s.room = {vertices_from(j), j.at("cam_to_floor").get<double>(),
              j.at("cam_to_ceil").get<double>()};
    for (const auto& b : j.at("boxes")) {
      s.boxes.push_back({vec3_from(b.at("min")), vec3_from(b.at("max"))});
    }
    s.seed = j.at("seed").get<std::uint64_t>();
    return s;
  });
  validate_scene(scene);
  return scene;
}

std::string depth_to_ply(const DepthMap& depth) {
  const GridSpec& grid = depth.grid();
  std::string body;
  std::size_t count = 0;
  char line[96];
  for (int i = 0; i < grid.height(); ++i) {
    for (int j = 0; j < grid.width(); ++j) {
      const double d = depth.at(i, j);
      if (d <= 0.0) continue;
      const Eigen::Vector3d p = d * pixel_to_ray(i + 0.5, j + 0.5, grid).dir;
      const int n = std::snprintf(line, sizeof(line), "%.6f %.6f %.6f\n", p.x(), p.y(), p.z());
      body.append(line, static_cast<std::size_t>(n));
      ++count;
    }
  }
  std::string header = "ply\nformat ascii 1.0\nelement vertex " + std::to_string(count) +
                       "\nproperty float x\nproperty float y\nproperty float z\nend_header\n";
  return header + body;
}

}  // namespace roomdepth
