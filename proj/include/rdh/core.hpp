/**
 * Copyright The rdh-pvo Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rdh/errors.hpp"

namespace rdh {

// Working representation of a block's intensities. Values are plain ints so
// codecs can detect results outside [0, 255] before writing them back.
using BlockValues = std::vector<int>;

/// 8-bit grayscale raster, row-major.
class GrayImage {
 public:
  GrayImage() = default;

  GrayImage(int width, int height, std::uint8_t fill = 0)
      : width_(width), height_(height) {
    if (width < 0 || height < 0) {
      throw std::invalid_argument("image dimensions must be non-negative");
    }
    pixels_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (width < 0 || height < 0 ||
        pixels_.size() != static_cast<std::size_t>(width) * height) {
      throw std::invalid_argument("pixel count does not match dimensions");
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return pixels_.empty(); }

  std::uint8_t at(int x, int y) const {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }
  std::uint8_t& at(int x, int y) {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Size of one embedding block. A block holds at least two pixels.
struct BlockGeometry {
  int block_w = 2;
  int block_h = 2;

  constexpr std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(block_w) * block_h;
  }
  constexpr bool valid() const noexcept {
    return block_w >= 1 && block_h >= 1 && pixel_count() >= 2;
  }

  std::string to_string() const {
    return std::to_string(block_w) + "x" + std::to_string(block_h);
  }

  // Parses "WxH".
  static BlockGeometry parse(std::string_view text) {
    const auto sep = text.find_first_of("xX");
    if (sep == std::string_view::npos) {
      throw ParseError("block geometry must look like WxH: '" +
                       std::string(text) + "'");
    }
    auto to_int = [&](std::string_view part) {
      if (part.empty() || part.size() > 6 ||
          !std::all_of(part.begin(), part.end(),
                       [](char c) { return c >= '0' && c <= '9'; })) {
        throw ParseError("bad block dimension in '" + std::string(text) + "'");
      }
      return std::stoi(std::string(part));
    };
    BlockGeometry g{to_int(text.substr(0, sep)), to_int(text.substr(sep + 1))};
    if (!g.valid()) {
      throw ParseError("block must hold at least two pixels: '" +
                       std::string(text) + "'");
    }
    return g;
  }

  friend constexpr bool operator==(const BlockGeometry&,
                                   const BlockGeometry&) = default;
};

struct PixelCoord {
  int x = 0;
  int y = 0;
  friend constexpr bool operator==(const PixelCoord&,
                                   const PixelCoord&) = default;
};

/// Non-overlapping tiling of an image into blocks, visited left-to-right,
/// top-to-bottom. Pixels right of the last full block column or below the
/// last full block row form the residual region and are never touched.
class BlockPartition {
 public:
  BlockPartition(int image_w, int image_h, BlockGeometry geometry)
      : geometry_(geometry), image_w_(image_w), image_h_(image_h) {
    if (!geometry.valid()) {
      throw std::invalid_argument("invalid block geometry " +
                                  geometry.to_string());
    }
    if (image_w <= 0 || image_h <= 0) {
      throw std::invalid_argument("image is empty");
    }
    cols_ = image_w / geometry.block_w;
    rows_ = image_h / geometry.block_h;
    if (cols_ == 0 || rows_ == 0) {
      throw std::invalid_argument("image too small for geometry " +
                                  geometry.to_string());
    }
  }

  BlockPartition(const GrayImage& image, BlockGeometry geometry)
      : BlockPartition(image.width(), image.height(), geometry) {}

  const BlockGeometry& geometry() const noexcept { return geometry_; }
  int grid_cols() const noexcept { return cols_; }
  int grid_rows() const noexcept { return rows_; }
  std::size_t block_count() const noexcept {
    return static_cast<std::size_t>(cols_) * rows_;
  }

  PixelCoord origin(std::size_t block) const noexcept {
    const int col = static_cast<int>(block % cols_);
    const int row = static_cast<int>(block / cols_);
    return {col * geometry_.block_w, row * geometry_.block_h};
  }

  std::size_t residual_pixel_count() const noexcept {
    return static_cast<std::size_t>(image_w_) * image_h_ -
           block_count() * geometry_.pixel_count();
  }

  std::vector<PixelCoord> residual_region() const {
    std::vector<PixelCoord> out;
    out.reserve(residual_pixel_count());
    const int covered_w = cols_ * geometry_.block_w;
    const int covered_h = rows_ * geometry_.block_h;
    for (int y = 0; y < image_h_; ++y) {
      for (int x = 0; x < image_w_; ++x) {
        if (x >= covered_w || y >= covered_h) out.push_back({x, y});
      }
    }
    return out;
  }

 private:
  BlockGeometry geometry_;
  int image_w_;
  int image_h_;
  int cols_ = 0;
  int rows_ = 0;
};

inline BlockPartition partition(const GrayImage& image, BlockGeometry geometry) {
  return BlockPartition(image, geometry);
}

// Copies block `index` out of the image in row-major in-block order.
inline BlockValues read_block(const GrayImage& image,
                              const BlockPartition& part, std::size_t index) {
  const auto [ox, oy] = part.origin(index);
  const auto& g = part.geometry();
  BlockValues values;
  values.reserve(g.pixel_count());
  for (int dy = 0; dy < g.block_h; ++dy) {
    for (int dx = 0; dx < g.block_w; ++dx) {
      values.push_back(image.at(ox + dx, oy + dy));
    }
  }
  return values;
}

inline void write_block(GrayImage& image, const BlockPartition& part,
                        std::size_t index, std::span<const int> values) {
  const auto [ox, oy] = part.origin(index);
  const auto& g = part.geometry();
  std::size_t i = 0;
  for (int dy = 0; dy < g.block_h; ++dy) {
    for (int dx = 0; dx < g.block_w; ++dx, ++i) {
      if (values[i] < 0 || values[i] > 255) {
        throw OverflowError("block value out of 8-bit range");
      }
      image.at(ox + dx, oy + dy) = static_cast<std::uint8_t>(values[i]);
    }
  }
}

/// Ascending, index-stable sort permutation of a block.
///
/// `order()[r]` is the 0-based in-block index of the pixel with rank r.
/// Equal values keep ascending index order, so the top-ranked pixel is the
/// largest index among the maximum-valued pixels.
class RankMap {
 public:
  explicit RankMap(std::span<const int> values) : order_(values.size()) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) {
                       return values[a] < values[b];
                     });
  }

  std::span<const std::size_t> order() const noexcept { return order_; }
  std::size_t size() const noexcept { return order_.size(); }
  std::size_t operator[](std::size_t rank) const { return order_[rank]; }

  // In-block index of the largest pixel.
  std::size_t top() const { return order_.back(); }
  // In-block index of the second-largest pixel.
  std::size_t second() const { return order_[order_.size() - 2]; }

 private:
  std::vector<std::size_t> order_;
};

inline RankMap rank_block(std::span<const int> values) {
  if (values.size() < 2) {
    throw std::invalid_argument("block must hold at least two pixels");
  }
  return RankMap(values);
}

/// Distinct value levels of a block in descending order with their counts.
struct OrderStatistics {
  std::vector<int> levels;
  std::vector<std::size_t> multiplicities;

  int first_level() const { return levels.front(); }
  std::size_t first_count() const { return multiplicities.front(); }
  bool has_second() const noexcept { return levels.size() >= 2; }
  int second_level() const { return levels.at(1); }
  std::size_t second_count() const { return multiplicities.at(1); }
};

inline OrderStatistics order_statistics(std::span<const int> values) {
  if (values.size() < 2) {
    throw std::invalid_argument("block must hold at least two pixels");
  }
  BlockValues sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>{});
  OrderStatistics stats;
  for (int v : sorted) {
    if (stats.levels.empty() || stats.levels.back() != v) {
      stats.levels.push_back(v);
      stats.multiplicities.push_back(1);
    } else {
      ++stats.multiplicities.back();
    }
  }
  return stats;
}

// In-block indices (ascending) of pixels whose value is at least `floor`.
inline std::vector<std::size_t> indices_at_least(std::span<const int> values,
                                                 int floor) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= floor) out.push_back(i);
  }
  return out;
}

/// Finite sequence of bits.
class BitPayload {
 public:
  BitPayload() = default;
  BitPayload(std::initializer_list<int> bits) {
    for (int b : bits) push_back(b != 0);
  }
  explicit BitPayload(std::vector<bool> bits) : bits_(std::move(bits)) {}

  // "0110" -> bits. Any other character is rejected.
  static BitPayload from_string(std::string_view text) {
    BitPayload out;
    for (char c : text) {
      if (c != '0' && c != '1') {
        throw ParseError("bit string may only contain 0 and 1");
      }
      out.push_back(c == '1');
    }
    return out;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (bool b : bits_) s.push_back(b ? '1' : '0');
    return s;
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i]; }
  void push_back(bool bit) { bits_.push_back(bit); }
  void append(const BitPayload& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
  }
  void truncate(std::size_t n) {
    if (n < bits_.size()) bits_.resize(n);
  }

  // Bits [start, start + len); positions past the end read as 0.
  BitPayload slice_padded(std::size_t start, std::size_t len) const {
    BitPayload out;
    for (std::size_t i = 0; i < len; ++i) {
      out.push_back(start + i < bits_.size() && bits_[start + i]);
    }
    return out;
  }

  const std::vector<bool>& bits() const noexcept { return bits_; }

  friend bool operator==(const BitPayload&, const BitPayload&) = default;

 private:
  std::vector<bool> bits_;
};

enum class ChunkClass {
  kAllZero,  // S0
  kAllOne,   // S1
  kMixed,    // MS
};

inline ChunkClass classify_chunk(const BitPayload& chunk) {
  if (chunk.empty()) throw std::invalid_argument("cannot classify empty chunk");
  const auto& b = chunk.bits();
  const auto ones = static_cast<std::size_t>(std::count(b.begin(), b.end(), true));
  if (ones == 0) return ChunkClass::kAllZero;
  if (ones == b.size()) return ChunkClass::kAllOne;
  return ChunkClass::kMixed;
}

// Result of decoding one block: the restored values and, when the block
// carried data, the recovered bits.
struct BlockExtraction {
  BlockValues values;
  std::optional<BitPayload> bits;
};

}  // namespace rdh
