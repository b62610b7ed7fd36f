/**
 * Copyright The rdh-pvo Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdh/codec.hpp"
#include "rdh/core.hpp"
#include "rdh/random_bits.hpp"

namespace rdh {

// One flag per block in partition order; true = excluded (overflow risk).
using LocationMap = std::vector<bool>;

/// Auxiliary record needed to extract and restore; stored beside the stego
/// image rather than inside it.
struct EmbedMetadata {
  CodecId codec = CodecId::kPvo;
  BlockGeometry geometry;
  int image_w = 0;
  int image_h = 0;
  std::size_t payload_bit_length = 0;
  std::size_t processed_block_count = 0;
  LocationMap location_map;
  std::uint64_t carrier_checksum = 0;

  friend bool operator==(const EmbedMetadata&, const EmbedMetadata&) = default;
};

struct EmbedResult {
  GrayImage stego;
  EmbedMetadata meta;
};

struct ExtractResult {
  GrayImage restored;
  BitPayload payload;
};

struct CapacityReport {
  CodecId codec = CodecId::kPvo;
  BlockGeometry geometry;
  std::size_t capacity_bits = 0;
  std::size_t eligible_blocks = 0;
  std::size_t excluded_blocks = 0;
  double psnr_at_max = std::numeric_limits<double>::infinity();
  std::string image_label;  // optional; used by CSV output
};

struct SweepResult {
  BlockGeometry best;
  std::vector<CapacityReport> reports;
};

inline const std::vector<BlockGeometry>& default_sweep_candidates() {
  static const std::vector<BlockGeometry> kCandidates = {
      {2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 4}};
  return kCandidates;
}

// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (std::uint8_t b : bytes) {
    hash ^= b;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

/// Marks every block whose maximum could leave [0, 255] under the codec's
/// largest modification. Excluded blocks are never read or written.
inline LocationMap build_location_map(const GrayImage& image,
                                      BlockGeometry geometry, CodecId codec) {
  const BlockPartition part(image, geometry);
  const int limit = 255 - overflow_margin(codec);
  LocationMap map(part.block_count());
  for (std::size_t i = 0; i < part.block_count(); ++i) {
    const BlockValues block = read_block(image, part, i);
    map[i] = *std::max_element(block.begin(), block.end()) > limit;
  }
  return map;
}

namespace detail {

struct CapacityScan {
  std::size_t capacity_bits = 0;
  std::size_t eligible_blocks = 0;
  std::size_t excluded_blocks = 0;
};

inline CapacityScan scan_capacity(const GrayImage& image,
                                  const BlockPartition& part, CodecId codec,
                                  const LocationMap& map) {
  CapacityScan scan;
  for (std::size_t i = 0; i < part.block_count(); ++i) {
    if (map[i]) {
      ++scan.excluded_blocks;
      continue;
    }
    const std::size_t bits = block_capacity(codec, read_block(image, part, i));
    if (bits > 0) {
      ++scan.eligible_blocks;
      scan.capacity_bits += bits;
    }
  }
  return scan;
}

}  // namespace detail

/// Embeds `payload` into the leading blocks of `image`.
///
/// Blocks are visited in partition order. Excluded blocks are skipped;
/// every other block receives its codec's treatment, consuming a chunk when
/// it is eligible. The last chunk is zero-padded. Iteration stops after the
/// block that consumes the final payload bit, and all later blocks stay
/// untouched.
inline EmbedResult embed_image(const GrayImage& image, const BitPayload& payload,
                               CodecId codec, BlockGeometry geometry) {
  const BlockPartition part(image, geometry);
  EmbedResult result{image, {}};
  EmbedMetadata& meta = result.meta;
  meta.codec = codec;
  meta.geometry = geometry;
  meta.image_w = image.width();
  meta.image_h = image.height();
  meta.payload_bit_length = payload.size();
  meta.location_map = build_location_map(image, geometry, codec);
  meta.carrier_checksum = fnv1a64(image.pixels());

  const auto scan = detail::scan_capacity(image, part, codec, meta.location_map);
  if (payload.size() > scan.capacity_bits) {
    throw CapacityError(payload.size(), scan.capacity_bits);
  }

  std::size_t consumed = 0;
  for (std::size_t i = 0; i < part.block_count() && consumed < payload.size();
       ++i) {
    if (meta.location_map[i]) continue;
    const BlockValues block = read_block(image, part, i);
    const std::size_t bits = block_capacity(codec, block);
    const BitPayload chunk = payload.slice_padded(consumed, bits);
    consumed += bits;
    write_block(result.stego, part, i, embed_block(codec, block, chunk));
    meta.processed_block_count = i + 1;
  }
  return result;
}

/// Reverses embed_image. Throws IntegrityError when the restored carrier
/// does not hash to the recorded checksum.
inline ExtractResult extract_image(const GrayImage& stego,
                                   const EmbedMetadata& meta) {
  if (stego.width() != meta.image_w || stego.height() != meta.image_h) {
    throw std::invalid_argument(
        "metadata dimensions " + std::to_string(meta.image_w) + "x" +
        std::to_string(meta.image_h) + " do not match image " +
        std::to_string(stego.width()) + "x" + std::to_string(stego.height()));
  }
  const BlockPartition part(stego, meta.geometry);
  if (meta.location_map.size() != part.block_count() ||
      meta.processed_block_count > part.block_count()) {
    throw std::invalid_argument("metadata block counts do not match partition");
  }

  ExtractResult result{stego, {}};
  for (std::size_t i = 0; i < meta.processed_block_count; ++i) {
    if (meta.location_map[i]) continue;
    BlockExtraction ex = extract_block(meta.codec, read_block(stego, part, i));
    if (ex.bits) result.payload.append(*ex.bits);
    write_block(result.restored, part, i, ex.values);
  }
  if (result.payload.size() < meta.payload_bit_length) {
    throw IntegrityError("stego image yielded fewer bits than recorded");
  }
  result.payload.truncate(meta.payload_bit_length);
  if (fnv1a64(result.restored.pixels()) != meta.carrier_checksum) {
    throw IntegrityError("restored carrier does not match checksum");
  }
  return result;
}

/// 10*log10(255^2 / MSE); +infinity for identical images.
inline double psnr(const GrayImage& original, const GrayImage& modified) {
  if (original.width() != modified.width() ||
      original.height() != modified.height()) {
    throw std::invalid_argument("psnr: image dimensions differ");
  }
  const auto a = original.pixels();
  const auto b = modified.pixels();
  if (a.empty()) throw std::invalid_argument("psnr: empty image");
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - b[i];
    sq += d * d;
  }
  if (sq == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sq / static_cast<double>(a.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

// Seed of the payload used to measure PSNR at maximum capacity.
inline constexpr std::uint64_t kCapacityPayloadSeed = 0;

/// Maximum single-pass capacity, plus the PSNR of a full-capacity embedding
/// with a seeded pseudo-random payload.
inline CapacityReport capacity(const GrayImage& image, CodecId codec,
                               BlockGeometry geometry) {
  const BlockPartition part(image, geometry);
  const LocationMap map = build_location_map(image, geometry, codec);
  const auto scan = detail::scan_capacity(image, part, codec, map);

  CapacityReport report;
  report.codec = codec;
  report.geometry = geometry;
  report.capacity_bits = scan.capacity_bits;
  report.eligible_blocks = scan.eligible_blocks;
  report.excluded_blocks = scan.excluded_blocks;
  const BitPayload payload =
      random_bits(scan.capacity_bits, kCapacityPayloadSeed);
  report.psnr_at_max = psnr(image, embed_image(image, payload, codec, geometry).stego);
  return report;
}

/// Picks the candidate geometry with the largest capacity. Ties go to the
/// smaller block area, then to the geometry with block_w <= block_h.
/// Candidates larger than the image are skipped.
inline SweepResult sweep_block_sizes(const GrayImage& image, CodecId codec,
                                     std::span<const BlockGeometry> candidates) {
  SweepResult result;
  const CapacityReport* best = nullptr;
  for (const BlockGeometry& g : candidates) {
    if (!g.valid() || g.block_w > image.width() || g.block_h > image.height()) {
      continue;
    }
    result.reports.push_back(capacity(image, codec, g));
  }
  if (result.reports.empty()) {
    throw std::invalid_argument("no candidate geometry fits the image");
  }
  auto better = [](const CapacityReport& a, const CapacityReport& b) {
    if (a.capacity_bits != b.capacity_bits) return a.capacity_bits > b.capacity_bits;
    if (a.geometry.pixel_count() != b.geometry.pixel_count()) {
      return a.geometry.pixel_count() < b.geometry.pixel_count();
    }
    const bool a_tall = a.geometry.block_w <= a.geometry.block_h;
    const bool b_tall = b.geometry.block_w <= b.geometry.block_h;
    return a_tall && !b_tall;
  };
  for (const auto& r : result.reports) {
    if (best == nullptr || better(r, *best)) best = &r;
  }
  result.best = best->geometry;
  return result;
}

inline SweepResult sweep_block_sizes(const GrayImage& image, CodecId codec) {
  return sweep_block_sizes(image, codec, default_sweep_candidates());
}

}  // namespace rdh
