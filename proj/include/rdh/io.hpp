/**
 * Copyright The rdh-pvo Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rdh/core.hpp"
#include "rdh/pipeline.hpp"

namespace rdh::io {

namespace detail {

// Cursor over a PNM header: whitespace and '#' comments between tokens.
class PnmScanner {
 public:
  explicit PnmScanner(std::string_view bytes) : bytes_(bytes) {}

  std::size_t pos() const noexcept { return pos_; }
  std::string_view rest() const { return bytes_.substr(pos_); }
  bool at_end() const noexcept { return pos_ >= bytes_.size(); }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  unsigned long read_uint(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    unsigned long value = 0;
    while (pos_ < bytes_.size() &&
           std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + static_cast<unsigned long>(bytes_[pos_] - '0');
      if (value > 0xFFFFFFFFUL) throw ParseError(std::string(what) + " too large", start);
      ++pos_;
    }
    if (pos_ == start) {
      throw ParseError(at_end() ? std::string("truncated header: missing ") + what
                                : std::string("expected ") + what,
                       start);
    }
    return value;
  }

  // Exactly one whitespace byte separates the header from raster data.
  void consume_single_space() {
    if (pos_ >= bytes_.size() ||
        !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw ParseError("missing whitespace after maxval", pos_);
    }
    ++pos_;
  }

  void advance(std::size_t n) { pos_ += n; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace detail

/// Parses binary (P5) or ASCII (P2) PGM with maxval <= 255.
inline GrayImage read_pgm(std::string_view bytes) {
  if (bytes.size() < 2) throw ParseError("truncated header: missing magic", 0);
  if (bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
    throw ParseError("unsupported magic '" + std::string(bytes.substr(0, 2)) + "'", 0);
  }
  const bool binary = bytes[1] == '5';
  detail::PnmScanner scan(bytes);
  scan.advance(2);
  const auto width = scan.read_uint("width");
  const auto height = scan.read_uint("height");
  const std::size_t maxval_at = scan.pos();
  const auto maxval = scan.read_uint("maxval");
  if (maxval == 0 || maxval > 255) {
    throw ParseError("maxval " + std::to_string(maxval) + " not in [1, 255]", maxval_at);
  }
  if (width == 0 || height == 0 || width > 65535 || height > 65535) {
    throw ParseError("unsupported dimensions", 2);
  }
  const std::size_t count = static_cast<std::size_t>(width) * height;
  std::vector<std::uint8_t> pixels;
  pixels.reserve(count);

  if (binary) {
    scan.consume_single_space();
    const std::string_view raster = scan.rest();
    if (raster.size() < count) {
      throw ParseError("truncated raster: expected " + std::to_string(count) +
                           " bytes, found " + std::to_string(raster.size()),
                       scan.pos() + raster.size());
    }
    for (std::size_t i = 0; i < count; ++i) {
      const auto v = static_cast<std::uint8_t>(raster[i]);
      if (v > maxval) throw ParseError("sample exceeds maxval", scan.pos() + i);
      pixels.push_back(v);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t at = scan.pos();
      const auto v = scan.read_uint("sample");
      if (v > maxval) throw ParseError("sample exceeds maxval", at);
      pixels.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

inline std::string write_pgm(const GrayImage& image) {
  std::string out = "P5\n" + std::to_string(image.width()) + " " +
                    std::to_string(image.height()) + "\n255\n";
  const auto px = image.pixels();
  out.append(reinterpret_cast<const char*>(px.data()), px.size());
  return out;
}

// Bits packed MSB-first; the final byte is zero-padded.
inline std::string pack_bits(const BitPayload& bits) {
  std::string out((bits.size() + 7) / 8, '\0');
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out[i / 8] = static_cast<char>(out[i / 8] | (0x80 >> (i % 8)));
  }
  return out;
}

inline BitPayload unpack_bits(std::string_view bytes, std::size_t bit_count) {
  if (bit_count > bytes.size() * 8) {
    throw ParseError("payload holds " + std::to_string(bytes.size() * 8) +
                     " bits, " + std::to_string(bit_count) + " requested");
  }
  BitPayload out;
  for (std::size_t i = 0; i < bit_count; ++i) {
    out.push_back((static_cast<unsigned char>(bytes[i / 8]) & (0x80 >> (i % 8))) != 0);
  }
  return out;
}

inline BitPayload unpack_bits(std::string_view bytes) {
  return unpack_bits(bytes, bytes.size() * 8);
}

// Location map as hex: one bit per block, partition order, MSB-first within
// each digit, zero-padded to a whole digit.
inline std::string encode_location_map(const LocationMap& map) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < map.size(); i += 4) {
    int nibble = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      nibble = (nibble << 1) | ((i + j < map.size() && map[i + j]) ? 1 : 0);
    }
    out.push_back(kDigits[nibble]);
  }
  return out;
}

inline LocationMap decode_location_map(std::string_view hex, std::size_t blocks) {
  if (hex.size() != (blocks + 3) / 4) {
    throw ParseError("locmap has " + std::to_string(hex.size()) +
                     " digits, expected " + std::to_string((blocks + 3) / 4));
  }
  LocationMap map(blocks);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const int nibble = detail::hex_digit(hex[d]);
    if (nibble < 0) throw ParseError("malformed hex in locmap");
    for (std::size_t j = 0; j < 4; ++j) {
      const bool bit = (nibble >> (3 - j)) & 1;
      const std::size_t idx = d * 4 + j;
      if (idx < blocks) {
        map[idx] = bit;
      } else if (bit) {
        throw ParseError("locmap padding bits must be zero");
      }
    }
  }
  return map;
}

inline constexpr int kMetadataVersion = 1;

inline std::string write_metadata(const EmbedMetadata& meta) {
  std::ostringstream os;
  os << "version=" << kMetadataVersion << '\n'
     << "codec=" << codec_name(meta.codec) << '\n'
     << "block_w=" << meta.geometry.block_w << '\n'
     << "block_h=" << meta.geometry.block_h << '\n'
     << "image_w=" << meta.image_w << '\n'
     << "image_h=" << meta.image_h << '\n'
     << "payload_bits=" << meta.payload_bit_length << '\n'
     << "processed_blocks=" << meta.processed_block_count << '\n'
     << "checksum=" << detail::hex64(meta.carrier_checksum) << '\n'
     << "locmap=" << encode_location_map(meta.location_map) << '\n';
  return os.str();
}

inline EmbedMetadata read_metadata(std::string_view text) {
  static const std::vector<std::string> kKeys = {
      "version", "codec",  "block_w",    "block_h",          "image_w",
      "image_h", "payload_bits", "processed_blocks", "checksum", "locmap"};
  std::map<std::string, std::string> fields;
  std::size_t line_start = 0;
  while (line_start < text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ParseError("metadata line without '='", line_start);
      }
      std::string key(line.substr(0, eq));
      if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
        throw ParseError("unknown metadata key '" + key + "'", line_start);
      }
      if (!fields.emplace(key, std::string(line.substr(eq + 1))).second) {
        throw ParseError("duplicate metadata key '" + key + "'", line_start);
      }
    }
    line_start = line_end + 1;
  }
  for (const auto& key : kKeys) {
    if (!fields.count(key)) throw ParseError("missing metadata key '" + key + "'");
  }

  auto number = [&](const std::string& key) -> unsigned long long {
    const std::string& s = fields.at(key);
    if (s.empty() || s.size() > 19 ||
        !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError("metadata key '" + key + "' is not a non-negative integer");
    }
    return std::stoull(s);
  };
  auto small = [&](const std::string& key) {
    const auto v = number(key);
    if (v > 1'000'000'000ULL) throw ParseError("metadata key '" + key + "' out of range");
    return static_cast<int>(v);
  };

  if (number("version") != kMetadataVersion) {
    throw ParseError("unsupported metadata version " + fields.at("version"));
  }
  EmbedMetadata meta;
  meta.codec = parse_codec(fields.at("codec"));
  meta.geometry = {small("block_w"), small("block_h")};
  if (!meta.geometry.valid()) throw ParseError("invalid block geometry in metadata");
  meta.image_w = small("image_w");
  meta.image_h = small("image_h");
  meta.payload_bit_length = number("payload_bits");
  meta.processed_block_count = number("processed_blocks");

  const std::string& sum = fields.at("checksum");
  if (sum.size() != 16) throw ParseError("checksum must be 16 hex digits");
  for (char c : sum) {
    const int d = detail::hex_digit(c);
    if (d < 0) throw ParseError("malformed hex in checksum");
    meta.carrier_checksum = (meta.carrier_checksum << 4) | static_cast<std::uint64_t>(d);
  }

  const std::size_t cols = meta.geometry.block_w ? meta.image_w / meta.geometry.block_w : 0;
  const std::size_t rows = meta.geometry.block_h ? meta.image_h / meta.geometry.block_h : 0;
  const std::size_t blocks = cols * rows;
  if (blocks == 0) throw ParseError("metadata describes an image smaller than one block");
  meta.location_map = decode_location_map(fields.at("locmap"), blocks);
  if (meta.processed_block_count > blocks) {
    throw ParseError("processed_blocks exceeds block count");
  }
  return meta;
}

inline std::string format_psnr(double db) {
  if (std::isinf(db)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", db);
  return buf;
}

inline std::string write_capacity_csv(std::span<const CapacityReport> reports) {
  if (reports.empty()) throw std::invalid_argument("no capacity reports to write");
  std::string out = "algorithm,image,block,capacity_bits,psnr_db\n";
  for (const auto& r : reports) {
    out += std::string(codec_name(r.codec)) + ',' + r.image_label + ',' +
           r.geometry.to_string() + ',' + std::to_string(r.capacity_bits) + ',' +
           format_psnr(r.psnr_at_max) + '\n';
  }
  return out;
}

// Whole-file helpers.
inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace rdh::io
