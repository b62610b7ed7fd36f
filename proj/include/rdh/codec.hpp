/**
 * Copyright The rdh-pvo Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "rdh/codec_ipvo.hpp"
#include "rdh/codec_ppvok.hpp"
#include "rdh/codec_pvo.hpp"
#include "rdh/codec_pvok.hpp"
#include "rdh/core.hpp"

namespace rdh {

enum class CodecId { kPvo, kIpvo, kPvok, kPpvok };

inline constexpr std::array<CodecId, 4> kAllCodecs = {
    CodecId::kPvo, CodecId::kIpvo, CodecId::kPvok, CodecId::kPpvok};

inline std::string_view codec_name(CodecId id) {
  switch (id) {
    case CodecId::kPvo: return "PVO";
    case CodecId::kIpvo: return "IPVO";
    case CodecId::kPvok: return "PVOK";
    case CodecId::kPpvok: return "PPVOK";
  }
  return "?";
}

// Case-insensitive; accepts "pvo-k"/"ppvo-k" spellings too.
inline CodecId parse_codec(std::string_view text) {
  std::string key;
  for (char c : text) {
    if (c != '-' && c != '_') {
      key.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
  }
  for (CodecId id : kAllCodecs) {
    if (key == codec_name(id)) return id;
  }
  throw ParseError("unknown codec '" + std::string(text) + "'");
}

// Largest increment the codec may apply to a block maximum.
inline int overflow_margin(CodecId id) {
  return id == CodecId::kPpvok ? 2 : 1;
}

// Bits the block carries when it sits inside the processed prefix.
inline std::size_t block_capacity(CodecId id, std::span<const int> block) {
  switch (id) {
    case CodecId::kPvo: return pvo::carries_bit(block) ? 1 : 0;
    case CodecId::kIpvo: return ipvo::carries_bit(block) ? 1 : 0;
    case CodecId::kPvok: return pvok::carries_bit(block) ? 1 : 0;
    case CodecId::kPpvok: return ppvok::capacity(block);
  }
  return 0;
}

// `chunk` must hold exactly block_capacity(id, block) bits.
inline BlockValues embed_block(CodecId id, std::span<const int> block,
                               const BitPayload& chunk) {
  std::optional<bool> bit;
  if (id != CodecId::kPpvok && !chunk.empty()) {
    if (chunk.size() != 1) throw std::invalid_argument("codec carries one bit");
    bit = chunk[0];
  }
  switch (id) {
    case CodecId::kPvo: return pvo::embed_block(block, bit).values;
    case CodecId::kIpvo: return ipvo::embed_block(block, bit);
    case CodecId::kPvok: return pvok::embed_block(block, bit);
    case CodecId::kPpvok:
      return ppvok::embed_block(
          block, chunk.empty() ? std::nullopt : std::optional<BitPayload>(chunk));
  }
  return {};
}

inline BlockExtraction extract_block(CodecId id, std::span<const int> block) {
  switch (id) {
    case CodecId::kPvo: return pvo::extract_block(block);
    case CodecId::kIpvo: return ipvo::extract_block(block);
    case CodecId::kPvok: return pvok::extract_block(block);
    case CodecId::kPpvok: return ppvok::extract_block(block);
  }
  return {};
}

}  // namespace rdh
