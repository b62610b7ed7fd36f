/**
 * Copyright The rdh-pvo Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <optional>
#include <span>
#include <stdexcept>

#include "rdh/core.hpp"

// Classic pixel-value-ordering codec, maximum side only.
//
// The error is the gap between the largest and the second-largest ranked
// pixel. A gap of 1 carries one bit, a gap above 1 is shifted by one and a
// zero gap is left alone. Only the top-ranked pixel is ever modified.
namespace rdh::pvo {

enum class OutcomeKind { kIdentity, kEmbedded, kShifted };

struct BlockOutcome {
  OutcomeKind kind;
  BlockValues values;
};

inline int prediction_error(std::span<const int> block) {
  const RankMap rank = rank_block(block);
  return block[rank.top()] - block[rank.second()];
}

inline bool carries_bit(std::span<const int> block) {
  return prediction_error(block) == 1;
}

inline BlockOutcome embed_block(std::span<const int> block,
                                std::optional<bool> bit) {
  const RankMap rank = rank_block(block);
  const std::size_t top = rank.top();
  const int e = block[top] - block[rank.second()];
  if ((e == 1) != bit.has_value()) {
    throw std::invalid_argument(e == 1 ? "block needs a bit"
                                       : "block cannot carry a bit");
  }

  BlockOutcome out{OutcomeKind::kIdentity, BlockValues(block.begin(), block.end())};
  int delta = 0;
  if (e == 1) {
    out.kind = OutcomeKind::kEmbedded;
    delta = *bit ? 1 : 0;
  } else if (e > 1) {
    out.kind = OutcomeKind::kShifted;
    delta = 1;
  }
  if (block[top] + delta > 255) throw OverflowError("PVO shift overflows 255");
  out.values[top] += delta;
  return out;
}

inline BlockExtraction extract_block(std::span<const int> block) {
  const RankMap rank = rank_block(block);
  const std::size_t top = rank.top();
  const int stego_error = block[top] - block[rank.second()];

  BlockExtraction out{BlockValues(block.begin(), block.end()), std::nullopt};
  switch (stego_error) {
    case 0:
      break;
    case 1:
      out.bits = BitPayload{0};
      break;
    case 2:
      out.bits = BitPayload{1};
      out.values[top] -= 1;
      break;
    default:
      out.values[top] -= 1;
      break;
  }
  return out;
}

}  // namespace rdh::pvo
