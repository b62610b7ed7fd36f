/**
 * Copyright The rdh-pvo Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <span>
#include <stdexcept>

#include "rdh/core.hpp"

// Index-aware PVO. The error is taken between the two top-ranked pixels in
// spatial order, so it is negative when the maximum sits after the runner-up.
// Blocks with e in {0, 1} carry one bit; every physical edit is +1 on the
// top-ranked pixel.
namespace rdh::ipvo {

struct Error {
  std::size_t u;  // smaller in-block index of the two top-ranked pixels
  std::size_t v;  // larger one
  int e;          // block[u] - block[v]
};

inline Error prediction_error(std::span<const int> block) {
  const RankMap rank = rank_block(block);
  const std::size_t u = std::min(rank.top(), rank.second());
  const std::size_t v = std::max(rank.top(), rank.second());
  return {u, v, block[u] - block[v]};
}

inline bool carries_bit(std::span<const int> block) {
  const int e = prediction_error(block).e;
  return e == 0 || e == 1;
}

// Target stego error for a given error and bit.
inline int map_error(int e, bool bit) {
  if (e < 0) return e - 1;
  if (e == 0) return bit ? -1 : 0;
  if (e == 1) return bit ? 2 : 1;
  return e + 1;
}

// Inverse of map_error: the original error.
inline int unmap_error(int stego_error) {
  if (stego_error == 0 || stego_error == -1) return 0;
  if (stego_error == 1 || stego_error == 2) return 1;
  if (stego_error <= -2) return stego_error + 1;
  return stego_error - 1;
}

inline BlockValues embed_block(std::span<const int> block,
                               std::optional<bool> bit) {
  const RankMap rank = rank_block(block);
  const std::size_t top = rank.top();
  const std::size_t u = std::min(top, rank.second());
  const std::size_t v = std::max(top, rank.second());
  const int e = block[u] - block[v];
  const bool embeddable = e == 0 || e == 1;
  if (embeddable != bit.has_value()) {
    throw std::invalid_argument(embeddable ? "block needs a bit"
                                           : "block cannot carry a bit");
  }

  const int target = map_error(e, bit.value_or(false));
  const int delta = std::abs(target) - std::abs(e);
  BlockValues out(block.begin(), block.end());
  if (out[top] + delta > 255) throw OverflowError("IPVO shift overflows 255");
  out[top] += delta;
  return out;
}

inline BlockExtraction extract_block(std::span<const int> block) {
  const RankMap rank = rank_block(block);
  const std::size_t top = rank.top();
  const std::size_t u = std::min(top, rank.second());
  const std::size_t v = std::max(top, rank.second());
  const int stego_error = block[u] - block[v];
  const int e = unmap_error(stego_error);

  BlockExtraction out{BlockValues(block.begin(), block.end()), std::nullopt};
  if (stego_error == 0 || stego_error == 1) {
    out.bits = BitPayload{0};
  } else if (stego_error == -1 || stego_error == 2) {
    out.bits = BitPayload{1};
  }
  out.values[top] -= std::abs(stego_error) - std::abs(e);
  return out;
}

}  // namespace rdh::ipvo
