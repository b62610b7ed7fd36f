/**
 * Copyright The rdh-pvo Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <optional>
#include <span>
#include <stdexcept>

#include "rdh/core.hpp"

// PVO-k: the k tied maximum pixels move together as one unit.
namespace rdh::pvok {

// O1 - O2, or nullopt when every pixel holds the same value.
inline std::optional<int> prediction_error(std::span<const int> block) {
  const OrderStatistics stats = order_statistics(block);
  if (!stats.has_second()) return std::nullopt;
  return stats.first_level() - stats.second_level();
}

inline bool carries_bit(std::span<const int> block) {
  return prediction_error(block) == 1;
}

namespace detail {
inline void shift_maxima(BlockValues& values, int level, int delta) {
  for (int& v : values) {
    if (v == level) v += delta;
  }
}
}  // namespace detail

inline BlockValues embed_block(std::span<const int> block,
                               std::optional<bool> bit) {
  const OrderStatistics stats = order_statistics(block);
  const std::optional<int> e =
      stats.has_second()
          ? std::optional<int>(stats.first_level() - stats.second_level())
          : std::nullopt;
  const bool embeddable = e == 1;
  if (embeddable != bit.has_value()) {
    throw std::invalid_argument(embeddable ? "block needs a bit"
                                           : "block cannot carry a bit");
  }

  BlockValues out(block.begin(), block.end());
  if (!e) return out;
  const int delta = embeddable ? (*bit ? 1 : 0) : 1;
  if (stats.first_level() + delta > 255) {
    throw OverflowError("PVO-k shift overflows 255");
  }
  detail::shift_maxima(out, stats.first_level(), delta);
  return out;
}

inline BlockExtraction extract_block(std::span<const int> block) {
  const OrderStatistics stats = order_statistics(block);
  BlockExtraction out{BlockValues(block.begin(), block.end()), std::nullopt};
  if (!stats.has_second()) return out;

  const int stego_error = stats.first_level() - stats.second_level();
  if (stego_error == 1) {
    out.bits = BitPayload{0};
    return out;
  }
  if (stego_error == 2) out.bits = BitPayload{1};
  detail::shift_maxima(out.values, stats.first_level(), -1);
  return out;
}

}  // namespace rdh::pvok
