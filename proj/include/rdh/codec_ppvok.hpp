/**
 * Copyright The rdh-pvo Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "rdh/core.hpp"

// Promoted PVO-k.
//
// A block whose first-order value O1 sits exactly one above the second-order
// value O2 carries theta bits, one per first-order pixel. The chunk is
// written in one of three ways:
//
//   all zeros  -> every first-order pixel +1     (stego error 2)
//   all ones   -> every first-order pixel +2     (stego error 3)
//   mixed      -> first-order pixel i += bit i   (stego error 1)
//
// where "pixel i" is the i-th first-order pixel in ascending in-block index.
// Blocks with a larger error are shifted by +2 (stego error >= 4) and
// single-level blocks are left untouched (stego error 0), which keeps the
// embedded and non-embedded stego errors disjoint.
namespace rdh::ppvok {

struct BlockPlan {
  std::size_t theta = 0;  // first-order multiplicity
  int o1 = 0;
  std::optional<int> o2;
  int e = 0;  // O1 - O2, or 0 for a single-level block
  bool eligible = false;
  std::size_t chunk_len = 0;
};

inline BlockPlan plan(std::span<const int> block) {
  const OrderStatistics stats = order_statistics(block);
  BlockPlan p;
  p.theta = stats.first_count();
  p.o1 = stats.first_level();
  if (stats.has_second()) {
    p.o2 = stats.second_level();
    p.e = p.o1 - *p.o2;
  }
  p.eligible = p.e == 1;
  p.chunk_len = p.eligible ? p.theta : 0;
  return p;
}

inline std::size_t capacity(std::span<const int> block) {
  return plan(block).chunk_len;
}

inline BlockValues embed_block(std::span<const int> block,
                               const std::optional<BitPayload>& chunk) {
  const BlockPlan p = plan(block);
  if (p.eligible != chunk.has_value()) {
    throw std::invalid_argument(p.eligible ? "block needs a chunk"
                                           : "block cannot carry a chunk");
  }
  if (chunk && chunk->size() != p.theta) {
    throw std::invalid_argument("chunk length must equal theta");
  }

  BlockValues out(block.begin(), block.end());
  if (p.e == 0) return out;

  const std::vector<std::size_t> first = indices_at_least(block, p.o1);
  if (!p.eligible || classify_chunk(*chunk) != ChunkClass::kMixed) {
    const int delta =
        (p.eligible && classify_chunk(*chunk) == ChunkClass::kAllZero) ? 1 : 2;
    if (p.o1 + delta > 255) throw OverflowError("PPVO-k shift overflows 255");
    for (std::size_t idx : first) out[idx] += delta;
    return out;
  }

  if (p.o1 + 1 > 255) throw OverflowError("PPVO-k embedding overflows 255");
  for (std::size_t i = 0; i < first.size(); ++i) {
    if ((*chunk)[i]) out[first[i]] += 1;
  }
  return out;
}

inline BlockExtraction extract_block(std::span<const int> block) {
  const OrderStatistics stats = order_statistics(block);
  BlockExtraction out{BlockValues(block.begin(), block.end()), std::nullopt};
  if (!stats.has_second()) return out;

  const int o1 = stats.first_level();
  const int stego_error = o1 - stats.second_level();
  const std::size_t theta = stats.first_count();

  auto lower_first_order = [&](int delta) {
    for (int& v : out.values) {
      if (v == o1) v -= delta;
    }
  };

  switch (stego_error) {
    case 1: {
      // Mixed chunk: the original first-order pixels now hold the top two
      // levels. Pixels above their mean carried a one.
      const std::vector<std::size_t> gathered =
          indices_at_least(block, stats.second_level());
      long long sum = 0;
      for (std::size_t idx : gathered) sum += block[idx];
      const auto count = static_cast<long long>(gathered.size());
      BitPayload bits;
      for (std::size_t idx : gathered) {
        const long long scaled = static_cast<long long>(block[idx]) * count;
        if (scaled == sum) {
          throw IntegrityError("mixed-chunk block has no level separation");
        }
        const bool one = scaled > sum;
        bits.push_back(one);
        if (one) out.values[idx] -= 1;
      }
      out.bits = std::move(bits);
      return out;
    }
    case 2:
      out.bits = BitPayload(std::vector<bool>(theta, false));
      lower_first_order(1);
      return out;
    case 3:
      out.bits = BitPayload(std::vector<bool>(theta, true));
      lower_first_order(2);
      return out;
    default:
      lower_first_order(2);
      return out;
  }
}

}  // namespace rdh::ppvok
