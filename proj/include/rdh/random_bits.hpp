/**
 * Copyright The rdh-pvo Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <random>

#include "rdh/core.hpp"

namespace rdh {

// Reproducible pseudo-random payload. Each 64-bit draw of mt19937_64 is
// consumed most-significant bit first; the engine's output sequence is fixed
// by the standard, so a seed yields the same bits on every platform.
inline BitPayload random_bits(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  BitPayload out;
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 64 == 0) word = engine();
    out.push_back(((word >> (63 - i % 64)) & 1U) != 0);
  }
  return out;
}

}  // namespace rdh
