/**
 * Copyright The rdh-pvo Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <iterator>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "rdh/codec.hpp"
#include "rdh/core.hpp"

// Brute-force verification harness.
//
// The helpers in `brute` recompute eligibility and prediction errors from
// first principles (linear scans, no RankMap/OrderStatistics), so agreement
// with the production codecs is evidence rather than a tautology.
namespace rdh::oracle {

namespace brute {

inline int max_value(std::span<const int> b) {
  int m = b[0];
  for (int v : b) m = v > m ? v : m;
  return m;
}

// Largest value strictly below `ceiling`, if any.
inline std::optional<int> next_level(std::span<const int> b, int ceiling) {
  std::optional<int> best;
  for (int v : b) {
    if (v < ceiling && (!best || v > *best)) best = v;
  }
  return best;
}

inline std::size_t count_of(std::span<const int> b, int value) {
  std::size_t c = 0;
  for (int v : b) c += v == value ? 1 : 0;
  return c;
}

// Last index holding `value`, ignoring `skip`.
inline std::size_t last_index_of(std::span<const int> b, int value,
                                 std::size_t skip = static_cast<std::size_t>(-1)) {
  std::size_t found = static_cast<std::size_t>(-1);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i != skip && b[i] == value) found = i;
  }
  return found;
}

// Index of the top pixel and of the runner-up under "ties: larger index
// ranks higher".
inline std::pair<std::size_t, std::size_t> top_two(std::span<const int> b) {
  const int m = max_value(b);
  const std::size_t top = last_index_of(b, m);
  int runner_value = -1;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i != top && b[i] > runner_value) runner_value = b[i];
  }
  return {top, last_index_of(b, runner_value, top)};
}

// Codec-specific error used to classify both carriers and stego blocks.
// Single-level blocks report 0 for the level-based codecs.
inline int error(CodecId id, std::span<const int> b) {
  const auto [top, runner] = top_two(b);
  switch (id) {
    case CodecId::kPvo:
      return b[top] - b[runner];
    case CodecId::kIpvo: {
      const std::size_t u = top < runner ? top : runner;
      const std::size_t v = top < runner ? runner : top;
      return b[u] - b[v];
    }
    case CodecId::kPvok:
    case CodecId::kPpvok: {
      const int m = max_value(b);
      const auto lower = next_level(b, m);
      return lower ? m - *lower : 0;
    }
  }
  return 0;
}

inline std::size_t capacity(CodecId id, std::span<const int> b) {
  const int e = error(id, b);
  switch (id) {
    case CodecId::kPvo:
    case CodecId::kPvok:
      return e == 1 ? 1 : 0;
    case CodecId::kIpvo:
      return (e == 0 || e == 1) ? 1 : 0;
    case CodecId::kPpvok:
      return e == 1 ? count_of(b, max_value(b)) : 0;
  }
  return 0;
}

inline int margin(CodecId id) { return id == CodecId::kPpvok ? 2 : 1; }

}  // namespace brute

/// Embed/extract pair under test. Defaults to the production codec; tests
/// substitute mutated versions to prove the harness catches faults.
struct BlockCodec {
  std::function<BlockValues(std::span<const int>, const BitPayload&)> embed;
  std::function<BlockExtraction(std::span<const int>)> extract;
};

inline BlockCodec production_codec(CodecId id) {
  return {[id](std::span<const int> b, const BitPayload& c) { return embed_block(id, b, c); },
          [id](std::span<const int> b) { return extract_block(id, b); }};
}

// PPVO-k with the all-zero and all-one decode branches swapped.
inline BlockCodec swapped_ppvok_decoder() {
  BlockCodec codec = production_codec(CodecId::kPpvok);
  codec.extract = [](std::span<const int> b) {
    const int e = brute::error(CodecId::kPpvok, b);
    if (e != 2 && e != 3) return extract_block(CodecId::kPpvok, b);
    const int m = brute::max_value(b);
    const std::size_t theta = brute::count_of(b, m);
    BlockExtraction out{BlockValues(b.begin(), b.end()),
                        BitPayload(std::vector<bool>(theta, e == 2))};
    for (int& v : out.values) {
      if (v == m) v -= e == 2 ? 2 : 1;
    }
    return out;
  };
  return codec;
}

struct Counterexample {
  BlockValues block;
  BitPayload bits;
  std::string reason;

  std::string describe() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < block.size(); ++i) os << (i ? "," : "") << block[i];
    os << "]+" << (bits.empty() ? std::string("-") : bits.to_string()) << ": " << reason;
    return os.str();
  }
};

struct Report {
  std::size_t blocks = 0;
  std::size_t cases = 0;  // (block, payload) pairs checked
  std::size_t failures = 0;
  std::vector<Counterexample> counterexamples;  // first few failures

  bool passed() const noexcept { return failures == 0; }
};

inline constexpr std::size_t kMaxCounterexamples = 32;

namespace detail {

inline void record(Report& r, const BlockValues& block, const BitPayload& bits,
                   std::string reason) {
  ++r.failures;
  if (r.counterexamples.size() < kMaxCounterexamples) {
    r.counterexamples.push_back({block, bits, std::move(reason)});
  }
}

inline BitPayload bits_of(std::size_t value, std::size_t len) {
  BitPayload out;
  for (std::size_t i = 0; i < len; ++i) out.push_back(((value >> (len - 1 - i)) & 1U) != 0);
  return out;
}

// Checks one (block, chunk) case; returns the stego error on success.
inline std::optional<int> check_case(CodecId id, const BlockCodec& codec,
                                     const BlockValues& block,
                                     const BitPayload& chunk, Report& report) {
  ++report.cases;
  BlockValues stego;
  BlockExtraction back;
  try {
    stego = codec.embed(block, chunk);
    back = codec.extract(stego);
  } catch (const std::exception& ex) {
    record(report, block, chunk, std::string("threw: ") + ex.what());
    return std::nullopt;
  }

  if (back.values != block) {
    record(report, block, chunk, "restored block differs");
    return std::nullopt;
  }
  const BitPayload got = back.bits.value_or(BitPayload{});
  if (got != chunk) {
    record(report, block, chunk, "extracted bits '" + got.to_string() + "'");
    return std::nullopt;
  }

  const int bound = brute::margin(id);
  const int top = brute::max_value(block);
  std::size_t changed = 0;
  for (std::size_t i = 0; i < block.size(); ++i) {
    const int d = stego[i] - block[i];
    if (d == 0) continue;
    ++changed;
    if (d < 0 || d > bound) {
      record(report, block, chunk, "pixel moved by " + std::to_string(d));
      return std::nullopt;
    }
    if ((id == CodecId::kPvok || id == CodecId::kPpvok) && block[i] != top) {
      record(report, block, chunk, "non-maximum pixel modified");
      return std::nullopt;
    }
  }
  if ((id == CodecId::kPvo || id == CodecId::kIpvo) && changed > 1) {
    record(report, block, chunk, "more than one pixel modified");
    return std::nullopt;
  }
  return brute::error(id, stego);
}

}  // namespace detail

/// Every block over [lo, hi]^n and every legal payload must round-trip,
/// respect the distortion bound, and map to a decodable stego error: for
/// PVO/IPVO/PVO-k each stego error must come from exactly one (error, bit)
/// pair; for PPVO-k embedded blocks must land in {1,2,3} and all others
/// outside it.
inline Report exhaustive_block_check(CodecId id, BlockGeometry geometry, int lo,
                                     int hi, const BlockCodec& codec) {
  Report report;
  const std::size_t n = geometry.pixel_count();
  if (!geometry.valid() || lo > hi || lo < 0 || hi > 255) {
    throw std::invalid_argument("bad enumeration domain");
  }

  std::map<int, std::pair<int, std::string>> source_of;  // stego error -> (error, bits)
  BlockValues block(n, lo);
  while (true) {
    if (brute::max_value(block) + brute::margin(id) <= 255) {
      ++report.blocks;
      const std::size_t len = brute::capacity(id, block);
      const int e = brute::error(id, block);
      const std::size_t choices = len == 0 ? 1 : (std::size_t{1} << len);
      for (std::size_t c = 0; c < choices; ++c) {
        const BitPayload chunk = detail::bits_of(c, len);
        const auto stego_error = detail::check_case(id, codec, block, chunk, report);
        if (!stego_error) continue;

        if (id == CodecId::kPpvok) {
          const bool in_band = *stego_error >= 1 && *stego_error <= 3;
          if (in_band != (len > 0)) {
            detail::record(report, block, chunk,
                           "stego error " + std::to_string(*stego_error) +
                               " lies in the wrong partition");
          }
        } else {
          const auto key = std::make_pair(e, chunk.to_string());
          const auto [it, inserted] = source_of.emplace(*stego_error, key);
          if (!inserted && it->second != key) {
            detail::record(report, block, chunk,
                           "stego error " + std::to_string(*stego_error) +
                               " is reached from two sources");
          }
        }
      }
    }

    std::size_t pos = 0;
    while (pos < n && block[pos] == hi) block[pos++] = lo;
    if (pos == n) break;
    ++block[pos];
  }
  return report;
}

inline Report exhaustive_block_check(CodecId id, BlockGeometry geometry, int lo, int hi) {
  return exhaustive_block_check(id, geometry, lo, hi, production_codec(id));
}

/// Seeded random round trips over small blocks with values clustered so the
/// interesting errors (0, 1, 2, 3) come up often, including near 255.
inline Report random_block_check(CodecId id, std::size_t cases, std::uint64_t seed,
                                 const BlockCodec& codec) {
  static const BlockGeometry kShapes[] = {{2, 2}, {2, 3}, {3, 2}, {3, 3}, {1, 2}, {4, 4}};
  std::mt19937_64 rng(seed);
  Report report;
  while (report.cases < cases) {
    const BlockGeometry g = kShapes[rng() % std::size(kShapes)];
    const int spread = 1 + static_cast<int>(rng() % 6);
    const int ceiling = 255 - brute::margin(id);
    const int base = static_cast<int>(rng() % static_cast<std::uint64_t>(ceiling - spread + 1));
    BlockValues block(g.pixel_count());
    for (int& v : block) v = base + static_cast<int>(rng() % static_cast<std::uint64_t>(spread + 1));
    ++report.blocks;
    const std::size_t len = brute::capacity(id, block);
    BitPayload chunk;
    for (std::size_t i = 0; i < len; ++i) chunk.push_back((rng() & 1U) != 0);
    detail::check_case(id, codec, block, chunk, report);
  }
  return report;
}

inline Report random_block_check(CodecId id, std::size_t cases, std::uint64_t seed) {
  return random_block_check(id, cases, seed, production_codec(id));
}

/// Sequential re-implementation of embed_image that shares nothing with the
/// pipeline except the per-codec block functions.
inline GrayImage naive_pipeline_recompose(const GrayImage& image,
                                          const BitPayload& payload, CodecId id,
                                          BlockGeometry geometry) {
  const int bw = geometry.block_w;
  const int bh = geometry.block_h;
  const int cols = image.width() / bw;
  const int rows = image.height() / bh;

  auto gather = [&](int bx, int by) {
    BlockValues b;
    for (int y = 0; y < bh; ++y) {
      for (int x = 0; x < bw; ++x) b.push_back(image.at(bx * bw + x, by * bh + y));
    }
    return b;
  };
  auto usable = [&](const BlockValues& b) {
    return brute::max_value(b) + brute::margin(id) <= 255;
  };

  std::size_t total = 0;
  for (int by = 0; by < rows; ++by) {
    for (int bx = 0; bx < cols; ++bx) {
      const BlockValues b = gather(bx, by);
      if (usable(b)) total += brute::capacity(id, b);
    }
  }
  if (payload.size() > total) throw CapacityError(payload.size(), total);

  GrayImage out = image;
  std::size_t next = 0;
  for (int by = 0; by < rows && next < payload.size(); ++by) {
    for (int bx = 0; bx < cols && next < payload.size(); ++bx) {
      const BlockValues b = gather(bx, by);
      if (!usable(b)) continue;
      const std::size_t len = brute::capacity(id, b);
      BitPayload chunk;
      for (std::size_t i = 0; i < len; ++i, ++next) {
        chunk.push_back(next < payload.size() && payload[next]);
      }
      std::optional<bool> bit;
      if (len == 1) bit = chunk[0];
      BlockValues stego;
      switch (id) {
        case CodecId::kPvo: stego = pvo::embed_block(b, bit).values; break;
        case CodecId::kIpvo: stego = ipvo::embed_block(b, bit); break;
        case CodecId::kPvok: stego = pvok::embed_block(b, bit); break;
        case CodecId::kPpvok:
          stego = ppvok::embed_block(b, len ? std::optional<BitPayload>(chunk) : std::nullopt);
          break;
      }
      std::size_t k = 0;
      for (int y = 0; y < bh; ++y) {
        for (int x = 0; x < bw; ++x) {
          out.at(bx * bw + x, by * bh + y) = static_cast<std::uint8_t>(stego[k++]);
        }
      }
    }
  }
  return out;
}

}  // namespace rdh::oracle
