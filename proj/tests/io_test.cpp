/**
 * Copyright The rdh-pvo Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <gtest/gtest.h>

#include <random>

#include "rdh/io.hpp"
#include "rdh/random_bits.hpp"
#include "test_images.hpp"

using rdh::BitPayload;
using rdh::GrayImage;
namespace io = rdh::io;

namespace {

std::string binary_pgm(const char* header, std::initializer_list<int> bytes) {
  std::string s(header);
  for (int b : bytes) s.push_back(static_cast<char>(b));
  return s;
}

rdh::EmbedMetadata sample_meta(std::size_t blocks_w, std::size_t blocks_h) {
  rdh::EmbedMetadata m;
  m.codec = rdh::CodecId::kPpvok;
  m.geometry = {2, 2};
  m.image_w = static_cast<int>(blocks_w * 2);
  m.image_h = static_cast<int>(blocks_h * 2);
  m.payload_bit_length = 17;
  m.processed_block_count = 3;
  m.location_map.assign(blocks_w * blocks_h, false);
  m.carrier_checksum = 0x0123456789abcdefULL;
  return m;
}

}  // namespace

TEST(ReadPgm, BinaryExample) {
  const auto img = io::read_pgm(binary_pgm("P5\n2 2\n255\n", {1, 2, 3, 4}));
  EXPECT_EQ(img, GrayImage(2, 2, std::vector<std::uint8_t>{1, 2, 3, 4}));
}

TEST(ReadPgm, AsciiExample) {
  EXPECT_EQ(io::read_pgm("P2\n1 1\n255\n7\n"), GrayImage(1, 1, std::vector<std::uint8_t>{7}));
}

TEST(ReadPgm, CommentsInHeader) {
  const auto img = io::read_pgm(binary_pgm("P5\n# made by hand\n2 # width\n1\n255\n", {9, 8}));
  EXPECT_EQ(img, GrayImage(2, 1, std::vector<std::uint8_t>{9, 8}));
  EXPECT_EQ(io::read_pgm("P2 #c\n2 1 #c\n15\n 3\n#c\n 4"),
            GrayImage(2, 1, std::vector<std::uint8_t>{3, 4}));
}

TEST(ReadPgm, Errors) {
  try {
    io::read_pgm("P6\n1 1\n255\n\x01\x02\x03");
    FAIL();
  } catch (const rdh::ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("unsupported magic"), std::string::npos);
    EXPECT_EQ(e.offset(), 0u);
  }
  EXPECT_THROW(io::read_pgm("P5\n1 1\n65535\n\x01\x02"), rdh::ParseError);
  EXPECT_THROW(io::read_pgm(""), rdh::ParseError);
  EXPECT_THROW(io::read_pgm("P5\n2"), rdh::ParseError);
  EXPECT_THROW(io::read_pgm("P2\n2 1\n255\n7"), rdh::ParseError);
  EXPECT_THROW(io::read_pgm("P2\n1 1\n100\n200\n"), rdh::ParseError);
  try {
    io::read_pgm(binary_pgm("P5\n2 2\n255\n", {1, 2, 3}));
    FAIL();
  } catch (const rdh::ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("truncated"), std::string::npos);
    EXPECT_EQ(e.offset(), 14u);
  }
}

TEST(WritePgm, CanonicalAndRoundTrip) {
  const GrayImage img(2, 2, std::vector<std::uint8_t>{1, 2, 3, 4});
  EXPECT_EQ(io::write_pgm(img), binary_pgm("P5\n2 2\n255\n", {1, 2, 3, 4}));
  for (const std::string& bytes : {binary_pgm("P5\n2 2\n255\n", {1, 2, 3, 4}),
                                  std::string("P2\n1 1\n255\n7\n")}) {
    const auto once = io::read_pgm(bytes);
    EXPECT_EQ(io::read_pgm(io::write_pgm(once)), once);
  }
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto noisy = rdh::testing::noise_image(1 + seed % 13, 1 + seed % 7, seed);
    EXPECT_EQ(io::read_pgm(io::write_pgm(noisy)), noisy);
  }
}

TEST(PayloadBits, MsbFirstPacking) {
  EXPECT_EQ(io::pack_bits(BitPayload::from_string("1")), std::string("\x80", 1));
  EXPECT_EQ(io::pack_bits(BitPayload::from_string("0000000101")), std::string("\x01\x40", 2));
  EXPECT_EQ(io::unpack_bits(std::string("\xA0", 1), 3).to_string(), "101");
  EXPECT_THROW(io::unpack_bits("a", 9), rdh::ParseError);
  for (std::size_t n = 0; n < 70; ++n) {
    const auto bits = rdh::random_bits(n, n);
    EXPECT_EQ(io::unpack_bits(io::pack_bits(bits), n), bits);
  }
}

TEST(Metadata, LocationMapHex) {
  rdh::LocationMap map(4, false);
  EXPECT_EQ(io::encode_location_map(map), "0");
  map[2] = true;
  EXPECT_EQ(io::encode_location_map(map), "2");
  map.assign(6, false);
  map[0] = true;
  map[5] = true;
  EXPECT_EQ(io::encode_location_map(map), "84");
  EXPECT_EQ(io::decode_location_map("84", 6), map);
  EXPECT_THROW(io::decode_location_map("85", 6), rdh::ParseError);  // padding bit set
  EXPECT_THROW(io::decode_location_map("8", 6), rdh::ParseError);
  EXPECT_THROW(io::decode_location_map("8g", 6), rdh::ParseError);
}

TEST(Metadata, ExactText) {
  const auto meta = sample_meta(2, 2);
  EXPECT_EQ(io::write_metadata(meta),
            "version=1\ncodec=PPVOK\nblock_w=2\nblock_h=2\nimage_w=4\nimage_h=4\n"
            "payload_bits=17\nprocessed_blocks=3\nchecksum=0123456789abcdef\nlocmap=0\n");
  EXPECT_EQ(io::read_metadata(io::write_metadata(meta)), meta);
}

TEST(Metadata, RandomizedRoundTrip) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    auto meta = sample_meta(1 + rng() % 20, 1 + rng() % 20);
    meta.codec = rdh::kAllCodecs[rng() % 4];
    meta.payload_bit_length = rng() % 100000;
    meta.processed_block_count = rng() % (meta.location_map.size() + 1);
    meta.carrier_checksum = rng();
    for (std::size_t b = 0; b < meta.location_map.size(); ++b) meta.location_map[b] = rng() % 5 == 0;
    EXPECT_EQ(io::read_metadata(io::write_metadata(meta)), meta);
  }
}

TEST(Metadata, Errors) {
  const std::string good = io::write_metadata(sample_meta(2, 2));
  EXPECT_THROW(io::read_metadata(good + "colour=red\n"), rdh::ParseError);
  EXPECT_THROW(io::read_metadata(good + "codec=PVO\n"), rdh::ParseError);
  std::string missing = good;
  missing.erase(missing.find("checksum="), 26);
  EXPECT_THROW(io::read_metadata(missing), rdh::ParseError);
  std::string bad_hex = good;
  bad_hex.replace(bad_hex.find("0123456789abcdef"), 16, "0123456789abcdeZ");
  EXPECT_THROW(io::read_metadata(bad_hex), rdh::ParseError);
  std::string bad_codec = good;
  bad_codec.replace(bad_codec.find("PPVOK"), 5, "LSB");
  EXPECT_THROW(io::read_metadata(bad_codec), rdh::ParseError);
  EXPECT_THROW(io::read_metadata("version=1\n"), rdh::ParseError);
}

TEST(CapacityCsv, Rows) {
  rdh::CapacityReport pvo;
  pvo.codec = rdh::CodecId::kPvo;
  pvo.geometry = {2, 2};
  pvo.capacity_bits = 31816;
  pvo.psnr_at_max = 55.5;
  pvo.image_label = "airplane";
  std::vector<rdh::CapacityReport> reports = {pvo};
  EXPECT_EQ(io::write_capacity_csv(reports),
            "algorithm,image,block,capacity_bits,psnr_db\nPVO,airplane,2x2,31816,55.5000\n");

  auto ppvok = pvo;
  ppvok.codec = rdh::CodecId::kPpvok;
  ppvok.psnr_at_max = std::numeric_limits<double>::infinity();
  reports.push_back(ppvok);
  const std::string csv = io::write_capacity_csv(reports);
  EXPECT_NE(csv.find("PVO,airplane"), std::string::npos);
  EXPECT_LT(csv.find("PVO,"), csv.find("PPVOK,"));
  EXPECT_NE(csv.find("PPVOK,airplane,2x2,31816,inf\n"), std::string::npos);

  EXPECT_THROW(io::write_capacity_csv({}), std::invalid_argument);
}
