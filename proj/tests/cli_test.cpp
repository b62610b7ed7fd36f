/**
 * Copyright The rdh-pvo Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "rdh/io.hpp"
#include "rdh/pipeline.hpp"
#include "rdh/random_bits.hpp"
#include "test_images.hpp"

namespace fs = std::filesystem;
namespace io = rdh::io;

namespace {

struct RunResult {
  int code;
  std::string out;  // stdout and stderr interleaved
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(RDH_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(RDH_TEST_TMPDIR) /
           ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::create_directories(dir_);
    carrier_ = rdh::testing::gradient_plateau_image(128);
    io::write_file(path("carrier.pgm"), io::write_pgm(carrier_));
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  rdh::GrayImage carrier_;
};

}  // namespace

TEST_F(CliTest, EmbedExtractRandomBits) {
  auto r = run("embed --codec ppvok --input " + path("carrier.pgm") +
               " --random-bits 1000 --seed 7 --output " + path("stego.pgm") + " --meta " +
               path("stego.meta"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("embedded=1000\n"), std::string::npos);
  EXPECT_NE(r.out.find("psnr_db="), std::string::npos);

  r = run("extract --input " + path("stego.pgm") + " --meta " + path("stego.meta") +
          " --payload-out " + path("payload.bin") + " --restored " + path("restored.pgm"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("extracted=1000\n"), std::string::npos);
  EXPECT_EQ(io::read_file(path("restored.pgm")), io::read_file(path("carrier.pgm")));
  EXPECT_EQ(io::read_file(path("payload.bin")), io::pack_bits(rdh::random_bits(1000, 7)));
}

TEST_F(CliTest, EmbedExtractPayloadFile) {
  const std::string secret = "reversible!";
  io::write_file(path("secret.bin"), secret);
  for (const char* codec : {"pvo", "ipvo", "pvok", "ppvok"}) {
    auto r = run(std::string("embed --codec ") + codec + " --input " + path("carrier.pgm") +
                 " --payload " + path("secret.bin") + " --output " + path("s.pgm") +
                 " --meta " + path("s.meta"));
    ASSERT_EQ(r.code, 0) << codec << r.out;
    r = run("extract --input " + path("s.pgm") + " --meta " + path("s.meta") +
            " --payload-out " + path("out.bin") + " --restored " + path("r.pgm"));
    ASSERT_EQ(r.code, 0) << codec << r.out;
    EXPECT_EQ(io::read_file(path("out.bin")), secret);
    EXPECT_EQ(io::read_file(path("r.pgm")), io::read_file(path("carrier.pgm")));
  }
}

TEST_F(CliTest, CapacityExceeded) {
  const auto r = run("embed --codec ppvok --input " + path("carrier.pgm") +
                     " --random-bits 1000000000 --output " + path("x.pgm") + " --meta " +
                     path("x.meta"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("capacity="), std::string::npos);
}

TEST_F(CliTest, MissingInputIsUsageError) {
  auto r = run("embed --codec ppvok --random-bits 10 --output " + path("x.pgm") + " --meta " +
               path("x.meta"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("--input"), std::string::npos);

  r = run("embed --input " + path("carrier.pgm") + " --output " + path("x.pgm") + " --meta " +
          path("x.meta"));
  EXPECT_EQ(r.code, 1);

  r = run("embed --input " + path("nope.pgm") + " --random-bits 3 --output " + path("x.pgm") +
          " --meta " + path("x.meta"));
  EXPECT_EQ(r.code, 1);

  EXPECT_EQ(run("").code, 1);
}

TEST_F(CliTest, TamperedStegoFailsIntegrity) {
  ASSERT_EQ(run("embed --codec pvok --input " + path("carrier.pgm") +
                " --random-bits 200 --output " + path("s.pgm") + " --meta " + path("s.meta"))
                .code,
            0);
  auto stego = io::read_pgm(io::read_file(path("s.pgm")));
  stego.at(5, 3) ^= 0x10;
  io::write_file(path("s.pgm"), io::write_pgm(stego));
  const auto r = run("extract --input " + path("s.pgm") + " --meta " + path("s.meta") +
                     " --payload-out " + path("o.bin") + " --restored " + path("r.pgm"));
  EXPECT_EQ(r.code, 3) << r.out;
}

TEST_F(CliTest, WrongMetadataDimensions) {
  ASSERT_EQ(run("embed --codec pvo --input " + path("carrier.pgm") +
                " --random-bits 20 --output " + path("s.pgm") + " --meta " + path("s.meta"))
                .code,
            0);
  io::write_file(path("small.pgm"), io::write_pgm(rdh::GrayImage(64, 64, 9)));
  const auto r = run("extract --input " + path("small.pgm") + " --meta " + path("s.meta") +
                     " --payload-out " + path("o.bin") + " --restored " + path("r.pgm"));
  EXPECT_EQ(r.code, 1) << r.out;
}

TEST_F(CliTest, CapacityAndSweep) {
  auto r = run("capacity --codec ppvok --input " + path("carrier.pgm"));
  ASSERT_EQ(r.code, 0) << r.out;
  const auto expected = rdh::capacity(carrier_, rdh::CodecId::kPpvok, {2, 2}).capacity_bits;
  EXPECT_NE(r.out.find("capacity_bits=" + std::to_string(expected) + "\n"), std::string::npos);

  io::write_file(path("flat.pgm"), io::write_pgm(rdh::GrayImage(32, 32, 128)));
  r = run("capacity --codec ppvok --sweep --input " + path("flat.pgm"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("capacity_bits=0\n"), std::string::npos);
  EXPECT_NE(r.out.find("best_block=2x2\n"), std::string::npos);
}

TEST_F(CliTest, CompareEmitsFourRows) {
  io::write_file(path("airplane.pgm"), io::write_pgm(carrier_));
  const auto r = run("compare --input " + path("airplane.pgm") + " --csv " + path("t.csv"));
  ASSERT_EQ(r.code, 0) << r.out;
  const std::string csv = io::read_file(path("t.csv"));
  EXPECT_EQ(r.out, csv);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  EXPECT_EQ(csv.rfind("algorithm,image,block,capacity_bits,psnr_db\n", 0), 0u);
  for (const char* name : {"PVO,airplane,2x2,", "IPVO,airplane,2x2,", "PVOK,airplane,2x2,",
                           "PPVOK,airplane,2x2,"}) {
    EXPECT_NE(csv.find(std::string("\n") + name), std::string::npos) << name;
  }
}

TEST_F(CliTest, Verify) {
  auto r = run("verify --exhaustive");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("ppvok.random.cases=10000\n"), std::string::npos);
  EXPECT_NE(r.out.find("pvo.exhaustive_2x2.failures=0\n"), std::string::npos);
  EXPECT_NE(r.out.find("result=pass"), std::string::npos);

  r = run("verify --inject-fault --cases 500");
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.out.find("counterexample ["), std::string::npos);
}
