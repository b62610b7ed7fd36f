/**
 * Copyright The rdh-pvo Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

// pvo-rdh: embed, extract, and benchmark pixel-value-ordering codecs on PGM
// images. stdout carries key=value lines; diagnostics go to stderr.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rdh/rdh.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kCapacity = 2,
  kIntegrity = 3,
  kVerification = 4,
};

struct EmbedArgs {
  std::string codec = "ppvok";
  std::string block = "2x2";
  std::string input;
  std::string payload_file;
  std::optional<std::size_t> random_bits;
  std::uint64_t seed = 0;
  std::string output;
  std::string meta;
};

struct ExtractArgs {
  std::string input;
  std::string meta;
  std::string payload_out;
  std::string restored;
};

struct CapacityArgs {
  std::string codec = "ppvok";
  std::string block = "2x2";
  std::string input;
  bool sweep = false;
};

struct CompareArgs {
  std::string input;
  std::string block = "2x2";
  std::string csv;
  std::string label;
};

struct VerifyArgs {
  bool exhaustive = false;
  std::uint64_t seed = 1;
  std::size_t cases = 10000;
  bool inject_fault = false;
};

rdh::GrayImage load_image(const std::string& path) {
  return rdh::io::read_pgm(rdh::io::read_file(path));
}

int run_embed(const EmbedArgs& a) {
  const rdh::CodecId codec = rdh::parse_codec(a.codec);
  const rdh::BlockGeometry geometry = rdh::BlockGeometry::parse(a.block);
  const rdh::GrayImage carrier = load_image(a.input);

  const rdh::BitPayload payload =
      a.random_bits ? rdh::random_bits(*a.random_bits, a.seed)
                    : rdh::io::unpack_bits(rdh::io::read_file(a.payload_file));

  rdh::EmbedResult result;
  try {
    result = rdh::embed_image(carrier, payload, codec, geometry);
  } catch (const rdh::CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCapacity;
  }
  rdh::io::write_file(a.output, rdh::io::write_pgm(result.stego));
  rdh::io::write_file(a.meta, rdh::io::write_metadata(result.meta));

  std::cout << "codec=" << rdh::codec_name(codec) << '\n'
            << "block=" << geometry.to_string() << '\n'
            << "embedded=" << payload.size() << '\n'
            << "processed_blocks=" << result.meta.processed_block_count << '\n'
            << "psnr_db=" << rdh::io::format_psnr(rdh::psnr(carrier, result.stego))
            << '\n';
  return kOk;
}

int run_extract(const ExtractArgs& a) {
  const rdh::GrayImage stego = load_image(a.input);
  const rdh::EmbedMetadata meta = rdh::io::read_metadata(rdh::io::read_file(a.meta));
  if (stego.width() != meta.image_w || stego.height() != meta.image_h) {
    std::cerr << "error: metadata describes a " << meta.image_w << "x" << meta.image_h
              << " image but '" << a.input << "' is " << stego.width() << "x"
              << stego.height() << '\n';
    return kUsage;
  }

  rdh::ExtractResult result;
  try {
    result = rdh::extract_image(stego, meta);
  } catch (const rdh::IntegrityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIntegrity;
  }
  rdh::io::write_file(a.payload_out, rdh::io::pack_bits(result.payload));
  rdh::io::write_file(a.restored, rdh::io::write_pgm(result.restored));
  std::cout << "codec=" << rdh::codec_name(meta.codec) << '\n'
            << "extracted=" << result.payload.size() << '\n'
            << "checksum=ok\n";
  return kOk;
}

void print_report(const rdh::CapacityReport& r) {
  std::cout << "codec=" << rdh::codec_name(r.codec) << '\n'
            << "block=" << r.geometry.to_string() << '\n'
            << "capacity_bits=" << r.capacity_bits << '\n'
            << "eligible_blocks=" << r.eligible_blocks << '\n'
            << "excluded_blocks=" << r.excluded_blocks << '\n'
            << "psnr_db=" << rdh::io::format_psnr(r.psnr_at_max) << '\n';
}

int run_capacity(const CapacityArgs& a) {
  const rdh::CodecId codec = rdh::parse_codec(a.codec);
  const rdh::GrayImage image = load_image(a.input);
  if (!a.sweep) {
    print_report(rdh::capacity(image, codec, rdh::BlockGeometry::parse(a.block)));
    return kOk;
  }
  const rdh::SweepResult sweep = rdh::sweep_block_sizes(image, codec);
  for (const auto& r : sweep.reports) {
    std::cout << "sweep." << r.geometry.to_string() << '=' << r.capacity_bits << '\n';
  }
  std::cout << "best_block=" << sweep.best.to_string() << '\n';
  for (const auto& r : sweep.reports) {
    if (r.geometry == sweep.best) print_report(r);
  }
  return kOk;
}

int run_compare(const CompareArgs& a) {
  const rdh::GrayImage image = load_image(a.input);
  const rdh::BlockGeometry geometry = rdh::BlockGeometry::parse(a.block);
  const std::string label =
      a.label.empty() ? std::filesystem::path(a.input).stem().string() : a.label;

  std::vector<rdh::CapacityReport> reports;
  for (rdh::CodecId id : rdh::kAllCodecs) {
    reports.push_back(rdh::capacity(image, id, geometry));
    reports.back().image_label = label;
  }
  const std::string csv = rdh::io::write_capacity_csv(reports);
  if (!a.csv.empty()) rdh::io::write_file(a.csv, csv);
  std::cout << csv;
  return kOk;
}

// Prints the outcome of one oracle run; false on failure.
bool report_oracle(const std::string& key, const rdh::oracle::Report& r) {
  std::cout << key << ".cases=" << r.cases << '\n'
            << key << ".failures=" << r.failures << '\n';
  if (!r.passed()) {
    std::cerr << "error: " << key << " counterexample "
              << r.counterexamples.front().describe() << '\n';
  }
  return r.passed();
}

int run_verify(const VerifyArgs& a) {
  namespace oracle = rdh::oracle;
  auto codec_for = [&](rdh::CodecId id) {
    return a.inject_fault && id == rdh::CodecId::kPpvok ? oracle::swapped_ppvok_decoder()
                                                       : oracle::production_codec(id);
  };

  bool ok = true;
  for (rdh::CodecId id : rdh::kAllCodecs) {
    std::string key(rdh::codec_name(id));
    for (char& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

    ok &= report_oracle(key + ".random",
                        oracle::random_block_check(id, a.cases, a.seed, codec_for(id)));
    if (a.exhaustive) {
      ok &= report_oracle(key + ".exhaustive_2x2",
                          oracle::exhaustive_block_check(id, {2, 2}, 0, 5, codec_for(id)));
      if (id == rdh::CodecId::kPpvok) {
        ok &= report_oracle(key + ".exhaustive_2x3",
                            oracle::exhaustive_block_check(id, {2, 3}, 0, 4, codec_for(id)));
      }
    }
  }
  std::cout << "result=" << (ok ? "pass" : "fail") << '\n';
  return ok ? kOk : kVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reversible data hiding with pixel-value-ordering codecs"};
  app.require_subcommand(1);

  EmbedArgs embed;
  auto* embed_cmd = app.add_subcommand("embed", "Hide a payload in a PGM carrier");
  embed_cmd->add_option("--codec", embed.codec, "pvo | ipvo | pvok | ppvok")
      ->capture_default_str();
  embed_cmd->add_option("--block", embed.block, "Block geometry WxH")->capture_default_str();
  embed_cmd->add_option("--input", embed.input, "Carrier PGM")->required();
  auto* payload_opt = embed_cmd->add_option("--payload", embed.payload_file,
                                            "Payload file, bits read MSB-first");
  auto* random_opt = embed_cmd->add_option("--random-bits", embed.random_bits,
                                           "Embed N seeded pseudo-random bits");
  embed_cmd->add_option("--seed", embed.seed, "Seed for --random-bits")->capture_default_str();
  embed_cmd->add_option("--output", embed.output, "Stego PGM")->required();
  embed_cmd->add_option("--meta", embed.meta, "Metadata sidecar")->required();
  payload_opt->excludes(random_opt);
  random_opt->excludes(payload_opt);

  ExtractArgs extract;
  auto* extract_cmd = app.add_subcommand("extract", "Recover payload and carrier");
  extract_cmd->add_option("--input", extract.input, "Stego PGM")->required();
  extract_cmd->add_option("--meta", extract.meta, "Metadata sidecar")->required();
  extract_cmd->add_option("--payload-out", extract.payload_out, "Payload output")->required();
  extract_cmd->add_option("--restored", extract.restored, "Restored PGM")->required();

  CapacityArgs cap;
  auto* cap_cmd = app.add_subcommand("capacity", "Maximum single-pass capacity");
  cap_cmd->add_option("--codec", cap.codec, "pvo | ipvo | pvok | ppvok")->capture_default_str();
  cap_cmd->add_option("--block", cap.block, "Block geometry WxH")->capture_default_str();
  cap_cmd->add_option("--input", cap.input, "Carrier PGM")->required();
  cap_cmd->add_flag("--sweep", cap.sweep, "Try 2x2, 2x3, 3x2, 3x3, 4x4 and keep the best");

  CompareArgs cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Capacity of all four codecs as CSV");
  cmp_cmd->add_option("--input", cmp.input, "Carrier PGM")->required();
  cmp_cmd->add_option("--block", cmp.block, "Block geometry WxH")->capture_default_str();
  cmp_cmd->add_option("--csv", cmp.csv, "Also write the CSV here");
  cmp_cmd->add_option("--label", cmp.label, "Image column value (default: file stem)");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Round-trip self test of every codec");
  verify_cmd->add_flag("--exhaustive", verify.exhaustive,
                       "Also enumerate all 2x2 blocks over 0..5 (2x3 over 0..4 for ppvok)");
  verify_cmd->add_option("--seed", verify.seed, "Seed of the randomized cases")
      ->capture_default_str();
  verify_cmd->add_option("--cases", verify.cases, "Randomized cases per codec")
      ->capture_default_str();
  verify_cmd->add_flag("--inject-fault", verify.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*embed_cmd) {
      if (embed.payload_file.empty() && !embed.random_bits) {
        std::cerr << "error: one of --payload or --random-bits is required\n\n"
                  << embed_cmd->help();
        return kUsage;
      }
      return run_embed(embed);
    }
    if (*extract_cmd) return run_extract(extract);
    if (*cap_cmd) return run_capacity(cap);
    if (*cmp_cmd) return run_compare(cmp);
    if (*verify_cmd) return run_verify(verify);
  } catch (const rdh::IntegrityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIntegrity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
