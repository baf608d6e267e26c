#pragma once

// Named groups of checks with deterministic JSON reports, and the run manifest.
// Reports carry no timings or timestamps; those live only in manifests.

#include "ptlab/gl.hpp"
#include "ptlab/verdict.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ptlab::suite {

inline constexpr const char* kToolVersion = "0.1.0";

struct SuiteConfig {
  std::uint64_t seed = 0x5eed;
  std::optional<std::uint64_t> budget;  // suite default when empty
  bool undecided_fails = true;
  gl::GlOptions gl;
};

struct SuiteReport {
  std::string suite;
  nlohmann::json config;
  std::vector<Verdict> checks;

  std::size_t count(Outcome o) const;
  // No refuted checks, and no undecided ones when they count as failures.
  bool passed(bool undecided_fails) const;
  nlohmann::json to_json() const;
};

// gl-lob, godel2, monotone-finite, con-base, diagonal, aset-lemmas, thm41-dir1,
// thm41-dir2, prop51, and all (every other suite in this order).
const std::vector<std::string>& suite_names();

// Throws PreconditionError for an unknown suite id.
SuiteReport run_suite(const std::string& name, const SuiteConfig& config = {});

struct RunManifest {
  std::string tool_version = kToolVersion;
  nlohmann::json config;
  std::vector<std::pair<std::string, std::string>> digests;  // file name, FNV-1a hex
  std::string timestamp;                                     // UTC, ISO 8601

  void add_file(const std::string& name, std::string_view contents);
  nlohmann::json to_json() const;
};

std::string fnv_hex(std::string_view s);
std::string utc_timestamp();

}  // namespace ptlab::suite
