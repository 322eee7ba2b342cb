#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <optional>
#include <string>
#include <string_view>

#include "rainbow/io.hpp"
#include "rainbow/random.hpp"

namespace rainbow {

inline constexpr std::string_view kToolVersion = "0.1.0";

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string digest_hex(std::string_view bytes) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes);
  std::string out = "fnv1a64:";
  for (int shift = 60; shift >= 0; shift -= 4) out += kHex[(h >> shift) & 0xF];
  return out;
}

inline std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Timestamp stays empty unless wall-clock output was requested, so identical
// invocations produce identical reports.
struct RunManifest {
  std::string command_line;
  std::string tool_version{kToolVersion};
  Seed global_seed = 0;
  std::optional<std::string> timestamp;
  std::optional<std::string> input_digest;
};

inline Json manifest_to_json(const RunManifest& m) {
  Json j;
  j["command_line"] = m.command_line;
  j["tool_version"] = m.tool_version;
  j["global_seed"] = m.global_seed;
  j["timestamp"] = m.timestamp ? Json(*m.timestamp) : Json(nullptr);
  j["input_digest"] = m.input_digest ? Json(*m.input_digest) : Json(nullptr);
  return j;
}

}  // namespace rainbow
