#pragma once

#include <chrono>
#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "stablecut/io.hpp"

namespace stablecut {

// ---------------------------------------------------------------------------
// Run reports: the one JSON envelope every CLI command emits on stdout.  The
// status vocabulary is closed; the process exit code is 0 exactly when the
// status is not ERROR.
// ---------------------------------------------------------------------------

enum class RunStatus { optimal, not_stable_certificate, improved, certified_stop, error };

inline const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::optimal: return "OPTIMAL";
    case RunStatus::not_stable_certificate: return "NOT_STABLE_CERTIFICATE";
    case RunStatus::improved: return "IMPROVED";
    case RunStatus::certified_stop: return "CERTIFIED_STOP";
    case RunStatus::error: return "ERROR";
  }
  return "ERROR";
}

inline std::uint64_t fnv1a64(const char* data, std::size_t len) {
  std::uint64_t h = 14695981039346656037ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

// Digest of the mathematical instance only: the canonical serialization with
// any provenance block stripped, so regenerating a fixture with fresh
// provenance keeps its digest.
inline std::string instance_digest(const Instance& inst) {
  Instance stripped = inst;
  stripped.provenance = nlohmann::ordered_json();
  const std::uint64_t h = fnv1a64(serialize_instance(stripped));
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 0; i < 16; ++i) buf[i] = hex[(h >> (60 - 4 * i)) & 0xf];
  buf[16] = '\0';
  return std::string(buf);
}

struct RunReport {
  std::string command;
  RunStatus status = RunStatus::error;
  std::string digest;
  int n = 0;
  long m = 0;
  nlohmann::ordered_json options;  // echoed seeds, tolerances, mode flags
  nlohmann::ordered_json result;   // command-specific payload
  double wall_time_ms = 0.0;
  std::string message;  // human-oriented one-liner; required when status == ERROR

  int exit_code() const { return status == RunStatus::error ? 1 : 0; }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["status"] = to_string(status);
    if (!digest.empty()) {
      j["instance"] = nlohmann::ordered_json();
      j["instance"]["digest"] = digest;
      j["instance"]["n"] = n;
      j["instance"]["m"] = m;
    }
    if (!options.is_null()) j["options"] = options;
    if (!result.is_null()) j["result"] = result;
    if (!message.empty()) j["message"] = message;
    j["wall_time_ms"] = wall_time_ms;
    return j;
  }

  std::string render_text() const {
    std::string out;
    out += command + ": " + to_string(status) + "\n";
    if (!digest.empty())
      out += "  instance " + digest + "  (n = " + std::to_string(n) + ", m = " +
             std::to_string(m) + ")\n";
    if (!message.empty()) out += "  " + message + "\n";
    struct Walker {
      static void walk(const nlohmann::ordered_json& j, const std::string& prefix,
                       std::string& out) {
        for (const auto& [key, value] : j.items()) {
          if (value.is_object()) {
            walk(value, prefix + key + ".", out);
          } else {
            out += "  " + prefix + key + " = " + value.dump() + "\n";
          }
        }
      }
    };
    if (!options.is_null() && !options.empty()) {
      out += "  options:\n";
      Walker::walk(options, "  ", out);
    }
    if (!result.is_null() && !result.empty()) {
      out += "  result:\n";
      Walker::walk(result, "  ", out);
    }
    out += "  wall_time_ms = " + detail::format_double(wall_time_ms) + "\n";
    return out;
  }
};

class WallClock {
 public:
  WallClock() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace stablecut
