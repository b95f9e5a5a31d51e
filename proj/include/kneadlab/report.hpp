#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kneadlab/io.hpp"

namespace kneadlab {

inline constexpr std::string_view kToolName = "kneadlab";
inline constexpr std::string_view kToolVersion = "0.1.0";

struct CheckRecord {
  std::string id;
  std::string anchor;  // name of the identity or bound being checked
  bool pass = false;
  io::Json values = io::Json::object();  // exact values, rationals as "p/q"
};

struct RunReport {
  std::string command;
  std::string input_digest;  // SHA-256 hex of the concatenated inputs
  std::vector<CheckRecord> checks;

  bool pass() const;
  void add(CheckRecord record) { checks.push_back(std::move(record)); }
  io::Json to_json() const;
};

std::string sha256_hex(std::string_view data);

}  // namespace kneadlab
