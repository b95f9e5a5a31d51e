#include "kneadlab/report.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>

#include "kneadlab/error.hpp"

namespace kneadlab {

bool RunReport::pass() const {
  for (const CheckRecord& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

io::Json RunReport::to_json() const {
  io::Json out;
  out["tool"] = std::string(kToolName);
  out["version"] = std::string(kToolVersion);
  out["command"] = command;
  out["input_digest"] = input_digest;
  out["pass"] = pass();
  io::Json cs = io::Json::array();
  for (const CheckRecord& c : checks) {
    cs.push_back(io::Json{{"id", c.id}, {"anchor", c.anchor}, {"status", c.pass ? "pass" : "fail"},
                          {"values", c.values}});
  }
  out["checks"] = std::move(cs);
  return out;
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::internal, "SHA-256 computation failed");
  }
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace kneadlab
