#include "report.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <sstream>

namespace moonshine::cli {

std::string sha256_hex(std::string const& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

void RunReport::add_input(std::string path, std::string const& contents) {
  inputs_.emplace_back(std::move(path), sha256_hex(contents));
}

int RunReport::exit_code() const {
  bool inconclusive = false;
  for (auto const& c : checks_) {
    if (c.verdict == Verdict::fail) return exit_fail;
    inconclusive = inconclusive || c.verdict == Verdict::inconclusive;
  }
  return inconclusive ? exit_inconclusive : exit_pass;
}

std::string RunReport::human(bool timing) const {
  std::ostringstream os;
  for (auto const& [k, v] : notes_) os << k << ": " << v << '\n';
  for (auto const& c : checks_) {
    os << c.name << ": " << to_string(c.verdict);
    if (c.window) os << " [window q^" << *c.window << "]";
    if (!c.detail.empty()) os << " - " << c.detail;
    os << '\n';
  }
  if (timing) os << "time: " << seconds_ << " s\n";
  return os.str();
}

nlohmann::ordered_json RunReport::json(bool timing) const {
  nlohmann::ordered_json j;
  j["command"] = argv_;
  j["inputs"] = nlohmann::ordered_json::array();
  for (auto const& [path, digest] : inputs_) j["inputs"].push_back({{"path", path}, {"sha256", digest}});
  j["results"] = nlohmann::ordered_json::object();
  for (auto const& [k, v] : notes_) j["results"][k] = v;
  j["checks"] = nlohmann::ordered_json::array();
  for (auto const& c : checks_) {
    nlohmann::ordered_json e{{"name", c.name}, {"verdict", to_string(c.verdict)}};
    e["window"] = c.window ? nlohmann::ordered_json(*c.window) : nlohmann::ordered_json(nullptr);
    e["detail"] = c.detail;
    j["checks"].push_back(std::move(e));
  }
  int code = exit_code();
  j["verdict"] = code == exit_pass ? "pass" : code == exit_fail ? "fail" : "inconclusive";
  j["exit_code"] = code;
  if (timing) j["seconds"] = seconds_;
  return j;
}

}  // namespace moonshine::cli
