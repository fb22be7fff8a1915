#include "sdtk/report.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace sdtk {

std::string verdict_label(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Inconclusive:
      return "inconclusive";
    case Verdict::Usage:
      return "usage-error";
  }
  return "usage-error";
}

Verdict verdict_from_label(const std::string& s) {
  if (s == "pass") return Verdict::Pass;
  if (s == "fail") return Verdict::Fail;
  if (s == "inconclusive") return Verdict::Inconclusive;
  if (s == "usage-error") return Verdict::Usage;
  throw std::invalid_argument("unknown verdict label: " + s);
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t Report::config_hash() const {
  return fnv1a64(command + "\n" + config.dump());
}

json Report::to_json() const {
  std::ostringstream hash;
  hash << std::hex << std::setw(16) << std::setfill('0') << config_hash();
  return json{{"command", command},       {"config", config},
              {"config_hash", hash.str()}, {"verdict", verdict_label(verdict)},
              {"details", details},        {"wall_time_ms", wall_time_ms}};
}

}  // namespace sdtk
