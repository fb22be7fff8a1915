#pragma once

#include <cstdint>
#include <string>

#include "sdtk/pattern.hpp"

namespace sdtk {

/// Run verdicts, mapped one-to-one onto process exit codes.
enum class Verdict { Pass = 0, Fail = 1, Inconclusive = 2, Usage = 3 };

std::string verdict_label(Verdict v);
Verdict verdict_from_label(const std::string& s);

/// One report per run. The wall-time field is excluded from the config
/// hash so identical configs always hash identically.
struct Report {
  std::string command;
  json config;
  Verdict verdict = Verdict::Pass;
  json details;
  double wall_time_ms = 0.0;

  std::uint64_t config_hash() const;
  int exit_code() const { return static_cast<int>(verdict); }
  json to_json() const;
};

std::uint64_t fnv1a64(const std::string& s);

}  // namespace sdtk
