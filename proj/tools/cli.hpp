#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qpalg::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kRefused = 2;
inline constexpr int kCheckFailed = 3;

struct JobSpec {
  std::string command;
  std::vector<std::string> inputs;
  std::optional<int> truncation;  ///< --n; each command has its own default
  int degree_lo = -8;
  int degree_hi = 0;
  std::uint64_t seed = 1;
  std::optional<int> width;  ///< --width (pagoda, dw-check)
  std::optional<int> r;      ///< --r (hh)
  bool table = false;
};

struct Outcome {
  nlohmann::json report;
  int exit_code = kOk;
};

/// `lo..hi` with -24 <= lo <= hi <= 0. InputError otherwise.
std::pair<int, int> parse_degrees(const std::string& text);

/// Runs one job. Throws InputError / RefusalError; main maps them to exit codes.
Outcome run(const JobSpec& job);

/// Runs the invariant suite on every .qp and .poly file of a directory (not
/// recursive), in file-name order.
Outcome run_corpus(const std::string& dir, const JobSpec& job);

/// Plain-text rendering: `rows` become a column table, other fields `key: value` lines.
std::string render_table(const nlohmann::json& report);

} // namespace qpalg::cli
