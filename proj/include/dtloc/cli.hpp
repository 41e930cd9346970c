#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dtloc::cli {

enum class Command { Validate, FixedPoints, Index, Series, Walls, Compare, BBCheck };

struct RunConfig {
  Command command = Command::Series;
  std::optional<std::string> model;      // built-in name
  std::optional<std::string> quiver_path; // description file
  std::optional<std::string> slope;
  std::optional<std::string> slope_b; // compare only
  int order = 0;
  int max_boxes = 0;
  std::optional<int> max_cycle_len;
  std::string factors;
  bool json = false;
  bool qneg = false;
  int threads = 1;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Thread count from an explicit flag, else DTLOC_THREADS, else hardware.
int resolve_threads(std::optional<int> flag);

/// Parses arguments (without the program name) and runs the command. Writes
/// results to `out` and one-line diagnostics to `err`. Returns 0 on success,
/// 1 on a domain error, 2 on a usage error.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Runs an already parsed configuration.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

} // namespace dtloc::cli
