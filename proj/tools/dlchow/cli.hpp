#ifndef DLCHOW_TOOLS_CLI_HPP
#define DLCHOW_TOOLS_CLI_HPP

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dlchow/arith.hpp"
#include "dlchow/permutation.hpp"

namespace dlchow::cli {

enum class Format { Text, Json, Csv };

struct CliConfig {
  int n = 0;
  Twist twist = Twist::Trivial;
  std::optional<Rational> q; ///< evaluate symbolic results at this value
  Format format = Format::Text;
  std::filesystem::path cacheDir;
  bool strictCache = false;
  int jobs = 1;
};

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kResourceCap = 3,
  kCacheRebuilt = 4,
};

/// $DLCHOW_CACHE, or ./.dlchow-cache when unset.
std::filesystem::path default_cache_dir();

/// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dlchow::cli

#endif // DLCHOW_TOOLS_CLI_HPP
