#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "exactone/geometry.hpp"

namespace exactone::cli {

// Stable exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFail = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitIoError = 3;

// Environment variable that replaces the built-in default seed.
inline constexpr const char* kSeedEnv = "EXACTONE_SEED";
inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

enum class Command { kAnalyze, kSweep, kOptimize, kVerify, kProfile };
enum class Format { kCsv, kJson };

struct RunConfig {
  Command command = Command::kAnalyze;
  std::optional<double> t;
  std::optional<double> gamma_deg;
  std::optional<Vec2> a;
  std::optional<Vec2> b;
  std::optional<double> rho;
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = kDefaultSeed;
  int grid = 101;
  int resolution = 1024;
  std::optional<std::string> out_path;
  Format format = Format::kCsv;
  std::string restrict_to = "none";
  int coarse = 64;
  double tol = 1e-10;
  int threads = 1;
};

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Accepts decimal or 0x-prefixed hexadecimal.
std::uint64_t parse_seed(const std::string& text);

// "x,y"
Vec2 parse_vec2(const std::string& text);

// Fixed float formatting used in every output: 9 significant digits.
std::string fmt(double v);

// Runs the CLI on argv-style arguments (args[0] is the program name).
// Normal output goes to `out`, diagnostics to `err`; --out redirects the
// normal output to a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace exactone::cli
