#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hecke::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kVerificationFailure = 2,
  kInternalError = 3,
};

struct RunConfig {
  int weight = 12;
  std::size_t n = 2'097'151;  // 2^21 - 1: room for X = 10^6 and H = X^{3/4}
  std::size_t x = 1'000'000;
  std::optional<std::size_t> h_max;  // defaults to floor(X^{3/4})
  std::size_t q_max = 1000;
  std::optional<double> tol;  // adaptive B_h tail tolerance
  std::filesystem::path out = "out";
  std::optional<std::filesystem::path> cache;
  unsigned threads = 1;
  std::uint64_t seed = 42;

  [[nodiscard]] std::size_t effective_h_max() const;
  // --cache, then $HECKE_CACHE_DIR, then ./cache.
  [[nodiscard]] std::filesystem::path cache_dir() const;
  [[nodiscard]] std::filesystem::path coeff_cache_path() const;
  [[nodiscard]] std::filesystem::path table_cache_path() const;
};

// Parses argv-style arguments (without the program name) and runs one
// subcommand: expand, verify, singular, shifted, expsum or report.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hecke::cli
