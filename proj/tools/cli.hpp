#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace wecp::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

// Agreement required between simulation and closed form.
inline constexpr double kMatchTol = 1e-10;

enum class Protocol { kSinglePhoton, kPolarization };
enum class OutputFormat { kJson, kCsv, kText };

struct RunConfig {
  Protocol protocol = Protocol::kSinglePhoton;
  std::vector<double> coeffs2;  // squared moduli
  std::vector<double> phases;   // radians, optional
  OutputFormat format = OutputFormat::kJson;
  std::optional<std::uint64_t> seed;
};

struct CompareConfig {
  std::size_t alpha_points = 200;
  std::vector<std::pair<int, int>> caps{{1, 1}, {3, 3}, {5, 5}};
  // Explicit alpha values; overrides alpha_points when non-empty.
  std::vector<double> alphas;
};

struct VerifyConfig {
  long long trials = 1000;
  int n_min = 2;
  int n_max = 8;
  std::optional<std::uint64_t> seed;
  // When set, every trial uses these squared moduli instead of sampling.
  std::vector<double> forced_coeffs2;
  OutputFormat format = OutputFormat::kText;
};

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const CompareConfig& config, std::ostream& out,
                std::ostream& err);
int cmd_verify(const VerifyConfig& config, std::ostream& out,
               std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

/// Decimal rendering with exactly 10 significant digits, never exponent
/// notation ("1.000000000", "0.0000029999...").
std::string format_sig10(double value);

/// Seed from the flag, else $ECP_SEED, else a fixed default.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag);

}  // namespace wecp::cli
