#pragma once

// Simulation scenarios read from flat `key = value` files, and the
// comma-separated report written for each run.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "npc/codes.hpp"
#include "npc/protocol.hpp"

namespace npc::scenario {

enum class CodeFamily { Parity, Hamming, Bch, File };
enum class FailureKind { None, Fixed, Random };

// Keys:
//   family        parity | hamming | bch | file          (required)
//   n             code length; required for parity and bch, checked otherwise
//   mu            hamming parameter
//   design_t      bch design parameter
//   code_file     code file path, relative to the config file
//   rounds        number of rounds, >= 1                  (required)
//   failure_model none | fixed | random                   (default none)
//   failed        comma-separated connections for fixed
//   t             failures per round for random
//   seed          failure seed for random                 (default 0)
//   data_seed     seed for the data symbols               (default 0)
//   data_mode     per-round | streams                     (default per-round)
//   output        report path
struct ScenarioConfig {
  CodeFamily family = CodeFamily::Parity;
  std::optional<std::size_t> n;
  unsigned mu = 0;
  unsigned design_t = 0;
  std::string code_file;
  std::uint64_t rounds = 0;
  FailureKind failure_model = FailureKind::None;
  std::vector<std::size_t> failed;
  std::size_t t = 0;
  std::uint64_t seed = 0;
  std::uint64_t data_seed = 0;
  protocol::DataMode data_mode = protocol::DataMode::PerRound;
  std::optional<std::string> output;
};

// Throws ParseError on syntax errors, unknown or repeated keys, and missing
// required keys.
ScenarioConfig parse_config(std::string_view text);

// Builds the code named by the config; `base_dir` resolves code_file.
codes::ProtectionCode build_code(const ScenarioConfig& config,
                                 const std::filesystem::path& base_dir);

// Runs the scenario on a direct network of code.n() connections. Throws
// InvalidParameters when n, t or the fixed set do not fit the code.
protocol::SimulationResult run_scenario(const ScenarioConfig& config,
                                        const codes::ProtectionCode& code);

inline constexpr std::string_view kReportHeader =
    "round,failed,outcome,queries,xor_ops,transmissions,capacity_num,capacity_den";

// Header, one row per round (failed connections joined by ';', '-' when
// none; capacity is the reduced fraction of connections carrying data), then
// a footer line starting with "total".
void write_report(std::ostream& out, const protocol::SimulationResult& result, std::size_t n);

}  // namespace npc::scenario
