#include "npc/scenario.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "npc/error.hpp"
#include "npc/netmodel.hpp"

namespace npc::scenario {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_error(const std::string& why) { throw Error(ErrorCode::ParseError, why); }

std::uint64_t parse_unsigned(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    parse_error(std::string(key) + ": expected a non-negative integer, got '" +
                std::string(value) + "'");
  }
  return out;
}

std::vector<std::size_t> parse_list(std::string_view key, std::string_view value) {
  std::vector<std::size_t> out;
  while (true) {
    const auto comma = value.find(',');
    out.push_back(parse_unsigned(key, trim(value.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  std::map<std::string, std::string, std::less<>> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);

    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) parse_error(where + "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) parse_error(where + "empty key or value");
    if (!entries.emplace(std::string(key), std::string(value)).second) {
      parse_error(where + "repeated key '" + std::string(key) + "'");
    }
  }

  std::set<std::string, std::less<>> allowed{"family", "rounds", "failure_model", "data_seed",
                                             "data_mode", "output", "n"};
  auto take = [&](std::string_view key) -> std::optional<std::string> {
    const auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    return it->second;
  };
  auto require = [&](std::string_view key) {
    allowed.emplace(key);
    auto v = take(key);
    if (!v) parse_error("missing key '" + std::string(key) + "'");
    return *v;
  };

  ScenarioConfig config;
  const std::string family = require("family");
  if (family == "parity") {
    config.family = CodeFamily::Parity;
    require("n");
  } else if (family == "hamming") {
    config.family = CodeFamily::Hamming;
    config.mu = static_cast<unsigned>(parse_unsigned("mu", require("mu")));
  } else if (family == "bch") {
    config.family = CodeFamily::Bch;
    require("n");
    config.design_t = static_cast<unsigned>(parse_unsigned("design_t", require("design_t")));
  } else if (family == "file") {
    config.family = CodeFamily::File;
    config.code_file = require("code_file");
  } else {
    parse_error("family: unknown value '" + family + "'");
  }
  if (auto n = take("n")) config.n = parse_unsigned("n", *n);

  config.rounds = parse_unsigned("rounds", require("rounds"));
  if (config.rounds < 1) parse_error("rounds: must be at least 1");

  const std::string model = take("failure_model").value_or("none");
  if (model == "none") {
    config.failure_model = FailureKind::None;
  } else if (model == "fixed") {
    config.failure_model = FailureKind::Fixed;
    config.failed = parse_list("failed", require("failed"));
  } else if (model == "random") {
    config.failure_model = FailureKind::Random;
    config.t = parse_unsigned("t", require("t"));
    allowed.emplace("seed");
    if (auto seed = take("seed")) config.seed = parse_unsigned("seed", *seed);
  } else {
    parse_error("failure_model: unknown value '" + model + "'");
  }

  if (auto seed = take("data_seed")) config.data_seed = parse_unsigned("data_seed", *seed);
  const std::string mode = take("data_mode").value_or("per-round");
  if (mode == "per-round") {
    config.data_mode = protocol::DataMode::PerRound;
  } else if (mode == "streams") {
    config.data_mode = protocol::DataMode::SourceStreams;
  } else {
    parse_error("data_mode: unknown value '" + mode + "'");
  }
  config.output = take("output");

  for (const auto& [key, value] : entries) {
    if (!allowed.contains(key)) parse_error("unexpected key '" + key + "'");
  }
  return config;
}

codes::ProtectionCode build_code(const ScenarioConfig& config,
                                 const std::filesystem::path& base_dir) {
  switch (config.family) {
    case CodeFamily::Parity:
      return codes::single_parity_code(config.n.value_or(0));
    case CodeFamily::Hamming:
      return codes::hamming_code(config.mu);
    case CodeFamily::Bch:
      return codes::bch_code(config.n.value_or(0), config.design_t);
    case CodeFamily::File: {
      const std::filesystem::path path = base_dir / config.code_file;
      std::ifstream in(path, std::ios::binary);
      if (!in) parse_error("cannot read code file " + path.string());
      std::ostringstream text;
      text << in.rdbuf();
      return codes::parse_code_file(text.str());
    }
  }
  throw Error(ErrorCode::InvalidParameters, "unknown code family");
}

protocol::SimulationResult run_scenario(const ScenarioConfig& config,
                                        const codes::ProtectionCode& code) {
  const std::size_t n = code.n();
  if (config.n && *config.n != n) {
    throw Error(ErrorCode::InvalidParameters, "n=" + std::to_string(*config.n) +
                                                  " but the code has length " + std::to_string(n));
  }

  protocol::FailureSource failures;
  switch (config.failure_model) {
    case FailureKind::None:
      failures = protocol::no_failures(n);
      break;
    case FailureKind::Fixed:
      failures = protocol::fixed_failures(n, config.failed);
      break;
    case FailureKind::Random:
      failures = protocol::random_failures(n, config.t, config.seed);
      break;
  }

  net::Network network = net::Network::direct(n);
  const protocol::Schedule sched = protocol::build_schedule(n, code.m(), config.rounds);
  return protocol::run_simulation(network, code, sched, failures,
                                  {.rounds = config.rounds,
                                   .data_seed = config.data_seed,
                                   .data_mode = config.data_mode});
}

void write_report(std::ostream& out, const protocol::SimulationResult& result, std::size_t n) {
  out << kReportHeader << '\n';
  for (const protocol::RoundRecord& row : result.rounds) {
    std::string failed;
    for (std::size_t i : row.failed) {
      if (!failed.empty()) failed += ';';
      failed += std::to_string(i);
    }
    if (failed.empty()) failed = "-";
    const net::Rational capacity(static_cast<std::int64_t>(row.data_connections),
                                 static_cast<std::int64_t>(n));
    out << row.round << ',' << failed << ',' << protocol::to_string(row.outcome) << ','
        << row.queries << ',' << row.xor_operations << ',' << row.transmissions << ','
        << capacity.numerator() << ',' << capacity.denominator() << '\n';
  }
  const protocol::SimulationMetrics& m = result.metrics;
  out << "total,rounds=" << result.rounds.size() << ",queries=" << m.total_queries
      << ",xor_ops=" << m.total_xor_operations << ",transmissions=" << m.total_transmissions
      << ",avg_capacity=" << m.avg_capacity.numerator() << '/' << m.avg_capacity.denominator()
      << ",recovery_rate=" << m.recovery_rate.numerator() << '/' << m.recovery_rate.denominator()
      << ",unrecoverable=" << m.unrecoverable_rounds << ",mismatches=" << m.mismatches << '\n';
}

}  // namespace npc::scenario
