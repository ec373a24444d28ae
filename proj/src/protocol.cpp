#include "npc/protocol.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <utility>

#include "npc/error.hpp"

namespace npc::protocol {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) { return splitmix64(a ^ splitmix64(b)); }

void check_dimensions(const Schedule& sched, const ProtectionCode& code) {
  if (code.n() != sched.n() || code.m() != sched.m()) {
    throw Error(ErrorCode::DimensionMismatch,
                "code [" + std::to_string(code.n()) + "," + std::to_string(code.k()) +
                    "] does not fit schedule n=" + std::to_string(sched.n()) +
                    " m=" + std::to_string(sched.m()));
  }
}

std::vector<Packet> packets_for(const Schedule& sched, std::uint64_t r, const BitVector& codeword) {
  const std::size_t n = sched.n();
  const std::size_t k = n - sched.m();
  const std::vector<std::size_t> layout = sched.layout(r);
  const net::RoundStamp stamp = net::stamp_for_round(r, n);

  std::vector<Packet> packets(n);
  for (std::size_t c = 0; c < n; ++c) {
    Packet& p = packets[layout[c]];
    p.sender = layout[c];
    p.payload = codeword[c];
    p.stamp = stamp;
    p.kind = c < k ? net::PacketKind::Data : net::PacketKind::Encoded;
    p.sequence = c < k ? r : 0;
  }
  return packets;
}

BitVector random_message(std::size_t k, std::uint64_t seed, std::uint64_t round) {
  std::mt19937_64 rng(mix(seed, round));
  BitVector data(k);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (i % 64 == 0) word = rng();
    data.set(i, (word >> (i % 64)) & 1U);
  }
  return data;
}

}  // namespace

Schedule build_schedule(std::size_t n, std::size_t m, std::uint64_t rounds) {
  if (m < 1 || m >= n) {
    throw Error(ErrorCode::InvalidParameters,
                "need 1 <= m < n, got n=" + std::to_string(n) + " m=" + std::to_string(m));
  }
  if (rounds < 1) throw Error(ErrorCode::InvalidParameters, "rounds must be at least 1");
  return Schedule(n, m, rounds);
}

void Schedule::check_round(std::uint64_t r) const {
  if (r >= rounds_) {
    throw Error(ErrorCode::IndexOutOfRange,
                "round " + std::to_string(r) + " of " + std::to_string(rounds_));
  }
}

std::vector<std::size_t> Schedule::assignment(std::uint64_t r) const {
  check_round(r);
  std::vector<std::size_t> set(m_);
  for (std::size_t j = 0; j < m_; ++j) set[j] = static_cast<std::size_t>((r + j) % n_);
  return set;
}

bool Schedule::carries_encoded(std::uint64_t r, std::size_t connection) const {
  check_round(r);
  if (connection >= n_) {
    throw Error(ErrorCode::IndexOutOfRange, "connection " + std::to_string(connection));
  }
  const std::size_t offset = (connection + n_ - static_cast<std::size_t>(r % n_)) % n_;
  return offset < m_;
}

std::vector<std::size_t> Schedule::encoded_counts() const {
  std::vector<std::size_t> counts(n_, 0);
  // Full cycles contribute m each; only the tail needs walking.
  const std::uint64_t cycles = rounds_ / n_;
  for (auto& c : counts) c = static_cast<std::size_t>(cycles * m_);
  for (std::uint64_t r = cycles * n_; r < rounds_; ++r) {
    for (std::size_t j = 0; j < m_; ++j) ++counts[(r + j) % n_];
  }
  return counts;
}

std::vector<std::size_t> Schedule::layout(std::uint64_t r) const {
  check_round(r);
  const std::size_t k = n_ - m_;
  std::vector<std::size_t> out(n_);
  std::size_t next = 0;
  for (std::size_t conn = 0; conn < n_; ++conn) {
    const std::size_t offset = (conn + n_ - static_cast<std::size_t>(r % n_)) % n_;
    if (offset < m_) {
      out[k + offset] = conn;
    } else {
      out[next++] = conn;
    }
  }
  return out;
}

std::size_t Schedule::connection_for(std::uint64_t r, std::size_t coordinate) const {
  if (coordinate >= n_) {
    throw Error(ErrorCode::IndexOutOfRange, "coordinate " + std::to_string(coordinate));
  }
  return layout(r)[coordinate];
}

std::size_t Schedule::coordinate_for(std::uint64_t r, std::size_t connection) const {
  if (connection >= n_) {
    throw Error(ErrorCode::IndexOutOfRange, "connection " + std::to_string(connection));
  }
  const std::vector<std::size_t> l = layout(r);
  return static_cast<std::size_t>(std::find(l.begin(), l.end(), connection) - l.begin());
}

FailureScenario::FailureScenario(std::size_t n, std::vector<std::size_t> failed)
    : n_(n), failed_(std::move(failed)) {
  std::sort(failed_.begin(), failed_.end());
  if (std::adjacent_find(failed_.begin(), failed_.end()) != failed_.end()) {
    throw Error(ErrorCode::InvalidPositions, "a connection is listed twice");
  }
  if (!failed_.empty() && failed_.back() >= n_) {
    throw Error(ErrorCode::InvalidPositions,
                "connection " + std::to_string(failed_.back()) + " outside n=" + std::to_string(n_));
  }
}

bool FailureScenario::contains(std::size_t connection) const {
  return std::binary_search(failed_.begin(), failed_.end(), connection);
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::FullRecovery: return "FullRecovery";
    case Outcome::NoActionNeeded: return "NoActionNeeded";
    case Outcome::Unrecoverable: return "Unrecoverable";
  }
  return "?";
}

std::vector<Packet> encode_round(const Schedule& sched, std::uint64_t r,
                                 const ProtectionCode& code, const BitVector& data) {
  check_dimensions(sched, code);
  if (data.size() != code.k()) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(code.k()) +
                                                  " data symbols, got " +
                                                  std::to_string(data.size()));
  }
  return packets_for(sched, r, codes::encode(code, data));
}

SourceStreams::SourceStreams(std::size_t n, SymbolFn symbol)
    : symbol_(std::move(symbol)), sent_(n, 0) {}

std::vector<Packet> SourceStreams::encode_round(const Schedule& sched, std::uint64_t r,
                                                const ProtectionCode& code) {
  check_dimensions(sched, code);
  if (sent_.size() != sched.n()) {
    throw Error(ErrorCode::DimensionMismatch, "stream count differs from schedule n");
  }
  const std::vector<std::size_t> layout = sched.layout(r);
  BitVector data(code.k());
  for (std::size_t c = 0; c < code.k(); ++c) {
    data.set(c, symbol_(layout[c], sent_[layout[c]] + 1));
  }
  std::vector<Packet> packets = packets_for(sched, r, codes::encode(code, data));
  for (std::size_t c = 0; c < code.k(); ++c) {
    packets[layout[c]].sequence = ++sent_[layout[c]];
  }
  return packets;
}

std::vector<Packet> inject_failures(std::vector<Packet> packets, const FailureScenario& scenario) {
  if (scenario.n() != packets.size()) {
    throw Error(ErrorCode::DimensionMismatch, "scenario and packet counts differ");
  }
  for (std::size_t i : scenario.failed()) packets[i].payload.reset();
  return packets;
}

RecoveryReport recover(const ProtectionCode& code, const std::vector<Packet>& surviving,
                       const FailureScenario& scenario, const Schedule& sched, std::uint64_t r) {
  check_dimensions(sched, code);
  const std::size_t n = sched.n();
  if (surviving.size() != n || scenario.n() != n) {
    throw Error(ErrorCode::DimensionMismatch, "expected one packet per connection");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Packet& p = surviving[i];
    const bool encoded = sched.carries_encoded(r, i);
    if (p.sender != i || (p.kind == net::PacketKind::Encoded) != encoded) {
      throw Error(ErrorCode::InvalidParameters,
                  "packet " + std::to_string(i) + " does not match round " + std::to_string(r));
    }
    if (p.erased() != scenario.contains(i)) {
      throw Error(ErrorCode::InvalidParameters,
                  "erasure of packet " + std::to_string(i) + " disagrees with the scenario");
    }
  }

  RecoveryReport report;
  report.transmissions = n;

  const std::size_t t = scenario.t();
  std::vector<std::size_t> lost_data;
  bool encoded_survivor = false;
  for (std::size_t i = 0; i < n; ++i) {
    const bool failed = scenario.contains(i);
    if (surviving[i].kind == net::PacketKind::Data) {
      if (failed) lost_data.push_back(i);
    } else if (!failed) {
      encoded_survivor = true;
    }
  }
  if (lost_data.empty()) return report;

  if (t == 1 || !encoded_survivor) {
    report.initiator = lost_data.front();
    report.queries_sent = n - t;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (surviving[i].kind == net::PacketKind::Encoded && !scenario.contains(i)) {
        report.initiator = i;
        break;
      }
    }
    report.queries_sent = n - t - 1;
  }

  const std::vector<std::size_t> layout = sched.layout(r);
  BitVector received(n);
  std::vector<std::size_t> erased;
  for (std::size_t c = 0; c < n; ++c) {
    const Packet& p = surviving[layout[c]];
    if (p.erased()) {
      erased.push_back(c);
    } else {
      received.set(c, *p.payload);
    }
  }
  const auto plan = codes::try_plan_recovery(code, codes::ErasurePattern(n, erased));
  if (!plan) {
    report.outcome = Outcome::Unrecoverable;
    return report;
  }

  const BitVector codeword = codes::complete_codeword(*plan, received);
  for (std::size_t e = 0; e < plan->erased.size(); ++e) {
    const std::size_t c = plan->erased[e];
    if (c >= code.k()) continue;  // lost parity is not rebuilt
    report.recovered[layout[c]] = codeword[c];
    const std::size_t w = plan->sources[e].weight();
    report.xor_operations += w > 0 ? w - 1 : 0;
  }
  report.outcome = Outcome::FullRecovery;
  return report;
}

FailureSource no_failures(std::size_t n) {
  return [n](std::uint64_t) { return FailureScenario::none(n); };
}

FailureSource fixed_failures(std::size_t n, std::vector<std::size_t> failed) {
  const FailureScenario scenario(n, std::move(failed));
  return [scenario](std::uint64_t) { return scenario; };
}

FailureSource random_failures(std::size_t n, std::size_t t, std::uint64_t seed) {
  if (t > n) {
    throw Error(ErrorCode::InvalidParameters,
                "t=" + std::to_string(t) + " exceeds n=" + std::to_string(n));
  }
  return [n, t, seed](std::uint64_t round) {
    std::mt19937_64 rng(mix(seed, round));
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    // Partial Fisher-Yates; plain modulo keeps the draw portable across
    // standard libraries.
    for (std::size_t i = 0; i < t; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(t);
    return FailureScenario(n, std::move(pool));
  };
}

SimulationResult run_simulation(net::Network& net, const ProtectionCode& code,
                                const Schedule& sched, const FailureSource& failures,
                                const SimulationOptions& options) {
  check_dimensions(sched, code);
  const std::size_t n = sched.n();
  if (net.n() != n) {
    throw Error(ErrorCode::DimensionMismatch, "network has " + std::to_string(net.n()) +
                                                  " connections, schedule " + std::to_string(n));
  }
  if (options.rounds < 1) throw Error(ErrorCode::InvalidParameters, "rounds must be at least 1");
  if (options.rounds > sched.rounds()) {
    throw Error(ErrorCode::InvalidParameters, "schedule covers only " +
                                                  std::to_string(sched.rounds()) + " rounds");
  }

  const std::uint64_t seed = options.data_seed;
  SourceStreams streams(n, [seed](std::size_t source, std::uint64_t sequence) {
    return (mix(mix(seed, source), sequence) & 1U) != 0;
  });

  SimulationResult result;
  SimulationMetrics& metrics = result.metrics;
  metrics.per_connection_encoded_counts.assign(n, 0);
  result.rounds.reserve(options.rounds);

  std::uint64_t data_rounds = 0;
  Rational availability(0);

  for (std::uint64_t r = 0; r < options.rounds; ++r) {
    std::vector<Packet> sent = options.data_mode == DataMode::SourceStreams
                                   ? streams.encode_round(sched, r, code)
                                   : encode_round(sched, r, code, random_message(code.k(), seed, r));

    const FailureScenario scenario = failures(r);
    if (scenario.n() != n) {
      throw Error(ErrorCode::DimensionMismatch, "failure scenario sized for another network");
    }
    std::vector<std::size_t> downed;
    for (std::size_t i : scenario.failed()) {
      if (net.is_active(i)) {
        net.fail(i);
        downed.push_back(i);
      }
    }
    availability += net.average_capacity();

    const RecoveryReport report = recover(code, inject_failures(sent, scenario), scenario, sched, r);
    for (std::size_t i : downed) net.repair(i);

    RoundRecord row;
    row.round = r;
    row.failed = scenario.failed();
    row.outcome = report.outcome;
    row.queries = report.queries_sent;
    row.xor_operations = report.xor_operations;
    row.transmissions = report.transmissions;
    for (const Packet& p : sent) {
      if (p.kind == net::PacketKind::Data) {
        ++row.data_connections;
      } else {
        ++metrics.per_connection_encoded_counts[p.sender];
      }
    }
    for (const auto& [conn, value] : report.recovered) {
      if (sent[conn].payload != value) ++row.mismatches;
    }

    data_rounds += row.data_connections;
    metrics.total_transmissions += row.transmissions;
    metrics.total_queries += row.queries;
    metrics.total_xor_operations += row.xor_operations;
    metrics.mismatches += row.mismatches;
    if (row.outcome == Outcome::Unrecoverable) ++metrics.unrecoverable_rounds;
    result.rounds.push_back(std::move(row));
  }

  const auto rounds = static_cast<std::int64_t>(options.rounds);
  metrics.avg_capacity = Rational(static_cast<std::int64_t>(data_rounds),
                                  rounds * static_cast<std::int64_t>(n));
  metrics.recovery_rate =
      Rational(rounds - static_cast<std::int64_t>(metrics.unrecoverable_rounds), rounds);
  metrics.link_availability = availability / Rational(rounds);
  return result;
}

}  // namespace npc::protocol
