#pragma once

// Round-based protection protocol: a rotating schedule decides which m of the
// n connections carry parity symbols each round, packets are erased on failed
// links, and receivers rebuild lost data symbols from the survivors.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "npc/codes.hpp"
#include "npc/netmodel.hpp"

namespace npc::protocol {

using codes::BitVector;
using codes::ProtectionCode;
using net::Packet;
using net::Rational;

// Rotation schedule. In round r the connections (r + j) mod n, j in [0, m),
// carry encoded packets. Parity coordinate k + j travels on connection
// (r + j) mod n; the k data coordinates travel on the remaining connections in
// increasing index order.
class Schedule {
 public:
  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return m_; }
  std::uint64_t rounds() const noexcept { return rounds_; }

  // Encoded connections of round r, parity coordinate order.
  std::vector<std::size_t> assignment(std::uint64_t r) const;
  bool carries_encoded(std::uint64_t r, std::size_t connection) const;
  // How often each connection is encoded over rounds [0, rounds()).
  std::vector<std::size_t> encoded_counts() const;

  std::size_t connection_for(std::uint64_t r, std::size_t coordinate) const;
  std::size_t coordinate_for(std::uint64_t r, std::size_t connection) const;
  // connection_for(r, c) for every coordinate c.
  std::vector<std::size_t> layout(std::uint64_t r) const;

 private:
  friend Schedule build_schedule(std::size_t n, std::size_t m, std::uint64_t rounds);
  Schedule(std::size_t n, std::size_t m, std::uint64_t rounds) : n_(n), m_(m), rounds_(rounds) {}
  void check_round(std::uint64_t r) const;

  std::size_t n_;
  std::size_t m_;
  std::uint64_t rounds_;
};

// Throws InvalidParameters unless 1 <= m < n and rounds >= 1.
Schedule build_schedule(std::size_t n, std::size_t m, std::uint64_t rounds);

// Failed connections for one round; positions are known to every receiver.
class FailureScenario {
 public:
  FailureScenario(std::size_t n, std::vector<std::size_t> failed);
  static FailureScenario none(std::size_t n) { return FailureScenario(n, {}); }

  std::size_t n() const noexcept { return n_; }
  const std::vector<std::size_t>& failed() const noexcept { return failed_; }  // ascending
  std::size_t t() const noexcept { return failed_.size(); }
  bool contains(std::size_t connection) const;

 private:
  std::size_t n_;
  std::vector<std::size_t> failed_;
};

enum class Outcome { FullRecovery, NoActionNeeded, Unrecoverable };
std::string_view to_string(Outcome outcome);

struct RecoveryReport {
  // failed data connection -> rebuilt symbol
  std::map<std::size_t, bool> recovered;
  std::size_t queries_sent = 0;
  std::size_t xor_operations = 0;
  std::size_t transmissions = 0;
  Outcome outcome = Outcome::NoActionNeeded;
  // Receiver that collected the survivors, when any recovery was attempted.
  std::optional<std::size_t> initiator;
};

// One packet per connection, indexed by connection. Data connections carry
// the k symbols of `data` by codeword coordinate, encoded connections the
// parity symbols of encode(code, data).
std::vector<Packet> encode_round(const Schedule& sched, std::uint64_t r,
                                 const ProtectionCode& code, const BitVector& data);

// Per-source symbol streams: each source sends its own next symbol x_i^c
// whenever it is not scheduled for parity, so its counter c skips the rounds
// in which it carried encoded data.
class SourceStreams {
 public:
  using SymbolFn = std::function<bool(std::size_t source, std::uint64_t sequence)>;

  SourceStreams(std::size_t n, SymbolFn symbol);

  // Packets for round r; data packets carry their 1-based stream position in
  // Packet::sequence.
  std::vector<Packet> encode_round(const Schedule& sched, std::uint64_t r,
                                   const ProtectionCode& code);

 private:
  SymbolFn symbol_;
  std::vector<std::uint64_t> sent_;
};

// Copies `packets` with the payloads of failed connections erased.
std::vector<Packet> inject_failures(std::vector<Packet> packets, const FailureScenario& scenario);

// Rebuilds the data symbols lost in round r.
//
// Query accounting: with a single failure, or when no encoded-link receiver
// survives, the failed receiver asks all n - t surviving receivers. Otherwise
// a surviving encoded-link receiver collects from the other n - t - 1. XOR
// operations count, per lost data symbol, one less than the number of
// survivor symbols combined to rebuild it.
RecoveryReport recover(const ProtectionCode& code, const std::vector<Packet>& surviving,
                       const FailureScenario& scenario, const Schedule& sched, std::uint64_t r);

// Failure source for the simulator: the scenario to apply in a given round.
using FailureSource = std::function<FailureScenario(std::uint64_t round)>;

FailureSource no_failures(std::size_t n);
FailureSource fixed_failures(std::size_t n, std::vector<std::size_t> failed);
// t distinct connections per round, drawn from a generator seeded by
// (seed, round) only.
FailureSource random_failures(std::size_t n, std::size_t t, std::uint64_t seed);

enum class DataMode { PerRound, SourceStreams };

struct SimulationOptions {
  std::uint64_t rounds = 1;
  std::uint64_t data_seed = 0;
  DataMode data_mode = DataMode::PerRound;
};

struct RoundRecord {
  std::uint64_t round = 0;
  std::vector<std::size_t> failed;
  Outcome outcome = Outcome::NoActionNeeded;
  std::size_t queries = 0;
  std::size_t xor_operations = 0;
  std::size_t transmissions = 0;
  std::size_t data_connections = 0;  // connections that carried a data packet
  std::size_t mismatches = 0;        // recovered symbols differing from the sent ones
};

struct SimulationMetrics {
  // Connection-rounds that carried data, over rounds * n.
  Rational avg_capacity;
  // Rounds not ending Unrecoverable, over rounds.
  Rational recovery_rate;
  // Mean of the network's per-round average_capacity() (active links / n).
  Rational link_availability;
  std::uint64_t total_transmissions = 0;
  std::uint64_t total_queries = 0;
  std::uint64_t total_xor_operations = 0;
  std::uint64_t unrecoverable_rounds = 0;
  std::uint64_t mismatches = 0;
  std::vector<std::size_t> per_connection_encoded_counts;
};

struct SimulationResult {
  SimulationMetrics metrics;
  std::vector<RoundRecord> rounds;
};

// encode_round -> inject_failures -> recover for rounds [0, options.rounds).
// Failed links are marked inactive on `net` for the duration of their round.
SimulationResult run_simulation(net::Network& net, const ProtectionCode& code,
                                const Schedule& sched, const FailureSource& failures,
                                const SimulationOptions& options);

}  // namespace npc::protocol
