#pragma once

// n unicast connections s_i -> r_i over pairwise link-disjoint paths, with a
// per-connection active flag and exact capacity accounting.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <boost/rational.hpp>

namespace npc::net {

using Rational = boost::rational<std::int64_t>;

struct NodeId {
  std::uint32_t value = 0;
  auto operator<=>(const NodeId&) const = default;
};

struct Edge {
  NodeId from;
  NodeId to;
};

struct Connection {
  std::size_t index = 0;
  NodeId source;
  NodeId receiver;
  // Ordered hops source -> ... -> receiver.
  std::vector<Edge> link;
};

using NodeDegreeView = std::map<NodeId, std::size_t>;

class Network {
 public:
  // Throws InvalidNetwork unless connection i sits at position i, every link
  // is a path from its source to its receiver, sources and receivers are
  // distinct per connection, and no edge is shared between two connections.
  // `adjacency` adds edges outside any connection (control-plane neighbours).
  explicit Network(std::vector<Connection> connections, std::vector<Edge> adjacency = {});

  // s_i = i, r_i = n + i, each linked by a single edge.
  static Network direct(std::size_t n);

  std::size_t n() const noexcept { return connections_.size(); }
  const std::vector<Connection>& connections() const noexcept { return connections_; }

  bool is_active(std::size_t i) const;
  void set_active(std::size_t i, bool active);
  void fail(std::size_t i) { set_active(i, false); }
  void repair(std::size_t i) { set_active(i, true); }

  // c_i: 1 while connection i is active, else 0.
  unsigned link_capacity(std::size_t i) const;
  // (sum of c_i) / n
  Rational average_capacity() const;

  // Number of distinct nodes sharing an edge with `u`. Throws UnknownNode.
  std::size_t node_degree(NodeId u) const;
  NodeDegreeView degrees() const;

 private:
  void check_index(std::size_t i) const;

  std::vector<Connection> connections_;
  std::vector<Edge> adjacency_;
  std::vector<bool> active_;
};

enum class PacketKind { Data, Encoded };

// Cycle and step within the cycle; one cycle spans n rounds.
struct RoundStamp {
  std::uint64_t cycle = 0;
  std::uint64_t step = 0;
  auto operator<=>(const RoundStamp&) const = default;
};

RoundStamp stamp_for_round(std::uint64_t round, std::size_t n);

struct Packet {
  std::size_t sender = 0;       // connection index i, i.e. source s_i
  std::optional<bool> payload;  // nullopt once erased in flight
  RoundStamp stamp;
  PacketKind kind = PacketKind::Data;
  // Per-source symbol counter for data packets (x_i^sequence); 0 for encoded.
  std::uint64_t sequence = 0;

  bool erased() const noexcept { return !payload.has_value(); }
  bool operator==(const Packet&) const = default;
};

}  // namespace npc::net
