#include "npc/netmodel.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "npc/error.hpp"

namespace npc::net {

namespace {

std::pair<NodeId, NodeId> undirected(const Edge& e) {
  return std::minmax(e.from, e.to);
}

void invalid(const std::string& why) { throw Error(ErrorCode::InvalidNetwork, why); }

}  // namespace

Network::Network(std::vector<Connection> connections, std::vector<Edge> adjacency)
    : connections_(std::move(connections)), adjacency_(std::move(adjacency)) {
  if (connections_.empty()) invalid("a network needs at least one connection");

  std::set<NodeId> sources;
  std::set<NodeId> receivers;
  std::set<std::pair<NodeId, NodeId>> used;
  for (std::size_t i = 0; i < connections_.size(); ++i) {
    const Connection& c = connections_[i];
    const std::string tag = "connection " + std::to_string(i);
    if (c.index != i) invalid(tag + " carries index " + std::to_string(c.index));
    if (c.source == c.receiver) invalid(tag + " has identical endpoints");
    if (!sources.insert(c.source).second) invalid(tag + " reuses a source");
    if (!receivers.insert(c.receiver).second) invalid(tag + " reuses a receiver");
    if (c.link.empty()) invalid(tag + " has an empty link");
    if (c.link.front().from != c.source || c.link.back().to != c.receiver) {
      invalid(tag + " does not run from its source to its receiver");
    }
    for (std::size_t h = 0; h < c.link.size(); ++h) {
      if (c.link[h].from == c.link[h].to) invalid(tag + " contains a self-loop");
      if (h > 0 && c.link[h - 1].to != c.link[h].from) invalid(tag + " is not a path");
    }
    std::set<std::pair<NodeId, NodeId>> own;
    for (const Edge& e : c.link) own.insert(undirected(e));
    for (const auto& e : own) {
      if (!used.insert(e).second) invalid(tag + " shares an edge with another connection");
    }
  }
  for (const Edge& e : adjacency_) {
    if (e.from == e.to) invalid("adjacency contains a self-loop");
  }
  active_.assign(connections_.size(), true);
}

Network Network::direct(std::size_t n) {
  std::vector<Connection> cs;
  cs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId s{static_cast<std::uint32_t>(i)};
    const NodeId r{static_cast<std::uint32_t>(n + i)};
    cs.push_back(Connection{i, s, r, {Edge{s, r}}});
  }
  return Network(std::move(cs));
}

void Network::check_index(std::size_t i) const {
  if (i >= connections_.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "connection " + std::to_string(i) + " of " +
                                                std::to_string(connections_.size()));
  }
}

bool Network::is_active(std::size_t i) const {
  check_index(i);
  return active_[i];
}

void Network::set_active(std::size_t i, bool active) {
  check_index(i);
  active_[i] = active;
}

unsigned Network::link_capacity(std::size_t i) const { return is_active(i) ? 1U : 0U; }

Rational Network::average_capacity() const {
  const auto active = std::count(active_.begin(), active_.end(), true);
  return Rational(static_cast<std::int64_t>(active), static_cast<std::int64_t>(n()));
}

NodeDegreeView Network::degrees() const {
  std::map<NodeId, std::set<NodeId>> neighbours;
  auto add = [&](const Edge& e) {
    neighbours[e.from].insert(e.to);
    neighbours[e.to].insert(e.from);
  };
  for (const Connection& c : connections_) {
    for (const Edge& e : c.link) add(e);
  }
  for (const Edge& e : adjacency_) add(e);

  NodeDegreeView view;
  for (const auto& [node, set] : neighbours) view[node] = set.size();
  return view;
}

std::size_t Network::node_degree(NodeId u) const {
  const NodeDegreeView view = degrees();
  const auto it = view.find(u);
  if (it == view.end()) throw Error(ErrorCode::UnknownNode, "node " + std::to_string(u.value));
  return it->second;
}

RoundStamp stamp_for_round(std::uint64_t round, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidParameters, "n must be positive");
  return RoundStamp{round / n, round % n};
}

}  // namespace npc::net
