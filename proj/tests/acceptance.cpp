// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "npc/cli.hpp"
#include "npc/codes.hpp"
#include "npc/protocol.hpp"

using namespace npc;
using codes::BitVector;
using codes::ProtectionCode;
using net::Rational;
using protocol::Outcome;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;  // 0: no limit
  std::function<Verdict()> body;
};

std::string str(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

BitVector bits_of(std::uint64_t value, std::size_t k) {
  BitVector v(k);
  for (std::size_t i = 0; i < k; ++i) v.set(i, ((value >> i) & 1U) != 0);
  return v;
}

BitVector random_bits(std::size_t k, std::mt19937_64& rng) {
  BitVector v(k);
  for (std::size_t i = 0; i < k; ++i) v.set(i, (rng() & 1U) != 0);
  return v;
}

protocol::RecoveryReport one_round(const ProtectionCode& code, const protocol::Schedule& s,
                                   std::uint64_t r, const BitVector& data,
                                   std::vector<std::size_t> failed,
                                   std::vector<net::Packet>* sent = nullptr) {
  const protocol::FailureScenario scenario(code.n(), std::move(failed));
  const auto packets = protocol::encode_round(s, r, code, data);
  if (sent) *sent = packets;
  return protocol::recover(code, protocol::inject_failures(packets, scenario), scenario, s, r);
}

std::vector<std::size_t> data_links(const protocol::Schedule& s, std::uint64_t r) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.n(); ++i) {
    if (!s.carries_encoded(r, i)) out.push_back(i);
  }
  return out;
}

// Subsets of {0..n-1} of size at most t.
std::vector<std::vector<std::size_t>> subsets_up_to(std::size_t n, std::size_t t) {
  std::vector<std::vector<std::size_t>> out{{}};
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    if (cur.size() == t) return;
    for (std::size_t i = from; i < n; ++i) {
      cur.push_back(i);
      out.push_back(cur);
      grow(i + 1);
      cur.pop_back();
    }
  };
  grow(0);
  return out;
}

struct TableEntry {
  std::string label;
  std::function<ProtectionCode()> make;
  std::size_t n, k, d;
};

std::vector<TableEntry> code_table() {
  return {
      {"Hamming [7,4,3]", [] { return codes::hamming_code(3); }, 7, 4, 3},
      {"Hamming [15,11,3]", [] { return codes::hamming_code(4); }, 15, 11, 3},
      {"BCH [31,26,3]", [] { return codes::bch_code(31, 1); }, 31, 26, 3},
      {"BCH [31,21,5]", [] { return codes::bch_code(31, 2); }, 31, 21, 5},
  };
}

Verdict capacity() {
  Verdict v;
  for (std::uint64_t rounds : {1, 5, 100}) {
    net::Network five = net::Network::direct(5);
    const auto a = protocol::run_simulation(five, codes::single_parity_code(5),
                                            protocol::build_schedule(5, 1, rounds),
                                            protocol::no_failures(5), {.rounds = rounds});
    net::Network seven = net::Network::direct(7);
    const auto b = protocol::run_simulation(seven, codes::hamming_code(3),
                                            protocol::build_schedule(7, 3, rounds),
                                            protocol::no_failures(7), {.rounds = rounds});
    v.require(a.metrics.avg_capacity == Rational(4, 5),
              "n=5 m=1 gave " + str(a.metrics.avg_capacity));
    v.require(b.metrics.avg_capacity == Rational(4, 7),
              "n=7 m=3 gave " + str(b.metrics.avg_capacity));
  }
  if (v.pass) v.detail = "n=5,m=1 -> 4/5; n=7,m=3 -> 4/7";
  return v;
}

Verdict operation_counts() {
  Verdict v;
  std::mt19937_64 rng(2);
  std::size_t cases = 0;
  for (std::size_t n = 3; n <= 64; ++n) {
    const ProtectionCode code = codes::single_parity_code(n);
    const protocol::Schedule s = protocol::build_schedule(n, 1, n);
    for (std::uint64_t r = 0; r < n; ++r) {
      const BitVector data = random_bits(n - 1, rng);
      const auto links = data_links(s, r);
      // Every data link in the first round, one per round afterwards.
      const std::size_t count = r == 0 ? links.size() : 1;
      for (std::size_t i = 0; i < count; ++i) {
        const std::size_t link = links[(i + r) % links.size()];
        std::vector<net::Packet> sent;
        const auto rep = one_round(code, s, r, data, {link}, &sent);
        ++cases;
        v.require(rep.outcome == Outcome::FullRecovery && rep.recovered.at(link) == sent[link].payload,
                  "n=" + std::to_string(n) + ": data link not recovered");
        v.require(rep.xor_operations == n - 2,
                  "n=" + std::to_string(n) + ": xor_operations=" +
                      std::to_string(rep.xor_operations));
        v.require(rep.queries_sent == n - 1,
                  "n=" + std::to_string(n) + ": queries=" + std::to_string(rep.queries_sent));
      }
      const auto enc = one_round(code, s, r, data, s.assignment(r));
      ++cases;
      v.require(enc.outcome == Outcome::NoActionNeeded && enc.queries_sent == 0,
                "n=" + std::to_string(n) + ": encoded-link failure sent queries");
    }
  }
  if (v.pass) v.detail = std::to_string(cases) + " single-failure rounds, n=3..64";
  return v;
}

Verdict multi_failure_queries() {
  Verdict v;
  const ProtectionCode code = codes::hamming_code(3);
  const protocol::Schedule s = protocol::build_schedule(7, 3, 7);
  std::mt19937_64 rng(3);
  std::size_t cases = 0;
  for (std::uint64_t r = 0; r < 7; ++r) {
    const auto links = data_links(s, r);
    for (std::size_t a = 0; a < links.size(); ++a) {
      for (std::size_t b = a + 1; b < links.size(); ++b) {
        const auto rep = one_round(code, s, r, random_bits(4, rng), {links[a], links[b]});
        ++cases;
        v.require(rep.outcome == Outcome::FullRecovery, "pair not recovered");
        v.require(rep.queries_sent == 4, "queries=" + std::to_string(rep.queries_sent));
      }
    }
  }
  if (v.pass) v.detail = std::to_string(cases) + " data-link pairs over 7 rounds, queries = 4";
  return v;
}

Verdict code_table_check() {
  Verdict v;
  std::string seen;
  for (const TableEntry& e : code_table()) {
    const ProtectionCode c = e.make();
    const bool ok = c.n() == e.n && c.k() == e.k && c.d_min() == e.d && c.is_verified();
    v.require(ok, e.label + " built as [" + std::to_string(c.n()) + "," +
                      std::to_string(c.k()) + "," + std::to_string(c.d_min()) + "] " +
                      std::string(codes::to_string(c.distance_status())));
    // Recount by every exact route that applies: all messages, and column
    // subsets of H.
    std::size_t routes = 0;
    if (c.k() <= gf2::kMaxEnumerationRows) {
      ++routes;
      v.require(gf2::min_distance(c.generator()) == e.d, e.label + ": message enumeration disagrees");
    }
    if (c.n() <= codes::kMaxColumnSearchLength) {
      ++routes;
      v.require(gf2::min_distance_from_parity_check(c.parity_check()) == e.d,
                e.label + ": column search disagrees");
    }
    v.require(routes > 0, e.label + ": no exact route");
    if (!seen.empty()) seen += ", ";
    seen += e.label;
  }
  if (v.pass) v.detail = seen + " verified exhaustively";
  return v;
}

Verdict protection_bound() {
  Verdict v;
  std::vector<ProtectionCode> codes_under_test{codes::single_parity_code(5)};
  for (const TableEntry& e : code_table()) codes_under_test.push_back(e.make());
  std::uint64_t patterns = 0;
  for (const ProtectionCode& c : codes_under_test) {
    const std::string label = "[" + std::to_string(c.n()) + "," + std::to_string(c.k()) + "," +
                              std::to_string(c.d_min()) + "]";
    const auto below = codes::verify_protection(c, c.d_min() - 1);
    const auto at = codes::verify_protection(c, c.d_min());
    patterns += below.patterns_checked + at.patterns_checked;
    v.require(below.recoverable, label + ": a pattern of size d_min-1 fails");
    v.require(!at.failing_patterns.empty(), label + ": no pattern of size d_min fails");
  }
  if (v.pass) v.detail = std::to_string(patterns) + " patterns over 5 codes";
  return v;
}

Verdict round_trip() {
  Verdict v;
  std::vector<ProtectionCode> list;
  for (std::size_t n = 3; n <= 15; ++n) list.push_back(codes::single_parity_code(n));
  list.push_back(codes::hamming_code(2));
  list.push_back(codes::hamming_code(3));
  list.push_back(codes::hamming_code(4));
  list.push_back(codes::bch_code(7, 2));
  list.push_back(codes::bch_code(15, 2));
  list.push_back(codes::shorten(codes::hamming_code(4), std::vector<std::size_t>{0, 1, 2, 3}));

  std::mt19937_64 rng(6);
  std::uint64_t checked = 0;
  try {
    for (const ProtectionCode& c : list) {
      const protocol::Schedule s = protocol::build_schedule(c.n(), c.m(), c.n());
      const auto patterns = subsets_up_to(c.n(), c.d_min() - 1);
      const bool exhaustive = c.k() <= 12;
      const std::uint64_t messages = exhaustive ? (std::uint64_t{1} << c.k()) : 10'000;
      for (std::uint64_t mi = 0; mi < messages && v.pass; ++mi) {
        const BitVector data = exhaustive ? bits_of(mi, c.k()) : random_bits(c.k(), rng);
        const std::uint64_t r = mi % c.n();
        for (const auto& failed : patterns) {
          std::vector<net::Packet> sent;
          const auto rep = one_round(c, s, r, data, failed, &sent);
          ++checked;
          bool ok = rep.outcome != Outcome::Unrecoverable;
          for (std::size_t i : failed) {
            if (sent[i].kind == net::PacketKind::Data) {
              ok = ok && rep.recovered.count(i) == 1 && rep.recovered.at(i) == sent[i].payload;
            }
          }
          v.require(ok, "[" + std::to_string(c.n()) + "," + std::to_string(c.k()) +
                            "] lost a symbol");
        }
      }
    }
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  if (v.pass) v.detail = std::to_string(checked) + " (message, pattern) rounds, " +
                         std::to_string(list.size()) + " codes with n <= 15";
  return v;
}

Verdict fairness() {
  Verdict v;
  std::size_t pairs = 0;
  for (std::size_t n = 2; n <= 32; ++n) {
    for (std::size_t m = 1; m < n; ++m) {
      const protocol::Schedule s = protocol::build_schedule(n, m, n);
      std::vector<std::size_t> count(n, 0);
      for (std::uint64_t r = 0; r < n; ++r) {
        for (std::size_t i : s.assignment(r)) ++count[i];
      }
      ++pairs;
      v.require(count == std::vector<std::size_t>(n, m),
                "n=" + std::to_string(n) + " m=" + std::to_string(m));
    }
  }
  if (v.pass) v.detail = std::to_string(pairs) + " (n, m) pairs";
  return v;
}

std::string simulate_report(const std::string& config_path) {
  std::ostringstream out, err;
  const int rc = cli::run({"simulate", config_path}, out, err);
  if (rc != 0) return "exit " + std::to_string(rc) + ": " + err.str();
  return out.str();
}

Verdict invariants() {
  Verdict v;
  std::vector<ProtectionCode> all;
  for (std::size_t n = 2; n <= 64; ++n) all.push_back(codes::single_parity_code(n));
  for (unsigned mu = 2; mu <= 6; ++mu) all.push_back(codes::hamming_code(mu));
  for (std::size_t n : {7, 15, 31, 63}) {
    for (unsigned t : {1U, 2U}) all.push_back(codes::bch_code(n, t));
  }
  all.push_back(codes::shorten(codes::hamming_code(4), std::vector<std::size_t>{0, 1, 2, 3, 4}));

  for (const ProtectionCode& c : all) {
    const auto product = gf2::multiply(c.generator(), c.parity_check().transpose());
    v.require(product.is_zero(), "G H^T != 0 for n=" + std::to_string(c.n()));
  }

  std::mt19937_64 rng(8);
  for (int i = 0; i < 10'000; ++i) {
    const ProtectionCode& c = all[rng() % all.size()];
    const BitVector msg = random_bits(c.k(), rng);
    const BitVector word = codes::encode(c, msg);
    bool prefix = true;
    for (std::size_t j = 0; j < c.k(); ++j) prefix = prefix && word[j] == msg[j];
    v.require(prefix, "systematic prefix broken");
  }

  const auto dir = std::filesystem::temp_directory_path() /
                   ("npc_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto cfg = dir / "scenario.cfg";
  std::ofstream(cfg) << "family = hamming\nmu = 4\nrounds = 500\nfailure_model = random\n"
                        "t = 2\nseed = 20240601\ndata_seed = 17\n";
  const std::string first = simulate_report(cfg.string());
  const std::string second = simulate_report(cfg.string());
  std::filesystem::remove_all(dir);
  v.require(first.rfind("round,", 0) == 0, "simulate failed: " + first);
  v.require(first == second, "reports differ between runs");

  if (v.pass) {
    v.detail = std::to_string(all.size()) + " codes with G H^T = 0; 10000 systematic encodes; " +
               std::to_string(first.size()) + "-byte report reproduced";
  }
  return v;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "capacity", 1.0, capacity},
      {2, "single-failure operation counts", 1.0, operation_counts},
      {3, "multi-failure query count", 0, multi_failure_queries},
      {4, "code table", 60.0, code_table_check},
      {5, "protection bound", 60.0, protection_bound},
      {6, "end-to-end round trip", 0, round_trip},
      {7, "schedule fairness", 0, fairness},
      {8, "algebraic invariants and determinism", 0, invariants},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds > c.limit_seconds) {
      v.require(false, "exceeded the time limit");
    }
    if (!v.pass) ++failures;
    std::printf("%s %d %s: %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                v.detail.c_str(), seconds);
  }
  return failures == 0 ? 0 : 1;
}
