#include "npc/codes.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>
#include <utility>

#include "npc/error.hpp"

namespace npc::codes {

std::string_view to_string(DistanceStatus status) {
  return status == DistanceStatus::Verified ? "verified" : "declared";
}

namespace {

// Checks [I_k | P] shape and returns [P^T | I_m].
BitMatrix parity_check_for(const BitMatrix& g) {
  const std::size_t k = g.rows();
  const std::size_t n = g.cols();
  if (k >= n) {
    throw Error(ErrorCode::InvalidDimension,
                "generator must have fewer rows than columns (k=" + std::to_string(k) +
                    ", n=" + std::to_string(n) + ")");
  }
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      if (g.get(r, c) != (r == c)) {
        throw Error(ErrorCode::InvalidParameters, "generator is not in systematic form");
      }
    }
  }
  const std::size_t m = n - k;
  BitMatrix h(m, n);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < k; ++i) h.set(j, i, g.get(i, k + j));
    h.set(j, k + j, true);
  }
  return h;
}

}  // namespace

ProtectionCode::ProtectionCode(BitMatrix generator, BitMatrix parity_check, std::size_t d_min,
                               DistanceStatus status)
    : generator_(std::move(generator)),
      parity_check_(std::move(parity_check)),
      d_min_(d_min),
      status_(status) {
  if (!gf2::multiply(generator_, parity_check_.transpose()).is_zero()) {
    throw Error(ErrorCode::InvalidParameters, "G H^T is not zero");
  }
}

std::optional<std::size_t> exhaustive_distance(const BitMatrix& generator,
                                               const BitMatrix& parity_check) {
  if (generator.rows() <= gf2::kMaxEnumerationRows) return gf2::min_distance(generator);
  if (generator.cols() <= kMaxColumnSearchLength) {
    return gf2::min_distance_from_parity_check(parity_check);
  }
  return std::nullopt;
}

ProtectionCode ProtectionCode::certify(BitMatrix generator, std::size_t declared_distance) {
  BitMatrix h = parity_check_for(generator);
  if (auto d = exhaustive_distance(generator, h)) {
    return ProtectionCode(std::move(generator), std::move(h), *d, DistanceStatus::Verified);
  }
  return ProtectionCode(std::move(generator), std::move(h), declared_distance,
                        DistanceStatus::Declared);
}

ProtectionCode ProtectionCode::declare(BitMatrix generator, std::size_t d_min) {
  BitMatrix h = parity_check_for(generator);
  return ProtectionCode(std::move(generator), std::move(h), d_min, DistanceStatus::Declared);
}

ProtectionCode ProtectionCode::verified(BitMatrix generator) {
  BitMatrix h = parity_check_for(generator);
  auto d = exhaustive_distance(generator, h);
  if (!d) throw Error(ErrorCode::TooLarge, "code too large for exhaustive distance check");
  return ProtectionCode(std::move(generator), std::move(h), *d, DistanceStatus::Verified);
}

// ---------------------------------------------------------------------------
// Constructions

ProtectionCode single_parity_code(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidLength, "single-parity code needs n >= 2");
  BitMatrix g(n - 1, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    g.set(i, i, true);
    g.set(i, n - 1, true);
  }
  // The all-ones check row makes any two columns dependent, so the column
  // search stops at weight 2 for every n and stays cheap past the usual limit.
  BitMatrix h = parity_check_for(g);
  const std::size_t d = gf2::min_distance_from_parity_check(h);
  return ProtectionCode(std::move(g), std::move(h), d, DistanceStatus::Verified);
}

ProtectionCode hamming_code(unsigned mu) {
  if (mu < 2 || mu > 6) {
    throw Error(ErrorCode::OutOfRange, "hamming_code needs 2 <= mu <= 6, got " +
                                           std::to_string(mu));
  }
  const std::size_t n = (std::size_t{1} << mu) - 1;
  const std::size_t k = n - mu;
  std::vector<unsigned> patterns;
  for (unsigned v = 1; v <= n; ++v) {
    if (std::popcount(v) >= 2) patterns.push_back(v);
  }
  BitMatrix g(k, n);
  for (std::size_t i = 0; i < k; ++i) {
    g.set(i, i, true);
    for (unsigned b = 0; b < mu; ++b) g.set(i, k + b, ((patterns[i] >> b) & 1U) != 0);
  }
  return ProtectionCode::certify(std::move(g), 3);
}

ProtectionCode shorten(const ProtectionCode& code, std::span<const std::size_t> drop) {
  std::vector<std::size_t> dropped(drop.begin(), drop.end());
  std::sort(dropped.begin(), dropped.end());
  if (std::adjacent_find(dropped.begin(), dropped.end()) != dropped.end()) {
    throw Error(ErrorCode::InvalidPositions, "repeated shortening position");
  }
  if (!dropped.empty() && dropped.back() >= code.k()) {
    throw Error(ErrorCode::InvalidPositions, "shortening position outside the message range");
  }
  if (dropped.size() >= code.k()) {
    throw Error(ErrorCode::InvalidPositions, "cannot drop every message position");
  }
  if (dropped.empty()) return code;

  std::vector<std::size_t> keep_rows;
  std::vector<std::size_t> keep_cols;
  for (std::size_t c = 0; c < code.n(); ++c) {
    if (!std::binary_search(dropped.begin(), dropped.end(), c)) {
      keep_cols.push_back(c);
      if (c < code.k()) keep_rows.push_back(c);
    }
  }
  BitMatrix g = code.generator().select_rows(keep_rows).select_columns(keep_cols);
  return ProtectionCode::certify(std::move(g), code.d_min());
}

BitVector encode(const ProtectionCode& code, const BitVector& message) {
  if (message.size() != code.k()) {
    throw Error(ErrorCode::DimensionMismatch, "message length " + std::to_string(message.size()) +
                                                  " != k = " + std::to_string(code.k()));
  }
  return gf2::mat_vec_mul(message, code.generator());
}

// ---------------------------------------------------------------------------
// Erasure decoding

ErasurePattern::ErasurePattern(std::size_t n, std::vector<std::size_t> erased)
    : n_(n), erased_(std::move(erased)) {
  std::sort(erased_.begin(), erased_.end());
  if (std::adjacent_find(erased_.begin(), erased_.end()) != erased_.end()) {
    throw Error(ErrorCode::InvalidPositions, "repeated erasure position");
  }
  if (!erased_.empty() && erased_.back() >= n_) {
    throw Error(ErrorCode::InvalidPositions, "erasure position " +
                                                 std::to_string(erased_.back()) +
                                                 " out of range for n = " + std::to_string(n_));
  }
}

bool ErasurePattern::contains(std::size_t position) const {
  return std::binary_search(erased_.begin(), erased_.end(), position);
}

std::optional<RecoveryPlan> try_plan_recovery(const ProtectionCode& code,
                                              const ErasurePattern& pattern) {
  if (pattern.n() != code.n()) {
    throw Error(ErrorCode::DimensionMismatch, "erasure pattern length differs from code length");
  }
  const BitMatrix& h = code.parity_check();
  const std::size_t n = code.n();
  RecoveryPlan plan;
  plan.erased.assign(pattern.erased().begin(), pattern.erased().end());

  if (plan.erased.empty()) {
    for (std::size_t r = 0; r < h.rows(); ++r) plan.checks.push_back(h.row(r));
    return plan;
  }
  if (plan.erased.size() > h.rows()) return std::nullopt;

  // [H_E | H with erased columns cleared]; eliminating on the H_E block leaves
  // x_e = (survivor part) . r on each pivot row and pure checks below.
  BitMatrix survivors = h;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    for (std::size_t e : plan.erased) survivors.set(r, e, false);
  }
  const std::size_t width = plan.erased.size();
  const gf2::Echelon ech =
      gf2::row_reduce(gf2::hconcat(h.select_columns(plan.erased), survivors), width);
  if (ech.pivot_columns.size() < width) return std::nullopt;

  auto tail = [&](std::size_t row) {
    BitVector v(n);
    for (std::size_t c = 0; c < n; ++c) v.set(c, ech.reduced.get(row, width + c));
    return v;
  };
  plan.sources.assign(width, BitVector(n));
  for (std::size_t i = 0; i < width; ++i) plan.sources[ech.pivot_columns[i]] = tail(i);
  for (std::size_t row = width; row < h.rows(); ++row) {
    BitVector check = tail(row);
    if (!check.is_zero()) plan.checks.push_back(std::move(check));
  }
  return plan;
}

RecoveryPlan plan_recovery(const ProtectionCode& code, const ErasurePattern& pattern) {
  auto plan = try_plan_recovery(code, pattern);
  if (!plan) {
    throw Error(ErrorCode::AmbiguousErasure,
                std::to_string(pattern.size()) + " erasures are not uniquely recoverable");
  }
  return std::move(*plan);
}

BitVector complete_codeword(const RecoveryPlan& plan, const BitVector& received) {
  BitVector word = received;
  for (std::size_t e : plan.erased) word.set(e, false);
  for (const BitVector& check : plan.checks) {
    if (check.dot(word)) throw Error(ErrorCode::Inconsistent, "surviving symbols fail a check");
  }
  // sources[] never reference erased coordinates, so order does not matter
  for (std::size_t i = 0; i < plan.erased.size(); ++i) {
    word.set(plan.erased[i], plan.sources[i].dot(word));
  }
  return word;
}

BitVector erasure_decode(const ProtectionCode& code, const BitVector& received,
                         const ErasurePattern& pattern) {
  if (received.size() != code.n()) {
    throw Error(ErrorCode::DimensionMismatch, "received word length differs from n");
  }
  const BitVector word = complete_codeword(plan_recovery(code, pattern), received);
  BitVector message(code.k());
  for (std::size_t i = 0; i < code.k(); ++i) message.set(i, word.get(i));
  return message;
}

ProtectionReport verify_protection(const ProtectionCode& code, std::size_t t) {
  if (t > code.n()) {
    throw Error(ErrorCode::TooManyPatterns, "t exceeds the code length");
  }
  if (gf2::binomial(code.n(), t, kMaxProtectionPatterns) > kMaxProtectionPatterns) {
    throw Error(ErrorCode::TooManyPatterns, "C(" + std::to_string(code.n()) + ", " +
                                                std::to_string(t) + ") exceeds " +
                                                std::to_string(kMaxProtectionPatterns));
  }
  ProtectionReport report;
  report.t = t;
  std::vector<std::size_t> combo(t);
  std::iota(combo.begin(), combo.end(), std::size_t{0});
  const std::size_t n = code.n();
  while (true) {
    ErasurePattern pattern(n, combo);
    ++report.patterns_checked;
    if (!try_plan_recovery(code, pattern)) {
      report.recoverable = false;
      report.failing_patterns.push_back(std::move(pattern));
    }
    // next combination in lexicographic order
    std::size_t i = t;
    while (i > 0 && combo[i - 1] == n - t + (i - 1)) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t j = i; j < t; ++j) combo[j] = combo[j - 1] + 1;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Code file

std::string to_code_file(const ProtectionCode& code) {
  return "NPC " + std::to_string(code.n()) + " " + std::to_string(code.k()) + " " +
         std::to_string(code.d_min()) + " " + std::string(to_string(code.distance_status())) +
         "\n" + gf2::to_text(code.generator());
}

namespace {

std::size_t header_number(std::string_view token) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size() ||
      (token.size() > 1 && token.front() == '0')) {
    throw Error(ErrorCode::ParseError, "bad number '" + std::string(token) + "' in code header");
  }
  return value;
}

}  // namespace

ProtectionCode parse_code_file(std::string_view text) {
  const auto nl = text.find('\n');
  if (nl == std::string_view::npos) throw Error(ErrorCode::ParseError, "missing code header");
  std::string_view header = text.substr(0, nl);

  std::vector<std::string_view> tokens;
  while (!header.empty()) {
    const auto sp = header.find(' ');
    tokens.push_back(header.substr(0, sp));
    if (sp == std::string_view::npos) break;
    header.remove_prefix(sp + 1);
  }
  if (tokens.size() != 5 || tokens[0] != "NPC") {
    throw Error(ErrorCode::ParseError, "code header must be 'NPC n k d_min verified|declared'");
  }
  const std::size_t n = header_number(tokens[1]);
  const std::size_t k = header_number(tokens[2]);
  const std::size_t d = header_number(tokens[3]);
  if (tokens[4] != "verified" && tokens[4] != "declared") {
    throw Error(ErrorCode::ParseError, "unknown distance flag '" + std::string(tokens[4]) + "'");
  }

  BitMatrix g = gf2::parse_matrix(text.substr(nl + 1));
  if (g.rows() != k || g.cols() != n) {
    throw Error(ErrorCode::ParseError, "header says " + std::to_string(k) + "x" +
                                           std::to_string(n) + " but generator is " +
                                           std::to_string(g.rows()) + "x" +
                                           std::to_string(g.cols()));
  }
  try {
    if (tokens[4] == "declared") return ProtectionCode::declare(std::move(g), d);
    ProtectionCode code = ProtectionCode::verified(std::move(g));
    if (code.d_min() != d) {
      throw Error(ErrorCode::ParseError, "file claims verified d_min " + std::to_string(d) +
                                             " but the code has " +
                                             std::to_string(code.d_min()));
    }
    return code;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace npc::codes
