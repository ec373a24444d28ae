#pragma once

// Systematic binary protection codes: an [n, k, d_min] code spreads k data
// symbols and m = n - k parity symbols over n disjoint connections and
// survives any d_min - 1 known-position losses.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "npc/gf2.hpp"

namespace npc::codes {

using gf2::BitMatrix;
using gf2::BitVector;

enum class DistanceStatus { Verified, Declared };

std::string_view to_string(DistanceStatus status);

// Codes up to this length fall back to the parity-check column search when the
// generator is too tall to enumerate messages.
inline constexpr std::size_t kMaxColumnSearchLength = 32;

class ProtectionCode {
 public:
  // Builds a code from a k x n generator [I_k | P]; the parity-check matrix
  // [P^T | I_m] is derived. The distance is computed exhaustively when that is
  // feasible at desk scale, otherwise `declared_distance` is recorded as
  // declared.
  static ProtectionCode certify(BitMatrix generator, std::size_t declared_distance);
  // Records `d_min` as declared without checking it.
  static ProtectionCode declare(BitMatrix generator, std::size_t d_min);
  // Computes the distance exhaustively; throws TooLarge when infeasible.
  static ProtectionCode verified(BitMatrix generator);

  std::size_t n() const noexcept { return generator_.cols(); }
  std::size_t k() const noexcept { return generator_.rows(); }
  std::size_t m() const noexcept { return n() - k(); }
  const BitMatrix& generator() const noexcept { return generator_; }
  const BitMatrix& parity_check() const noexcept { return parity_check_; }
  std::size_t d_min() const noexcept { return d_min_; }
  DistanceStatus distance_status() const noexcept { return status_; }
  bool is_verified() const noexcept { return status_ == DistanceStatus::Verified; }

  bool operator==(const ProtectionCode&) const = default;

 private:
  friend ProtectionCode single_parity_code(std::size_t n);

  ProtectionCode(BitMatrix generator, BitMatrix parity_check, std::size_t d_min,
                 DistanceStatus status);

  BitMatrix generator_;
  BitMatrix parity_check_;
  std::size_t d_min_;
  DistanceStatus status_;
};

// Exact minimum distance when enumerable (k <= 24 by messages, or
// n <= kMaxColumnSearchLength by parity-check columns); nullopt otherwise.
std::optional<std::size_t> exhaustive_distance(const BitMatrix& generator,
                                               const BitMatrix& parity_check);

// [n, n-1, 2]: generator [I_{n-1} | 1].
ProtectionCode single_parity_code(std::size_t n);

// Systematic [2^mu - 1, 2^mu - 1 - mu, 3] Hamming code, 2 <= mu <= 6. The
// message columns of the parity-check matrix are the mu-bit patterns of weight
// at least two in increasing numeric order (bit i of the pattern is row i).
ProtectionCode hamming_code(unsigned mu);

// Primitive narrow-sense binary BCH code of length n = 2^m - 1 (3 <= m <= 6)
// with design_t in {1, 2}, row-reduced to systematic form.
ProtectionCode bch_code(std::size_t n, unsigned design_t);

// Fixes the listed message symbols to zero and deletes their coordinates.
ProtectionCode shorten(const ProtectionCode& code, std::span<const std::size_t> drop);

BitVector encode(const ProtectionCode& code, const BitVector& message);

class ErasurePattern {
 public:
  // Throws InvalidPositions for out-of-range or repeated positions.
  ErasurePattern(std::size_t n, std::vector<std::size_t> erased);

  std::size_t n() const noexcept { return n_; }
  std::span<const std::size_t> erased() const noexcept { return erased_; }  // ascending
  std::size_t size() const noexcept { return erased_.size(); }
  bool contains(std::size_t position) const;

 private:
  std::size_t n_;
  std::vector<std::size_t> erased_;
};

// How each erased coordinate is rebuilt from the survivors. sources[i] marks
// the surviving coordinates whose XOR equals coordinate erased[i]; every
// entry of `checks` marks survivors whose XOR must vanish.
struct RecoveryPlan {
  std::vector<std::size_t> erased;
  std::vector<BitVector> sources;
  std::vector<BitVector> checks;
};

// Throws AmbiguousErasure when the erased columns of the parity-check matrix
// are linearly dependent.
RecoveryPlan plan_recovery(const ProtectionCode& code, const ErasurePattern& pattern);
std::optional<RecoveryPlan> try_plan_recovery(const ProtectionCode& code,
                                              const ErasurePattern& pattern);

// Fills in the erased coordinates of `received` (values at erased positions
// are ignored). Throws Inconsistent if the survivors violate a check.
BitVector complete_codeword(const RecoveryPlan& plan, const BitVector& received);

// Returns the k message symbols.
BitVector erasure_decode(const ProtectionCode& code, const BitVector& received,
                         const ErasurePattern& pattern);

inline constexpr std::uint64_t kMaxProtectionPatterns = 1'000'000;

struct ProtectionReport {
  std::size_t t = 0;
  bool recoverable = true;
  std::uint64_t patterns_checked = 0;
  std::vector<ErasurePattern> failing_patterns;
};

// Tries every t-subset of the n positions. Throws TooManyPatterns when
// C(n, t) exceeds kMaxProtectionPatterns.
ProtectionReport verify_protection(const ProtectionCode& code, std::size_t t);

// Code file: "NPC n k d_min verified|declared\n" followed by the generator in
// the gf2 matrix text format.
std::string to_code_file(const ProtectionCode& code);
ProtectionCode parse_code_file(std::string_view text);

}  // namespace npc::codes
