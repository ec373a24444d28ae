#pragma once

// Dense linear algebra over the two-element field. Rows are packed into
// 64-bit words so that row addition is a word-wise XOR.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace npc::gf2 {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

// Largest generator height min_distance() will enumerate (2^24 messages).
inline constexpr std::size_t kMaxEnumerationRows = 24;

class BitVector {
 public:
  explicit BitVector(std::size_t length);
  BitVector(std::initializer_list<int> bits);

  // Parses a string of '0'/'1' characters.
  static BitVector from_string(std::string_view bits);

  std::size_t size() const noexcept { return size_; }
  bool get(std::size_t i) const;
  bool operator[](std::size_t i) const { return get(i); }
  void set(std::size_t i, bool value);
  void flip(std::size_t i);

  std::size_t weight() const noexcept;
  bool is_zero() const noexcept;

  // Inner product: parity of the bitwise AND.
  bool dot(const BitVector& other) const;

  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector lhs, const BitVector& rhs) { return lhs ^= rhs; }
  bool operator==(const BitVector& other) const = default;

  std::span<const Word> words() const noexcept { return words_; }
  std::string to_string() const;

 private:
  void check_index(std::size_t i) const;

  std::size_t size_;
  std::vector<Word> words_;  // bits past size_ are always zero
};

class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols);
  explicit BitMatrix(std::vector<BitVector> rows);

  static BitMatrix identity(std::size_t n);
  // Each string is one row of '0'/'1' characters; all rows must agree in width.
  static BitMatrix from_strings(std::initializer_list<std::string_view> rows);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool value);
  const BitVector& row(std::size_t r) const;
  BitVector column(std::size_t c) const;

  // rows_[dst] ^= rows_[src]
  void add_row(std::size_t dst, std::size_t src);
  void swap_rows(std::size_t a, std::size_t b);

  BitMatrix transpose() const;
  BitMatrix select_columns(std::span<const std::size_t> columns) const;
  BitMatrix select_rows(std::span<const std::size_t> rows) const;
  bool is_zero() const noexcept;

  bool operator==(const BitMatrix& other) const = default;

 private:
  std::size_t cols_;
  std::vector<BitVector> rows_;
};

// Row-vector times matrix: w_j = XOR_i (v_i AND m[i][j]).
BitVector mat_vec_mul(const BitVector& v, const BitMatrix& m);
// Matrix times column vector: (a x)_i = <a_i, x>.
BitVector apply(const BitMatrix& a, const BitVector& x);
BitMatrix multiply(const BitMatrix& a, const BitMatrix& b);
BitMatrix hconcat(const BitMatrix& left, const BitMatrix& right);

// Reduced row echelon form. Pivots are chosen column by column from the left,
// taking the topmost eligible row, and only among the first `pivot_limit`
// columns. Pivot i sits in row i of `reduced`.
struct Echelon {
  BitMatrix reduced;
  std::vector<std::size_t> pivot_columns;
};
Echelon row_reduce(BitMatrix m,
                   std::size_t pivot_limit = std::numeric_limits<std::size_t>::max());

std::size_t rank(const BitMatrix& m);

// Unique x with a x = b. Throws Inconsistent when no solution exists and
// NoUniqueSolution when the columns of `a` are dependent.
BitVector solve(const BitMatrix& a, const BitVector& b);

// Minimum weight over all nonzero u g, by Gray-code enumeration of every
// message. `g` must have full row rank and at most kMaxEnumerationRows rows.
std::size_t min_distance(const BitMatrix& g);

// Minimum distance of the kernel of `h`: the fewest columns of `h` summing to
// zero, found by enumerating column subsets by increasing size. Throws
// TooLarge if more than `max_subsets` subsets would have to be examined.
std::size_t min_distance_from_parity_check(const BitMatrix& h,
                                           std::uint64_t max_subsets = 50'000'000);

// C(n, r), or cap + 1 once the value exceeds `cap`.
std::uint64_t binomial(std::size_t n, std::size_t r, std::uint64_t cap);

// Text format: "rows cols\n" followed by `rows` lines of exactly `cols`
// characters from {0,1}, each terminated by '\n'.
std::string to_text(const BitMatrix& m);
BitMatrix parse_matrix(std::string_view text);

}  // namespace npc::gf2
