#include "npc/gf2.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <utility>

#include "npc/error.hpp"

namespace npc::gf2 {

namespace {

std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

Word bit_mask(std::size_t i) { return Word{1} << (i % kWordBits); }

}  // namespace

// ---------------------------------------------------------------------------
// BitVector

BitVector::BitVector(std::size_t length) : size_(length), words_(words_for(length), 0) {
  if (length == 0) throw Error(ErrorCode::InvalidDimension, "bit vector length must be >= 1");
}

BitVector::BitVector(std::initializer_list<int> bits) : BitVector(bits.size()) {
  std::size_t i = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw Error(ErrorCode::ParseError, "bit values must be 0 or 1");
    set(i++, b == 1);
  }
}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i, true);
    } else if (bits[i] != '0') {
      throw Error(ErrorCode::ParseError, "unexpected character in bit string");
    }
  }
  return v;
}

void BitVector::check_index(std::size_t i) const {
  if (i >= size_) throw Error(ErrorCode::IndexOutOfRange, "bit index " + std::to_string(i));
}

bool BitVector::get(std::size_t i) const {
  check_index(i);
  return (words_[i / kWordBits] & bit_mask(i)) != 0;
}

void BitVector::set(std::size_t i, bool value) {
  check_index(i);
  if (value) {
    words_[i / kWordBits] |= bit_mask(i);
  } else {
    words_[i / kWordBits] &= ~bit_mask(i);
  }
}

void BitVector::flip(std::size_t i) {
  check_index(i);
  words_[i / kWordBits] ^= bit_mask(i);
}

std::size_t BitVector::weight() const noexcept {
  std::size_t w = 0;
  for (Word word : words_) w += static_cast<std::size_t>(std::popcount(word));
  return w;
}

bool BitVector::is_zero() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

bool BitVector::dot(const BitVector& other) const {
  if (other.size_ != size_) throw Error(ErrorCode::DimensionMismatch, "dot product lengths differ");
  Word acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
  return (std::popcount(acc) & 1) != 0;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.size_ != size_) throw Error(ErrorCode::DimensionMismatch, "xor of unequal lengths");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

// ---------------------------------------------------------------------------
// BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::InvalidDimension, "matrix dimensions must be >= 1");
  }
  rows_.assign(rows, BitVector(cols));
}

BitMatrix::BitMatrix(std::vector<BitVector> rows) : cols_(0), rows_(std::move(rows)) {
  if (rows_.empty()) throw Error(ErrorCode::InvalidDimension, "matrix needs at least one row");
  cols_ = rows_.front().size();
  for (const auto& r : rows_) {
    if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
  }
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::from_strings(std::initializer_list<std::string_view> rows) {
  std::vector<BitVector> parsed;
  parsed.reserve(rows.size());
  for (auto r : rows) parsed.push_back(BitVector::from_string(r));
  return BitMatrix(std::move(parsed));
}

bool BitMatrix::get(std::size_t r, std::size_t c) const { return row(r).get(c); }

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
  if (r >= rows_.size()) throw Error(ErrorCode::IndexOutOfRange, "row " + std::to_string(r));
  rows_[r].set(c, value);
}

const BitVector& BitMatrix::row(std::size_t r) const {
  if (r >= rows_.size()) throw Error(ErrorCode::IndexOutOfRange, "row " + std::to_string(r));
  return rows_[r];
}

BitVector BitMatrix::column(std::size_t c) const {
  BitVector out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out.set(r, rows_[r].get(c));
  return out;
}

void BitMatrix::add_row(std::size_t dst, std::size_t src) {
  if (dst >= rows() || src >= rows()) throw Error(ErrorCode::IndexOutOfRange, "row index");
  rows_[dst] ^= rows_[src];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a >= rows() || b >= rows()) throw Error(ErrorCode::IndexOutOfRange, "row index");
  std::swap(rows_[a], rows_[b]);
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (rows_[r].get(c)) t.rows_[c].set(r, true);
    }
  }
  return t;
}

BitMatrix BitMatrix::select_columns(std::span<const std::size_t> columns) const {
  BitMatrix out(rows(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] >= cols_) throw Error(ErrorCode::IndexOutOfRange, "column index");
    for (std::size_t r = 0; r < rows(); ++r) {
      if (rows_[r].get(columns[j])) out.rows_[r].set(j, true);
    }
  }
  return out;
}

BitMatrix BitMatrix::select_rows(std::span<const std::size_t> rows) const {
  std::vector<BitVector> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) out.push_back(row(r));
  return BitMatrix(std::move(out));
}

bool BitMatrix::is_zero() const noexcept {
  return std::all_of(rows_.begin(), rows_.end(), [](const BitVector& r) { return r.is_zero(); });
}

// ---------------------------------------------------------------------------
// Products

BitVector mat_vec_mul(const BitVector& v, const BitMatrix& m) {
  if (v.size() != m.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "vector length " + std::to_string(v.size()) +
                                                  " vs matrix rows " + std::to_string(m.rows()));
  }
  BitVector out(m.cols());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v.get(i)) out ^= m.row(i);
  }
  return out;
}

BitVector apply(const BitMatrix& a, const BitVector& x) {
  if (x.size() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "apply: length mismatch");
  BitVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out.set(i, a.row(i).dot(x));
  return out;
}

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "multiply: inner dims");
  std::vector<BitVector> rows;
  rows.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(mat_vec_mul(a.row(i), b));
  return BitMatrix(std::move(rows));
}

BitMatrix hconcat(const BitMatrix& left, const BitMatrix& right) {
  if (left.rows() != right.rows()) throw Error(ErrorCode::DimensionMismatch, "hconcat rows");
  BitMatrix out(left.rows(), left.cols() + right.cols());
  for (std::size_t r = 0; r < left.rows(); ++r) {
    for (std::size_t c = 0; c < left.cols(); ++c) out.set(r, c, left.get(r, c));
    for (std::size_t c = 0; c < right.cols(); ++c) out.set(r, left.cols() + c, right.get(r, c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Elimination

Echelon row_reduce(BitMatrix m, std::size_t pivot_limit) {
  const std::size_t limit = std::min(pivot_limit, m.cols());
  std::vector<std::size_t> pivots;
  std::size_t next_row = 0;
  for (std::size_t c = 0; c < limit && next_row < m.rows(); ++c) {
    std::size_t p = next_row;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, next_row);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r != next_row && m.get(r, c)) m.add_row(r, next_row);
    }
    pivots.push_back(c);
    ++next_row;
  }
  return Echelon{std::move(m), std::move(pivots)};
}

std::size_t rank(const BitMatrix& m) { return row_reduce(m).pivot_columns.size(); }

BitVector solve(const BitMatrix& a, const BitVector& b) {
  if (b.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "solve: rhs length");
  BitMatrix rhs(a.rows(), 1);
  for (std::size_t r = 0; r < a.rows(); ++r) rhs.set(r, 0, b.get(r));
  const Echelon e = row_reduce(hconcat(a, rhs), a.cols());
  const std::size_t r = e.pivot_columns.size();

  for (std::size_t row = r; row < a.rows(); ++row) {
    if (e.reduced.get(row, a.cols())) {
      throw Error(ErrorCode::Inconsistent, "linear system has no solution");
    }
  }
  if (r < a.cols()) {
    throw Error(ErrorCode::NoUniqueSolution,
                "rank " + std::to_string(r) + " < " + std::to_string(a.cols()) + " unknowns");
  }
  BitVector x(a.cols());
  for (std::size_t i = 0; i < r; ++i) x.set(e.pivot_columns[i], e.reduced.get(i, a.cols()));
  return x;
}

// ---------------------------------------------------------------------------
// Minimum distance

std::size_t min_distance(const BitMatrix& g) {
  const std::size_t k = g.rows();
  if (k > kMaxEnumerationRows) {
    throw Error(ErrorCode::TooLarge, std::to_string(k) + " rows exceeds enumeration bound " +
                                         std::to_string(kMaxEnumerationRows));
  }
  if (rank(g) != k) throw Error(ErrorCode::RankDeficient, "generator rows are dependent");

  BitVector codeword(g.cols());
  std::size_t best = g.cols();
  const std::uint64_t count = std::uint64_t{1} << k;
  // Successive Gray codes differ in the bit at countr_zero(i).
  for (std::uint64_t i = 1; i < count; ++i) {
    codeword ^= g.row(static_cast<std::size_t>(std::countr_zero(i)));
    best = std::min(best, codeword.weight());
  }
  return best;
}

namespace {

struct SubsetSearch {
  std::span<const Word> columns;
  std::size_t target;

  bool found(std::size_t start, std::size_t depth, Word acc) const {
    if (depth == target) return acc == 0;
    for (std::size_t c = start; c + (target - depth) <= columns.size(); ++c) {
      if (found(c + 1, depth + 1, acc ^ columns[c])) return true;
    }
    return false;
  }
};

}  // namespace

std::uint64_t binomial(std::size_t n, std::size_t r, std::uint64_t cap) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t acc = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    const std::uint64_t factor = n - r + i;
    // acc * factor / i is exact; bail out before the product can overflow
    if (acc > std::numeric_limits<std::uint64_t>::max() / factor) return cap + 1;
    acc = acc * factor / i;
    if (acc > cap) return cap + 1;
  }
  return acc;
}

std::size_t min_distance_from_parity_check(const BitMatrix& h, std::uint64_t max_subsets) {
  if (h.rows() > kWordBits) {
    throw Error(ErrorCode::TooLarge, "parity-check matrix has more than 64 rows");
  }
  if (rank(h) == h.cols()) {
    throw Error(ErrorCode::InvalidDimension, "parity-check matrix has a trivial kernel");
  }
  std::vector<Word> columns(h.cols(), 0);
  for (std::size_t c = 0; c < h.cols(); ++c) {
    for (std::size_t r = 0; r < h.rows(); ++r) {
      if (h.get(r, c)) columns[c] |= Word{1} << r;
    }
  }
  std::uint64_t examined = 0;
  for (std::size_t w = 1; w <= h.cols(); ++w) {
    examined += binomial(h.cols(), w, max_subsets);
    if (examined > max_subsets) {
      throw Error(ErrorCode::TooLarge, "column-subset search exceeds budget at weight " +
                                           std::to_string(w));
    }
    if (SubsetSearch{columns, w}.found(0, 0, 0)) return w;
  }
  // unreachable: a nontrivial kernel always has some dependent column set
  throw Error(ErrorCode::InvalidDimension, "no dependent column set found");
}

// ---------------------------------------------------------------------------
// Text format

std::string to_text(const BitMatrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  out.reserve(out.size() + m.rows() * (m.cols() + 1));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += m.row(r).to_string();
    out += '\n';
  }
  return out;
}

namespace {

std::size_t parse_decimal(std::string_view s) {
  if (s.empty() || (s.size() > 1 && s.front() == '0')) {
    throw Error(ErrorCode::ParseError, "malformed dimension '" + std::string(s) + "'");
  }
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, "malformed dimension '" + std::string(s) + "'");
  }
  return value;
}

std::string_view take_line(std::string_view& text) {
  const auto nl = text.find('\n');
  if (nl == std::string_view::npos) {
    throw Error(ErrorCode::ParseError, "missing line terminator");
  }
  std::string_view line = text.substr(0, nl);
  text.remove_prefix(nl + 1);
  return line;
}

}  // namespace

BitMatrix parse_matrix(std::string_view text) {
  const std::string_view header = take_line(text);
  const auto space = header.find(' ');
  if (space == std::string_view::npos) throw Error(ErrorCode::ParseError, "bad matrix header");
  const std::size_t rows = parse_decimal(header.substr(0, space));
  const std::size_t cols = parse_decimal(header.substr(space + 1));
  if (rows == 0 || cols == 0) throw Error(ErrorCode::ParseError, "zero matrix dimension");

  std::vector<BitVector> parsed;
  parsed.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    if (text.empty()) throw Error(ErrorCode::ParseError, "fewer rows than declared");
    const std::string_view line = take_line(text);
    if (line.size() != cols) {
      throw Error(ErrorCode::ParseError, "row " + std::to_string(r) + " has width " +
                                             std::to_string(line.size()) + ", expected " +
                                             std::to_string(cols));
    }
    parsed.push_back(BitVector::from_string(line));
  }
  if (!text.empty()) throw Error(ErrorCode::ParseError, "trailing content after matrix");
  return BitMatrix(std::move(parsed));
}

}  // namespace npc::gf2
