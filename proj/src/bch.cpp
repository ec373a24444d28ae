// Primitive narrow-sense BCH codes over GF(2), built from minimal polynomials
// in GF(2^m) and row-reduced to systematic form.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <set>
#include <vector>

#include "npc/codes.hpp"
#include "npc/error.hpp"

namespace npc::codes {

namespace {

// Binary polynomial, bit i = coefficient of x^i. Degrees stay below 64 for
// every supported length.
using BinaryPoly = std::uint64_t;

BinaryPoly poly_multiply(BinaryPoly a, BinaryPoly b) {
  BinaryPoly out = 0;
  for (int i = 0; b >> i; ++i) {
    if ((b >> i) & 1U) out ^= a << i;
  }
  return out;
}

int poly_degree(BinaryPoly p) { return 63 - std::countl_zero(p); }

// GF(2^m) by exp/log tables over a fixed primitive polynomial.
class ExtensionField {
 public:
  explicit ExtensionField(unsigned m) : m_(m), order_((1U << m) - 1) {
    // x^3+x+1, x^4+x+1, x^5+x^2+1, x^6+x+1
    static constexpr std::array<unsigned, 7> kPrimitive = {0, 0, 0, 0b1011, 0b10011,
                                                           0b100101, 0b1000011};
    exp_.resize(2 * order_);
    log_.assign(order_ + 1, 0);
    unsigned x = 1;
    for (unsigned i = 0; i < order_; ++i) {
      exp_[i] = x;
      log_[x] = i;
      x <<= 1;
      if (x & (1U << m_)) x ^= kPrimitive[m_];
    }
    for (unsigned i = order_; i < 2 * order_; ++i) exp_[i] = exp_[i - order_];
  }

  unsigned order() const { return order_; }
  unsigned alpha_pow(unsigned e) const { return exp_[e % order_]; }

  unsigned mul(unsigned a, unsigned b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  // Product of (x + alpha^j) over the cyclotomic coset of `i`; the result has
  // coefficients in GF(2).
  BinaryPoly minimal_polynomial(unsigned i) const {
    std::set<unsigned> coset;
    for (unsigned e = i % order_; coset.insert(e).second; e = (2 * e) % order_) {
    }
    std::vector<unsigned> coeffs = {1};  // field-valued, low degree first
    for (unsigned j : coset) {
      const unsigned root = alpha_pow(j);
      std::vector<unsigned> next(coeffs.size() + 1, 0);
      for (std::size_t d = 0; d < coeffs.size(); ++d) {
        next[d + 1] ^= coeffs[d];
        next[d] ^= mul(coeffs[d], root);
      }
      coeffs = std::move(next);
    }
    BinaryPoly p = 0;
    for (std::size_t d = 0; d < coeffs.size(); ++d) {
      if (coeffs[d] > 1) {
        throw Error(ErrorCode::UnsupportedParameters, "minimal polynomial left GF(2)");
      }
      if (coeffs[d] == 1) p |= BinaryPoly{1} << d;
    }
    return p;
  }

  unsigned coset_leader(unsigned i) const {
    unsigned leader = i % order_;
    for (unsigned e = (2 * i) % order_; e != i % order_; e = (2 * e) % order_) {
      leader = std::min(leader, e);
    }
    return leader;
  }

 private:
  unsigned m_;
  unsigned order_;
  std::vector<unsigned> exp_;
  std::vector<unsigned> log_;
};

}  // namespace

ProtectionCode bch_code(std::size_t n, unsigned design_t) {
  if (n == 0 || !std::has_single_bit(n + 1)) {
    throw Error(ErrorCode::UnsupportedParameters, "BCH length must be 2^m - 1");
  }
  const unsigned m = static_cast<unsigned>(std::countr_zero(n + 1));
  if (m < 3 || m > 6 || design_t < 1 || design_t > 2) {
    throw Error(ErrorCode::UnsupportedParameters,
                "supported BCH parameters: n in {7,15,31,63}, design_t in {1,2}");
  }
  const ExtensionField field(m);

  // lcm of the minimal polynomials of alpha^1 .. alpha^{2t}: multiply one
  // polynomial per distinct cyclotomic coset.
  std::set<unsigned> leaders;
  BinaryPoly generator_poly = 1;
  for (unsigned i = 1; i <= 2 * design_t; ++i) {
    if (leaders.insert(field.coset_leader(i)).second) {
      generator_poly = poly_multiply(generator_poly, field.minimal_polynomial(i));
    }
  }
  const std::size_t r = static_cast<std::size_t>(poly_degree(generator_poly));
  const std::size_t k = n - r;

  // Rows x^i g(x); the leading k x k block is upper triangular with unit
  // diagonal, so elimination reaches [I_k | P] without column swaps.
  gf2::BitMatrix cyclic(k, n);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t d = 0; d <= r; ++d) {
      if ((generator_poly >> d) & 1U) cyclic.set(i, i + d, true);
    }
  }
  gf2::Echelon ech = gf2::row_reduce(std::move(cyclic), k);
  if (ech.pivot_columns.size() != k) {
    throw Error(ErrorCode::UnsupportedParameters, "cyclic generator is rank deficient");
  }
  return ProtectionCode::certify(std::move(ech.reduced), 2 * design_t + 1);
}

}  // namespace npc::codes
