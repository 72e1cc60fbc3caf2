#pragma once

#include <bit>
#include <string>
#include <string_view>
#include <vector>

#include "normsum/arith.hpp"

namespace normsum {

enum class SetKind { nk, mp };

/// Descriptor of a multiplicative ideal-norm set.
///
/// Nk (k >= 2) carries base prime 2 and congruence modulus 2^k; a power q^a
/// of an odd prime may divide a member only when q^a == 1 (mod 2^k), while
/// the exponent of 2 is unrestricted. Mp (p an odd prime) swaps the roles:
/// base and modulus are both p, the exponent of p is unrestricted, and any
/// other prime power q^a must satisfy q^a == 1 (mod p).
class MSetSpec {
 public:
  static MSetSpec nk(u32 k);  // throws std::invalid_argument unless 2 <= k <= 62
  static MSetSpec mp(u64 p);  // throws std::invalid_argument unless p is an odd prime
  static MSetSpec parse(std::string_view text);  // "nk:<k>" or "mp:<p>"

  SetKind kind() const noexcept { return kind_; }
  u64 parameter() const noexcept { return parameter_; }
  u64 base() const noexcept { return kind_ == SetKind::nk ? 2 : parameter_; }
  u64 modulus() const noexcept {
    return kind_ == SetKind::nk ? u64{1} << parameter_ : parameter_;
  }
  std::string name() const;

  friend bool operator==(const MSetSpec&, const MSetSpec&) = default;

 private:
  MSetSpec(SetKind kind, u64 parameter) : kind_(kind), parameter_(parameter) {}

  SetKind kind_;
  u64 parameter_;
};

inline constexpr u64 kMaxSieveSpan = u64{1} << 28;
inline constexpr u64 kMaxSieveHi = u64{1} << 44;

/// Membership flags for every integer in [lo, hi], one bit each, built by a
/// segmented residual-stripping sieve. Immutable after construction and safe
/// for shared concurrent reads.
class MembershipSieve {
 public:
  const MSetSpec& spec() const noexcept { return spec_; }
  u64 lo() const noexcept { return lo_; }
  u64 hi() const noexcept { return hi_; }

  bool contains(u64 n) const;  // throws std::out_of_range outside [lo, hi]
  u64 count() const noexcept;
  std::vector<u64> to_vector() const;

  template <typename F>
  void for_each_member(F&& f) const {
    for (u64 wi = 0; wi < words_.size(); ++wi) {
      u64 w = words_[wi];
      while (w != 0) {
        u64 bit = static_cast<u64>(std::countr_zero(w));
        f(lo_ + (wi << 6) + bit);
        w &= w - 1;
      }
    }
  }

 private:
  friend MembershipSieve sieve_members(const MSetSpec&, u64, u64);

  MembershipSieve(MSetSpec spec, u64 lo, u64 hi);

  MSetSpec spec_;
  u64 lo_;
  u64 hi_;
  std::vector<u64> words_;
};

/// Pointwise membership test via factorization. n == 1 is a member of every
/// set (norm of the unit ideal). Throws std::domain_error for n == 0.
bool is_member(const MSetSpec& spec, u64 n);

/// n with every factor of the set's base prime removed.
u64 strip_base(const MSetSpec& spec, u64 n);

/// Bulk membership over [lo, hi]. Flags agree with is_member pointwise.
MembershipSieve sieve_members(const MSetSpec& spec, u64 lo, u64 hi);

inline constexpr u64 kMaxGenerateLimit = u64{1} << 26;

/// All members <= limit, produced constructively as products of the allowed
/// prime-power generators (base^1 and q^ord(q, modulus)); sorted ascending.
std::vector<u64> generate_members(const MSetSpec& spec, u64 limit);

inline constexpr i64 kMaxNormFormBox = 128;
inline constexpr i64 kMaxNormFormCoord = i64{1} << 30;

/// The quartic norm of x + y*z8 + z*z8^2 + w*z8^3 in Z[z8], z8 = exp(2*pi*i/8):
/// x^4 + (4wy + 2z^2)x^2 + (-4zy^2 + 4w^2z)x
///     + (y^4 + 2w^2y^2 - 4wz^2y + z^4 + w^4).
/// Nonnegative for all integer inputs and zero only at the origin. Throws
/// std::overflow_error when coordinates or the value leave the 64-bit range.
u64 norm_form_value(i64 x, i64 y, i64 z, i64 w);

/// Sorted distinct values N(x,y,z,w) in [1, limit] over |x|,|y|,|z|,|w| <= box.
std::vector<u64> enumerate_norm_form_values(u64 limit, i64 box);

struct NormFormEnumeration {
  std::vector<u64> values;
  i64 box;  // box size at which the value set stabilized
};

/// Grows the box (starting at ceil(limit^(1/4)) + 2, doubling) until two
/// successive boxes yield identical value sets.
NormFormEnumeration enumerate_norm_form_values_stable(u64 limit);

/// True iff every prime == 3 (mod 4) divides n to an even power; coincides
/// with Nk membership at k = 2. Throws std::domain_error for n == 0.
bool is_sum_of_two_squares(u64 n);

}  // namespace normsum
