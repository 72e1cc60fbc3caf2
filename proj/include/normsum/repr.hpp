#pragma once

#include <optional>
#include <vector>

#include "normsum/msets.hpp"

namespace normsum {

/// Enumeration budget: at most this many powers per representation query.
inline constexpr u32 kMaxPowerCount = 16;
inline constexpr u64 kMaxSearchHi = u64{1} << 26;

/// A representability question: is n the sum of a set member and at most
/// max_powers powers of base (exponent 0 allowed, repetitions allowed)?
struct ReprQuery {
  MSetSpec spec;
  u64 n;
  u64 base;
  u32 max_powers;

  /// Query with the set's canonical base.
  static ReprQuery of(const MSetSpec& spec, u64 n, u32 max_powers) {
    return ReprQuery{spec, n, spec.base(), max_powers};
  }
};

/// Certificate: member + sum of base^e over exponents == n, with exponents
/// sorted ascending and the member passing is_member.
struct ReprWitness {
  u64 member;
  std::vector<u32> exponents;
  friend bool operator==(const ReprWitness&, const ReprWitness&) = default;
};

/// One distinct power-sum value together with the first exponent multiset
/// (fewest powers, then lexicographic) that produces it.
struct PowerSum {
  u64 value;
  std::vector<u32> exponents;
};

/// All distinct values <= limit expressible as a sum of between 0 and
/// max_powers powers of base. The empty sum contributes 0. Sorted by value.
std::vector<PowerSum> enumerate_power_sums(u64 base, u32 max_powers, u64 limit);

/// First witness in deterministic order (fewest powers, then lexicographic
/// exponents), or nullopt when n is not representable. The residual member
/// must satisfy n - sum >= 1.
std::optional<ReprWitness> is_representable(const ReprQuery& query);

/// Exhaustive classification of [lo, hi] for one query template.
struct SearchReport {
  MSetSpec spec;
  u64 base;
  u32 max_powers;
  u64 lo;
  u64 hi;
  std::vector<u64> non_representable;  // ascending, exhaustive
  u64 representable_count = 0;

  u64 non_representable_count() const noexcept {
    return non_representable.size();
  }
};

/// Marks member + power-sum composites over a shared membership sieve and
/// collects the unmarked integers of [lo, hi].
SearchReport find_nonrepresentable(const MSetSpec& spec, u64 base,
                                   u32 max_powers, u64 lo, u64 hi);

}  // namespace normsum
