#pragma once

#include <vector>

#include "normsum/msets.hpp"

namespace normsum {

/// One member-count checkpoint. normalized = count * (log x)^(1 - 1/d) / x
/// with d = 2^(k-1) for Nk and p - 1 for Mp (0 at the degenerate x = 1).
struct DensityRow {
  u64 x;
  u64 count;
  double normalized;
};

/// Exact member counts at each checkpoint from one sieve pass.
/// Checkpoints must be strictly ascending and within the sieve budget.
std::vector<DensityRow> count_members(const MSetSpec& spec,
                                      const std::vector<u64>& checkpoints);

inline constexpr u64 kMaxDensityPrimeLimit = u64{1} << 26;

/// Product over odd primes q <= prime_limit of (1 - 1/q)/(1 - 1/q^d) with
/// d = ord(q, 2^k). Exact rational accumulation while it fits 128 bits, then
/// compensated log-space accumulation. Requires k >= 3.
double partial_density_product(u32 k, u64 prime_limit);

/// Per-residue-class counts modulo 2^k for integers below x.
struct ClassCensusRow {
  u64 cls;             // residue class a in [0, 2^k)
  u64 integers;        // #{1 <= n < x : n == a (mod 2^k)}
  u64 power_sums;      // distinct sums of <= max_powers powers of 2 in class
  u64 representable;   // integers in class that are Nk member + power sum
  double non_representable_fraction;
  u64 pairs;           // raw pair count: members below x times power_sums
};

/// Classifies integers below x by residue class mod 2^k: distinct power-sum
/// values, counts representable as Nk member plus at most max_powers powers
/// of 2, and the non-representable fraction per class.
std::vector<ClassCensusRow> residue_class_census(u32 k, u32 max_powers, u64 x);

}  // namespace normsum
