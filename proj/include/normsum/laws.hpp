#pragma once

#include <string>
#include <vector>

#include "normsum/repr.hpp"

namespace normsum {

/// Outcome of one exhaustive law check. A law passes when counterexamples is
/// empty; vacuous flags a pass whose hypothesis set was empty on the range.
struct LawReport {
  std::string law;
  std::string detail;
  u64 lo = 0;
  u64 hi = 0;
  u64 instances = 0;
  std::vector<u64> counterexamples;
  bool vacuous = false;

  bool passed() const noexcept { return counterexamples.empty(); }
};

/// l1: an integer with no norm-form representation stays unrepresented after
/// multiplication by 2^a. Checked against the stabilized value set <= limit.
LawReport check_norm_form_doubling(u64 limit, u32 a_max);

/// l3 / l5: n outside the set implies base^a * n outside the set, checked for
/// every non-member of [lo, hi] and 1 <= a <= a_max (64-bit products only).
LawReport check_base_scaling(const MSetSpec& spec, u64 lo, u64 hi, u32 a_max);

/// Companion: membership equals membership of the base-stripped part.
LawReport check_base_part_invariance(const MSetSpec& spec, u64 lo, u64 hi);

inline constexpr u32 kMaxDoublingK = 21;

/// l2 (k = 3) / l4: for n == 0 (mod 2^(k-1)(2^k-1)^2) in [lo, hi] that is not
/// the sum of an Nk member and at most k powers of 2, verifies that 2n is not
/// either. Vacuous when no qualifying n exists on the range.
LawReport check_doubling_representability(u32 k, u64 lo, u64 hi);

/// l4 sub-claim (unconditional): for n == 0 (mod (2^k-1)^2) in [lo, hi],
/// 2n - (2^k - 1) is neither a sum of two squares nor an Nk member.
LawReport check_lemma4_subclaim(u32 k, u64 lo, u64 hi);

/// l6: for every n in [lo, hi] not the sum of an Mp member and at most p-2
/// powers of p, verifies that p*n is not either.
LawReport check_scaling_representability(u64 p, u64 lo, u64 hi);

/// l7: the three fixed small non-representability witnesses
/// (11, M3, t<=1), (9, M5, t<=3), (20, M7, t<=5).
LawReport verify_small_witnesses();

/// One instance of the product-family construction: distinct primes
/// q1 < q2, both != 1 (mod p), with q1*q2 == 1 (mod p), and n = q1*q2 + p - 2.
struct FamilyWitness {
  u64 q1;
  u64 q2;
  u64 n;
  bool checked;    // exhaustive non-representability check ran (n <= budget)
  bool confirmed;  // the check found no representation
};

inline constexpr u64 kDefaultFamilyVerifyLimit = 1'000'000;

/// The count smallest family witnesses by n. Witnesses with n inside
/// verify_limit are checked exhaustively against (Mp, base p, t = p-2).
std::vector<FamilyWitness> theorem_family(
    u64 p, u64 count, u64 verify_limit = kDefaultFamilyVerifyLimit);

/// thm: wraps theorem_family, reporting invariant violations and failed
/// non-representability checks as counterexamples.
LawReport check_theorem_family(u64 p, u64 count,
                               u64 verify_limit = kDefaultFamilyVerifyLimit);

}  // namespace normsum
