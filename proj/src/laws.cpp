#include "normsum/laws.hpp"

#include <limits>
#include <stdexcept>

namespace normsum {

namespace {

constexpr u64 kU64Max = std::numeric_limits<u64>::max();

std::string range_detail(const std::string& head, u64 lo, u64 hi) {
  return head + " on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
}

}  // namespace

LawReport check_norm_form_doubling(u64 limit, u32 a_max) {
  if (limit < 2) {
    throw std::invalid_argument("norm-form doubling: limit must be >= 2");
  }
  if (a_max < 1) {
    throw std::invalid_argument("norm-form doubling: a_max must be >= 1");
  }
  const NormFormEnumeration stable = enumerate_norm_form_values_stable(limit);
  std::vector<u8> hit(limit + 1, 0);
  for (u64 v : stable.values) hit[v] = 1;

  LawReport report;
  report.law = "l1";
  report.detail = range_detail("quartic norm-form values stable at box " +
                                   std::to_string(stable.box) +
                                   ", doubling up to 2^" +
                                   std::to_string(a_max),
                               1, limit);
  report.lo = 1;
  report.hi = limit;
  for (u64 n = 1; n <= limit; ++n) {
    if (hit[n]) continue;
    if (2 * n > limit) break;  // no in-range multiple left to test
    ++report.instances;
    u64 m = n;
    for (u32 a = 1; a <= a_max; ++a) {
      m *= 2;
      if (m > limit) break;
      if (hit[m]) {
        report.counterexamples.push_back(n);
        break;
      }
    }
  }
  report.vacuous = report.instances == 0;
  return report;
}

LawReport check_base_scaling(const MSetSpec& spec, u64 lo, u64 hi,
                             u32 a_max) {
  if (a_max < 1) {
    throw std::invalid_argument("base scaling: a_max must be >= 1");
  }
  const MembershipSieve sieve = sieve_members(spec, lo, hi);
  const u64 base = spec.base();

  LawReport report;
  report.law = spec.kind() == SetKind::nk ? "l3" : "l5";
  report.detail = range_detail(
      spec.name() + " non-members scaled by base^a, a <= " +
          std::to_string(a_max),
      lo, hi);
  report.lo = lo;
  report.hi = hi;
  for (u64 n = lo; n <= hi; ++n) {
    if (sieve.contains(n)) continue;
    ++report.instances;
    u64 m = n;
    for (u32 a = 1; a <= a_max; ++a) {
      if (m > kU64Max / base) break;  // stay inside the 64-bit range
      m *= base;
      if (is_member(spec, m)) {
        report.counterexamples.push_back(n);
        break;
      }
    }
  }
  report.vacuous = report.instances == 0;
  return report;
}

LawReport check_base_part_invariance(const MSetSpec& spec, u64 lo, u64 hi) {
  const MembershipSieve sieve = sieve_members(spec, lo, hi);

  LawReport report;
  report.law = spec.kind() == SetKind::nk ? "l3" : "l5";
  report.detail = range_detail(
      spec.name() + " membership equals membership of the base-stripped part",
      lo, hi);
  report.lo = lo;
  report.hi = hi;
  for (u64 n = lo; n <= hi; ++n) {
    ++report.instances;
    if (sieve.contains(n) != is_member(spec, strip_base(spec, n))) {
      report.counterexamples.push_back(n);
    }
  }
  report.vacuous = report.instances == 0;
  return report;
}

LawReport check_doubling_representability(u32 k, u64 lo, u64 hi) {
  if (k < 3 || k > kMaxDoublingK) {
    throw std::invalid_argument(
        "doubling representability: need 3 <= k <= 21");
  }
  if (lo < 1 || lo > hi) {
    throw std::invalid_argument("doubling representability: bad range");
  }
  const u64 odd = (u64{1} << k) - 1;
  const u64 modulus = (u64{1} << (k - 1)) * odd * odd;
  const MSetSpec spec = MSetSpec::nk(k);

  LawReport report;
  report.law = k == 3 ? "l2" : "l4";
  report.detail = range_detail(
      "nk:" + std::to_string(k) + " non-representable multiples of " +
          std::to_string(modulus) + " (t = " + std::to_string(k) +
          ") doubled",
      lo, hi);
  report.lo = lo;
  report.hi = hi;
  u64 candidates = 0;
  for (u64 n = ((lo + modulus - 1) / modulus) * modulus; n <= hi;
       n += modulus) {
    ++candidates;
    if (is_representable(ReprQuery::of(spec, n, k)).has_value()) continue;
    ++report.instances;
    if (is_representable(ReprQuery::of(spec, 2 * n, k)).has_value()) {
      report.counterexamples.push_back(n);
    }
  }
  report.detail += "; candidates tested: " + std::to_string(candidates);
  report.vacuous = report.instances == 0;
  return report;
}

LawReport check_lemma4_subclaim(u32 k, u64 lo, u64 hi) {
  if (k < 3 || k > 31) {
    throw std::invalid_argument("doubling sub-claim: need 3 <= k <= 31");
  }
  if (lo < 1 || lo > hi || hi > (kU64Max - 1) / 2) {
    throw std::invalid_argument("doubling sub-claim: bad range");
  }
  const u64 odd = (u64{1} << k) - 1;
  const u64 modulus = odd * odd;
  const MSetSpec spec = MSetSpec::nk(k);

  LawReport report;
  report.law = "l4";
  report.detail = range_detail(
      "2n - " + std::to_string(odd) + " is neither a sum of two squares nor " +
          spec.name() + " member, for n == 0 mod " + std::to_string(modulus),
      lo, hi);
  report.lo = lo;
  report.hi = hi;
  for (u64 n = ((lo + modulus - 1) / modulus) * modulus; n <= hi;
       n += modulus) {
    ++report.instances;
    const u64 v = 2 * n - odd;
    if (is_sum_of_two_squares(v) || is_member(spec, v)) {
      report.counterexamples.push_back(n);
    }
  }
  report.vacuous = report.instances == 0;
  return report;
}

LawReport check_scaling_representability(u64 p, u64 lo, u64 hi) {
  const MSetSpec spec = MSetSpec::mp(p);
  if (p - 2 > kMaxPowerCount) {
    throw std::invalid_argument(
        "scaling representability: p - 2 exceeds the power budget");
  }
  const u32 t = static_cast<u32>(p - 2);
  const SearchReport search = find_nonrepresentable(spec, p, t, lo, hi);

  LawReport report;
  report.law = "l6";
  report.detail = range_detail(
      spec.name() + " non-representable n (t = " + std::to_string(t) +
          ") scaled by " + std::to_string(p),
      lo, hi);
  report.lo = lo;
  report.hi = hi;
  for (u64 n : search.non_representable) {
    ++report.instances;
    if (n > kU64Max / p) break;
    if (is_representable(ReprQuery{spec, p * n, p, t}).has_value()) {
      report.counterexamples.push_back(n);
    }
  }
  report.vacuous = report.instances == 0;
  return report;
}

LawReport verify_small_witnesses() {
  LawReport report;
  report.law = "l7";
  report.detail =
      "fixed witnesses: 11 (mp:3, t<=1), 9 (mp:5, t<=3), 20 (mp:7, t<=5)";
  struct Case {
    u64 n;
    u64 p;
    u32 t;
  };
  for (const Case& c : {Case{11, 3, 1}, Case{9, 5, 3}, Case{20, 7, 5}}) {
    ++report.instances;
    const MSetSpec spec = MSetSpec::mp(c.p);
    if (is_representable(ReprQuery::of(spec, c.n, c.t)).has_value()) {
      report.counterexamples.push_back(c.n);
    }
  }
  report.vacuous = false;
  return report;
}

std::vector<FamilyWitness> theorem_family(u64 p, u64 count, u64 verify_limit) {
  const MSetSpec spec = MSetSpec::mp(p);
  if (count < 1) {
    throw std::invalid_argument("theorem_family: count must be >= 1");
  }
  const bool can_verify = p - 2 <= kMaxPowerCount;
  std::vector<FamilyWitness> out;
  out.reserve(count);
  // Scan m == 1 (mod p) upward; n = m + p - 2 grows with m, so witnesses
  // arrive in ascending n order.
  for (u64 m = 1 + p; out.size() < count; m += p) {
    const Factorization f = factorize(m);
    if (f.factors.size() != 2 || f.factors[0].exponent != 1 ||
        f.factors[1].exponent != 1) {
      continue;
    }
    const u64 q1 = f.factors[0].prime;
    const u64 q2 = f.factors[1].prime;
    if (q1 % p == 1 || q2 % p == 1) continue;
    FamilyWitness w{q1, q2, m + p - 2, false, false};
    if (can_verify && w.n <= verify_limit) {
      w.checked = true;
      w.confirmed = !is_representable(
                         ReprQuery::of(spec, w.n, static_cast<u32>(p - 2)))
                         .has_value();
    }
    out.push_back(w);
  }
  return out;
}

LawReport check_theorem_family(u64 p, u64 count, u64 verify_limit) {
  const MSetSpec spec = MSetSpec::mp(p);
  const std::vector<FamilyWitness> witnesses =
      theorem_family(p, count, verify_limit);

  LawReport report;
  report.law = "thm";
  report.detail = "first " + std::to_string(count) + " family witnesses for " +
                  spec.name() + ", exhaustive check below " +
                  std::to_string(verify_limit);
  report.lo = witnesses.front().n;
  report.hi = witnesses.back().n;
  for (const FamilyWitness& w : witnesses) {
    const bool invariants_ok =
        w.n % p == p - 1 && w.q1 < w.q2 && is_prime(w.q1) && is_prime(w.q2) &&
        w.q1 % p != 1 && w.q2 % p != 1 && (w.q1 * w.q2) % p == 1 &&
        !is_member(spec, w.q1 * w.q2) && w.n == w.q1 * w.q2 + p - 2;
    if (!invariants_ok) {
      report.counterexamples.push_back(w.n);
      continue;
    }
    if (w.checked) {
      ++report.instances;
      if (!w.confirmed) report.counterexamples.push_back(w.n);
    }
  }
  report.vacuous = report.instances == 0;
  return report;
}

}  // namespace normsum
