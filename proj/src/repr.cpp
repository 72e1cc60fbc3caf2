#include "normsum/repr.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace normsum {

namespace {

constexpr u64 kPowerSumNodeBudget = 50'000'000;

void validate_power_params(u64 base, u32 max_powers) {
  if (base < 2) {
    throw std::invalid_argument("power sums: base must be >= 2");
  }
  if (max_powers > kMaxPowerCount) {
    throw std::invalid_argument("power sums: max_powers exceeds budget of 16");
  }
}

}  // namespace

std::vector<PowerSum> enumerate_power_sums(u64 base, u32 max_powers,
                                           u64 limit) {
  validate_power_params(base, max_powers);
  std::vector<PowerSum> out;
  std::unordered_set<u64> seen;
  out.push_back({0, {}});  // the empty sum
  seen.insert(0);

  std::vector<u32> exps;
  u64 nodes = 0;
  // Non-decreasing exponent tuples; counts ascending, then lexicographic, so
  // each value keeps the first certificate in that order.
  auto rec = [&](auto&& self, u32 remaining, u32 exp, u64 power,
                 u64 sum) -> void {
    if (remaining == 0) {
      if (seen.insert(sum).second) out.push_back({sum, exps});
      return;
    }
    for (u64 e = exp, p = power; p <= limit - sum;) {
      if (++nodes > kPowerSumNodeBudget) {
        throw std::range_error("power sums: enumeration budget exceeded");
      }
      exps.push_back(static_cast<u32>(e));
      self(self, remaining - 1, static_cast<u32>(e), p, sum + p);
      exps.pop_back();
      if (p > (limit - sum) / base) break;
      p *= base;
      ++e;
    }
  };
  if (limit >= 1) {
    for (u32 count = 1; count <= max_powers; ++count) {
      rec(rec, count, 0, 1, 0);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PowerSum& a, const PowerSum& b) { return a.value < b.value; });
  return out;
}

std::optional<ReprWitness> is_representable(const ReprQuery& query) {
  if (query.n == 0) {
    throw std::domain_error("is_representable: n must be positive");
  }
  validate_power_params(query.base, query.max_powers);

  std::unordered_map<u64, bool> memo;
  auto member = [&](u64 v) {
    auto it = memo.find(v);
    if (it != memo.end()) return it->second;
    const bool b = is_member(query.spec, v);
    memo.emplace(v, b);
    return b;
  };

  // Zero powers: membership of n itself counts.
  if (member(query.n)) return ReprWitness{query.n, {}};
  if (query.n == 1) return std::nullopt;

  const u64 budget_total = query.n - 1;  // residual must stay >= 1
  std::vector<u32> exps;
  std::optional<ReprWitness> found;
  auto rec = [&](auto&& self, u32 remaining, u32 exp, u64 power,
                 u64 sum) -> bool {
    if (remaining == 0) {
      const u64 residual = query.n - sum;
      if (member(residual)) {
        found = ReprWitness{residual, exps};
        return true;
      }
      return false;
    }
    const u64 budget = budget_total - sum;
    for (u64 e = exp, p = power; p <= budget;) {
      exps.push_back(static_cast<u32>(e));
      if (self(self, remaining - 1, static_cast<u32>(e), p, sum + p)) {
        return true;
      }
      exps.pop_back();
      if (p > budget / query.base) break;
      p *= query.base;
      ++e;
    }
    return false;
  };
  for (u32 count = 1; count <= query.max_powers; ++count) {
    if (rec(rec, count, 0, 1, 0)) return found;
  }
  return std::nullopt;
}

SearchReport find_nonrepresentable(const MSetSpec& spec, u64 base,
                                   u32 max_powers, u64 lo, u64 hi) {
  if (lo < 1 || lo > hi) {
    throw std::invalid_argument("search: need 1 <= lo <= hi");
  }
  if (hi > kMaxSearchHi) {
    throw std::range_error("search: hi exceeds the memory budget");
  }
  validate_power_params(base, max_powers);

  const MembershipSieve sieve = sieve_members(spec, 1, hi);
  const std::vector<PowerSum> sums =
      enumerate_power_sums(base, max_powers, hi - 1);
  std::vector<u64> sum_values;
  sum_values.reserve(sums.size());
  for (const PowerSum& s : sums) sum_values.push_back(s.value);

  std::vector<u8> marked(hi - lo + 1, 0);
  sieve.for_each_member([&](u64 m) {
    for (u64 s : sum_values) {
      const u64 v = m + s;
      if (v > hi) break;
      if (v >= lo) marked[v - lo] = 1;
    }
  });

  SearchReport report{spec, base, max_powers, lo, hi, {}, 0};
  for (u64 n = lo; n <= hi; ++n) {
    if (marked[n - lo]) {
      ++report.representable_count;
    } else {
      report.non_representable.push_back(n);
    }
  }
  return report;
}

}  // namespace normsum
