#include "normsum/census.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "normsum/repr.hpp"

namespace normsum {

namespace {

double normalized_ratio(u64 x, u64 count, u64 d) {
  if (x < 2) return 0.0;
  const double lx = std::log(static_cast<double>(x));
  return static_cast<double>(count) *
         std::pow(lx, 1.0 - 1.0 / static_cast<double>(d)) /
         static_cast<double>(x);
}

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long double log128(u128 v) {
  return std::log(static_cast<long double>(v));
}

void kahan_add(double& sum, double& comp, double term) {
  const double y = term - comp;
  const double t = sum + y;
  comp = (t - sum) - y;
  sum = t;
}

}  // namespace

std::vector<DensityRow> count_members(const MSetSpec& spec,
                                      const std::vector<u64>& checkpoints) {
  if (checkpoints.empty()) {
    throw std::invalid_argument("count_members: no checkpoints");
  }
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 1 ||
        (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
      throw std::invalid_argument(
          "count_members: checkpoints must be strictly ascending and >= 1");
    }
  }
  const u64 top = checkpoints.back();
  const MembershipSieve sieve = sieve_members(spec, 1, top);
  const u64 d = spec.kind() == SetKind::nk
                    ? u64{1} << (spec.parameter() - 1)
                    : spec.parameter() - 1;

  std::vector<DensityRow> rows;
  rows.reserve(checkpoints.size());
  u64 count = 0;
  std::size_t ci = 0;
  for (u64 n = 1; n <= top; ++n) {
    if (sieve.contains(n)) ++count;
    while (ci < checkpoints.size() && checkpoints[ci] == n) {
      rows.push_back({n, count, normalized_ratio(n, count, d)});
      ++ci;
    }
  }
  return rows;
}

double partial_density_product(u32 k, u64 prime_limit) {
  if (k < 3 || k > 62) {
    throw std::invalid_argument("density product: need 3 <= k <= 62");
  }
  if (prime_limit > kMaxDensityPrimeLimit) {
    throw std::range_error("density product: prime limit exceeds budget");
  }
  const u64 modulus = u64{1} << k;
  constexpr u128 kMax128 = ~u128{0};

  bool exact = true;
  u128 num = 1, den = 1;
  double log_sum = 0.0, comp = 0.0;
  for (u64 q : primes_up_to(prime_limit)) {
    if (q == 2) continue;
    const u64 d = mod_order(q, modulus);
    bool accumulated = false;
    if (exact) {
      // factor = (q - 1) q^(d-1) / (q^d - 1), kept as a reduced rational
      // while everything fits in 128 bits.
      u128 qd = 1;
      bool fits = true;
      for (u64 i = 0; i < d && fits; ++i) {
        if (qd > kMax128 / q) {
          fits = false;
        } else {
          qd *= q;
        }
      }
      if (fits) {
        u128 fnum = static_cast<u128>(q - 1) * (qd / q);
        u128 fden = qd - 1;
        const u128 g = gcd128(fnum, fden);
        fnum /= g;
        fden /= g;
        if (num <= kMax128 / fnum && den <= kMax128 / fden) {
          num *= fnum;
          den *= fden;
          const u128 g2 = gcd128(num, den);
          num /= g2;
          den /= g2;
          accumulated = true;
        }
      }
      if (!accumulated) {
        log_sum = static_cast<double>(log128(num) - log128(den));
        comp = 0.0;
        exact = false;
      }
    }
    if (!accumulated) {
      kahan_add(log_sum, comp, std::log1p(-1.0 / static_cast<double>(q)));
      kahan_add(log_sum, comp,
                -std::log1p(-std::pow(static_cast<double>(q),
                                      -static_cast<double>(d))));
    }
  }
  if (exact) {
    return static_cast<double>(static_cast<long double>(num) /
                               static_cast<long double>(den));
  }
  return std::exp(log_sum);
}

std::vector<ClassCensusRow> residue_class_census(u32 k, u32 max_powers,
                                                 u64 x) {
  if (k < 3 || k > 16) {
    throw std::invalid_argument("class census: need 3 <= k <= 16");
  }
  if (x < 2) {
    throw std::invalid_argument("class census: x must be >= 2");
  }
  if (x - 1 > kMaxSieveSpan) {
    throw std::range_error("class census: x exceeds the memory budget");
  }
  const u64 classes = u64{1} << k;
  const u64 mask = classes - 1;
  const MSetSpec spec = MSetSpec::nk(k);

  std::vector<u64> power_sums_per_class(classes, 0);
  std::vector<u64> sum_values;
  for (const PowerSum& s : enumerate_power_sums(2, max_powers, x - 1)) {
    ++power_sums_per_class[s.value & mask];
    sum_values.push_back(s.value);
  }

  const MembershipSieve sieve = sieve_members(spec, 1, x - 1);
  const u64 member_total = sieve.count();

  std::vector<u8> marked(x, 0);
  sieve.for_each_member([&](u64 m) {
    for (u64 s : sum_values) {
      const u64 v = m + s;
      if (v >= x) break;
      marked[v] = 1;
    }
  });
  std::vector<u64> representable_per_class(classes, 0);
  for (u64 n = 1; n < x; ++n) {
    if (marked[n]) ++representable_per_class[n & mask];
  }

  std::vector<ClassCensusRow> rows;
  rows.reserve(classes);
  for (u64 a = 0; a < classes; ++a) {
    u64 integers = 0;
    if (a == 0) {
      integers = (x - 1) / classes;
    } else if (a <= x - 1) {
      integers = (x - 1 - a) / classes + 1;
    }
    const u64 repr = representable_per_class[a];
    const double fraction =
        integers == 0
            ? 0.0
            : static_cast<double>(integers - repr) /
                  static_cast<double>(integers);
    rows.push_back({a, integers, power_sums_per_class[a], repr, fraction,
                    member_total * power_sums_per_class[a]});
  }
  return rows;
}

}  // namespace normsum
