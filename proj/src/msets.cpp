#include "normsum/msets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "normsum/parallel.hpp"

namespace normsum {

MSetSpec MSetSpec::nk(u32 k) {
  if (k < 2 || k > 62) {
    throw std::invalid_argument("MSetSpec: Nk requires 2 <= k <= 62");
  }
  return MSetSpec(SetKind::nk, k);
}

MSetSpec MSetSpec::mp(u64 p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) {
    throw std::invalid_argument("MSetSpec: Mp requires an odd prime p");
  }
  return MSetSpec(SetKind::mp, p);
}

MSetSpec MSetSpec::parse(std::string_view text) {
  auto parse_param = [&](std::string_view digits) {
    u64 value = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
      throw std::invalid_argument("MSetSpec: malformed set selector");
    }
    return value;
  };
  if (text.starts_with("nk:")) {
    u64 k = parse_param(text.substr(3));
    if (k < 2 || k > 62) {
      throw std::invalid_argument("MSetSpec: Nk requires 2 <= k <= 62");
    }
    return nk(static_cast<u32>(k));
  }
  if (text.starts_with("mp:")) return mp(parse_param(text.substr(3)));
  throw std::invalid_argument(
      "MSetSpec: selector must be nk:<k> or mp:<p>");
}

std::string MSetSpec::name() const {
  return (kind_ == SetKind::nk ? "nk:" : "mp:") + std::to_string(parameter_);
}

u64 strip_base(const MSetSpec& spec, u64 n) {
  if (n == 0) throw std::domain_error("strip_base: n must be positive");
  const u64 b = spec.base();
  while (n % b == 0) n /= b;
  return n;
}

bool is_member(const MSetSpec& spec, u64 n) {
  if (n == 0) throw std::domain_error("is_member: n must be positive");
  n = strip_base(spec, n);
  if (n == 1) return true;
  const u64 modulus = spec.modulus();
  for (const auto& [q, e] : factorize(n).factors) {
    if (pow_mod(q, e, modulus) != 1) return false;
  }
  return true;
}

bool is_sum_of_two_squares(u64 n) {
  if (n == 0) {
    throw std::domain_error("is_sum_of_two_squares: n must be positive");
  }
  while (n % 2 == 0) n /= 2;
  for (const auto& [q, e] : factorize(n).factors) {
    if (q % 4 == 3 && e % 2 == 1) return false;
  }
  return true;
}

MembershipSieve::MembershipSieve(MSetSpec spec, u64 lo, u64 hi)
    : spec_(spec), lo_(lo), hi_(hi), words_((hi - lo) / 64 + 1, ~u64{0}) {
  const u64 tail = (hi - lo + 1) % 64;
  if (tail != 0) words_.back() &= (u64{1} << tail) - 1;
}

bool MembershipSieve::contains(u64 n) const {
  if (n < lo_ || n > hi_) {
    throw std::out_of_range("MembershipSieve: n outside sieved range");
  }
  const u64 idx = n - lo_;
  return (words_[idx >> 6] >> (idx & 63)) & 1;
}

u64 MembershipSieve::count() const noexcept {
  u64 total = 0;
  for (u64 w : words_) total += std::popcount(w);
  return total;
}

std::vector<u64> MembershipSieve::to_vector() const {
  std::vector<u64> out;
  out.reserve(count());
  for_each_member([&](u64 n) { out.push_back(n); });
  return out;
}

MembershipSieve sieve_members(const MSetSpec& spec, u64 lo, u64 hi) {
  if (lo < 1 || lo > hi) {
    throw std::invalid_argument("sieve_members: need 1 <= lo <= hi");
  }
  if (hi > kMaxSieveHi) {
    throw std::range_error("sieve_members: hi exceeds the supported bound");
  }
  const u64 span = hi - lo + 1;
  if (span > kMaxSieveSpan) {
    throw std::range_error("sieve_members: range exceeds the memory budget");
  }

  MembershipSieve sieve(spec, lo, hi);
  const u64 base = spec.base();
  const u64 modulus = spec.modulus();
  const std::vector<u64> primes = primes_up_to(isqrt(hi));

  constexpr u64 kSegment = u64{1} << 20;  // multiple of 64: chunk-local words
  parallel_chunks(span, kSegment, [&](u64 begin, u64 end) {
    const u64 seg_lo = lo + begin;
    const u64 seg_hi = lo + end - 1;
    std::vector<u64> residual(end - begin);
    std::iota(residual.begin(), residual.end(), seg_lo);

    auto clear = [&](u64 idx) {
      sieve.words_[idx >> 6] &= ~(u64{1} << (idx & 63));
    };
    auto first_multiple = [&](u64 q) { return ((seg_lo + q - 1) / q) * q; };

    // The base prime is stripped without any congruence condition.
    if (base <= seg_hi) {
      for (u64 m = first_multiple(base); m <= seg_hi; m += base) {
        u64& r = residual[m - seg_lo];
        while (r % base == 0) r /= base;
      }
    }
    for (u64 q : primes) {
      if (q == base) continue;
      for (u64 m = first_multiple(q); m <= seg_hi; m += q) {
        u64& r = residual[m - seg_lo];
        u32 e = 0;
        while (r % q == 0) {
          r /= q;
          ++e;
        }
        if (e != 0 && pow_mod(q, e, modulus) != 1) clear(m - lo);
      }
    }
    // Any leftover residual is a single prime above sqrt(hi) to the first
    // power (the base prime was already stripped).
    for (u64 i = begin; i < end; ++i) {
      const u64 r = residual[i - begin];
      if (r > 1 && r % modulus != 1) clear(i);
    }
  });
  return sieve;
}

std::vector<u64> generate_members(const MSetSpec& spec, u64 limit) {
  if (limit < 1) {
    throw std::invalid_argument("generate_members: limit must be >= 1");
  }
  if (limit > kMaxGenerateLimit) {
    throw std::range_error("generate_members: limit exceeds the budget");
  }
  const u64 base = spec.base();
  const u64 modulus = spec.modulus();

  // Allowed prime-power generators: base itself (unrestricted exponent) and
  // q^ord(q, modulus) for every other prime q, kept only when <= limit.
  std::vector<u64> gens;
  if (base <= limit) gens.push_back(base);
  if (limit >= 2) {
    for (u64 q : primes_up_to(limit)) {
      if (q == base) continue;
      u64 g = 0;
      if (q % modulus == 1) {
        g = q;
      } else {
        if (q > limit / q) continue;  // needs ord >= 2 copies; q^2 > limit
        const u64 d = mod_order(q, modulus);
        g = 1;
        bool fits = true;
        for (u64 i = 0; i < d; ++i) {
          if (g > limit / q) {
            fits = false;
            break;
          }
          g *= q;
        }
        if (!fits) continue;
      }
      gens.push_back(g);
    }
  }
  std::sort(gens.begin(), gens.end());

  std::vector<u64> out;
  auto rec = [&](auto&& self, std::size_t idx, u64 cur) -> void {
    out.push_back(cur);
    for (std::size_t j = idx; j < gens.size(); ++j) {
      if (cur > limit / gens[j]) break;
      self(self, j, cur * gens[j]);
    }
  };
  rec(rec, 0, 1);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Exact in i64 when |coords| <= kMaxNormFormBox (values stay below 2^34).
i64 norm_form_small(i64 x, i64 y, i64 z, i64 w) noexcept {
  const i64 x2 = x * x, y2 = y * y, z2 = z * z, w2 = w * w;
  return x2 * x2 + (4 * w * y + 2 * z2) * x2 +
         (-4 * z * y2 + 4 * w2 * z) * x +
         (y2 * y2 + 2 * w2 * y2 - 4 * w * z2 * y + z2 * z2 + w2 * w2);
}

}  // namespace

u64 norm_form_value(i64 x, i64 y, i64 z, i64 w) {
  auto in_range = [](i64 v) {
    return v >= -kMaxNormFormCoord && v <= kMaxNormFormCoord;
  };
  if (!in_range(x) || !in_range(y) || !in_range(z) || !in_range(w)) {
    throw std::overflow_error("norm_form_value: coordinate out of range");
  }
  const i128 X = x, Y = y, Z = z, W = w;
  const i128 X2 = X * X, Y2 = Y * Y, Z2 = Z * Z, W2 = W * W;
  const i128 value = X2 * X2 + (4 * W * Y + 2 * Z2) * X2 +
                     (-4 * Z * Y2 + 4 * W2 * Z) * X +
                     (Y2 * Y2 + 2 * W2 * Y2 - 4 * W * Z2 * Y + Z2 * Z2 +
                      W2 * W2);
  if (value < 0 || value > static_cast<i128>(~u64{0})) {
    throw std::overflow_error("norm_form_value: value outside 64-bit range");
  }
  return static_cast<u64>(value);
}

std::vector<u64> enumerate_norm_form_values(u64 limit, i64 box) {
  if (limit < 1) {
    throw std::invalid_argument("norm form enumeration: limit must be >= 1");
  }
  if (limit > kMaxSieveSpan) {
    throw std::range_error("norm form enumeration: limit exceeds budget");
  }
  if (box < 1 || box > kMaxNormFormBox) {
    throw std::range_error("norm form enumeration: box outside [1, 128]");
  }
  std::vector<u8> hit(limit + 1, 0);
  // N(-x,-y,-z,-w) = N(x,y,z,w), so x >= 0 covers every value.
  for (i64 x = 0; x <= box; ++x) {
    for (i64 y = -box; y <= box; ++y) {
      for (i64 z = -box; z <= box; ++z) {
        for (i64 w = -box; w <= box; ++w) {
          const i64 v = norm_form_small(x, y, z, w);
          if (v >= 1 && static_cast<u64>(v) <= limit) hit[v] = 1;
        }
      }
    }
  }
  std::vector<u64> values;
  for (u64 v = 1; v <= limit; ++v) {
    if (hit[v]) values.push_back(v);
  }
  return values;
}

NormFormEnumeration enumerate_norm_form_values_stable(u64 limit) {
  i64 box = 2;
  while (static_cast<u128>(box - 2) * (box - 2) * (box - 2) * (box - 2) <
         limit) {
    ++box;  // box = ceil(limit^(1/4)) + 2
  }
  std::vector<u64> values = enumerate_norm_form_values(limit, box);
  while (true) {
    if (2 * box > kMaxNormFormBox) {
      throw std::range_error(
          "norm form enumeration: box budget exhausted before stabilization");
    }
    std::vector<u64> next = enumerate_norm_form_values(limit, 2 * box);
    box *= 2;
    if (next == values) return NormFormEnumeration{std::move(next), box};
    values = std::move(next);
  }
}

}  // namespace normsum
