#include "normsum/arith.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace normsum {

u64 mul_mod(u64 a, u64 b, u64 m) noexcept {
  return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) noexcept {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

namespace {

// Strong-pseudoprime test to base a for odd n > 2 with n - 1 = 2^r * d.
bool composite_witness(u64 n, u64 a, u64 d, int r) {
  u64 x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < r; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

bool miller_rabin(u64 n, std::initializer_list<u64> bases) {
  u64 d = n - 1;
  int r = std::countr_zero(d);
  d >>= r;
  for (u64 a : bases) {
    if (a % n == 0) continue;
    if (composite_witness(n, a, d, r)) return false;
  }
  return true;
}

}  // namespace

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    if (n % p == 0) return n == p;
  }
  if (n < 17 * 17) return true;
  // Base sets proven deterministic on the respective ranges.
  if (n < 1373653) return miller_rabin(n, {2, 3});
  if (n < 3215031751ull) return miller_rabin(n, {2, 3, 5, 7});
  return miller_rabin(n, {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37});
}

namespace {

constexpr std::array<u64, 25> kSmallPrimes = {
    2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
    43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

// Brent's cycle-finding variant of the rho method. The parameter sequence is
// fixed, so the whole factorization is deterministic; n must be an odd
// composite with no factor <= 97.
u64 pollard_brent(u64 n) {
  for (u64 c = 1;; ++c) {
    auto step = [n, c](u64 v) {
      u64 r = mul_mod(v, v, n);
      u64 s = n - c;
      return r >= s ? r - s : r + c;
    };
    constexpr u64 kBatch = 128;
    u64 x = 0, y = 2, ys = 0, q = 1, g = 1;
    for (u64 r = 1; g == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      for (u64 k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const u64 lim = std::min(kBatch, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = step(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      g = 1;
      u64 v = ys;
      while (g == 1) {
        v = step(v);
        g = std::gcd(x > v ? x - v : v - x, n);
      }
    }
    if (g != n) return g;
  }
}

void collect_prime_factors(u64 n, std::vector<u64>& out) {
  while (n > 1) {
    if (is_prime(n)) {
      out.push_back(n);
      return;
    }
    u64 d = pollard_brent(n);
    collect_prime_factors(d, out);
    n /= d;
  }
}

}  // namespace

Factorization factorize(u64 n) {
  if (n == 0) throw std::domain_error("factorize: n must be positive");
  Factorization result;
  result.n = n;
  for (u64 p : kSmallPrimes) {
    if (p * p > n) break;
    if (n % p != 0) continue;
    u32 e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    result.factors.push_back({p, e});
  }
  if (n > 1) {
    if (is_prime(n)) {
      result.factors.push_back({n, 1});
    } else {
      std::vector<u64> rest;
      collect_prime_factors(n, rest);
      std::sort(rest.begin(), rest.end());
      for (std::size_t i = 0; i < rest.size();) {
        std::size_t j = i;
        while (j < rest.size() && rest[j] == rest[i]) ++j;
        result.factors.push_back({rest[i], static_cast<u32>(j - i)});
        i = j;
      }
    }
  }
  return result;
}

u64 mod_order(u64 g, u64 m) {
  if (m < 2) throw std::invalid_argument("mod_order: modulus must be >= 2");
  g %= m;
  if (std::gcd(g, m) != 1) {
    throw std::invalid_argument("mod_order: g must be coprime to the modulus");
  }
  u64 phi = 1;
  for (const auto& [p, e] : factorize(m).factors) {
    phi *= p - 1;
    for (u32 i = 1; i < e; ++i) phi *= p;
  }
  u64 order = phi;
  for (const auto& [p, e] : factorize(phi).factors) {
    (void)e;
    while (order % p == 0 && pow_mod(g, order / p, m) == 1) order /= p;
  }
  return order;
}

u32 popcount(u64 a) noexcept { return static_cast<u32>(std::popcount(a)); }

std::vector<u64> primes_up_to(u64 limit) {
  if (limit > (u64{1} << 26)) {
    throw std::range_error("primes_up_to: limit exceeds memory budget");
  }
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<u8> composite(limit + 1, 0);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return primes;
}

u64 isqrt(u64 n) noexcept {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && (static_cast<u128>(r) * r) > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace normsum
