#pragma once

#include <vector>

#include "normsum/ints.hpp"

namespace normsum {

/// One prime-power entry of a factorization.
struct PrimePower {
  u64 prime;
  u32 exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Exact factorization of a positive 64-bit integer. Primes are strictly
/// increasing, every exponent is >= 1, and n == 1 has an empty factor list.
struct Factorization {
  u64 n = 1;
  std::vector<PrimePower> factors;
};

u64 mul_mod(u64 a, u64 b, u64 m) noexcept;
u64 pow_mod(u64 base, u64 exp, u64 m) noexcept;

/// Deterministic primality test for the whole 64-bit range (no probabilistic
/// error). 0 and 1 are not prime.
bool is_prime(u64 n) noexcept;

/// Factors n by trial division over small primes followed by Brent's cycle
/// method with a fixed parameter sequence; every emitted factor is certified
/// prime. Throws std::domain_error for n == 0.
Factorization factorize(u64 n);

/// Least e >= 1 with g^e == 1 (mod m). Requires m >= 2 and gcd(g, m) == 1;
/// throws std::invalid_argument otherwise.
u64 mod_order(u64 g, u64 m);

/// Number of 1 digits in the binary expansion of a.
u32 popcount(u64 a) noexcept;

/// Ascending list of primes <= limit (simple sieve). Throws std::range_error
/// when limit exceeds the memory budget.
std::vector<u64> primes_up_to(u64 limit);

/// Floor of sqrt(n).
u64 isqrt(u64 n) noexcept;

}  // namespace normsum
