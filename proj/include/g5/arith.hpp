#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "g5/common.hpp"

namespace g5::arith {

// Exact floor square root. No floating point escapes unchecked: the fast
// path guess is always corrected against exact 128-bit comparisons.
u64 isqrt_u64(u64 n);
u128 isqrt_u128(u128 n);

// Exact floor k-th root, k >= 1.
u64 iroot_u64(u64 n, unsigned k);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(u64 n);

// n = p^r with p prime, or nothing. Requires n >= 2.
std::optional<std::pair<u64, unsigned>> prime_power_decompose(u64 n);

struct PrimePower {
    u64 q = 0;          // p^r
    u64 p = 0;          // prime
    unsigned r = 0;     // exponent >= 1
    u64 x = 0;          // floor(2 sqrt q)
    i64 d = 0;          // x^2 - 4q  (<= 0 always)
    unsigned residue5 = 0;

    // Throws std::invalid_argument when q is not a prime power in [2, 2^63).
    static PrimePower make(u64 q);
};

struct BoundReport {
    PrimePower q;
    unsigned genus = 5;
    u64 n_max = 0;  // q + 1 + genus * x
};

i64 discriminant(const PrimePower& q);
BoundReport hws_bound(const PrimePower& q, unsigned genus);

// All prime powers q <= q_max with discriminant d_target, ascending. Uses
// the floor definition directly; "4q - d is a perfect square" is not
// equivalent for small q (q = 25 gives d = 0, not -19).
std::vector<PrimePower> scan_discriminant(i64 d_target, u64 q_max, unsigned threads = 1);

// 5 | q^3 (q^3 - 1)(q^2 - 1)
bool pgl3_order_divisible_by_5(const PrimePower& q);

}  // namespace g5::arith
