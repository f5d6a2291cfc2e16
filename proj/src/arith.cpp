#include "g5/arith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace g5::arith {

u64 isqrt_u64(u64 n) {
    if (n == 0) return 0;
    u64 s = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (s > 0 && u128(s) * s > n) s--;
    while (u128(s + 1) * (s + 1) <= n) s++;
    return s;
}

u128 isqrt_u128(u128 n) {
    if (n == 0) return 0;
    if (n < (u128(1) << 64)) return isqrt_u64(u64(n));
    // seed strictly from above (sqrt(n) < (isqrt(t)+1) 2^shift for
    // t = n >> 2 shift), so Newton descends monotonically to the floor
    int shift = 0;
    u128 t = n;
    while (t >= (u128(1) << 64)) {
        t >>= 2;
        shift++;
    }
    u128 s = (u128(isqrt_u64(u64(t))) + 1) << shift;
    for (;;) {
        u128 t2 = (s + n / s) >> 1;
        if (t2 >= s) break;
        s = t2;
    }
    // division forms: s^2 <= n iff s <= n/s; immune to wrap at the top
    while (s > 0 && s > n / s) s--;
    while (s + 1 != 0 && s + 1 <= n / (s + 1)) s++;
    return s;
}

u64 iroot_u64(u64 n, unsigned k) {
    if (k == 0) throw std::invalid_argument("iroot: k = 0");
    if (k == 1 || n <= 1) return n;
    if (k == 2) return isqrt_u64(n);
    if (k >= 64) return 1;
    u64 s = static_cast<u64>(std::pow(static_cast<double>(n), 1.0 / k));
    auto pow_le = [&](u64 base) -> bool {  // base^k <= n, overflow-safe
        u128 acc = 1;
        for (unsigned i = 0; i < k; i++) {
            acc *= base;
            if (acc > n) return false;
        }
        return true;
    };
    while (s > 1 && !pow_le(s)) s--;
    while (pow_le(s + 1)) s++;
    return s;
}

static u64 mulmod(u64 a, u64 b, u64 m) { return u64(u128(a) * b % m); }

static u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        s++;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; i++) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::optional<std::pair<u64, unsigned>> prime_power_decompose(u64 n) {
    if (n < 2) throw std::invalid_argument("prime_power_decompose: n < 2");
    // Largest exponent r with an exact r-th root comes first; its root is
    // prime iff n is a prime power.
    for (unsigned r = 63; r >= 2; r--) {
        if ((u128(1) << r) > n) continue;
        u64 s = iroot_u64(n, r);
        u128 acc = 1;
        for (unsigned i = 0; i < r; i++) acc *= s;
        if (acc == n) {
            if (is_prime_u64(s)) return std::make_pair(s, r);
            return std::nullopt;
        }
    }
    if (is_prime_u64(n)) return std::make_pair(n, 1u);
    return std::nullopt;
}

PrimePower PrimePower::make(u64 q) {
    if (q >= (u64(1) << 63)) throw std::invalid_argument("PrimePower: q >= 2^63");
    auto pr = prime_power_decompose(q);
    if (!pr) throw std::invalid_argument("PrimePower: not a prime power: " + std::to_string(q));
    PrimePower pp;
    pp.q = q;
    pp.p = pr->first;
    pp.r = pr->second;
    pp.x = u64(isqrt_u128(u128(4) * q));
    pp.d = i64(i128(pp.x) * i64(pp.x) - i128(4) * i64(q));
    pp.residue5 = unsigned(q % 5);
    return pp;
}

i64 discriminant(const PrimePower& q) { return q.d; }

BoundReport hws_bound(const PrimePower& q, unsigned genus) {
    u128 nm = u128(q.q) + 1 + u128(genus) * q.x;
    if (nm > ~u64(0)) throw std::overflow_error("hws_bound overflow");
    return BoundReport{q, genus, u64(nm)};
}

bool pgl3_order_divisible_by_5(const PrimePower& q) {
    u64 m = q.q % 5;
    u64 prod = (m * m % 5) * m % 5;                       // q^3
    u64 t = prod * ((prod + 4) % 5) % 5 * ((m * m + 4) % 5) % 5;  // q^3 (q^3-1)(q^2-1)
    return t % 5 == 0;
}

// Simple odd-only Eratosthenes. q_max <= ~2^33 keeps memory sane.
static std::vector<u64> sieve_primes(u64 limit) {
    std::vector<u64> primes;
    if (limit < 2) return primes;
    primes.push_back(2);
    u64 half = (limit - 1) / 2;  // index i <-> odd number 2i+1, i >= 1
    std::vector<u64> bits((half + 64) / 64, 0);
    auto is_set = [&](u64 i) { return (bits[i >> 6] >> (i & 63)) & 1; };
    auto set = [&](u64 i) { bits[i >> 6] |= u64(1) << (i & 63); };
    for (u64 i = 1; i <= half; i++) {
        if (is_set(i)) continue;
        u64 p = 2 * i + 1;
        primes.push_back(p);
        if (u128(p) * p <= limit) {
            for (u128 j = (u128(p) * p - 1) / 2; j <= half; j += p) set(u64(j));
        }
    }
    return primes;
}

std::vector<PrimePower> scan_discriminant(i64 d_target, u64 q_max, unsigned threads) {
    if (q_max < 2) throw std::invalid_argument("scan_discriminant: q_max < 2");
    if (q_max > (u64(1) << 33)) throw ResourceError("scan_discriminant: q_max > 2^33");
    auto primes = sieve_primes(q_max);
    if (threads == 0) threads = 1;
    threads = std::min<std::size_t>(threads, std::max<std::size_t>(1, primes.size() / 1024));

    auto scan_range = [&](std::size_t lo, std::size_t hi, std::vector<PrimePower>& out) {
        for (std::size_t i = lo; i < hi; i++) {
            u64 p = primes[i];
            unsigned r = 1;
            for (u128 q = p; q <= q_max; q *= p, r++) {
                u64 qq = u64(q);
                u64 x = u64(isqrt_u128(u128(4) * qq));
                i64 d = i64(i128(x) * i64(x) - i128(4) * i64(qq));
                if (d == d_target) {
                    PrimePower pp;
                    pp.q = qq;
                    pp.p = p;
                    pp.r = r;
                    pp.x = x;
                    pp.d = d;
                    pp.residue5 = unsigned(qq % 5);
                    out.push_back(pp);
                }
            }
        }
    };

    std::vector<PrimePower> hits;
    if (threads <= 1) {
        scan_range(0, primes.size(), hits);
    } else {
        // disjoint prime ranges, merged in range order: deterministic
        std::vector<std::vector<PrimePower>> parts(threads);
        std::vector<std::thread> pool;
        std::size_t step = (primes.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; t++) {
            std::size_t lo = std::min<std::size_t>(t * step, primes.size());
            std::size_t hi = std::min<std::size_t>(lo + step, primes.size());
            pool.emplace_back(scan_range, lo, hi, std::ref(parts[t]));
        }
        for (auto& th : pool) th.join();
        for (auto& part : parts) hits.insert(hits.end(), part.begin(), part.end());
    }
    std::sort(hits.begin(), hits.end(), [](const PrimePower& a, const PrimePower& b) { return a.q < b.q; });
    return hits;
}

}  // namespace g5::arith
