#pragma once

#include <gmpxx.h>

#include <array>
#include <set>
#include <vector>

#include "g5/common.hpp"

namespace g5::padic {

// 7-adic integer truncated at 7^K. Results of mixed-precision arithmetic
// carry the smaller precision. valuation() == precision means "zero to
// working precision" and is reported as such, never as an exact zero.
class Zp7 {
  public:
    Zp7() = default;
    Zp7(int precision, mpz_class residue);

    static const mpz_class& pow7(int k);  // 7^k, cached

    int precision() const { return k_; }
    const mpz_class& residue() const { return r_; }
    int valuation() const;
    bool zero_to_precision() const { return r_ == 0; }

    Zp7 add(const Zp7& o) const;
    Zp7 sub(const Zp7& o) const;
    Zp7 mul(const Zp7& o) const;
    Zp7 neg() const;
    Zp7 unit_inv() const;  // throws on valuation > 0
    Zp7 pow(u64 e) const;
    Zp7 truncate(int k) const;

    bool operator==(const Zp7&) const = default;

  private:
    int k_ = 0;
    mpz_class r_ = 0;
};

// Root of x^2 - x + 5 over Z_7 from a simple seed (2 -> alpha, 6 -> beta),
// Newton iteration with doubling precision.
Zp7 hensel_root(int seed, int K);

// u_0 = 0, u_1 = 1, v_0 = 2, v_1 = 1, w_n = w_{n-1} - 5 w_{n-2}. Exact.
struct RecurrencePair {
    std::vector<mpz_class> u, v;
};
RecurrencePair recurrence_tables(int n_max);

// Values u_r mod 7 for r = 0..5 decide which residues admit u_n = target:
// u_{r+6s} = u_r mod 7.
struct ResidueFilter {
    std::array<int, 6> u_mod_7{};
    std::set<int> admissible(int target_mod_7) const;
};
ResidueFilter residue_filter();

// g_r(s) = alpha^r (1+a)^s - beta^r (1+b)^s - (alpha-beta), a = alpha^6-1,
// b = beta^6-1. Coefficients of s^k via signed Stirling numbers:
//   c_{k,r} = sum_{m>=k} (alpha^r a^m - beta^r b^m) s1(m,k) / m!
// Each term has valuation >= m - v7(m!) >= (5m+1)/6, so the prefix
// m < M_cut determines c_k to precision K once (5 M_cut + 1)/6 >= K.
struct SeriesCoefficients {
    int r = 0;
    int K = 0;
    int k_max = 0;
    std::vector<Zp7> c;  // c[0..k_max]
    int m_cut = 0;

    // proven lower bound ceil((5k+1)/6) for v7(c_k)
    static int tail_bound(int k) { return (5 * k + 1 + 5) / 6; }
};
SeriesCoefficients series_coefficients(int r, int K, int k_max);

struct StrassmannCertificate {
    int r = 0;
    int mu = -1;  // minimal valuation over k >= 1
    int N = -1;   // largest index attaining mu: at most N zeros in Z_7
    std::vector<int> prefix_valuations;  // v(c_k), k = 0..k_max; K means >= K
    int tail_exceeds_from = 0;           // tail bound > mu for all k >= this
    bool valid = false;
    std::string conclusion;
};
StrassmannCertificate strassmann_bound(const SeriesCoefficients& coeffs);

struct CongruenceFinding {
    int r, k;
    bool holds;  // c_k = alpha^r a^k - beta^r b^k mod 7^{k+1}
};

struct UnCertificate {
    std::set<long> solutions;  // n with u_n = 1
    bool certified = false;
    std::set<int> residues_target_1;        // {1, 2}
    std::set<int> residues_target_minus_1;  // {}
    StrassmannCertificate cert_r1, cert_r2;
    long scan_n_max = 0;
    std::set<long> scan_solutions;        // exact-integer cross-check
    std::set<long> scan_solutions_minus;  // u_n = -1 scan (must be empty)
    std::vector<CongruenceFinding> congruence_findings;
};
UnCertificate certify_un_equals_one(int K, int k_max, long n_check);

struct DiophantineSolution {
    mpz_class x;
    int n;
    bool isqrt_match;  // x == floor(2 sqrt(5^n)), i.e. d(F_{5^n}) = -19
};
// All (x, n) with x^2 + 19 = 4 * 5^n; complete for all n by the u_n = +-1
// certificate, enumerated against the exact tables up to n_max.
std::vector<DiophantineSolution> solve_diophantine(int n_max);

}  // namespace g5::padic
