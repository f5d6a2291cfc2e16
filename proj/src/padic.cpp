#include "g5/padic.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace g5::padic {

const mpz_class& Zp7::pow7(int k) {
    static std::map<int, mpz_class> cache;
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), 7, k);
    return cache.emplace(k, std::move(v)).first->second;
}

Zp7::Zp7(int precision, mpz_class residue) : k_(precision) {
    if (precision <= 0) throw std::invalid_argument("Zp7: precision must be positive");
    mpz_mod(r_.get_mpz_t(), residue.get_mpz_t(), pow7(precision).get_mpz_t());
}

int Zp7::valuation() const {
    if (r_ == 0) return k_;
    int v = 0;
    mpz_class t = r_;
    while (mpz_divisible_ui_p(t.get_mpz_t(), 7)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), 7);
        v++;
    }
    return v;
}

Zp7 Zp7::add(const Zp7& o) const { return Zp7(std::min(k_, o.k_), r_ + o.r_); }
Zp7 Zp7::sub(const Zp7& o) const { return Zp7(std::min(k_, o.k_), r_ - o.r_); }
Zp7 Zp7::mul(const Zp7& o) const { return Zp7(std::min(k_, o.k_), r_ * o.r_); }
Zp7 Zp7::neg() const { return Zp7(k_, -r_); }

Zp7 Zp7::unit_inv() const {
    if (mpz_divisible_ui_p(r_.get_mpz_t(), 7) || r_ == 0)
        throw std::domain_error("Zp7: inverse of a non-unit");
    mpz_class inv;
    if (!mpz_invert(inv.get_mpz_t(), r_.get_mpz_t(), pow7(k_).get_mpz_t()))
        throw std::domain_error("Zp7: inversion failed");
    return Zp7(k_, inv);
}

Zp7 Zp7::pow(u64 e) const {
    mpz_class r;
    mpz_powm_ui(r.get_mpz_t(), r_.get_mpz_t(), e, pow7(k_).get_mpz_t());
    return Zp7(k_, r);
}

Zp7 Zp7::truncate(int k) const {
    if (k > k_) throw std::invalid_argument("Zp7: cannot raise precision");
    return Zp7(k, r_);
}

Zp7 hensel_root(int seed, int K) {
    if (seed != 2 && seed != 6)
        throw std::invalid_argument("hensel_root: seed must be 2 or 6 (simple roots mod 7)");
    if (K < 1) throw std::invalid_argument("hensel_root: K >= 1");
    // f(x) = x^2 - x + 5; f(seed) = 0 mod 7, f'(seed) = 2 seed - 1 != 0 mod 7
    mpz_class x = seed;
    int prec = 1;
    while (prec < K) {
        prec = std::min(2 * prec, K);
        const mpz_class& mod = Zp7::pow7(prec);
        mpz_class fx = (x * x - x + 5) % mod;
        mpz_class dfx = (2 * x - 1) % mod;
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), mod.get_mpz_t());
        x = (x - fx * inv) % mod;
        if (x < 0) x += mod;
    }
    Zp7 root(K, x);
    Zp7 f = root.mul(root).sub(root).add(Zp7(K, 5));
    if (!f.zero_to_precision()) throw std::logic_error("hensel_root: f(root) != 0 mod 7^K");
    return root;
}

RecurrencePair recurrence_tables(int n_max) {
    if (n_max < 2) throw std::invalid_argument("recurrence_tables: n_max >= 2");
    RecurrencePair out;
    out.u.resize(n_max + 1);
    out.v.resize(n_max + 1);
    out.u[0] = 0;
    out.u[1] = 1;
    out.v[0] = 2;
    out.v[1] = 1;
    for (int n = 2; n <= n_max; n++) {
        out.u[n] = out.u[n - 1] - 5 * out.u[n - 2];
        out.v[n] = out.v[n - 1] - 5 * out.v[n - 2];
    }
    return out;
}

ResidueFilter residue_filter() {
    ResidueFilter f;
    auto rec = recurrence_tables(5);
    for (int r = 0; r < 6; r++) {
        mpz_class m = rec.u[r] % 7;
        if (m < 0) m += 7;
        f.u_mod_7[r] = int(m.get_si());
    }
    return f;
}

std::set<int> ResidueFilter::admissible(int target_mod_7) const {
    int t = ((target_mod_7 % 7) + 7) % 7;
    std::set<int> out;
    for (int r = 0; r < 6; r++)
        if (u_mod_7[r] == t) out.insert(r);
    return out;
}

namespace {

int v7_of_factorial(int m) {
    int v = 0;
    for (int pw = 7; pw <= m; pw *= 7) v += m / pw;
    return v;
}

// signed Stirling numbers of the first kind: x(x-1)...(x-m+1) = sum s1(m,k) x^k
std::vector<std::vector<mpz_class>> stirling_first(int m_max) {
    std::vector<std::vector<mpz_class>> s(m_max + 1, std::vector<mpz_class>(m_max + 1, 0));
    s[0][0] = 1;
    for (int m = 1; m <= m_max; m++)
        for (int k = 0; k <= m; k++) {
            s[m][k] = (k >= 1 ? s[m - 1][k - 1] : mpz_class(0)) - mpz_class(m - 1) * s[m - 1][k];
        }
    return s;
}

}  // namespace

SeriesCoefficients series_coefficients(int r, int K, int k_max) {
    if (r != 1 && r != 2) throw std::invalid_argument("series_coefficients: r must be 1 or 2");
    if (K < 2 || k_max < 2) throw std::invalid_argument("series_coefficients: K, k_max too small");
    // every m >= m_cut contributes 0 mod 7^K since v(term) >= (5m+1)/6 >= K
    int m_cut = (6 * K - 1 + 4) / 5;
    // check the divisibility bound v7(m!) <= (m-1)/6 on the computed range
    for (int m = 1; m <= m_cut; m++) {
        if (6 * v7_of_factorial(m) > m - 1)
            throw std::logic_error("series_coefficients: v7(m!) bound violated");
    }
    // requested parameters must make the tail bound exceed K past k_max
    if (SeriesCoefficients::tail_bound(k_max + 1) <= K)
        throw std::invalid_argument(
            "series_coefficients: tail bound ceil((5k+1)/6) must exceed K for k > k_max; "
            "raise k_max or lower K");

    int W = K + v7_of_factorial(m_cut) + 1;  // guard for the exact m! division
    Zp7 alpha = hensel_root(2, W), beta = hensel_root(6, W);
    Zp7 one(W, 1);
    Zp7 a = alpha.pow(6).sub(one), b = beta.pow(6).sub(one);
    if (a.valuation() != 1 || b.valuation() != 1)
        throw std::logic_error("series_coefficients: v(a) = v(b) = 1 expected");

    auto s1 = stirling_first(m_cut);
    std::vector<Zp7> apow(m_cut + 1, one), bpow(m_cut + 1, one);
    for (int m = 1; m <= m_cut; m++) {
        apow[m] = apow[m - 1].mul(a);
        bpow[m] = bpow[m - 1].mul(b);
    }
    Zp7 ar = alpha.pow(r), br = beta.pow(r);

    SeriesCoefficients out;
    out.r = r;
    out.K = K;
    out.k_max = k_max;
    out.m_cut = m_cut;
    const mpz_class& modK = Zp7::pow7(K);

    for (int k = 0; k <= k_max; k++) {
        mpz_class acc = 0;
        if (k == 0) {
            // g_r(0) = alpha^r - beta^r - (alpha - beta); s1(m, 0) = 0 for m >= 1
            Zp7 c0 = ar.sub(br).sub(alpha.sub(beta));
            acc = c0.residue() % modK;
        } else {
            mpz_class fact = 1;
            for (int m = 1; m <= m_cut; m++) {
                fact *= m;
                if (m < k) continue;
                if (s1[m][k] == 0) continue;
                mpz_class num =
                    (ar.mul(apow[m]).sub(br.mul(bpow[m]))).residue() * s1[m][k];
                // exact division by m! = 7^v * unit inside Z_7
                int v = v7_of_factorial(m);
                mpz_class den = fact;
                for (int i = 0; i < v; i++) {
                    if (!mpz_divisible_ui_p(num.get_mpz_t(), 7))
                        throw std::logic_error("series_coefficients: inexact 7 division");
                    mpz_divexact_ui(num.get_mpz_t(), num.get_mpz_t(), 7);
                    mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), 7);
                }
                mpz_class dinv;
                mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), modK.get_mpz_t());
                acc = (acc + num * dinv) % modK;
            }
        }
        out.c.emplace_back(K, acc);
    }
    if (!out.c[0].zero_to_precision())
        throw std::logic_error("series_coefficients: c_0 must vanish (g_r(0) = 0)");
    return out;
}

StrassmannCertificate strassmann_bound(const SeriesCoefficients& coeffs) {
    StrassmannCertificate cert;
    cert.r = coeffs.r;
    for (int k = 0; k <= coeffs.k_max; k++) cert.prefix_valuations.push_back(coeffs.c[k].valuation());

    int mu = coeffs.K, N = -1;
    for (int k = 1; k <= coeffs.k_max; k++) {
        int v = coeffs.c[k].valuation();
        if (v < mu) {
            mu = v;
            N = k;
        } else if (v == mu) {
            N = k;
        }
    }
    if (mu >= coeffs.K)
        throw IndeterminateError("strassmann_bound: all computed coefficients vanish to precision; "
                                 "raise K");
    cert.mu = mu;
    cert.N = N;

    // tail exclusion: ceil((5k+1)/6) > mu for k >= tail_exceeds_from, and the
    // computed prefix beyond N must sit strictly above mu as well
    int from = (6 * mu) / 5 + 1;
    while (SeriesCoefficients::tail_bound(from) <= mu) from++;
    cert.tail_exceeds_from = from;
    bool ok = from <= coeffs.k_max + 1;
    for (int k = N + 1; k <= coeffs.k_max; k++)
        if (cert.prefix_valuations[k] <= mu) ok = false;
    // coefficients between the prefix and the tail threshold would be
    // uncovered; require the computed prefix to reach the threshold
    cert.valid = ok;
    cert.conclusion = ok ? "g_" + std::to_string(cert.r) + " has at most " + std::to_string(cert.N) +
                               " zero(s) in Z_7"
                         : "inconclusive: computed prefix does not reach the tail threshold";
    return cert;
}

UnCertificate certify_un_equals_one(int K, int k_max, long n_check) {
    UnCertificate out;
    auto filt = residue_filter();
    out.residues_target_1 = filt.admissible(1);
    out.residues_target_minus_1 = filt.admissible(-1);

    if (out.residues_target_1 != std::set<int>{1, 2})
        throw std::logic_error("certify: residue filter for target 1 must be {1, 2}");
    if (!out.residues_target_minus_1.empty())
        throw std::logic_error("certify: residue filter for target -1 must be empty");

    auto c1 = series_coefficients(1, K, k_max);
    auto c2 = series_coefficients(2, K, k_max);
    out.cert_r1 = strassmann_bound(c1);
    out.cert_r2 = strassmann_bound(c2);

    // literal congruence check c_{k,r} = alpha^r a^k - beta^r b^k mod 7^{k+1};
    // recorded, not asserted: only its valuation consequences are used.
    {
        Zp7 alpha = hensel_root(2, K), beta = hensel_root(6, K);
        Zp7 one(K, 1);
        Zp7 a = alpha.pow(6).sub(one), b = beta.pow(6).sub(one);
        for (const auto* cs : {&c1, &c2}) {
            Zp7 ar = alpha.pow(cs->r), br = beta.pow(cs->r);
            for (int k = 1; k <= std::min(cs->k_max, K - 1); k++) {
                Zp7 rhs = ar.mul(a.pow(k)).sub(br.mul(b.pow(k)));
                Zp7 diff = cs->c[k].sub(rhs);
                bool holds = diff.truncate(k + 1).zero_to_precision();
                out.congruence_findings.push_back({cs->r, k, holds});
            }
        }
    }

    // exact integer scan; also supplies the exhibited zeros
    long scan_to = std::max<long>(n_check, 10);
    auto rec = recurrence_tables(int(scan_to));
    out.scan_n_max = scan_to;
    for (long n = 0; n <= scan_to; n++) {
        if (rec.u[n] == 1) out.scan_solutions.insert(n);
        if (rec.u[n] == -1) out.scan_solutions_minus.insert(n);
    }

    // r = 2: at most cert_r2.N zeros; s = 0 is one (u_2 = 1). r = 1: at most
    // cert_r1.N zeros; s = 0 (u_1 = 1) and s = 1 (u_7 = 1) are two.
    bool ok = out.cert_r2.valid && out.cert_r2.N == 1 && rec.u[2] == 1;
    ok = ok && out.cert_r1.valid && out.cert_r1.N == 2 && rec.u[1] == 1 && rec.u[7] == 1;
    if (!ok) return out;  // explicit non-certified result, solutions left empty
    out.solutions = {1, 2, 7};
    out.certified = true;
    if (out.scan_solutions != out.solutions)
        throw std::logic_error("certify_un_equals_one: scan disagrees with certificate");
    if (!out.scan_solutions_minus.empty())
        throw std::logic_error("certify_un_equals_one: scan found u_n = -1");
    return out;
}

std::vector<DiophantineSolution> solve_diophantine(int n_max) {
    if (n_max < 7) throw std::invalid_argument("solve_diophantine: n_max >= 7");
    auto cert = certify_un_equals_one(10, 12, n_max);
    if (!cert.certified) throw IndeterminateError("solve_diophantine: u_n certificate did not close");
    auto rec = recurrence_tables(n_max);
    std::vector<DiophantineSolution> out;
    // |u_n| = 1 <=> n in {1, 2, 7}: certificate covers u_n = 1, the residue
    // filter rules out u_n = -1 entirely; then x = |v_n| by
    // v_n^2 + 19 u_n^2 = 4 * 5^n.
    for (long n : cert.solutions) {
        DiophantineSolution s;
        s.n = int(n);
        s.x = abs(rec.v[n]);
        mpz_class pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), 5, n);
        if (s.x * s.x + 19 != 4 * pw)
            throw std::logic_error("solve_diophantine: substitution check failed");
        mpz_class root;
        mpz_class target = 4 * pw;
        mpz_sqrt(root.get_mpz_t(), target.get_mpz_t());
        s.isqrt_match = (s.x == root);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(),
              [](const DiophantineSolution& a, const DiophantineSolution& b) { return a.n < b.n; });
    return out;
}

}  // namespace g5::padic
