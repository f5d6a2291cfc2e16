// Acceptance suite: every criterion prints one PASS/FAIL line and the
// binary exits nonzero if any criterion fails. Criteria that depend on
// stated reference values which the computation contradicts are asserted
// as stated and allowed to fail loudly; the printed detail shows the
// computed values.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <set>
#include <string>

#include "g5/arith.hpp"
#include "g5/curves.hpp"
#include "g5/dihedral.hpp"
#include "g5/hermitian.hpp"
#include "g5/padic.hpp"
#include "g5/sweep.hpp"

using namespace g5;

namespace {

struct Checker {
    int failed = 0;
    int count = 0;

    template <class Fn>
    void criterion(const std::string& id, const std::string& label, Fn&& fn) {
        count++;
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        std::string detail;
        try {
            ok = fn(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        std::printf("[%s] criterion %-3s %-52s (%.0f ms)%s%s\n", ok ? "PASS" : "FAIL", id.c_str(),
                    label.c_str(), ms, detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) failed++;
    }
};

bool trigonal_ok(u64 q, unsigned threads, std::string& detail) {
    auto t = curves::trigonal_search(q, curves::SearchMode::fast, threads);
    detail += "q=" + std::to_string(q) + " max=" + std::to_string(t.max_adjusted) + "/" +
              std::to_string(t.n_max) + " ";
    return t.max_adjusted < t.n_max;
}

}  // namespace

int main() {
    Checker c;
    unsigned threads = sweep::default_threads();
    bool extended = std::getenv("G5_ACCEPT_EXTENDED") != nullptr;

    c.criterion("1", "trigonal non-existence (q = 61, 311, 761)", [&](std::string& d) {
        bool ok = trigonal_ok(61, threads, d);
        ok = trigonal_ok(311, threads, d) && ok;
        ok = trigonal_ok(761, threads, d) && ok;
        if (extended) {
            ok = trigonal_ok(1061, threads, d) && ok;
            ok = trigonal_ok(1811, threads, d) && ok;
            ok = trigonal_ok(3911, threads, d) && ok;
        }
        return ok;
    });

    c.criterion("2", "fast and naive trigonal tables identical (q = 11, 31)",
                [&](std::string& d) {
                    bool ok = true;
                    for (u64 q : {11ull, 31ull}) {
                        auto fast = curves::trigonal_search(q, curves::SearchMode::fast, threads);
                        auto naive = curves::trigonal_search(q, curves::SearchMode::naive, threads);
                        bool same = fast.total == naive.total && fast.singular == naive.singular &&
                                    fast.flags == naive.flags && fast.digest == naive.digest;
                        d += "q=" + std::to_string(q) + (same ? " identical " : " DIFFER ");
                        ok = ok && same;
                    }
                    return ok;
                });

    c.criterion("3", "u_n = 1 exactly for {1,2,7}; u_n = -1 never (scan to 10^4)",
                [&](std::string& d) {
                    auto cert = padic::certify_un_equals_one(10, 12, 10000);
                    bool ok = cert.certified && cert.solutions == std::set<long>{1, 2, 7} &&
                              cert.scan_solutions == std::set<long>{1, 2, 7} &&
                              cert.scan_solutions_minus.empty();
                    d = cert.certified ? "certified" : "not certified";
                    return ok;
                });

    c.criterion("4", "Strassmann: g2 <= 1 zero, g1 <= 2 zeros; v(c_12)=1, v(c_21)=2",
                [&](std::string& d) {
                    auto c1 = padic::series_coefficients(1, 10, 12);
                    auto c2 = padic::series_coefficients(2, 10, 12);
                    auto b1 = padic::strassmann_bound(c1);
                    auto b2 = padic::strassmann_bound(c2);
                    d = "N1=" + std::to_string(b1.N) + " N2=" + std::to_string(b2.N) +
                        " v(c_{1,2})=" + std::to_string(c2.c[1].valuation()) +
                        " v(c_{2,1})=" + std::to_string(c1.c[2].valuation());
                    return b1.valid && b2.valid && b2.N <= 1 && b1.N <= 2 &&
                           c2.c[1].valuation() == 1 && c1.c[2].valuation() == 2;
                });

    c.criterion("5", "Hensel residues: alpha=248, beta=204 mod 7^3; sum/product mod 7^40",
                [&](std::string& d) {
                    auto a3 = padic::hensel_root(2, 3), b3 = padic::hensel_root(6, 3);
                    auto a40 = padic::hensel_root(2, 40), b40 = padic::hensel_root(6, 40);
                    bool stated = a3.residue() == 248 && b3.residue() == 204;
                    bool identities = a40.add(b40) == padic::Zp7(40, 1) &&
                                      a40.mul(b40) == padic::Zp7(40, 5);
                    d = "computed alpha=" + a3.residue().get_str() + " beta=" +
                        b3.residue().get_str() + " mod 343 (stated 248/204); sum/product " +
                        (identities ? "hold" : "FAIL");
                    return stated && identities;
                });

    c.criterion("6", "diophantine solutions [(1,1),(9,2),(559,7)]; only 5^7 in the 5-power scan",
                [&](std::string& d) {
                    auto sols = padic::solve_diophantine(100);
                    bool list_ok = sols.size() == 3 && sols[0].x == 1 && sols[0].n == 1 &&
                                   sols[1].x == 9 && sols[1].n == 2 && sols[2].x == 559 &&
                                   sols[2].n == 7;
                    bool marks = !sols[0].isqrt_match && !sols[1].isqrt_match &&
                                 sols[2].isqrt_match;
                    auto hits = arith::scan_discriminant(-19, 100000000ull, threads);
                    std::vector<u64> fives;
                    for (const auto& pp : hits)
                        if (pp.p == 5) fives.push_back(pp.q);
                    bool scan_ok = fives == std::vector<u64>{78125};
                    d = "5-power hits: " + std::to_string(fives.size());
                    return list_ok && marks && scan_ok;
                });

    c.criterion("7", "d = -19 implies q mod 5 in {0,1,2} for all q <= 10^8",
                [&](std::string& d) {
                    auto hits = arith::scan_discriminant(-19, 100000000ull, threads);
                    bool ok = true;
                    bool saw25 = false;
                    for (const auto& pp : hits) {
                        if (pp.residue5 > 2) ok = false;
                        if (pp.q == 25) saw25 = true;
                    }
                    d = std::to_string(hits.size()) + " hits, 25 excluded: " +
                        (saw25 ? "NO" : "yes");
                    return ok && !saw25;
                });

    c.criterion("8", "5 never divides #PGL3(F_q) when q = 2,3 mod 5 (q <= 10^5)",
                [&](std::string& d) {
                    u64 checked = 0;
                    for (u64 n = 2; n <= 100000; n++) {
                        if (!arith::prime_power_decompose(n)) continue;
                        auto pp = arith::PrimePower::make(n);
                        if (pp.residue5 != 2 && pp.residue5 != 3) continue;
                        checked++;
                        if (arith::pgl3_order_divisible_by_5(pp)) {
                            d = "counterexample q=" + std::to_string(n);
                            return false;
                        }
                    }
                    d = std::to_string(checked) + " prime powers checked";
                    return true;
                });

    c.criterion("9", "quadric triple vanishes at [1:z:z^2:z^3:z^4] with Jacobian rank <= 2 (q=47)",
                [&](std::string& d) {
                    auto rep = curves::invariant_triple_singularity(47);
                    d = "rank=" + std::to_string(rep.jacobian_rank);
                    return rep.ok && rep.e == 4;
                });

    c.criterion("10", "lattice data: isometries, D5 closure of order 10, order 20 with -I",
                [&](std::string& d) {
                    auto data = hermitian::load_lattice_data();
                    bool isoR = hermitian::isometry_check(data.R, data.H1);
                    bool isoS = hermitian::isometry_check(data.S, data.H1);
                    auto c10 = hermitian::group_closure({data.R, data.S}, 64);
                    auto c20 = hermitian::group_closure(
                        {data.R, data.S, hermitian::ok_neg(hermitian::ok_identity(5))}, 64);
                    bool closures = c10.order == 10 && c10.dihedral_d5 && c20.order == 20;
                    auto hstar = hermitian::rs_invariant_gram();
                    bool derived = hermitian::isometry_check(data.R, hstar) &&
                                   hermitian::isometry_check(data.S, hstar);
                    d = std::string("isometry vs stated H1: R=") + (isoR ? "yes" : "NO") +
                        " S=" + (isoS ? "yes" : "NO") + "; closure 10/" +
                        std::to_string(c10.order) + " 20/" + std::to_string(c20.order) +
                        "; derived invariant form preserved: " + (derived ? "yes" : "no");
                    return isoR && isoS && closures;
                });

    c.criterion("11", "reduction mod 61: charpolys x^5-1 and (x-1)^3(x+1)^2; relations",
                [&](std::string& d) {
                    auto data = hermitian::load_lattice_data();
                    ff::Field F = ff::Field::build(61, 1);
                    auto roots = hermitian::split_roots(F);
                    if (roots.size() != 2) return false;
                    bool ok = true;
                    for (const auto& root : roots) {
                        auto Rq = hermitian::reduce_mod_q(data.R, F, root);
                        auto Sq = hermitian::reduce_mod_q(data.S, F, root);
                        auto cp = ff::charpoly(F, Rq);
                        bool r_ok = F.index(cp[0]) == 60 && F.is_zero(cp[1]) && F.is_zero(cp[2]) &&
                                    F.is_zero(cp[3]) && F.is_zero(cp[4]) && F.index(cp[5]) == 1;
                        auto cs = ff::charpoly(F, Sq);
                        // (x-1)^3 (x+1)^2 = x^5 - x^4 - 2x^3 + 2x^2 + x - 1
                        bool s_ok = F.index(cs[0]) == 60 && F.index(cs[1]) == 1 &&
                                    F.index(cs[2]) == 2 && F.index(cs[3]) == 59 &&
                                    F.index(cs[4]) == 60 && F.index(cs[5]) == 1;
                        bool rel = ff::mat_mul(F, ff::mat_mul(F, Rq, Sq), Rq) == Sq;
                        ok = ok && r_ok && s_ok && rel;
                    }
                    d = "both split roots";
                    return ok;
                });

    c.criterion("12", "invariance suites: 100 random quintics per q in {11,61}; span stability",
                [&](std::string& d) {
                    std::mt19937_64 rng(2024);
                    for (u64 q : {11ull, 61ull}) {
                        ff::Field F = ff::Field::build(q, 1);
                        for (auto [m, n] : {std::pair<unsigned, unsigned>{1, 4}, {2, 3}}) {
                            auto pair = dihedral::build_plane_generators(F, m, n, +1);
                            for (int i = 0; i < 100; i++) {
                                curves::QuinticModel mdl{&F, F.from_index(rng() % q),
                                                         F.from_index(rng() % q)};
                                if (!dihedral::check_quintic_invariance(mdl, pair)) {
                                    d = "invariance failed at q=" + std::to_string(q);
                                    return false;
                                }
                            }
                        }
                    }
                    ff::Field F61 = ff::Field::build(61, 1);
                    auto gens = dihedral::build_p4_generators(F61);
                    for (int icase : {1, 2}) {
                        for (int t = 0; t < 100; t++) {
                            curves::QuadricSystem sys{&F61, icase, {}};
                            for (int i = 0; i < 6; i++) sys.a[i] = F61.from_index(rng() % 61);
                            if (F61.is_zero(sys.a[0]) && F61.is_zero(sys.a[1]) &&
                                F61.is_zero(sys.a[2]))
                                sys.a[0] = F61.one();
                            if (F61.is_zero(sys.a[3]) && F61.is_zero(sys.a[4]) &&
                                F61.is_zero(sys.a[5]))
                                sys.a[3] = F61.one();
                            ff::Elem cmul = F61.from_index(1 + rng() % 60);
                            if (icase == 1) {
                                for (int i = 0; i < 3; i++)
                                    sys.a[6 + i] = F61.mul(cmul, sys.a[3 + i]);
                            } else {
                                sys.a[6] = F61.mul(cmul, sys.a[4]);
                                sys.a[7] = F61.mul(cmul, sys.a[3]);
                                sys.a[8] = F61.mul(cmul, sys.a[5]);
                            }
                            auto tp = dihedral::check_span_stability(sys, gens);
                            if (!tp || !tp->shape_ok || tp->detected_case != icase) {
                                d = "span stability failed, case " + std::to_string(icase);
                                return false;
                            }
                        }
                    }
                    d = "all invariant / all stable";
                    return true;
                });

    c.criterion("13", "determinism: digests across thread counts and interrupt/resume (q=61)",
                [&](std::string& d) {
                    auto one = sweep::trigonal_sweep({61, curves::SearchMode::fast, 1, {}, {}});
                    auto many = sweep::trigonal_sweep({61, curves::SearchMode::fast, 8, {}, {}});
                    if (!one.complete || !many.complete) return false;
                    bool same = one.table.digest == many.table.digest;

                    auto dir = std::filesystem::temp_directory_path() / "g5-acceptance-resume";
                    std::filesystem::remove_all(dir);
                    sweep::TrigonalSweepOptions part{61, curves::SearchMode::fast, 2,
                                                     dir.string(), 3};
                    auto r1 = sweep::trigonal_sweep(part);
                    sweep::TrigonalSweepOptions rest{61, curves::SearchMode::fast, 4,
                                                     dir.string(), {}};
                    auto r2 = sweep::trigonal_sweep(rest);
                    std::filesystem::remove_all(dir);
                    if (r1.complete || !r2.complete) return false;
                    bool resumed = r2.table.digest == one.table.digest;
                    d = std::string("threads ") + (same ? "ok" : "DIFFER") + ", resume " +
                        (resumed ? "ok" : "DIFFER");
                    return same && resumed;
                });

    std::printf("%d/%d criteria passed\n", c.count - c.failed, c.count);
    return c.failed == 0 ? 0 : 1;
}
