#include <doctest.h>

#include <random>

#include "g5/curves.hpp"
#include "g5/dihedral.hpp"

using namespace g5;
using namespace g5::curves;
using ff::Elem;
using ff::Field;

namespace {

QuinticModel model(const Field& F, u64 a3, u64 a4) {
    return QuinticModel{&F, F.from_index(a3), F.from_index(a4)};
}

// ultra-naive oracle: per-pair scan of P^2 over the given field by raw
// index loops, no shared code with the production scans
struct RawCounts {
    u64 total = 0, singular = 0, extra_singular = 0;
};
RawCounts raw_scan(const Field& K, const Elem& a3, const Elem& a4) {
    RawCounts rc;
    auto eval_all = [&](const Elem& x, const Elem& y, const Elem& z) {
        Elem y2 = K.mul(y, y), z2 = K.mul(z, z), yz = K.mul(y, z);
        Elem x2 = K.mul(x, x), x3 = K.mul(x2, x);
        Elem f = K.add(K.add(K.pow(y, 5), K.pow(z, 5)),
                       K.add(K.mul(a3, K.mul(x, K.mul(y2, z2))), K.mul(a4, K.mul(x3, yz))));
        Elem fx = K.add(K.mul(a3, K.mul(y2, z2)),
                        K.mul(K.from_int(3), K.mul(a4, K.mul(x2, yz))));
        Elem fy = K.add(K.add(K.mul(K.from_int(5), K.pow(y, 4)),
                              K.mul(K.from_int(2), K.mul(a3, K.mul(x, K.mul(y, z2))))),
                        K.mul(a4, K.mul(x3, z)));
        Elem fz = K.add(K.add(K.mul(K.from_int(2), K.mul(a3, K.mul(x, K.mul(y2, z)))),
                              K.mul(a4, K.mul(x3, y))),
                        K.mul(K.from_int(5), K.pow(z, 4)));
        if (!K.is_zero(f)) return;
        rc.total++;
        if (K.is_zero(fx) && K.is_zero(fy) && K.is_zero(fz)) {
            rc.singular++;
            if (!(K.index(x) == 1 && K.is_zero(y) && K.is_zero(z))) rc.extra_singular++;
        }
    };
    for (u64 yi = 0; yi < K.q(); yi++)
        for (u64 zi = 0; zi < K.q(); zi++)
            eval_all(K.one(), K.from_index(yi), K.from_index(zi));
    for (u64 zi = 0; zi < K.q(); zi++) eval_all(K.zero(), K.one(), K.from_index(zi));
    eval_all(K.zero(), K.zero(), K.one());
    return rc;
}

}  // namespace

TEST_SUITE("curves") {

TEST_CASE("node is always singular") {
    Field F = Field::build(11, 1);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 20; i++) {
        auto m = model(F, rng() % 11, rng() % 11);
        auto rep = count_plane_points(m, false);
        REQUIRE(!rep.singular_fq.empty());
        bool has_node = false;
        for (auto& p : rep.singular_fq)
            if (p == std::array<u64, 3>{1, 0, 0}) has_node = true;
        CHECK(has_node);
    }
}

TEST_CASE("degenerate model (0,0) over F_11: five lines through the node") {
    Field F = Field::build(11, 1);
    auto rep = count_plane_points(model(F, 0, 0), true);
    CHECK(rep.total == 56);  // 1 + 5*11
    CHECK(rep.degenerate);
    CHECK(!rep.adjusted.has_value());
    CHECK(rep.singular_fq.size() == 1);  // only [1:0:0]
}

TEST_CASE("clean model (0,1) over F_11 matches the brute-force oracle") {
    Field F = Field::build(11, 1);
    auto rep = count_plane_points(model(F, 0, 1), true);
    auto rc = raw_scan(F, F.zero(), F.one());
    CHECK(rep.total == rc.total);
    CHECK(rep.total == 11);
    CHECK(rep.smooth == 10);
    REQUIRE(rep.adjusted.has_value());
    CHECK(*rep.adjusted == 12);
    CHECK(rep.fq2_checked);
    CHECK(rep.singular_fq2.size() == 1);
}

TEST_CASE("singular locus") {
    Field F = Field::build(11, 1);
    auto loc = singular_locus(model(F, 0, 1), 1);
    REQUIRE(loc.points.size() == 1);
    CHECK(loc.ext.index(loc.points[0][0]) == 1);
    CHECK(loc.ext.is_zero(loc.points[0][1]));
    CHECK(loc.ext.is_zero(loc.points[0][2]));

    auto loc0 = singular_locus(model(F, 0, 0), 1);
    REQUIRE(loc0.points.size() == 1);  // quartic cone at the node, still the only one
    CHECK(loc0.ext.index(loc0.points[0][0]) == 1);

    auto loc2 = singular_locus(model(F, 0, 1), 2);
    CHECK(loc2.points.size() == 1);
    CHECK_THROWS_AS(singular_locus(model(F, 0, 1), 3), std::invalid_argument);
    CHECK_THROWS_AS(singular_locus(model(F, 0, 1), 4, 1000), ResourceError);
}

TEST_CASE("trigonal q=11: golden values and flags") {
    auto t = trigonal_search(11, SearchMode::fast);
    CHECK(t.n_max == 42);
    CHECK(t.max_adjusted == 32);
    CHECK(t.below_bound);
    REQUIRE(t.argmax.size() == 10);
    CHECK(t.argmax[0] == std::pair<u64, u64>{1, 1});
    CHECK(t.argmax[1] == std::pair<u64, u64>{2, 8});
    CHECK(t.degenerate_pairs == 11);
    CHECK(t.extra_singular_pairs == 10);
    // frozen extra-singular pairs: a3^3 = -27 a4 with the fifth-power test
    std::vector<std::pair<u64, u64>> extras;
    for (u64 a3 = 0; a3 < 11; a3++)
        for (u64 a4 = 0; a4 < 11; a4++)
            if (t.flags[a3 * 11 + a4] & FLAG_EXTRA_SINGULAR) extras.push_back({a3, a4});
    CHECK(extras == std::vector<std::pair<u64, u64>>{{1, 2}, {2, 5}, {3, 10}, {4, 7}, {5, 8},
                                                     {6, 3}, {7, 4}, {8, 1}, {9, 6}, {10, 9}});
    // per-pair counts: (0,0) and (0,1) frozen
    CHECK(t.total[0] == 56);
    CHECK(t.singular[0] == 1);
    CHECK(t.total[1] == 11);
    CHECK(t.singular[1] == 1);
    CHECK(t.adjusted(0, 1).value() == 12);
    CHECK(!t.adjusted(0, 0).has_value());
}

TEST_CASE("trigonal fast vs naive tables are identical (q = 11, 31)") {
    for (u64 q : {11ull, 31ull}) {
        auto fast = trigonal_search(q, SearchMode::fast);
        auto naive = trigonal_search(q, SearchMode::naive);
        CHECK(fast.total == naive.total);
        CHECK(fast.singular == naive.singular);
        CHECK(fast.flags == naive.flags);
        CHECK(fast.digest == naive.digest);
        CHECK(fast.max_adjusted == naive.max_adjusted);
        CHECK(fast.argmax == naive.argmax);
    }
}

TEST_CASE("trigonal fast vs naive over the extension field F_16") {
    auto fast = trigonal_search(16, SearchMode::fast);
    auto naive = trigonal_search(16, SearchMode::naive);
    CHECK(fast.digest == naive.digest);
    CHECK(fast.total == naive.total);
    CHECK(fast.flags == naive.flags);
}

TEST_CASE("trigonal table vs independent per-pair raw scan (q = 11)") {
    Field F = Field::build(11, 1);
    auto t = trigonal_search(11, SearchMode::fast);
    for (u64 a3 = 0; a3 < 11; a3++)
        for (u64 a4 = 0; a4 < 11; a4++) {
            auto rc = raw_scan(F, F.from_index(a3), F.from_index(a4));
            CHECK(t.total[a3 * 11 + a4] == rc.total);
            CHECK(t.singular[a3 * 11 + a4] == rc.singular);
        }
}

TEST_CASE("trigonal extra-singular flag vs per-pair extension scan (q = 11)") {
    // third route: for each pair, scan P^2(F_121) directly
    Field F = Field::build(11, 1);
    Field F2 = Field::build(11, 2);
    ff::Embedding emb(F, F2);
    auto t = trigonal_search(11, SearchMode::fast);
    for (u64 a3 = 0; a3 < 11; a3++)
        for (u64 a4 = 0; a4 < 11; a4++) {
            auto rc = raw_scan(F2, emb.map(F.from_index(a3)), emb.map(F.from_index(a4)));
            bool extra = rc.extra_singular > 0;
            CHECK(((t.flags[a3 * 11 + a4] & FLAG_EXTRA_SINGULAR) != 0) == extra);
        }
}

TEST_CASE("lambda symmetry of totals on full tables (q = 11, 31)") {
    for (u64 q : {11ull, 31ull}) {
        auto t = trigonal_search(q, SearchMode::fast);
        for (u64 lam = 1; lam < q; lam++) {
            u64 l3 = lam * lam % q * lam % q;
            for (u64 a3 = 0; a3 < q; a3++)
                for (u64 a4 = 0; a4 < q; a4++) {
                    u64 b3 = a3 * lam % q, b4 = a4 * l3 % q;
                    CHECK(t.total[a3 * q + a4] == t.total[b3 * q + b4]);
                    CHECK(t.singular[a3 * q + a4] == t.singular[b3 * q + b4]);
                }
        }
    }
}

TEST_CASE("Y-Z swap is an exact automorphism of every model") {
    Field F = Field::build(11, 1);
    ff::Mat swap(3, 3);
    swap.at(0, 0) = F.one();
    swap.at(1, 2) = F.one();
    swap.at(2, 1) = F.one();
    std::mt19937_64 rng(77);
    for (int i = 0; i < 30; i++) {
        mpoly::HPoly f(F, 3, 5);
        f.coeff({0, 5, 0}) = F.one();
        f.coeff({0, 0, 5}) = F.one();
        f.coeff({1, 2, 2}) = F.from_index(rng() % 11);
        f.coeff({3, 1, 1}) = F.from_index(rng() % 11);
        CHECK(f.compose_linear(swap).equals(f));
    }
}

TEST_CASE("adjusted count bound: adjusted <= total + 1") {
    auto t = trigonal_search(11, SearchMode::fast);
    for (u64 a3 = 0; a3 < 11; a3++)
        for (u64 a4 = 0; a4 < 11; a4++) {
            auto adj = t.adjusted(a3, a4);
            if (adj) CHECK(*adj <= u64(t.total[a3 * 11 + a4]) + 1);
        }
}

TEST_CASE("trigonal q=61: no count reaches the bound") {
    auto t = trigonal_search(61, SearchMode::fast, 2);
    CHECK(t.n_max == 137);
    CHECK(t.max_adjusted < 137);
    CHECK(t.below_bound);
}

TEST_CASE("trigonal rejects bad q") {
    CHECK_THROWS_AS(trigonal_search(12, SearchMode::fast), std::invalid_argument);
    CHECK_THROWS_AS(trigonal_search(13, SearchMode::fast), std::invalid_argument);
    CHECK_THROWS_AS(trigonal_search(311, SearchMode::naive), std::invalid_argument);
}

TEST_CASE("P^4 counts: empty system and frozen example") {
    Field F = Field::build(11, 1);
    QuadricSystem empty{&F, 1, {}};
    CHECK(count_p4_points(empty) == 16105);  // q^4+q^3+q^2+q+1

    // XZ = YZ = XU = 0
    QuadricSystem sys{&F, 1, {}};
    sys.a[0] = F.one();  // a1
    sys.a[3] = F.one();  // a4
    sys.a[6] = F.one();  // a7
    CHECK(count_p4_points(sys) == 375);
    CHECK(count_p4_points_charts(sys) == 375);
}

TEST_CASE("chart sum equals representative enumeration on random systems") {
    Field F = Field::build(11, 1);
    std::mt19937_64 rng(55);
    for (int icase : {1, 2}) {
        for (int t = 0; t < 5; t++) {
            QuadricSystem sys{&F, icase, {}};
            for (int i = 0; i < 9; i++) sys.a[i] = F.from_index(rng() % 11);
            u64 a = count_p4_points(sys);
            u64 b = count_p4_points_charts(sys);
            CHECK(a == b);
        }
    }
}

TEST_CASE("P^4 count threaded equals single-threaded") {
    Field F = Field::build(11, 1);
    std::mt19937_64 rng(66);
    QuadricSystem sys{&F, 2, {}};
    for (int i = 0; i < 9; i++) sys.a[i] = F.from_index(rng() % 11);
    CHECK(count_p4_points(sys, u64(1) << 31, 1) == count_p4_points(sys, u64(1) << 31, 4));
}

TEST_CASE("P^4 budget guard") {
    Field F = Field::build(61, 1);
    QuadricSystem sys{&F, 1, {}};
    CHECK_THROWS_AS(count_p4_points(sys, 1000), ResourceError);
}

TEST_CASE("quadric random search is reproducible") {
    auto a = quadric_random_search(11, 1, 50, 42);
    auto b = quadric_random_search(11, 1, 50, 42);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); i++) {
        CHECK(a[i].coeff_indices == b[i].coeff_indices);
        CHECK(a[i].count == b[i].count);
    }
    CHECK(quadric_random_search(11, 1, 0, 42).empty());
}

TEST_CASE("invariant triple singularity at q = 47") {
    auto rep = invariant_triple_singularity(47);
    CHECK(rep.e == 4);
    CHECK(rep.ext_q == 4879681ull);
    CHECK(rep.p_vanish[0]);
    CHECK(rep.p_vanish[1]);
    CHECK(rep.p_vanish[2]);
    CHECK(rep.jacobian_rank == 1);
    CHECK(rep.ok);
}

TEST_CASE("invariant triple singularity at q = 11 (zeta rational)") {
    auto rep = invariant_triple_singularity(11);
    CHECK(rep.e == 1);
    CHECK(rep.ok);
}

TEST_CASE("invariant triple passes for all prime powers q < 100 coprime to 5") {
    for (u64 q = 2; q < 100; q++) {
        if (!arith::prime_power_decompose(q)) continue;
        if (q % 5 == 0) {
            CHECK_THROWS_AS(invariant_triple_singularity(q), std::invalid_argument);
            continue;
        }
        auto rep = invariant_triple_singularity(q);
        CHECK(rep.ok);
    }
}

}  // TEST_SUITE
