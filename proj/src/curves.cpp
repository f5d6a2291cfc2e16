#include "g5/curves.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <thread>

namespace g5::curves {

using ff::Elem;
using ff::Field;

// ---------------------------------------------------------------------------
// plane quintic scans
// ---------------------------------------------------------------------------

namespace {

struct PlaneEval {
    const Field* F;
    Elem a3, a4;

    // F, F_X, F_Y, F_Z at (x, y, z)
    void eval(const Elem& x, const Elem& y, const Elem& z, Elem& f, Elem& fx, Elem& fy,
              Elem& fz) const {
        const Field& K = *F;
        Elem y2 = K.mul(y, y), z2 = K.mul(z, z);
        Elem y4 = K.mul(y2, y2), z4 = K.mul(z2, z2);
        Elem x2 = K.mul(x, x), x3 = K.mul(x2, x);
        Elem yz = K.mul(y, z);
        Elem five = K.from_int(5), two = K.from_int(2), three = K.from_int(3);

        f = K.add(K.add(K.mul(y4, y), K.mul(z4, z)),
                  K.add(K.mul(a3, K.mul(x, K.mul(y2, z2))), K.mul(a4, K.mul(x3, yz))));
        fx = K.add(K.mul(a3, K.mul(y2, z2)), K.mul(three, K.mul(a4, K.mul(x2, yz))));
        fy = K.add(K.add(K.mul(five, y4), K.mul(two, K.mul(a3, K.mul(x, K.mul(y, z2))))),
                   K.mul(a4, K.mul(x3, z)));
        fz = K.add(K.add(K.mul(two, K.mul(a3, K.mul(x, K.mul(y2, z)))), K.mul(a4, K.mul(x3, y))),
                   K.mul(five, z4));
    }
};

// canonical P^2 representatives: [1:y:z], [0:1:z], [0:0:1]
template <class Fn>
void for_each_p2(const Field& K, Fn&& fn) {
    for (u64 yi = 0; yi < K.q(); yi++) {
        Elem y = K.from_index(yi);
        for (u64 zi = 0; zi < K.q(); zi++) fn(K.one(), y, K.from_index(zi));
    }
    for (u64 zi = 0; zi < K.q(); zi++) fn(K.zero(), K.one(), K.from_index(zi));
    fn(K.zero(), K.zero(), K.one());
}

struct PlaneScan {
    u64 total = 0;
    u64 singular = 0;
    std::vector<std::array<u64, 3>> singular_points;
};

PlaneScan plane_scan(const Field& K, const Elem& a3, const Elem& a4) {
    PlaneEval ev{&K, a3, a4};
    PlaneScan out;
    for_each_p2(K, [&](const Elem& x, const Elem& y, const Elem& z) {
        Elem f, fx, fy, fz;
        ev.eval(x, y, z, f, fx, fy, fz);
        if (!K.is_zero(f)) return;
        out.total++;
        if (K.is_zero(fx) && K.is_zero(fy) && K.is_zero(fz)) {
            out.singular++;
            out.singular_points.push_back({K.index(x), K.index(y), K.index(z)});
        }
    });
    return out;
}

void check_char(const Field& K) {
    if (K.p() == 5) throw std::invalid_argument("quintic family: characteristic 5 unsupported");
}

}  // namespace

PlaneCountReport count_plane_points(const QuinticModel& m, bool check_fq2, u64 budget) {
    const Field& K = *m.F;
    check_char(K);
    u64 npts = K.q() * K.q() + K.q() + 1;
    if (npts > budget) throw ResourceError("count_plane_points: P^2(F_q) exceeds budget");

    PlaneCountReport rep;
    rep.degenerate = m.degenerate();
    PlaneScan scan = plane_scan(K, m.a3, m.a4);
    rep.total = scan.total;
    rep.smooth = scan.total - scan.singular;
    rep.singular_fq = scan.singular_points;

    bool only_node_fq =
        scan.singular_points.size() == 1 && scan.singular_points[0] == std::array<u64, 3>{1, 0, 0};

    if (check_fq2) {
        u128 npts2 = u128(K.q()) * K.q();
        npts2 = npts2 * npts2 + u128(K.q()) * K.q() + 1;
        if (npts2 > budget) throw ResourceError("count_plane_points: P^2(F_{q^2}) exceeds budget");
        Field K2 = Field::build(K.p(), 2 * K.deg());
        ff::Embedding emb(K, K2);
        Elem b3 = emb.map(m.a3), b4 = emb.map(m.a4);
        PlaneEval ev{&K2, b3, b4};
        for_each_p2(K2, [&](const Elem& x, const Elem& y, const Elem& z) {
            Elem f, fx, fy, fz;
            ev.eval(x, y, z, f, fx, fy, fz);
            if (K2.is_zero(f) && K2.is_zero(fx) && K2.is_zero(fy) && K2.is_zero(fz))
                rep.singular_fq2.push_back({K2.index(x), K2.index(y), K2.index(z)});
        });
        rep.fq2_checked = true;
    }

    bool only_node_fq2 =
        !check_fq2 || (rep.singular_fq2.size() == 1 &&
                       rep.singular_fq2[0] == std::array<u64, 3>{1, 0, 0});
    rep.extra_singular = !only_node_fq || (check_fq2 && !only_node_fq2);
    if (!rep.degenerate && rep.fq2_checked && only_node_fq && only_node_fq2)
        rep.adjusted = rep.smooth + 2;
    return rep;
}

SingularLocus singular_locus(const QuinticModel& m, unsigned e, u64 budget) {
    const Field& K = *m.F;
    check_char(K);
    if (e != 1 && e != 2 && e != 4) throw std::invalid_argument("singular_locus: e must be 1, 2 or 4");
    u128 qe = 1;
    for (unsigned i = 0; i < e; i++) qe *= K.q();
    u128 npts = qe * qe + qe + 1;
    if (npts > budget) throw ResourceError("singular_locus: P^2(F_{q^e}) exceeds budget");

    Field Ke = e == 1 ? K : Field::build(K.p(), e * K.deg());
    ff::Embedding emb(K, Ke);
    Elem b3 = emb.map(m.a3), b4 = emb.map(m.a4);
    PlaneEval ev{&Ke, b3, b4};
    SingularLocus out{Ke, {}};
    for_each_p2(Ke, [&](const Elem& x, const Elem& y, const Elem& z) {
        Elem f, fx, fy, fz;
        ev.eval(x, y, z, f, fx, fy, fz);
        if (Ke.is_zero(f) && Ke.is_zero(fx) && Ke.is_zero(fy) && Ke.is_zero(fz))
            out.points.push_back({x, y, z});
    });
    return out;
}

// ---------------------------------------------------------------------------
// trigonal family search
// ---------------------------------------------------------------------------

namespace {

// Over any field with char != 5 and q = 1 mod 5, a point [1:y:z] (y,z != 0)
// is singular on the model for exactly one parameter pair, and only when
// y^5 = z^5:  a4 = y^4/z, a3 = -3 y^3/z^2.  Derivation: F_X = 0 forces
// a3 yz = -3 a4 x^2 on yz != 0, F_Y = 0 then pins a4, and F_Z = 0 reduces
// to y^5 = z^5 (5F = X F_X + Y F_Y + Z F_Z handles F itself).
struct FastPrimeKernel {
    u64 p;

    u64 mul(u64 a, u64 b) const { return u64(u128(a) * b % p); }
    u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= p ? s - p : s; }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
    u64 powm(u64 a, u64 e) const {
        u64 r = 1 % p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return powm(a, p - 2); }

    void run(u64 lo, u64 hi, std::vector<u32>& total, std::vector<u32>& sing) const {
        const u64 q = p, w = hi - lo;
        total.assign(w * q, 0);
        sing.assign(w * q, 0);
        for (u64 y = 1; y < q; y++) {
            u64 y2 = mul(y, y), y3 = mul(y2, y), y4 = mul(y2, y2), y5 = mul(y4, y);
            for (u64 z = 1; z < q; z++) {
                u64 z2 = mul(z, z), z5 = mul(mul(z2, z2), z);
                u64 yz = mul(y, z);
                u64 c0 = add(y5, z5);
                u64 inv_yz = inv(yz);
                u64 u = mul(sub(0, c0), inv_yz);  // -c0 / yz
                u64 v = sub(0, yz);               // -yz
                // a4 = u + v*a3 along the slab
                u64 a4 = add(u, mul(v, lo % q));
                u32* row = total.data();
                for (u64 a3 = lo; a3 < hi; a3++) {
                    row[(a3 - lo) * q + a4]++;
                    a4 += v;
                    if (a4 >= q) a4 -= q;
                }
                if (y5 == z5) {
                    u64 sa4 = mul(y4, inv(z));
                    u64 sa3 = mul(sub(0, mul(3 % p, y3)), inv(z2));
                    if (sa3 >= lo && sa3 < hi) sing[(sa3 - lo) * q + sa4]++;
                }
            }
        }
    }

    u64 base_total() const {
        // [1:0:0] plus the points [0:1:z] with z^5 = -1
        u64 cnt = 1;
        for (u64 z = 1; z < p; z++)
            if (add(powm(z, 5), 1 % p) == 0) cnt++;
        return cnt;
    }
};

// Same accumulation through Field ops on element indices; used for
// extension-field q (no such q appears in the acceptance runs).
struct FastGenericKernel {
    const Field* F;

    void run(u64 lo, u64 hi, std::vector<u32>& total, std::vector<u32>& sing) const {
        const Field& K = *F;
        const u64 q = K.q(), w = hi - lo;
        total.assign(w * q, 0);
        sing.assign(w * q, 0);
        for (u64 yi = 1; yi < q; yi++) {
            Elem y = K.from_index(yi);
            Elem y2 = K.mul(y, y), y3 = K.mul(y2, y), y4 = K.mul(y2, y2), y5 = K.mul(y4, y);
            for (u64 zi = 1; zi < q; zi++) {
                Elem z = K.from_index(zi);
                Elem z2 = K.mul(z, z), z5 = K.mul(K.mul(z2, z2), z);
                Elem yz = K.mul(y, z);
                Elem u = K.neg(K.mul(K.add(y5, z5), K.inv(yz)));
                Elem v = K.neg(yz);
                for (u64 a3i = lo; a3i < hi; a3i++) {
                    Elem a4 = K.add(u, K.mul(v, K.from_index(a3i)));
                    total[(a3i - lo) * q + K.index(a4)]++;
                }
                if (y5 == z5) {
                    Elem sa4 = K.mul(y4, K.inv(z));
                    Elem sa3 = K.neg(K.mul(K.from_int(3), K.mul(y3, K.inv(z2))));
                    u64 sa3i = K.index(sa3);
                    if (sa3i >= lo && sa3i < hi) sing[(sa3i - lo) * q + K.index(sa4)]++;
                }
            }
        }
    }

    u64 base_total() const {
        const Field& K = *F;
        u64 cnt = 1;
        for (u64 zi = 1; zi < K.q(); zi++) {
            Elem z = K.from_index(zi);
            if (K.is_zero(K.add(K.pow(z, 5), K.one()))) cnt++;
        }
        return cnt;
    }
};

// Closed-form criterion for a singular point beyond the node over F_q (and,
// for q = 1 mod 5, equivalently over F_{q^2}): solving the singular system
// above for fixed (a3, a4) inverts to X^5 = -a3/(3 a4^2) with the constraint
// a3^3 = -27 a4, so a solution exists in F_q iff that value is a fifth
// power. Characteristic 3 degenerates to a3 = 0, a4 != 0 (X^3 = c is then
// bijective). Fifth-power membership transfers between F_q and F_{q^2}
// because 5 divides q - 1 but not q + 1.
struct ExtraSingularClosedForm {
    const Field* F;

    bool operator()(const Elem& a3, const Elem& a4) const {
        const Field& K = *F;
        if (K.p() == 3) return K.is_zero(a3) && !K.is_zero(a4);
        if (K.is_zero(a3) || K.is_zero(a4)) return false;
        Elem a3c = K.pow(a3, 3);
        if (!(a3c == K.neg(K.mul(K.from_int(27), a4)))) return false;
        Elem c = K.neg(K.mul(a3, K.inv(K.mul(K.from_int(3), K.mul(a4, a4)))));
        return K.pow(c, (K.q() - 1) / 5) == K.one();
    }
};

}  // namespace

std::vector<u8> trigonal_fq2_extra_bitmap(const Field& K) {
    check_char(K);
    Field K2 = Field::build(K.p(), 2 * K.deg());
    ff::Embedding emb(K, K2);
    const u64 q = K.q();

    // index of embedded base-field elements, for membership + pullback
    std::map<u64, u64> back;
    for (u64 i = 0; i < q; i++) back[K2.index(emb.map(K.from_index(i)))] = i;

    std::vector<u8> bitmap(q * q, 0);
    Elem five = K2.from_int(5), three = K2.from_int(3), two = K2.from_int(2);

    // rows (A, B | C): A a3 + B a4 = C, from F_X, F_Y, F_Z at [1:y:z]
    for (u64 yi = 1; yi < K2.q(); yi++) {
        Elem y = K2.from_index(yi);
        Elem y2 = K2.mul(y, y), y4 = K2.mul(y2, y2);
        for (u64 zi = 1; zi < K2.q(); zi++) {
            Elem z = K2.from_index(zi);
            Elem z2 = K2.mul(z, z), z4 = K2.mul(z2, z2);
            Elem yz = K2.mul(y, z);
            Elem rows[3][3] = {
                {K2.mul(y2, z2), K2.mul(three, yz), K2.zero()},
                {K2.mul(two, K2.mul(y, z2)), z, K2.neg(K2.mul(five, y4))},
                {K2.mul(two, K2.mul(y2, z)), y, K2.neg(K2.mul(five, z4))},
            };
            // eliminate with the first row's a3 coefficient (y^2 z^2 != 0)
            Elem ia = K2.inv(rows[0][0]);
            Elem b0 = K2.mul(rows[0][1], ia), c0 = K2.mul(rows[0][2], ia);
            // a3 = c0 - b0 a4; substitute: (B_i - A_i b0) a4 = C_i - A_i c0
            bool inconsistent = false, pinned = false;
            Elem a4v = K2.zero();
            for (int i = 1; i < 3; i++) {
                Elem d = K2.sub(rows[i][1], K2.mul(rows[i][0], b0));
                Elem e = K2.sub(rows[i][2], K2.mul(rows[i][0], c0));
                if (K2.is_zero(d)) {
                    if (!K2.is_zero(e)) {
                        inconsistent = true;
                        break;
                    }
                } else {
                    Elem cand = K2.mul(e, K2.inv(d));
                    if (pinned && !(cand == a4v)) {
                        inconsistent = true;
                        break;
                    }
                    a4v = cand;
                    pinned = true;
                }
            }
            if (inconsistent) continue;
            if (pinned) {
                Elem a3v = K2.sub(c0, K2.mul(b0, a4v));
                auto i3 = back.find(K2.index(a3v));
                auto i4 = back.find(K2.index(a4v));
                if (i3 != back.end() && i4 != back.end())
                    bitmap[i3->second * q + i4->second] = 1;
            } else {
                // solution line a3 = c0 - b0 t; walk rational pairs
                for (u64 i4 = 0; i4 < q; i4++) {
                    Elem a4r = emb.map(K.from_index(i4));
                    Elem a3v = K2.sub(c0, K2.mul(b0, a4r));
                    auto i3 = back.find(K2.index(a3v));
                    if (i3 != back.end()) bitmap[i3->second * q + i4] = 1;
                }
            }
        }
    }
    return bitmap;
}

TrigonalChunk trigonal_chunk(const Field& K, u64 a3_lo, u64 a3_hi, SearchMode mode,
                             const std::vector<u8>* naive_extra_bitmap) {
    check_char(K);
    const u64 q = K.q(), w = a3_hi - a3_lo;
    TrigonalChunk ch;
    ch.a3_lo = a3_lo;
    ch.a3_hi = a3_hi;
    ch.flags.assign(w * q, 0);

    u64 base_total = 0;
    if (mode == SearchMode::fast) {
        if (K.deg() == 1) {
            FastPrimeKernel kern{K.p()};
            kern.run(a3_lo, a3_hi, ch.total, ch.singular);
            base_total = kern.base_total();
        } else {
            FastGenericKernel kern{&K};
            kern.run(a3_lo, a3_hi, ch.total, ch.singular);
            base_total = kern.base_total();
        }
        for (auto& t : ch.total) t += u32(base_total);
        for (auto& s : ch.singular) s += 1;  // the node [1:0:0]
        ExtraSingularClosedForm extra{&K};
        for (u64 i = 0; i < w; i++) {
            Elem a3 = K.from_index(a3_lo + i);
            for (u64 j = 0; j < q; j++) {
                Elem a4 = K.from_index(j);
                u8 f = 0;
                if (K.is_zero(a4)) f |= FLAG_DEGENERATE;
                bool cf = extra(a3, a4);
                bool counted = ch.singular[i * q + j] > 1;
                if (cf != counted)
                    throw std::logic_error("trigonal fast kernel: closed form disagrees with count");
                if (cf) f |= FLAG_EXTRA_SINGULAR;
                ch.flags[i * q + j] = f;
            }
        }
    } else {
        if (q > 64) throw std::invalid_argument("trigonal naive mode: q > 64");
        if (!naive_extra_bitmap || naive_extra_bitmap->size() != q * q)
            throw std::invalid_argument("trigonal naive mode: extension bitmap required");
        ch.total.assign(w * q, 0);
        ch.singular.assign(w * q, 0);
        for (u64 i = 0; i < w; i++) {
            Elem a3 = K.from_index(a3_lo + i);
            for (u64 j = 0; j < q; j++) {
                Elem a4 = K.from_index(j);
                PlaneScan scan = plane_scan(K, a3, a4);
                ch.total[i * q + j] = u32(scan.total);
                ch.singular[i * q + j] = u32(scan.singular);
                bool extra_fq = scan.singular > 1;
                bool extra_fq2 = (*naive_extra_bitmap)[(a3_lo + i) * q + j] != 0;
                if (extra_fq && !extra_fq2)
                    throw std::logic_error("trigonal naive: F_q singular not seen over F_{q^2}");
                u8 f = 0;
                if (K.is_zero(a4)) f |= FLAG_DEGENERATE;
                if (extra_fq2) f |= FLAG_EXTRA_SINGULAR;
                ch.flags[i * q + j] = f;
            }
        }
    }
    return ch;
}

std::optional<u64> SearchTable::adjusted(u64 a3, u64 a4) const {
    std::size_t i = a3 * q + a4;
    if (flags[i]) return std::nullopt;
    return u64(total[i]) - singular[i] + 2;
}

SearchTable assemble_table(u64 q, const std::vector<TrigonalChunk>& chunks) {
    SearchTable t;
    t.q = q;
    t.n_max = arith::hws_bound(arith::PrimePower::make(q), 5).n_max;
    t.total.assign(q * q, 0);
    t.singular.assign(q * q, 0);
    t.flags.assign(q * q, 0);
    u64 covered = 0;
    for (const auto& ch : chunks) {
        if (ch.a3_lo != covered) throw std::invalid_argument("assemble_table: chunks out of order");
        std::size_t off = ch.a3_lo * q;
        std::copy(ch.total.begin(), ch.total.end(), t.total.begin() + off);
        std::copy(ch.singular.begin(), ch.singular.end(), t.singular.begin() + off);
        std::copy(ch.flags.begin(), ch.flags.end(), t.flags.begin() + off);
        covered = ch.a3_hi;
    }
    if (covered != q) throw std::invalid_argument("assemble_table: chunks do not cover [0,q)");

    for (std::size_t i = 0; i < q * q; i++) {
        if (t.flags[i] & FLAG_DEGENERATE) t.degenerate_pairs++;
        if (t.flags[i] & FLAG_EXTRA_SINGULAR) t.extra_singular_pairs++;
        if (t.flags[i]) continue;
        u64 adj = u64(t.total[i]) - t.singular[i] + 2;
        if (adj > t.max_adjusted) {
            t.max_adjusted = adj;
            t.argmax.assign(1, {i / q, i % q});
        } else if (adj == t.max_adjusted) {
            t.argmax.emplace_back(i / q, i % q);
        }
    }
    t.below_bound = t.max_adjusted < t.n_max;

    Fnv64 h;
    h.word(q);
    for (std::size_t i = 0; i < q * q; i++) {
        h.word(t.total[i]);
        h.word(t.singular[i]);
        h.bytes(&t.flags[i], 1);
    }
    t.digest = h.value();
    return t;
}

u64 trigonal_chunk_width(u64 q) { return std::max<u64>(8, (q + 31) / 32); }

SearchTable trigonal_search(u64 q, SearchMode mode, unsigned threads) {
    auto pp = arith::PrimePower::make(q);
    if (q % 5 != 1) throw std::invalid_argument("trigonal_search: q must be 1 mod 5");
    if (q > 4096) throw ResourceError("trigonal_search: q > 4096 (table too large)");
    if (mode == SearchMode::naive && q > 64)
        throw std::invalid_argument("trigonal_search: naive mode needs q <= 64");
    Field K = Field::build(pp.p, pp.r);

    std::vector<u8> bitmap;
    if (mode == SearchMode::naive) bitmap = trigonal_fq2_extra_bitmap(K);

    u64 w = trigonal_chunk_width(q);
    std::vector<std::pair<u64, u64>> ranges;
    for (u64 lo = 0; lo < q; lo += w) ranges.emplace_back(lo, std::min(lo + w, q));
    std::vector<TrigonalChunk> chunks(ranges.size());

    if (threads <= 1) {
        for (std::size_t i = 0; i < ranges.size(); i++)
            chunks[i] = trigonal_chunk(K, ranges[i].first, ranges[i].second, mode,
                                       bitmap.empty() ? nullptr : &bitmap);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= ranges.size()) return;
                chunks[i] = trigonal_chunk(K, ranges[i].first, ranges[i].second, mode,
                                           bitmap.empty() ? nullptr : &bitmap);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; t++) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return assemble_table(q, chunks);
}

// ---------------------------------------------------------------------------
// quadric systems in P^4
// ---------------------------------------------------------------------------

std::vector<mpoly::HPoly> QuadricSystem::quadrics() const {
    const Field& K = *F;
    auto mono = [&](unsigned i, unsigned j) {
        mpoly::Expo e{};
        e[i]++;
        e[j]++;
        return e;
    };
    // variable order (X, Y, Z, U, V) = (0, 1, 2, 3, 4)
    std::array<std::array<std::pair<unsigned, unsigned>, 3>, 3> support;
    if (icase == 1) {
        support = {{{{{0, 2}, {1, 3}, {4, 4}}},    // XZ, YU, V^2
                    {{{1, 2}, {3, 4}, {0, 0}}},    // YZ, UV, X^2
                    {{{0, 3}, {1, 4}, {2, 2}}}}};  // XU, YV, Z^2
    } else if (icase == 2) {
        support = {{{{{0, 2}, {1, 3}, {4, 4}}},    // XZ, YU, V^2
                    {{{0, 1}, {2, 4}, {3, 3}}},    // XY, ZV, U^2
                    {{{0, 4}, {2, 3}, {1, 1}}}}};  // XV, ZU, Y^2
    } else {
        throw std::invalid_argument("QuadricSystem: case must be 1 or 2");
    }
    std::vector<mpoly::HPoly> qs;
    for (int i = 0; i < 3; i++) {
        mpoly::HPoly p(K, 5, 2);
        for (int t = 0; t < 3; t++) {
            auto [v1, v2] = support[i][t];
            p.coeff(mono(v1, v2)) = K.add(p.coeff(mono(v1, v2)), a[i * 3 + t]);
        }
        qs.push_back(std::move(p));
    }
    return qs;
}

namespace {

u128 p4_size(u64 q) {
    u128 n = 1, s = 1;
    for (int i = 0; i < 4; i++) {
        n *= q;
        s += n;
    }
    return s;
}

// zero-test of the three quadrics at a point, straight from the case support
struct SystemEval {
    const Field* F;
    int icase;
    const std::array<Elem, 9>* a;

    bool all_zero(const Elem* x) const {
        const Field& K = *F;
        const auto& c = *a;
        Elem q1 = K.add(K.add(K.mul(c[0], K.mul(x[0], x[2])), K.mul(c[1], K.mul(x[1], x[3]))),
                        K.mul(c[2], K.mul(x[4], x[4])));
        if (!K.is_zero(q1)) return false;
        Elem q2, q3;
        if (icase == 1) {
            q2 = K.add(K.add(K.mul(c[3], K.mul(x[1], x[2])), K.mul(c[4], K.mul(x[3], x[4]))),
                       K.mul(c[5], K.mul(x[0], x[0])));
            q3 = K.add(K.add(K.mul(c[6], K.mul(x[0], x[3])), K.mul(c[7], K.mul(x[1], x[4]))),
                       K.mul(c[8], K.mul(x[2], x[2])));
        } else {
            q2 = K.add(K.add(K.mul(c[3], K.mul(x[0], x[1])), K.mul(c[4], K.mul(x[2], x[4]))),
                       K.mul(c[5], K.mul(x[3], x[3])));
            q3 = K.add(K.add(K.mul(c[6], K.mul(x[0], x[4])), K.mul(c[7], K.mul(x[2], x[3]))),
                       K.mul(c[8], K.mul(x[1], x[1])));
        }
        return K.is_zero(q2) && K.is_zero(q3);
    }
};

// count over representatives with leading coordinate at position `lead`,
// second coordinate restricted to [y_lo, y_hi) when lead == 0
u64 count_block(const Field& K, const SystemEval& ev, unsigned lead, u64 y_lo, u64 y_hi) {
    const u64 q = K.q();
    unsigned free_from = lead + 1;
    Elem x[5];
    for (unsigned i = 0; i < lead; i++) x[i] = K.zero();
    x[lead] = K.one();
    if (lead == 4) return ev.all_zero(x) ? 1 : 0;

    u64 count = 0;
    std::array<u64, 5> idx{};
    // odometer over coordinates free_from..4, last fastest; first free
    // coordinate ranges over [y_lo, y_hi) for lead == 0 partitioning
    u64 first_lo = (lead == 0) ? y_lo : 0, first_hi = (lead == 0) ? y_hi : q;
    for (u64 f = first_lo; f < first_hi; f++) {
        idx[free_from] = f;
        x[free_from] = K.from_index(f);
        for (unsigned i = free_from + 1; i < 5; i++) {
            idx[i] = 0;
            x[i] = K.zero();
        }
        for (;;) {
            if (ev.all_zero(x)) count++;
            unsigned pos = 4;
            while (pos > free_from && ++idx[pos] == q) {
                idx[pos] = 0;
                x[pos] = K.zero();
                pos--;
            }
            if (pos == free_from) break;
            x[pos] = K.from_index(idx[pos]);
        }
    }
    return count;
}

}  // namespace

u64 count_p4_points(const QuadricSystem& s, u64 budget, unsigned threads) {
    const Field& K = *s.F;
    if (p4_size(K.q()) > budget) throw ResourceError("count_p4_points: P^4(F_q) exceeds budget");
    SystemEval ev{s.F, s.icase, &s.a};
    if (s.icase != 1 && s.icase != 2) throw std::invalid_argument("count_p4_points: bad case");

    const u64 q = K.q();
    u64 count = 0;
    if (threads <= 1) {
        for (unsigned lead = 0; lead < 5; lead++) count += count_block(K, ev, lead, 0, q);
    } else {
        std::vector<std::pair<u64, u64>> jobs;  // lead-0 y-ranges
        u64 step = std::max<u64>(1, q / (threads * 4));
        for (u64 lo = 0; lo < q; lo += step) jobs.emplace_back(lo, std::min(lo + step, q));
        std::vector<u64> partial(jobs.size(), 0);
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= jobs.size()) return;
                partial[i] = count_block(K, ev, 0, jobs[i].first, jobs[i].second);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; t++) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        for (u64 c : partial) count += c;
        for (unsigned lead = 1; lead < 5; lead++) count += count_block(K, ev, lead, 0, q);
    }
    return count;
}

u64 count_p4_points_charts(const QuadricSystem& s, u64 budget) {
    const Field& K = *s.F;
    if (p4_size(K.q()) > budget) throw ResourceError("count_p4_points_charts: exceeds budget");
    auto qs = s.quadrics();
    const u64 q = K.q();
    u64 total = 0;
    for (unsigned lead = 0; lead < 5; lead++) {
        // nested chart: x_lead = 1, earlier coordinates 0, later free;
        // odometer with the first free coordinate fastest (reversed order)
        std::array<Elem, 5> x;
        for (unsigned i = 0; i < lead; i++) x[i] = K.zero();
        x[lead] = K.one();
        unsigned nfree = 4 - lead;
        std::vector<u64> idx(nfree, 0);
        for (unsigned i = 0; i < nfree; i++) x[lead + 1 + i] = K.zero();
        for (;;) {
            bool on = true;
            for (const auto& poly : qs) {
                if (!K.is_zero(poly.eval(std::span<const Elem>(x.data(), 5)))) {
                    on = false;
                    break;
                }
            }
            if (on) total++;
            if (nfree == 0) break;
            unsigned pos = 0;
            while (pos < nfree && ++idx[pos] == q) {
                idx[pos] = 0;
                x[lead + 1 + pos] = K.zero();
                pos++;
            }
            if (pos == nfree) break;
            x[lead + 1 + pos] = K.from_index(idx[pos]);
        }
    }
    return total;
}

std::vector<QuadricCandidate> quadric_random_search(u64 q, int icase, u64 samples, u64 seed,
                                                    u64 budget) {
    auto pp = arith::PrimePower::make(q);
    Field K = Field::build(pp.p, pp.r);
    u64 n_max = arith::hws_bound(pp, 5).n_max;
    std::mt19937_64 rng(seed);
    // unbiased draw in [0, q); fixed rejection scheme, reproducible across platforms
    auto draw = [&]() -> u64 {
        u64 limit = std::numeric_limits<u64>::max() - std::numeric_limits<u64>::max() % q;
        for (;;) {
            u64 x = rng();
            if (x < limit) return x % q;
        }
    };
    std::vector<QuadricCandidate> out;
    for (u64 s = 0; s < samples; s++) {
        QuadricSystem sys;
        sys.F = &K;
        sys.icase = icase;
        std::array<u64, 9> ids{};
        for (int i = 0; i < 9; i++) {
            ids[i] = draw();
            sys.a[i] = K.from_index(ids[i]);
        }
        u64 c = count_p4_points(sys, budget, 1);
        if (c == n_max) out.push_back({ids, c});
    }
    return out;
}

// ---------------------------------------------------------------------------
// the fixed quadric triple
// ---------------------------------------------------------------------------

std::vector<mpoly::HPoly> invariant_triple(const Field& K) {
    auto mono = [&](unsigned i, unsigned j) {
        mpoly::Expo e{};
        e[i]++;
        e[j]++;
        return e;
    };
    mpoly::HPoly p1(K, 5, 2), p2(K, 5, 2), p3(K, 5, 2);
    for (unsigned i = 0; i < 5; i++) p1.coeff(mono(i, i)) = K.one();
    for (auto [i, j] : {std::pair{0u, 1u}, {1u, 2u}, {2u, 3u}, {3u, 4u}, {0u, 4u}})
        p2.coeff(mono(i, j)) = K.one();
    for (auto [i, j] : {std::pair{0u, 2u}, {1u, 3u}, {2u, 4u}, {0u, 3u}, {1u, 4u}})
        p3.coeff(mono(i, j)) = K.one();
    return {p1, p2, p3};
}

TripleReport invariant_triple_singularity(u64 q) {
    auto pp = arith::PrimePower::make(q);
    if (q % 5 == 0) throw std::invalid_argument("invariant_triple_singularity: 5 | q");
    unsigned e = 1;
    {
        u64 t = q % 5;
        u64 acc = t;
        while (acc != 1) {
            acc = acc * t % 5;
            e++;
        }
    }
    Field Ke = Field::build(pp.p, pp.r * e);
    Elem zeta = Ke.primitive_root_of_unity(5);

    TripleReport rep;
    rep.q = q;
    rep.e = e;
    rep.ext_q = Ke.q();

    std::array<Elem, 5> pt;
    pt[0] = Ke.one();
    for (int i = 1; i < 5; i++) pt[i] = Ke.mul(pt[i - 1], zeta);

    auto triple = invariant_triple(Ke);
    for (int i = 0; i < 3; i++)
        rep.p_vanish[i] = Ke.is_zero(triple[i].eval(std::span<const Elem>(pt.data(), 5)));

    ff::Mat jac(3, 5);
    for (unsigned i = 0; i < 3; i++)
        for (unsigned v = 0; v < 5; v++)
            jac.at(i, v) = triple[i].derivative(v).eval(std::span<const Elem>(pt.data(), 5));
    rep.jacobian_rank = ff::rank(Ke, jac);
    rep.ok = rep.p_vanish[0] && rep.p_vanish[1] && rep.p_vanish[2] && rep.jacobian_rank <= 2;
    return rep;
}

}  // namespace g5::curves
