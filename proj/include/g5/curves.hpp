#pragma once

#include <optional>
#include <string>
#include <vector>

#include "g5/arith.hpp"
#include "g5/ff.hpp"
#include "g5/mpoly.hpp"

namespace g5::curves {

// F(X,Y,Z) = Y^5 + a3 X Y^2 Z^2 + a4 X^3 Y Z + Z^5.
// The plane model of the trigonal family; [1:0:0] is its node when a4 != 0.
struct QuinticModel {
    const ff::Field* F = nullptr;
    ff::Elem a3, a4;

    bool degenerate() const { return F->is_zero(a4); }
};

using ProjPoint3 = std::array<ff::Elem, 3>;

struct PlaneCountReport {
    u64 total = 0;   // points of the plane curve over F_q
    u64 smooth = 0;  // total minus singular points on the curve
    // points as element-index triples (canonical representatives)
    std::vector<std::array<u64, 3>> singular_fq;
    std::vector<std::array<u64, 3>> singular_fq2;  // indices in F_{q^2}
    std::optional<u64> adjusted;                   // smooth + 2 for a clean node
    bool degenerate = false;
    bool extra_singular = false;
    bool fq2_checked = false;
};

// Canonical P^2 enumeration: first nonzero coordinate normalized to 1,
// blocks [1:y:z], [0:1:z], [0:0:1], inner coordinates by element index,
// last coordinate fastest. Frozen.
PlaneCountReport count_plane_points(const QuinticModel& m, bool check_fq2 = true,
                                    u64 budget = u64(1) << 28);

struct SingularLocus {
    ff::Field ext;  // F_{q^e}
    std::vector<ProjPoint3> points;
};
SingularLocus singular_locus(const QuinticModel& m, unsigned e, u64 budget = u64(1) << 28);

enum class SearchMode { fast, naive };

constexpr u8 FLAG_DEGENERATE = 1;      // a4 = 0
constexpr u8 FLAG_EXTRA_SINGULAR = 2;  // singular point beyond the node over F_q / F_{q^2}

struct TrigonalChunk {
    u64 a3_lo = 0, a3_hi = 0;  // element-index range, slab of a3 values
    std::vector<u32> total;    // (a3_hi-a3_lo) x q, row-major, a4 index fastest
    std::vector<u32> singular;
    std::vector<u8> flags;
};

struct SearchTable {
    u64 q = 0;
    u64 n_max = 0;  // hws_bound(q, 5)
    std::vector<u32> total;     // q*q, index a3*q + a4 (element indices)
    std::vector<u32> singular;
    std::vector<u8> flags;
    u64 max_adjusted = 0;
    std::vector<std::pair<u64, u64>> argmax;  // (a3,a4) indices attaining max_adjusted
    u64 degenerate_pairs = 0;
    u64 extra_singular_pairs = 0;
    bool below_bound = false;  // max_adjusted < n_max over clean models
    u64 digest = 0;                 // over (q, total, singular, flags); mode-independent

    std::optional<u64> adjusted(u64 a3, u64 a4) const;
};

// Extra-singular bitmap via enumeration of P^2(F_{q^2}): for every point the
// parameter pairs making it singular solve a small affine-linear system.
// Naive-mode input; independent of the closed-form route used in fast mode.
std::vector<u8> trigonal_fq2_extra_bitmap(const ff::Field& F);

TrigonalChunk trigonal_chunk(const ff::Field& F, u64 a3_lo, u64 a3_hi, SearchMode mode,
                             const std::vector<u8>* naive_extra_bitmap);

SearchTable assemble_table(u64 q, const std::vector<TrigonalChunk>& chunks);

// Convenience: full sweep without checkpointing. mode == naive requires q <= 64.
SearchTable trigonal_search(u64 q, SearchMode mode, unsigned threads = 1);

u64 trigonal_chunk_width(u64 q);  // frozen chunking policy

// ---- quadric systems in P^4 ----

struct QuadricSystem {
    const ff::Field* F = nullptr;
    int icase = 1;  // 1 or 2
    std::array<ff::Elem, 9> a{};

    std::vector<mpoly::HPoly> quadrics() const;  // Q1, Q2, Q3
};

// |{Q1 = Q2 = Q3 = 0}| in P^4(F_q) by canonical representatives.
u64 count_p4_points(const QuadricSystem& s, u64 budget = u64(1) << 31, unsigned threads = 1);
// Same count through the 5 nested affine charts and the generic evaluator.
u64 count_p4_points_charts(const QuadricSystem& s, u64 budget = u64(1) << 31);

struct QuadricCandidate {
    std::array<u64, 9> coeff_indices;
    u64 count;
};
// Seeded uniform sampling; reports systems whose count attains hws_bound(q,5).
std::vector<QuadricCandidate> quadric_random_search(u64 q, int icase, u64 samples, u64 seed,
                                                    u64 budget = u64(1) << 31);

// ---- the fixed quadric triple ----

// P1 = x^2+y^2+z^2+u^2+v^2, P2 = xy+yz+zu+uv+xv, P3 = xz+yu+zv+xu+yv
std::vector<mpoly::HPoly> invariant_triple(const ff::Field& F);

struct TripleReport {
    u64 q = 0;
    unsigned e = 0;  // multiplicative order of q mod 5
    u64 ext_q = 0;
    bool p_vanish[3] = {false, false, false};
    unsigned jacobian_rank = 0;
    bool ok = false;  // all three vanish and rank <= 2
};
TripleReport invariant_triple_singularity(u64 q);

}  // namespace g5::curves
