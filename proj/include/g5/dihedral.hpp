#pragma once

#include <optional>
#include <vector>

#include "g5/curves.hpp"
#include "g5/ff.hpp"
#include "g5/mpoly.hpp"

namespace g5::dihedral {

// phi: [X:Y:Z] -> [X : zeta^n Y : zeta^m Z], sigma the swap with sign;
// m + n = 0 mod 5, m != n.
struct PlanePair {
    const ff::Field* F = nullptr;
    unsigned m = 0, n = 0;
    int sign = +1;
    ff::Elem zeta;
    ff::Mat phi, sigma;
};

PlanePair build_plane_generators(const ff::Field& F, unsigned m, unsigned n, int sign);

// least k >= 1 with M^k scalar; 0 if none below cap
u64 projective_order(const ff::Field& F, const ff::Mat& m, u64 cap = 64);
bool projectively_equal(const ff::Field& F, const ff::Mat& a, const ff::Mat& b);

// F o phi == F and F o sigma == F up to a nonzero scalar
bool check_quintic_invariance(const curves::QuinticModel& model, const PlanePair& pair);
// same test for an arbitrary degree-5 form
bool invariant_under(const mpoly::HPoly& f, const ff::Mat& g);

// Rbar = diag(z^3, z^4, z^2, z, 1), Sbar the swap form with z powers.
struct SpaceGenerators {
    const ff::Field* F = nullptr;
    ff::Elem zeta;
    ff::Mat Rbar, Sbar;
};

SpaceGenerators build_p4_generators(const ff::Field& F);

struct TildePair {
    ff::Mat tildeR, tildeS;  // columns express images of (Q1,Q2,Q3) in the basis
    int detected_case = 0;   // 1, 2 or 0 when the eigenvalue pattern matches neither
    bool shape_ok = false;   // diag / antidiagonal supports + projective relations
};

// Substitutes generators into the quadrics, solves for span membership in
// the 15-monomial basis; nullopt when the span is not stable.
std::optional<TildePair> check_span_stability(const curves::QuadricSystem& system,
                                              const SpaceGenerators& gens);

struct GroupReport {
    u64 order = 0;
    std::vector<u64> element_orders;  // sorted
    bool dihedral_d5 = false;         // order 10, generators 5 & 2 with r s r = s
    bool truncated = false;           // closure exceeded max_order
};

GroupReport group_relations(const ff::Field& F, const std::vector<ff::Mat>& gens, u64 max_order);

}  // namespace g5::dihedral
