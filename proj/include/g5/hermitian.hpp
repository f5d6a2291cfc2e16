#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <vector>

#include "g5/ff.hpp"

namespace g5::hermitian {

// a + b*gamma in O_K = Z[gamma], gamma^2 = gamma - 5, conj(gamma) = 1 - gamma.
struct OKElem {
    mpz_class a = 0, b = 0;

    bool operator==(const OKElem&) const = default;
    bool operator<(const OKElem& o) const { return a != o.a ? a < o.a : b < o.b; }
};

OKElem ok_add(const OKElem& x, const OKElem& y);
OKElem ok_sub(const OKElem& x, const OKElem& y);
OKElem ok_mul(const OKElem& x, const OKElem& y);
OKElem ok_neg(const OKElem& x);
OKElem ok_conj(const OKElem& x);
mpz_class ok_norm(const OKElem& x);  // a^2 + ab + 5 b^2

struct OKMat {
    unsigned n = 0;
    std::vector<OKElem> e;

    OKMat() = default;
    explicit OKMat(unsigned dim) : n(dim), e(std::size_t(dim) * dim) {}
    OKElem& at(unsigned i, unsigned j) { return e[std::size_t(i) * n + j]; }
    const OKElem& at(unsigned i, unsigned j) const { return e[std::size_t(i) * n + j]; }
    bool operator==(const OKMat&) const = default;
    bool operator<(const OKMat& o) const {
        if (n != o.n) return n < o.n;
        return std::lexicographical_compare(e.begin(), e.end(), o.e.begin(), o.e.end());
    }
};

OKMat ok_identity(unsigned n);
OKMat ok_mul(const OKMat& a, const OKMat& b);
OKMat ok_pow(OKMat a, u64 e);
OKMat ok_neg(const OKMat& a);
OKMat conj_transpose(const OKMat& a);
OKElem ok_trace(const OKMat& a);
OKElem ok_det(const OKMat& a);  // cofactor expansion, exact
bool is_hermitian(const OKMat& h);

struct LatticeData {
    OKMat H1;  // source lower triangle completed by conjugate symmetry
    OKMat H1_literal;  // the display taken as a full matrix (not Hermitian)
    OKMat R, S;
};
// Embedded constants; Hermitian-ness and the integer diagonal of H1 are
// validated on load.
LatticeData load_lattice_data();

// Gram matrix of the unimodular positive-definite Hermitian form actually
// preserved by R and S, derived by averaging over <R, S> and normalizing
// inside the rank-3 module of invariant forms. Revalidated on load.
OKMat rs_invariant_gram();

// conj(U)^T H U == H, exactly.
bool isometry_check(const OKMat& u, const OKMat& h);

struct ClosureReport {
    u64 order = 0;
    std::map<u64, u64> order_histogram;  // element order -> count
    bool dihedral_d5 = false;
    std::vector<OKMat> elements;
};
ClosureReport group_closure(const std::vector<OKMat>& gens, u64 max_order);

// roots of x^2 - x + 5 in F_q, ascending by element index; empty if inert
std::vector<ff::Elem> split_roots(const ff::Field& F);

// entrywise a + b*gamma -> a + b*g for a chosen root g
ff::Mat reduce_mod_q(const OKMat& m, const ff::Field& F, const ff::Elem& root);

}  // namespace g5::hermitian
