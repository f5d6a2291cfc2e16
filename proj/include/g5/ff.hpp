#pragma once

#include <array>
#include <span>
#include <vector>

#include "g5/common.hpp"

namespace g5::ff {

// Dense element of F_{p^r}, coefficients low-degree first, reduced mod p.
// Degree capped at 20: the singular-triple checks build F_{q^4} for q up to
// p^5 (q = 32 needs F_{2^20}).
constexpr unsigned MAX_DEG = 20;

struct Elem {
    std::array<u64, MAX_DEG> c{};
    bool operator==(const Elem&) const = default;
};

// F_{p^r} with an explicit monic irreducible modulus over F_p.
//
// Determinism conventions (golden outputs depend on these):
//  * Field::build(p, r) picks the lexicographically smallest monic
//    irreducible modulus, coefficient vectors (c0,...,c_{r-1}) compared
//    low-degree-first.
//  * Elements are indexed by sum c_i p^i; enumeration order = index order.
//  * primitive_root_of_unity(k) = g^((q-1)/k) where g is the generator of
//    smallest index.
class Field {
  public:
    static Field build(u64 p, unsigned r);
    static Field with_modulus(u64 p, std::vector<u64> modulus);  // verified irreducible

    u64 p() const { return p_; }
    unsigned deg() const { return r_; }
    u64 q() const { return q_; }
    const std::vector<u64>& modulus() const { return mod_; }

    Elem zero() const { return Elem{}; }
    Elem one() const;
    Elem from_int(u64 v) const;  // image of an integer in the prime subfield
    Elem from_int_signed(i64 v) const;
    Elem from_coeffs(std::span<const u64> cs) const;
    Elem from_index(u64 idx) const;
    u64 index(const Elem& a) const;

    bool is_zero(const Elem& a) const { return a == Elem{}; }

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem& a) const;  // throws on zero
    Elem pow(Elem a, u128 e) const;

    u64 mult_order(const Elem& a) const;  // of a != 0
    Elem primitive_root_of_unity(u64 k) const;
    std::vector<Elem> sqrt(const Elem& a) const;            // 0, 1 or 2 roots
    std::vector<Elem> quadratic_roots(const Elem& b, const Elem& c) const;  // x^2+bx+c, char != 2

    std::vector<u64> q_minus_1_factors() const;  // distinct primes

  private:
    Field() = default;
    u64 p_ = 0;
    unsigned r_ = 0;
    u64 q_ = 0;
    std::vector<u64> mod_;  // length r+1, monic

    void reduce(std::array<u64, 2 * MAX_DEG>& t) const;
};

// Deterministic embedding F_{p^r} -> F_{p^s}, r | s. The generator of the
// small field maps to the root of its modulus with smallest index.
class Embedding {
  public:
    Embedding(const Field& from, const Field& to);
    Elem map(const Elem& a) const;
    const Field& from() const { return *from_; }
    const Field& to() const { return *to_; }

  private:
    const Field* from_;
    const Field* to_;
    std::vector<Elem> gen_pows_;  // images of x^0..x^{r-1}
};

struct Mat {
    unsigned rows = 0, cols = 0;
    std::vector<Elem> e;

    Mat() = default;
    Mat(unsigned r, unsigned c) : rows(r), cols(c), e(std::size_t(r) * c) {}
    Elem& at(unsigned i, unsigned j) { return e[std::size_t(i) * cols + j]; }
    const Elem& at(unsigned i, unsigned j) const { return e[std::size_t(i) * cols + j]; }
    bool operator==(const Mat&) const = default;
};

Mat identity(const Field& F, unsigned n);
Mat mat_mul(const Field& F, const Mat& a, const Mat& b);
Mat mat_pow(const Field& F, Mat a, u64 e);
Mat transpose(const Mat& a);
unsigned rank(const Field& F, Mat m);

struct SolveResult {
    bool consistent = false;
    std::vector<Elem> particular;
    unsigned nullity = 0;
};
// One solution of A x = b plus nullspace dimension, or inconsistent.
SolveResult solve(const Field& F, Mat a, std::vector<Elem> b);

// Characteristic polynomial det(xI - M), monic, coefficients low-degree
// first. Hessenberg reduction + recurrence; valid in any characteristic.
std::vector<Elem> charpoly(const Field& F, const Mat& m);

}  // namespace g5::ff
