#pragma once

#include <array>
#include <span>
#include <vector>

#include "g5/ff.hpp"

namespace g5::mpoly {

using Expo = std::array<u8, 8>;  // exponent vector, nvars <= 8

// All monomials of fixed total degree in n variables, in decreasing
// lexicographic order of the exponent vector (first variable most
// significant): (d,0,..), (d-1,1,0,..), ... This ordering is frozen;
// coefficient vectors in matrices and reports use it.
class MonoBasis {
  public:
    MonoBasis(unsigned nvars, unsigned degree);
    unsigned size() const { return unsigned(list_.size()); }
    const Expo& at(unsigned i) const { return list_[i]; }
    unsigned find(const Expo& e) const;  // throws if absent
    unsigned nvars() const { return nvars_; }
    unsigned degree() const { return degree_; }

  private:
    unsigned nvars_, degree_;
    std::vector<Expo> list_;
};

// Dense homogeneous polynomial over F_q on a MonoBasis.
class HPoly {
  public:
    HPoly(const ff::Field& F, unsigned nvars, unsigned degree);

    const ff::Field& field() const { return *F_; }
    unsigned nvars() const { return basis_.nvars(); }
    unsigned degree() const { return basis_.degree(); }
    const MonoBasis& basis() const { return basis_; }

    ff::Elem& coeff(const Expo& e) { return c_[basis_.find(e)]; }
    const ff::Elem& coeff(const Expo& e) const { return c_[basis_.find(e)]; }
    std::span<const ff::Elem> coeffs() const { return c_; }
    std::span<ff::Elem> coeffs() { return c_; }

    bool is_zero() const;
    ff::Elem eval(std::span<const ff::Elem> point) const;

    // P(M x): substitute x_i <- sum_j M(i,j) x_j
    HPoly compose_linear(const ff::Mat& m) const;
    HPoly derivative(unsigned var) const;  // degree drops by 1

    HPoly add(const HPoly& o) const;
    HPoly scale(const ff::Elem& s) const;
    bool equals(const HPoly& o) const;
    // o = lambda * this for some lambda != 0
    bool proportional(const HPoly& o) const;

  private:
    const ff::Field* F_;
    MonoBasis basis_;
    std::vector<ff::Elem> c_;
};

// helper: monomial x_0^{e0} ... as HPoly term builder
HPoly monomial(const ff::Field& F, unsigned nvars, const Expo& e, const ff::Elem& coeff);

}  // namespace g5::mpoly
