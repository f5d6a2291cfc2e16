#include "g5/hermitian.hpp"

#include <map>
#include <stdexcept>

namespace g5::hermitian {

OKElem ok_add(const OKElem& x, const OKElem& y) { return {x.a + y.a, x.b + y.b}; }
OKElem ok_sub(const OKElem& x, const OKElem& y) { return {x.a - y.a, x.b - y.b}; }
OKElem ok_neg(const OKElem& x) { return {-x.a, -x.b}; }

OKElem ok_mul(const OKElem& x, const OKElem& y) {
    // (a + b g)(c + d g), g^2 = g - 5
    return {x.a * y.a - 5 * x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b};
}

OKElem ok_conj(const OKElem& x) { return {x.a + x.b, -x.b}; }
mpz_class ok_norm(const OKElem& x) { return x.a * x.a + x.a * x.b + 5 * x.b * x.b; }

OKMat ok_identity(unsigned n) {
    OKMat m(n);
    for (unsigned i = 0; i < n; i++) m.at(i, i) = {1, 0};
    return m;
}

OKMat ok_mul(const OKMat& a, const OKMat& b) {
    if (a.n != b.n) throw std::invalid_argument("ok_mul: size mismatch");
    OKMat r(a.n);
    for (unsigned i = 0; i < a.n; i++)
        for (unsigned k = 0; k < a.n; k++) {
            const OKElem& aik = a.at(i, k);
            if (aik.a == 0 && aik.b == 0) continue;
            for (unsigned j = 0; j < a.n; j++)
                r.at(i, j) = ok_add(r.at(i, j), ok_mul(aik, b.at(k, j)));
        }
    return r;
}

OKMat ok_pow(OKMat a, u64 e) {
    OKMat r = ok_identity(a.n);
    while (e) {
        if (e & 1) r = ok_mul(r, a);
        a = ok_mul(a, a);
        e >>= 1;
    }
    return r;
}

OKMat ok_neg(const OKMat& a) {
    OKMat r = a;
    for (auto& x : r.e) x = ok_neg(x);
    return r;
}

OKMat conj_transpose(const OKMat& a) {
    OKMat r(a.n);
    for (unsigned i = 0; i < a.n; i++)
        for (unsigned j = 0; j < a.n; j++) r.at(i, j) = ok_conj(a.at(j, i));
    return r;
}

OKElem ok_trace(const OKMat& a) {
    OKElem t;
    for (unsigned i = 0; i < a.n; i++) t = ok_add(t, a.at(i, i));
    return t;
}

OKElem ok_det(const OKMat& a) {
    if (a.n == 1) return a.at(0, 0);
    OKElem total;
    for (unsigned j = 0; j < a.n; j++) {
        const OKElem& lead = a.at(0, j);
        if (lead.a == 0 && lead.b == 0) continue;
        OKMat minor(a.n - 1);
        for (unsigned i = 1; i < a.n; i++) {
            unsigned cc = 0;
            for (unsigned c = 0; c < a.n; c++) {
                if (c == j) continue;
                minor.at(i - 1, cc++) = a.at(i, c);
            }
        }
        OKElem term = ok_mul(lead, ok_det(minor));
        total = (j % 2) ? ok_sub(total, term) : ok_add(total, term);
    }
    return total;
}

bool is_hermitian(const OKMat& h) { return conj_transpose(h) == h; }

namespace {

OKElem g(long a, long b) { return {a, b}; }

OKMat from_rows(std::initializer_list<std::initializer_list<OKElem>> rows) {
    OKMat m(unsigned(rows.size()));
    unsigned i = 0;
    for (const auto& row : rows) {
        unsigned j = 0;
        for (const auto& x : row) m.at(i, j++) = x;
        i++;
    }
    return m;
}

}  // namespace

LatticeData load_lattice_data() {
    LatticeData d;
    // source display: zeros above the diagonal
    d.H1_literal = from_rows({
        {g(3, 0), g(0, 0), g(0, 0), g(0, 0), g(0, 0)},
        {g(0, 1), g(3, 0), g(0, 0), g(0, 0), g(0, 0)},
        {g(0, 0), g(-1, 0), g(3, 0), g(0, 0), g(0, 0)},
        {g(-1, 0), g(0, 0), g(1, 0), g(4, 0), g(0, 0)},
        {g(1, -1), g(0, -1), g(-1, 1), g(1, 1), g(5, 0)},
    });
    d.H1 = d.H1_literal;
    for (unsigned i = 0; i < 5; i++)
        for (unsigned j = i + 1; j < 5; j++) d.H1.at(i, j) = ok_conj(d.H1.at(j, i));

    d.R = from_rows({
        {g(-1, -1), g(-7, 3), g(0, -2), g(4, 0), g(0, 0)},
        {g(1, 1), g(1, 2), g(-2, 0), g(0, 0), g(4, 0)},
        {g(-2, 1), g(-8, 4), g(-1, -2), g(2, 0), g(2, 2)},
        {g(4, -1), g(-6, -1), g(4, -1), g(1, 2), g(2, -1)},
        {g(0, 0), g(6, 0), g(-2, 1), g(0, -1), g(0, -1)},
    });
    d.S = from_rows({
        {g(-1, 0), g(-1, -1), g(2, 0), g(0, 0), g(0, 0)},
        {g(0, 0), g(1, 0), g(0, 0), g(0, 0), g(0, 0)},
        {g(0, 0), g(0, 0), g(1, 0), g(0, 0), g(0, 0)},
        {g(0, 0), g(3, -1), g(0, 1), g(0, 0), g(1, 0)},
        {g(0, 0), g(-3, 1), g(0, -1), g(1, 0), g(0, 0)},
    });

    if (!is_hermitian(d.H1)) throw std::logic_error("lattice data: completed H1 not Hermitian");
    for (unsigned i = 0; i < 5; i++)
        if (d.H1.at(i, i).b != 0) throw std::logic_error("lattice data: H1 diagonal not rational");
    return d;
}

OKMat rs_invariant_gram() {
    // unique integral unimodular positive-definite member of the rank-3
    // module of <R, S>-invariant Hermitian forms
    OKMat h = from_rows({
        {g(4, 0), g(3, -2), g(1, 1), g(-2, 1), g(2, -1)},
        {g(1, 2), g(26, 0), g(-10, 5), g(-4, -3), g(3, -2)},
        {g(2, -1), g(-5, -5), g(7, 0), g(-2, 2), g(-2, 0)},
        {g(-1, -1), g(-7, 3), g(0, -2), g(4, 0), g(0, 0)},
        {g(1, 1), g(1, 2), g(-2, 0), g(0, 0), g(4, 0)},
    });
    if (!is_hermitian(h)) throw std::logic_error("invariant gram: not Hermitian");
    auto det = ok_det(h);
    if (!(det == OKElem{1, 0})) throw std::logic_error("invariant gram: determinant not 1");
    auto d = load_lattice_data();
    if (!isometry_check(d.R, h) || !isometry_check(d.S, h))
        throw std::logic_error("invariant gram: not preserved by R, S");
    return h;
}

bool isometry_check(const OKMat& u, const OKMat& h) {
    return ok_mul(ok_mul(conj_transpose(u), h), u) == h;
}

ClosureReport group_closure(const std::vector<OKMat>& gens, u64 max_order) {
    ClosureReport rep;
    if (gens.empty()) return rep;
    unsigned n = gens[0].n;
    OKMat id = ok_identity(n);
    std::map<OKMat, bool> seen;
    seen.emplace(id, true);
    std::vector<OKMat> frontier = {id};
    while (!frontier.empty()) {
        std::vector<OKMat> next;
        for (const auto& a : frontier) {
            for (const auto& gmat : gens) {
                OKMat c = ok_mul(a, gmat);
                if (seen.emplace(c, true).second) {
                    if (seen.size() > max_order)
                        throw ResourceError("group_closure: exceeds max_order");
                    next.push_back(std::move(c));
                }
            }
        }
        frontier = std::move(next);
    }
    rep.order = seen.size();
    std::vector<const OKMat*> fives, twos;
    for (const auto& [m, _] : seen) {
        OKMat p = m;
        u64 ord = 1;
        while (!(p == id)) {
            p = ok_mul(p, m);
            ord++;
            if (ord > rep.order) throw std::logic_error("group_closure: order overflow");
        }
        rep.order_histogram[ord]++;
        if (ord == 5) fives.push_back(&m);
        if (ord == 2) twos.push_back(&m);
        rep.elements.push_back(m);
    }
    if (rep.order == 10) {
        for (auto* r : fives) {
            for (auto* s : twos) {
                if (ok_mul(ok_mul(*r, *s), *r) == *s) {
                    rep.dihedral_d5 = true;
                    break;
                }
            }
            if (rep.dihedral_d5) break;
        }
    }
    return rep;
}

std::vector<ff::Elem> split_roots(const ff::Field& F) {
    // x^2 - x + 5
    return F.quadratic_roots(F.neg(F.one()), F.from_int(5));
}

ff::Mat reduce_mod_q(const OKMat& m, const ff::Field& F, const ff::Elem& root) {
    // root must satisfy x^2 - x + 5 = 0
    ff::Elem check = F.add(F.sub(F.mul(root, root), root), F.from_int(5));
    if (!F.is_zero(check))
        throw std::invalid_argument("reduce_mod_q: given element is not a root of x^2 - x + 5");
    auto red = [&](const mpz_class& v) {
        mpz_class r = v % F.p();
        if (r < 0) r += F.p();
        return F.from_int(r.get_ui());
    };
    ff::Mat out(m.n, m.n);
    for (unsigned i = 0; i < m.n; i++)
        for (unsigned j = 0; j < m.n; j++) {
            const OKElem& x = m.at(i, j);
            out.at(i, j) = F.add(red(x.a), F.mul(red(x.b), root));
        }
    return out;
}

}  // namespace g5::hermitian
