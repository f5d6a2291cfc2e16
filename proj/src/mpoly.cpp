#include "g5/mpoly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace g5::mpoly {

static void gen_expos(unsigned nvars, unsigned degree, unsigned pos, unsigned left, Expo& cur,
                      std::vector<Expo>& out) {
    if (pos + 1 == nvars) {
        cur[pos] = u8(left);
        out.push_back(cur);
        cur[pos] = 0;
        return;
    }
    for (int e = int(left); e >= 0; e--) {
        cur[pos] = u8(e);
        gen_expos(nvars, degree, pos + 1, left - e, cur, out);
    }
    cur[pos] = 0;
}

MonoBasis::MonoBasis(unsigned nvars, unsigned degree) : nvars_(nvars), degree_(degree) {
    if (nvars == 0 || nvars > 8) throw std::invalid_argument("MonoBasis: nvars out of range");
    Expo cur{};
    gen_expos(nvars, degree, 0, degree, cur, list_);
}

unsigned MonoBasis::find(const Expo& e) const {
    auto it = std::lower_bound(list_.begin(), list_.end(), e, [](const Expo& a, const Expo& b) {
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    });
    if (it == list_.end() || *it != e) throw std::invalid_argument("MonoBasis: monomial not in basis");
    return unsigned(it - list_.begin());
}

HPoly::HPoly(const ff::Field& F, unsigned nvars, unsigned degree)
    : F_(&F), basis_(nvars, degree), c_(basis_.size(), F.zero()) {}

bool HPoly::is_zero() const {
    for (const auto& x : c_)
        if (!F_->is_zero(x)) return false;
    return true;
}

ff::Elem HPoly::eval(std::span<const ff::Elem> point) const {
    if (point.size() != basis_.nvars()) throw std::invalid_argument("eval: wrong point size");
    ff::Elem acc = F_->zero();
    for (unsigned i = 0; i < basis_.size(); i++) {
        if (F_->is_zero(c_[i])) continue;
        ff::Elem term = c_[i];
        const Expo& e = basis_.at(i);
        for (unsigned v = 0; v < basis_.nvars(); v++)
            for (unsigned k = 0; k < e[v]; k++) term = F_->mul(term, point[v]);
        acc = F_->add(acc, term);
    }
    return acc;
}

HPoly HPoly::compose_linear(const ff::Mat& m) const {
    unsigned n = basis_.nvars();
    if (m.rows != n || m.cols != n) throw std::invalid_argument("compose_linear: bad matrix");
    HPoly out(*F_, n, basis_.degree());
    // expand each monomial as a product of linear forms
    for (unsigned i = 0; i < basis_.size(); i++) {
        if (F_->is_zero(c_[i])) continue;
        const Expo& e = basis_.at(i);
        // running dense product in the full monomial basis of growing degree
        std::map<Expo, ff::Elem> acc;
        Expo zero{};
        acc[zero] = c_[i];
        for (unsigned v = 0; v < n; v++) {
            for (unsigned k = 0; k < e[v]; k++) {
                std::map<Expo, ff::Elem> next;
                for (const auto& [ex, cf] : acc) {
                    for (unsigned j = 0; j < n; j++) {
                        const ff::Elem& mv = m.at(v, j);
                        if (F_->is_zero(mv)) continue;
                        Expo ex2 = ex;
                        ex2[j]++;
                        ff::Elem add = F_->mul(cf, mv);
                        auto [it, fresh] = next.try_emplace(ex2, add);
                        if (!fresh) it->second = F_->add(it->second, add);
                    }
                }
                acc = std::move(next);
            }
        }
        for (const auto& [ex, cf] : acc) {
            unsigned idx = out.basis_.find(ex);
            out.c_[idx] = F_->add(out.c_[idx], cf);
        }
    }
    return out;
}

HPoly HPoly::derivative(unsigned var) const {
    if (basis_.degree() == 0) throw std::invalid_argument("derivative of constant basis");
    HPoly out(*F_, basis_.nvars(), basis_.degree() - 1);
    for (unsigned i = 0; i < basis_.size(); i++) {
        const Expo& e = basis_.at(i);
        if (e[var] == 0 || F_->is_zero(c_[i])) continue;
        Expo e2 = e;
        e2[var]--;
        unsigned idx = out.basis_.find(e2);
        out.c_[idx] = F_->add(out.c_[idx], F_->mul(F_->from_int(e[var]), c_[i]));
    }
    return out;
}

HPoly HPoly::add(const HPoly& o) const {
    HPoly out = *this;
    for (unsigned i = 0; i < basis_.size(); i++) out.c_[i] = F_->add(out.c_[i], o.c_[i]);
    return out;
}

HPoly HPoly::scale(const ff::Elem& s) const {
    HPoly out = *this;
    for (auto& x : out.c_) x = F_->mul(x, s);
    return out;
}

bool HPoly::equals(const HPoly& o) const { return c_ == o.c_; }

bool HPoly::proportional(const HPoly& o) const {
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    ff::Elem lambda = F_->zero();
    for (unsigned i = 0; i < basis_.size(); i++) {
        bool za = F_->is_zero(c_[i]), zb = F_->is_zero(o.c_[i]);
        if (za != zb) return false;
        if (za) continue;
        ff::Elem l = F_->mul(o.c_[i], F_->inv(c_[i]));
        if (F_->is_zero(lambda))
            lambda = l;
        else if (!(lambda == l))
            return false;
    }
    return true;
}

HPoly monomial(const ff::Field& F, unsigned nvars, const Expo& e, const ff::Elem& coeff) {
    unsigned deg = 0;
    for (unsigned v = 0; v < nvars; v++) deg += e[v];
    HPoly p(F, nvars, deg);
    p.coeff(e) = coeff;
    return p;
}

}  // namespace g5::mpoly
