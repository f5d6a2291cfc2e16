#include "g5/dihedral.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace g5::dihedral {

using ff::Elem;
using ff::Field;
using ff::Mat;

PlanePair build_plane_generators(const Field& F, unsigned m, unsigned n, int sign) {
    if (F.q() % 5 != 1) throw std::invalid_argument("build_plane_generators: q != 1 mod 5");
    if (m == 0 || m > 4 || n == 0 || n > 4 || m == n)
        throw std::invalid_argument("build_plane_generators: need distinct m, n in 1..4");
    if ((m + n) % 5 != 0)
        throw std::invalid_argument("build_plane_generators: m + n != 0 mod 5");
    if (sign != 1 && sign != -1) throw std::invalid_argument("build_plane_generators: sign");

    PlanePair pp;
    pp.F = &F;
    pp.m = m;
    pp.n = n;
    pp.sign = sign;
    pp.zeta = F.primitive_root_of_unity(5);

    pp.phi = Mat(3, 3);
    pp.phi.at(0, 0) = F.one();
    pp.phi.at(1, 1) = F.pow(pp.zeta, n);
    pp.phi.at(2, 2) = F.pow(pp.zeta, m);

    pp.sigma = Mat(3, 3);
    pp.sigma.at(0, 0) = sign == 1 ? F.one() : F.neg(F.one());
    pp.sigma.at(1, 2) = F.pow(pp.zeta, m);
    pp.sigma.at(2, 1) = F.pow(pp.zeta, n);

    if (projective_order(F, pp.phi) != 5) throw std::logic_error("phi: projective order != 5");
    if (projective_order(F, pp.sigma) != 2) throw std::logic_error("sigma: projective order != 2");
    Mat psp = ff::mat_mul(F, ff::mat_mul(F, pp.phi, pp.sigma), pp.phi);
    if (!projectively_equal(F, psp, pp.sigma)) throw std::logic_error("phi sigma phi != sigma");
    return pp;
}

static bool is_scalar(const Field& F, const Mat& m) {
    Elem d = m.at(0, 0);
    if (F.is_zero(d)) return false;
    for (unsigned i = 0; i < m.rows; i++)
        for (unsigned j = 0; j < m.cols; j++) {
            if (i == j ? !(m.at(i, j) == d) : !F.is_zero(m.at(i, j))) return false;
        }
    return true;
}

u64 projective_order(const Field& F, const Mat& m, u64 cap) {
    Mat p = m;
    for (u64 k = 1; k <= cap; k++) {
        if (is_scalar(F, p)) return k;
        p = ff::mat_mul(F, p, m);
    }
    return 0;
}

bool projectively_equal(const Field& F, const Mat& a, const Mat& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    Elem lambda = F.zero();
    for (unsigned i = 0; i < a.rows; i++)
        for (unsigned j = 0; j < a.cols; j++) {
            bool za = F.is_zero(a.at(i, j)), zb = F.is_zero(b.at(i, j));
            if (za != zb) return false;
            if (za) continue;
            Elem l = F.mul(b.at(i, j), F.inv(a.at(i, j)));
            if (F.is_zero(lambda))
                lambda = l;
            else if (!(lambda == l))
                return false;
        }
    return !F.is_zero(lambda);
}

bool invariant_under(const mpoly::HPoly& f, const Mat& g) {
    return f.proportional(f.compose_linear(g));
}

static mpoly::HPoly quintic_form(const curves::QuinticModel& model) {
    const Field& K = *model.F;
    mpoly::HPoly f(K, 3, 5);
    f.coeff({0, 5, 0}) = K.one();
    f.coeff({0, 0, 5}) = K.one();
    f.coeff({1, 2, 2}) = model.a3;
    f.coeff({3, 1, 1}) = model.a4;
    return f;
}

bool check_quintic_invariance(const curves::QuinticModel& model, const PlanePair& pair) {
    auto f = quintic_form(model);
    return invariant_under(f, pair.phi) && invariant_under(f, pair.sigma);
}

SpaceGenerators build_p4_generators(const Field& F) {
    if (F.q() % 5 != 1) throw std::invalid_argument("build_p4_generators: q != 1 mod 5");
    SpaceGenerators g;
    g.F = &F;
    g.zeta = F.primitive_root_of_unity(5);
    auto zp = [&](unsigned k) { return F.pow(g.zeta, k); };

    g.Rbar = Mat(5, 5);
    g.Rbar.at(0, 0) = zp(3);
    g.Rbar.at(1, 1) = zp(4);
    g.Rbar.at(2, 2) = zp(2);
    g.Rbar.at(3, 3) = zp(1);
    g.Rbar.at(4, 4) = F.one();

    g.Sbar = Mat(5, 5);
    g.Sbar.at(0, 2) = zp(2);
    g.Sbar.at(1, 3) = zp(1);
    g.Sbar.at(2, 0) = zp(3);
    g.Sbar.at(3, 1) = zp(4);
    g.Sbar.at(4, 4) = F.one();

    // exact identities in this normalization
    Mat id = ff::identity(F, 5);
    if (!(ff::mat_pow(F, g.Rbar, 5) == id)) throw std::logic_error("Rbar^5 != I");
    if (!(ff::mat_pow(F, g.Sbar, 2) == id)) throw std::logic_error("Sbar^2 != I");
    if (!(ff::mat_mul(F, ff::mat_mul(F, g.Rbar, g.Sbar), g.Rbar) == g.Sbar))
        throw std::logic_error("Rbar Sbar Rbar != Sbar");
    return g;
}

std::optional<TildePair> check_span_stability(const curves::QuadricSystem& system,
                                              const SpaceGenerators& gens) {
    const Field& F = *system.F;
    auto qs = system.quadrics();
    const unsigned dim = qs[0].basis().size();  // 15 monomials

    ff::Mat A(dim, 3);
    for (unsigned j = 0; j < 3; j++) {
        auto cs = qs[j].coeffs();
        for (unsigned i = 0; i < dim; i++) A.at(i, j) = cs[i];
    }
    if (ff::rank(F, A) != 3)
        throw std::invalid_argument("check_span_stability: quadrics linearly dependent");

    auto induced = [&](const Mat& g) -> std::optional<Mat> {
        Mat t(3, 3);
        for (unsigned j = 0; j < 3; j++) {
            auto img = qs[j].compose_linear(g);
            std::vector<Elem> b(img.coeffs().begin(), img.coeffs().end());
            auto sol = ff::solve(F, A, b);
            if (!sol.consistent) return std::nullopt;
            for (unsigned i = 0; i < 3; i++) t.at(i, j) = sol.particular[i];
        }
        return t;
    };

    auto tr = induced(gens.Rbar);
    if (!tr) return std::nullopt;
    auto ts = induced(gens.Sbar);
    if (!ts) return std::nullopt;

    TildePair out;
    out.tildeR = *tr;
    out.tildeS = *ts;

    // shape: tildeR diagonal; its eigenvalue ratios mark case 1 or 2
    bool diag = true;
    for (unsigned i = 0; i < 3; i++)
        for (unsigned j = 0; j < 3; j++)
            if (i != j && !F.is_zero(out.tildeR.at(i, j))) diag = false;
    if (diag && !F.is_zero(out.tildeR.at(0, 0))) {
        Elem i0 = F.inv(out.tildeR.at(0, 0));
        Elem r1 = F.mul(out.tildeR.at(1, 1), i0), r2 = F.mul(out.tildeR.at(2, 2), i0);
        auto zp = [&](unsigned k) { return F.pow(gens.zeta, k); };
        if ((r1 == zp(1) && r2 == zp(4)) || (r1 == zp(4) && r2 == zp(1)))
            out.detected_case = 1;
        else if ((r1 == zp(2) && r2 == zp(3)) || (r1 == zp(3) && r2 == zp(2)))
            out.detected_case = 2;
    }
    // tildeS: +-1 block on Q1, antidiagonal on (Q2, Q3)
    bool anti = !F.is_zero(out.tildeS.at(0, 0)) && F.is_zero(out.tildeS.at(0, 1)) &&
                F.is_zero(out.tildeS.at(0, 2)) && F.is_zero(out.tildeS.at(1, 0)) &&
                F.is_zero(out.tildeS.at(2, 0)) && F.is_zero(out.tildeS.at(1, 1)) &&
                F.is_zero(out.tildeS.at(2, 2)) && !F.is_zero(out.tildeS.at(1, 2)) &&
                !F.is_zero(out.tildeS.at(2, 1));
    Mat id = ff::identity(F, 3);
    bool rel = projectively_equal(F, ff::mat_pow(F, out.tildeR, 5), id) &&
               projectively_equal(F, ff::mat_pow(F, out.tildeS, 2), id) &&
               projectively_equal(
                   F, ff::mat_mul(F, ff::mat_mul(F, out.tildeR, out.tildeS), out.tildeR),
                   out.tildeS);
    out.shape_ok = diag && anti && rel && out.detected_case != 0;
    return out;
}

GroupReport group_relations(const Field& F, const std::vector<Mat>& gens, u64 max_order) {
    GroupReport rep;
    if (gens.empty()) return rep;
    unsigned n = gens[0].rows;
    for (const auto& g : gens)
        if (g.rows != n || g.cols != n) throw std::invalid_argument("group_relations: sizes differ");

    auto key = [&](const Mat& m) {
        std::vector<u64> k;
        k.reserve(m.e.size());
        for (const auto& x : m.e) k.push_back(F.index(x));
        return k;
    };

    Mat id = ff::identity(F, n);
    std::map<std::vector<u64>, Mat> seen;
    seen.emplace(key(id), id);
    std::vector<Mat> frontier = {id};
    while (!frontier.empty()) {
        std::vector<Mat> next;
        for (const auto& a : frontier) {
            for (const auto& g : gens) {
                Mat c = ff::mat_mul(F, a, g);
                auto k = key(c);
                if (seen.emplace(k, c).second) {
                    next.push_back(std::move(c));
                    if (seen.size() > max_order) {
                        rep.truncated = true;
                        throw ResourceError("group_relations: closure exceeds max_order");
                    }
                }
            }
        }
        frontier = std::move(next);
    }

    rep.order = seen.size();
    for (const auto& [k, m] : seen) {
        Mat p = m;
        u64 ord = 1;
        while (!(p == id)) {
            p = ff::mat_mul(F, p, m);
            ord++;
            if (ord > rep.order) throw std::logic_error("element order exceeds group order");
        }
        rep.element_orders.push_back(ord);
    }
    std::sort(rep.element_orders.begin(), rep.element_orders.end());

    if (rep.order == 10) {
        std::vector<const Mat*> fives, twos;
        for (const auto& [k, m] : seen) {
            Mat p = m;
            u64 ord = 1;
            while (!(p == id)) {
                p = ff::mat_mul(F, p, m);
                ord++;
            }
            if (ord == 5) fives.push_back(&m);
            if (ord == 2) twos.push_back(&m);
        }
        for (auto* r : fives) {
            for (auto* s : twos) {
                Mat rsr = ff::mat_mul(F, ff::mat_mul(F, *r, *s), *r);
                if (rsr == *s) {
                    rep.dihedral_d5 = true;
                    break;
                }
            }
            if (rep.dihedral_d5) break;
        }
    }
    return rep;
}

}  // namespace g5::dihedral
