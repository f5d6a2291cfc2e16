#include "g5/ff.hpp"

#include <algorithm>
#include <stdexcept>

#include "g5/arith.hpp"

namespace g5::ff {

Elem Field::one() const {
    Elem e{};
    e.c[0] = 1 % p_;
    return e;
}

Elem Field::from_int(u64 v) const {
    Elem e{};
    e.c[0] = v % p_;
    return e;
}

Elem Field::from_int_signed(i64 v) const {
    i64 m = v % i64(p_);
    if (m < 0) m += i64(p_);
    return from_int(u64(m));
}

Elem Field::from_coeffs(std::span<const u64> cs) const {
    if (cs.size() > r_) throw std::invalid_argument("from_coeffs: degree too large");
    Elem e{};
    for (std::size_t i = 0; i < cs.size(); i++) e.c[i] = cs[i] % p_;
    return e;
}

Elem Field::from_index(u64 idx) const {
    Elem e{};
    for (unsigned i = 0; i < r_ && idx; i++) {
        e.c[i] = idx % p_;
        idx /= p_;
    }
    return e;
}

u64 Field::index(const Elem& a) const {
    u64 idx = 0;
    for (unsigned i = r_; i-- > 0;) idx = idx * p_ + a.c[i];
    return idx;
}

Elem Field::add(const Elem& a, const Elem& b) const {
    Elem r{};
    for (unsigned i = 0; i < r_; i++) {
        u64 s = a.c[i] + b.c[i];
        r.c[i] = s >= p_ ? s - p_ : s;
    }
    return r;
}

Elem Field::sub(const Elem& a, const Elem& b) const {
    Elem r{};
    for (unsigned i = 0; i < r_; i++) {
        u64 s = a.c[i] + p_ - b.c[i];
        r.c[i] = s >= p_ ? s - p_ : s;
    }
    return r;
}

Elem Field::neg(const Elem& a) const { return sub(Elem{}, a); }

void Field::reduce(std::array<u64, 2 * MAX_DEG>& t) const {
    // top-down reduction by the monic modulus
    for (unsigned k = 2 * r_ - 2; k + 1 > r_; k--) {
        u64 c = t[k];
        if (c == 0) continue;
        t[k] = 0;
        for (unsigned i = 0; i < r_; i++) {
            u64 m = u64(u128(c) * mod_[i] % p_);
            u64 pos = k - r_ + i;
            t[pos] = (t[pos] + p_ - m) % p_;
        }
    }
}

Elem Field::mul(const Elem& a, const Elem& b) const {
    if (r_ == 1) {
        Elem r{};
        r.c[0] = u64(u128(a.c[0]) * b.c[0] % p_);
        return r;
    }
    std::array<u64, 2 * MAX_DEG> t{};
    for (unsigned i = 0; i < r_; i++) {
        if (a.c[i] == 0) continue;
        for (unsigned j = 0; j < r_; j++) {
            if (b.c[j] == 0) continue;
            t[i + j] = u64((u128(a.c[i]) * b.c[j] + t[i + j]) % p_);
        }
    }
    reduce(t);
    Elem r{};
    for (unsigned i = 0; i < r_; i++) r.c[i] = t[i];
    return r;
}

Elem Field::pow(Elem a, u128 e) const {
    Elem r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Elem Field::inv(const Elem& a) const {
    if (is_zero(a)) throw std::domain_error("division by zero in F_q");
    return pow(a, q_ - 2);
}

static bool poly_irreducible(u64 p, const std::vector<u64>& mod);

Field Field::with_modulus(u64 p, std::vector<u64> modulus) {
    if (!arith::is_prime_u64(p)) throw std::invalid_argument("Field: p not prime");
    if (modulus.size() < 2 || modulus.back() != 1)
        throw std::invalid_argument("Field: modulus must be monic of degree >= 1");
    unsigned r = unsigned(modulus.size() - 1);
    if (r > MAX_DEG) throw std::invalid_argument("Field: degree > 8 unsupported");
    u128 q = 1;
    for (unsigned i = 0; i < r; i++) {
        q *= p;
        if (q >= (u128(1) << 63)) throw std::invalid_argument("Field: q >= 2^63");
    }
    for (auto& c : modulus) c %= p;
    modulus.back() = 1;
    if (r > 1 && !poly_irreducible(p, modulus)) throw std::invalid_argument("Field: modulus reducible");
    Field F;
    F.p_ = p;
    F.r_ = r;
    F.q_ = u64(q);
    F.mod_ = std::move(modulus);
    return F;
}

// ---- polynomial helpers over F_p for modulus search ----

static std::vector<u64> pmulmod(const std::vector<u64>& a, const std::vector<u64>& b,
                                const std::vector<u64>& m, u64 p) {
    std::vector<u64> t(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); i++) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); j++)
            t[i + j] = u64((u128(a[i]) * b[j] + t[i + j]) % p);
    }
    std::size_t deg = m.size() - 1;
    for (std::size_t k = t.size(); k-- > deg;) {
        u64 c = t[k];
        if (!c) continue;
        t[k] = 0;
        for (std::size_t i = 0; i < deg; i++)
            t[k - deg + i] = (t[k - deg + i] + p - u64(u128(c) * m[i] % p)) % p;
    }
    t.resize(deg);
    return t;
}

static std::vector<u64> xpow(u128 e, const std::vector<u64>& m, u64 p) {
    std::size_t deg = m.size() - 1;
    std::vector<u64> result(deg, 0), base(deg, 0);
    result[0] = 1;
    if (deg == 1)
        base[0] = p - m[0] % p;  // x ≡ -m0
    else
        base[1] = 1;
    while (e) {
        if (e & 1) result = pmulmod(result, base, m, p);
        base = pmulmod(base, base, m, p);
        e >>= 1;
    }
    return result;
}

static int pdeg(const std::vector<u64>& a) {
    for (int i = int(a.size()) - 1; i >= 0; i--)
        if (a[i]) return i;
    return -1;
}

static std::vector<u64> pgcd(std::vector<u64> a, std::vector<u64> b, u64 p) {
    while (pdeg(b) >= 0) {
        int da = pdeg(a), db = pdeg(b);
        if (da < db) {
            std::swap(a, b);
            continue;
        }
        u64 binv = 1;
        {  // inverse of b's leading coefficient mod p
            u64 base = b[db], e = p - 2, r = 1;
            while (e) {
                if (e & 1) r = u64(u128(r) * base % p);
                base = u64(u128(base) * base % p);
                e >>= 1;
            }
            binv = r;
        }
        u64 f = u64(u128(a[da]) * binv % p);
        for (int i = 0; i <= db; i++)
            a[da - db + i] = (a[da - db + i] + p - u64(u128(f) * b[i] % p)) % p;
    }
    return a;
}

static bool poly_irreducible(u64 p, const std::vector<u64>& mod) {
    unsigned r = unsigned(mod.size() - 1);
    u128 pr = 1;
    for (unsigned i = 0; i < r; i++) pr *= p;
    // x^(p^r) == x mod m
    auto xq = xpow(pr, mod, p);
    std::vector<u64> x(r, 0);
    if (r == 1)
        x[0] = p - mod[0] % p;
    else
        x[1] = 1;
    if (xq != x) return false;
    // gcd(x^(p^(r/l)) - x, m) = 1 for prime l | r
    for (unsigned l : {2u, 3u, 5u, 7u}) {
        if (r % l != 0) continue;
        u128 pk = 1;
        for (unsigned i = 0; i < r / l; i++) pk *= p;
        auto xk = xpow(pk, mod, p);
        for (unsigned i = 0; i < r; i++) {
            u64 sub = (i < x.size()) ? x[i] : 0;
            xk[i] = (xk[i] + p - sub) % p;
        }
        if (pdeg(pgcd(mod, xk, p)) != 0) return false;
    }
    return true;
}

Field Field::build(u64 p, unsigned r) {
    if (!arith::is_prime_u64(p)) throw std::invalid_argument("Field: p not prime");
    if (r == 0 || r > MAX_DEG) throw std::invalid_argument("Field: bad degree");
    if (r == 1) {
        Field F;
        F.p_ = p;
        F.r_ = 1;
        F.q_ = p;
        F.mod_ = {0, 1};  // x, by convention; arithmetic is mod p
        return F;
    }
    // lexicographically smallest monic irreducible, (c0,...,c_{r-1}) low-first
    std::vector<u64> cs(r, 0);
    for (;;) {
        std::vector<u64> mod(cs.begin(), cs.end());
        mod.push_back(1);
        if (mod[0] != 0 && poly_irreducible(p, mod)) return with_modulus(p, std::move(mod));
        // increment (c_{r-1} fastest)
        int i = int(r) - 1;
        while (i >= 0 && ++cs[i] == p) cs[i--] = 0;
        if (i < 0) throw std::logic_error("no irreducible polynomial found");
    }
}

std::vector<u64> Field::q_minus_1_factors() const {
    u64 n = q_ - 1;
    std::vector<u64> fs;
    for (u64 d = 2; u128(d) * d <= n; d++) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

u64 Field::mult_order(const Elem& a) const {
    if (is_zero(a)) throw std::domain_error("mult_order of zero");
    u64 ord = q_ - 1;
    for (u64 f : q_minus_1_factors()) {
        while (ord % f == 0 && pow(a, ord / f) == one()) ord /= f;
    }
    return ord;
}

Elem Field::primitive_root_of_unity(u64 k) const {
    if (k == 0 || (q_ - 1) % k != 0)
        throw std::invalid_argument("primitive_root_of_unity: k does not divide q-1");
    auto fs = q_minus_1_factors();
    for (u64 idx = 1; idx < q_; idx++) {
        Elem g = from_index(idx);
        bool generator = true;
        for (u64 f : fs) {
            if (pow(g, (q_ - 1) / f) == one()) {
                generator = false;
                break;
            }
        }
        if (generator) return pow(g, (q_ - 1) / k);
    }
    throw std::logic_error("no generator found");
}

std::vector<Elem> Field::sqrt(const Elem& a) const {
    if (p_ == 2) throw std::invalid_argument("sqrt: characteristic 2 unsupported");
    if (is_zero(a)) return {zero()};
    if (pow(a, (q_ - 1) / 2) != one()) return {};
    Elem r;
    if (q_ % 4 == 3) {
        r = pow(a, (q_ + 1) / 4);
    } else {
        // Tonelli-Shanks; non-residue picked by index order
        u64 s = 0, t = q_ - 1;
        while ((t & 1) == 0) {
            t >>= 1;
            s++;
        }
        Elem z;
        for (u64 idx = 1;; idx++) {
            z = from_index(idx);
            if (!is_zero(z) && pow(z, (q_ - 1) / 2) != one()) break;
        }
        Elem c = pow(z, t);
        r = pow(a, (t + 1) / 2);
        Elem u = pow(a, t);
        u64 m = s;
        while (!(u == one())) {
            u64 i = 0;
            Elem v = u;
            while (!(v == one())) {
                v = mul(v, v);
                i++;
            }
            Elem b = c;
            for (u64 j = 0; j + i + 1 < m; j++) b = mul(b, b);
            r = mul(r, b);
            c = mul(b, b);
            u = mul(u, c);
            m = i;
        }
    }
    Elem nr = neg(r);
    if (r == nr) return {r};
    if (index(r) > index(nr)) std::swap(r, nr);
    return {r, nr};
}

std::vector<Elem> Field::quadratic_roots(const Elem& b, const Elem& c) const {
    if (p_ == 2) throw std::invalid_argument("quadratic_roots: characteristic 2 unsupported");
    // x = (-b ± sqrt(b^2 - 4c)) / 2
    Elem disc = sub(mul(b, b), mul(from_int(4), c));
    auto roots = sqrt(disc);
    Elem inv2 = inv(from_int(2));
    std::vector<Elem> out;
    for (const Elem& s : roots) {
        Elem x = mul(sub(s, b), inv2);
        if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
    std::sort(out.begin(), out.end(), [&](const Elem& u, const Elem& v) { return index(u) < index(v); });
    return out;
}

// ---- embedding ----

Embedding::Embedding(const Field& from, const Field& to) : from_(&from), to_(&to) {
    if (from.p() != to.p() || to.deg() % from.deg() != 0)
        throw std::invalid_argument("Embedding: target is not an extension");
    Elem root = to.zero();
    if (from.deg() == 1) {
        gen_pows_ = {to.one()};
        return;
    }
    bool found = false;
    const auto& m = from.modulus();
    for (u64 idx = 0; idx < to.q(); idx++) {
        Elem x = to.from_index(idx);
        // evaluate the small modulus at x
        Elem acc = to.zero(), xp = to.one();
        for (std::size_t i = 0; i < m.size(); i++) {
            acc = to.add(acc, to.mul(to.from_int(m[i]), xp));
            xp = to.mul(xp, x);
        }
        if (to.is_zero(acc)) {
            root = x;
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("Embedding: modulus has no root in target");
    gen_pows_.resize(from.deg());
    gen_pows_[0] = to.one();
    for (unsigned i = 1; i < from.deg(); i++) gen_pows_[i] = to.mul(gen_pows_[i - 1], root);
}

Elem Embedding::map(const Elem& a) const {
    Elem out = to_->zero();
    for (unsigned i = 0; i < from_->deg(); i++)
        out = to_->add(out, to_->mul(to_->from_int(a.c[i]), gen_pows_[i]));
    return out;
}

// ---- linear algebra ----

Mat identity(const Field& F, unsigned n) {
    Mat m(n, n);
    for (unsigned i = 0; i < n; i++) m.at(i, i) = F.one();
    return m;
}

Mat mat_mul(const Field& F, const Mat& a, const Mat& b) {
    if (a.cols != b.rows) throw std::invalid_argument("mat_mul: dimension mismatch");
    Mat r(a.rows, b.cols);
    for (unsigned i = 0; i < a.rows; i++)
        for (unsigned k = 0; k < a.cols; k++) {
            const Elem& aik = a.at(i, k);
            if (F.is_zero(aik)) continue;
            for (unsigned j = 0; j < b.cols; j++)
                r.at(i, j) = F.add(r.at(i, j), F.mul(aik, b.at(k, j)));
        }
    return r;
}

Mat mat_pow(const Field& F, Mat a, u64 e) {
    if (a.rows != a.cols) throw std::invalid_argument("mat_pow: not square");
    Mat r = identity(F, a.rows);
    while (e) {
        if (e & 1) r = mat_mul(F, r, a);
        a = mat_mul(F, a, a);
        e >>= 1;
    }
    return r;
}

Mat transpose(const Mat& a) {
    Mat r(a.cols, a.rows);
    for (unsigned i = 0; i < a.rows; i++)
        for (unsigned j = 0; j < a.cols; j++) r.at(j, i) = a.at(i, j);
    return r;
}

unsigned rank(const Field& F, Mat m) {
    unsigned rk = 0;
    for (unsigned col = 0; col < m.cols && rk < m.rows; col++) {
        unsigned piv = rk;
        while (piv < m.rows && F.is_zero(m.at(piv, col))) piv++;
        if (piv == m.rows) continue;
        for (unsigned j = 0; j < m.cols; j++) std::swap(m.at(rk, j), m.at(piv, j));
        Elem iv = F.inv(m.at(rk, col));
        for (unsigned j = col; j < m.cols; j++) m.at(rk, j) = F.mul(m.at(rk, j), iv);
        for (unsigned i = 0; i < m.rows; i++) {
            if (i == rk || F.is_zero(m.at(i, col))) continue;
            Elem f = m.at(i, col);
            for (unsigned j = col; j < m.cols; j++)
                m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(rk, j)));
        }
        rk++;
    }
    return rk;
}

SolveResult solve(const Field& F, Mat a, std::vector<Elem> b) {
    if (b.size() != a.rows) throw std::invalid_argument("solve: dimension mismatch");
    unsigned rk = 0;
    std::vector<unsigned> pivot_col;
    for (unsigned col = 0; col < a.cols && rk < a.rows; col++) {
        unsigned piv = rk;
        while (piv < a.rows && F.is_zero(a.at(piv, col))) piv++;
        if (piv == a.rows) continue;
        for (unsigned j = 0; j < a.cols; j++) std::swap(a.at(rk, j), a.at(piv, j));
        std::swap(b[rk], b[piv]);
        Elem iv = F.inv(a.at(rk, col));
        for (unsigned j = col; j < a.cols; j++) a.at(rk, j) = F.mul(a.at(rk, j), iv);
        b[rk] = F.mul(b[rk], iv);
        for (unsigned i = 0; i < a.rows; i++) {
            if (i == rk || F.is_zero(a.at(i, col))) continue;
            Elem f = a.at(i, col);
            for (unsigned j = col; j < a.cols; j++)
                a.at(i, j) = F.sub(a.at(i, j), F.mul(f, a.at(rk, j)));
            b[i] = F.sub(b[i], F.mul(f, b[rk]));
        }
        pivot_col.push_back(col);
        rk++;
    }
    SolveResult res;
    for (unsigned i = rk; i < a.rows; i++) {
        if (!F.is_zero(b[i])) return res;  // inconsistent
    }
    res.consistent = true;
    res.nullity = a.cols - rk;
    res.particular.assign(a.cols, F.zero());
    for (unsigned i = 0; i < rk; i++) res.particular[pivot_col[i]] = b[i];
    return res;
}

std::vector<Elem> charpoly(const Field& F, const Mat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("charpoly: not square");
    unsigned n = m.rows;
    Mat h = m;
    // similarity reduction to upper Hessenberg
    for (unsigned k = 0; k + 2 < n; k++) {
        unsigned piv = k + 1;
        while (piv < n && F.is_zero(h.at(piv, k))) piv++;
        if (piv == n) continue;
        if (piv != k + 1) {
            for (unsigned j = 0; j < n; j++) std::swap(h.at(k + 1, j), h.at(piv, j));
            for (unsigned i = 0; i < n; i++) std::swap(h.at(i, k + 1), h.at(i, piv));
        }
        Elem iv = F.inv(h.at(k + 1, k));
        for (unsigned i = k + 2; i < n; i++) {
            if (F.is_zero(h.at(i, k))) continue;
            Elem f = F.mul(h.at(i, k), iv);
            for (unsigned j = 0; j < n; j++) h.at(i, j) = F.sub(h.at(i, j), F.mul(f, h.at(k + 1, j)));
            for (unsigned i2 = 0; i2 < n; i2++)
                h.at(i2, k + 1) = F.add(h.at(i2, k + 1), F.mul(f, h.at(i2, i)));
        }
    }
    // p_0 = 1; p_m = (x - h[m-1][m-1]) p_{m-1} - sum_i h[i-1][m-1] (prod subdiag) p_{i-1}
    std::vector<std::vector<Elem>> p(n + 1);
    p[0] = {F.one()};
    for (unsigned mdeg = 1; mdeg <= n; mdeg++) {
        std::vector<Elem> cur(mdeg + 1, F.zero());
        const auto& prev = p[mdeg - 1];
        for (unsigned i = 0; i < prev.size(); i++) {
            cur[i + 1] = F.add(cur[i + 1], prev[i]);                            // x * prev
            cur[i] = F.sub(cur[i], F.mul(h.at(mdeg - 1, mdeg - 1), prev[i]));   // -h_mm * prev
        }
        Elem prod = F.one();
        for (unsigned i = mdeg - 1; i >= 1; i--) {
            prod = F.mul(prod, h.at(i, i - 1));
            Elem coef = F.mul(h.at(i - 1, mdeg - 1), prod);
            const auto& pi = p[i - 1];
            for (unsigned j = 0; j < pi.size(); j++) cur[j] = F.sub(cur[j], F.mul(coef, pi[j]));
        }
        p[mdeg] = std::move(cur);
    }
    return p[n];
}

}  // namespace g5::ff
