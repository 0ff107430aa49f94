#include "chatelet2/poly.hpp"

#include <algorithm>
#include <map>

namespace chatelet2 {

namespace {

void require_same_ctx(const FieldCtx& a, const FieldCtx& b, const char* where) {
    if (!(a == b)) throw PreconditionViolated(std::string(where) + ": mixed field contexts");
}

}  // namespace

Poly::Poly(const FieldCtx& ctx, std::vector<FieldElem> coeffs) : ctx_(ctx), c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back().bits == 0) c_.pop_back();
}

Poly Poly::from_value(const FieldCtx& ctx, uint64_t value) {
    int m = ctx.degree();
    uint64_t mask = ctx.order() - 1;
    std::vector<FieldElem> c;
    while (value) {
        c.push_back({static_cast<uint32_t>(value & mask)});
        value >>= m;
    }
    return Poly(ctx, std::move(c));
}

uint64_t Poly::value() const {
    int m = ctx_.degree();
    if ((deg() + 1) * m > 64)
        throw PreconditionViolated("Poly::value: packed coefficients exceed 64 bits");
    uint64_t v = 0;
    for (int i = deg(); i >= 0; --i) v = (v << m) | c_[static_cast<size_t>(i)].bits;
    return v;
}

Poly Poly::constant(const FieldCtx& ctx, FieldElem c) {
    return Poly(ctx, std::vector<FieldElem>{c});
}

FieldElem Poly::leading() const {
    if (c_.empty()) throw PreconditionViolated("Poly::leading: zero polynomial");
    return c_.back();
}

Poly Poly::operator+(const Poly& o) const {
    require_same_ctx(ctx_, o.ctx_, "Poly::operator+");
    std::vector<FieldElem> c(std::max(c_.size(), o.c_.size()), FieldElem{0});
    for (size_t i = 0; i < c.size(); ++i)
        c[i] = ctx_.add(i < c_.size() ? c_[i] : FieldElem{0},
                        i < o.c_.size() ? o.c_[i] : FieldElem{0});
    return Poly(ctx_, std::move(c));
}

Poly Poly::operator*(const Poly& o) const {
    require_same_ctx(ctx_, o.ctx_, "Poly::operator*");
    if (c_.empty() || o.c_.empty()) return Poly(ctx_);
    std::vector<FieldElem> c(c_.size() + o.c_.size() - 1, FieldElem{0});
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].bits == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            c[i + j] = ctx_.add(c[i + j], ctx_.mul(c_[i], o.c_[j]));
    }
    return Poly(ctx_, std::move(c));
}

Poly Poly::operator*(FieldElem s) const {
    std::vector<FieldElem> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = ctx_.mul(c_[i], s);
    return Poly(ctx_, std::move(c));
}

Poly Poly::shifted(int k) const {
    if (k < 0) throw PreconditionViolated("Poly::shifted: negative shift");
    if (c_.empty()) return *this;
    std::vector<FieldElem> c(c_.size() + static_cast<size_t>(k), FieldElem{0});
    std::copy(c_.begin(), c_.end(), c.begin() + k);
    return Poly(ctx_, std::move(c));
}

FieldElem Poly::eval(FieldElem x) const {
    FieldElem acc{0};
    for (int i = deg(); i >= 0; --i) acc = ctx_.add(ctx_.mul(acc, x), c_[static_cast<size_t>(i)]);
    return acc;
}

Poly Poly::derivative() const {
    // i * c_i is c_i for odd i and 0 for even i in characteristic 2.
    std::vector<FieldElem> c;
    for (int i = 1; i <= deg(); i += 2) {
        c.resize(static_cast<size_t>(i), FieldElem{0});
        c[static_cast<size_t>(i - 1)] = c_[static_cast<size_t>(i)];
    }
    return Poly(ctx_, std::move(c));
}

Poly Poly::make_monic() const {
    FieldElem lc = leading();  // throws on zero
    return lc.bits == 1 ? *this : *this * ctx_.inv(lc);
}

Poly Poly::pow(uint64_t e) const {
    Poly r = Poly::constant(ctx_, ctx_.one());
    Poly base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

std::string Poly::to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (int i = deg(); i >= 0; --i) {
        FieldElem c = c_[static_cast<size_t>(i)];
        if (c.bits == 0) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += c.bits == 1 ? "1" : "(" + ctx_.to_hex(c) + ")";
            continue;
        }
        if (c.bits != 1) out += "(" + ctx_.to_hex(c) + ")";
        out += i == 1 ? "t" : "t^" + std::to_string(i);
    }
    return out;
}

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
    require_same_ctx(f.ctx(), g.ctx(), "divmod");
    if (g.is_zero()) throw DivisionByZero("divmod: division by zero polynomial");
    const FieldCtx& ctx = f.ctx();
    if (f.deg() < g.deg()) return {Poly(ctx), f};
    FieldElem lg_inv = ctx.inv(g.leading());
    std::vector<FieldElem> r(f.coeffs());
    std::vector<FieldElem> q(static_cast<size_t>(f.deg() - g.deg() + 1), FieldElem{0});
    for (int i = f.deg(); i >= g.deg(); --i) {
        FieldElem c = ctx.mul(r[static_cast<size_t>(i)], lg_inv);
        if (c.bits == 0) continue;
        q[static_cast<size_t>(i - g.deg())] = c;
        for (int j = 0; j <= g.deg(); ++j)
            r[static_cast<size_t>(i - g.deg() + j)] =
                ctx.add(r[static_cast<size_t>(i - g.deg() + j)], ctx.mul(c, g.coeff(j)));
    }
    return {Poly(ctx, std::move(q)), Poly(ctx, std::move(r))};
}

Poly operator%(const Poly& f, const Poly& g) { return divmod(f, g).second; }
Poly operator/(const Poly& f, const Poly& g) { return divmod(f, g).first; }

Poly gcd(const Poly& f, const Poly& g) {
    Poly a = f, b = g;
    while (!b.is_zero()) {
        Poly r = a % b;
        a = b;
        b = r;
    }
    return a.is_zero() ? a : a.make_monic();
}

Poly pow_mod(const Poly& f, uint64_t e, const Poly& g) {
    Poly r = Poly::constant(f.ctx(), f.ctx().one()) % g;
    Poly base = f % g;
    while (e) {
        if (e & 1) r = (r * base) % g;
        base = (base * base) % g;
        e >>= 1;
    }
    return r;
}

bool poly_less(const Poly& a, const Poly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    for (int i = a.deg(); i >= 0; --i)
        if (a.coeff(i).bits != b.coeff(i).bits) return a.coeff(i).bits < b.coeff(i).bits;
    return false;
}

namespace {

// Squaring is linear in characteristic 2: (sum c_i t^i)^2 = sum c_i^2 t^(2i).
Poly poly_sqr(const Poly& f) {
    if (f.is_zero()) return f;
    const FieldCtx& ctx = f.ctx();
    std::vector<FieldElem> c(static_cast<size_t>(2 * f.deg() + 1), FieldElem{0});
    for (int i = 0; i <= f.deg(); ++i) c[static_cast<size_t>(2 * i)] = ctx.sqr(f.coeff(i));
    return Poly(ctx, std::move(c));
}

// h^(2^m) mod f, i.e. one q-power Frobenius step.
Poly frobenius_mod(Poly h, const Poly& f) {
    for (int i = 0; i < f.ctx().degree(); ++i) h = poly_sqr(h) % f;
    return h;
}

// Square root of a polynomial with zero derivative (all exponents even).
Poly even_poly_sqrt(const Poly& f) {
    const FieldCtx& ctx = f.ctx();
    std::vector<FieldElem> c(static_cast<size_t>(f.deg() / 2 + 1), FieldElem{0});
    for (int i = 0; i <= f.deg(); i += 2) c[static_cast<size_t>(i / 2)] = ctx.sqrt(f.coeff(i));
    return Poly(ctx, std::move(c));
}

std::vector<int> prime_divisors(int n) {
    std::vector<int> ps;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

// Accumulates multiplicity * mult for each squarefree part of f.
void squarefree_decompose(const Poly& f, int mult,
                          std::vector<std::pair<Poly, int>>& out) {
    if (f.deg() < 1) return;
    Poly fp = f.derivative();
    if (fp.is_zero()) {
        // All exponents even, so f is the square of its coefficient-wise root.
        squarefree_decompose(even_poly_sqrt(f), 2 * mult, out);
        return;
    }
    Poly c = gcd(f, fp);
    Poly w = f / c;
    int i = 1;
    while (!w.is_one()) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (!z.is_one()) out.emplace_back(z, i * mult);
        w = y;
        c = c / y;
        ++i;
    }
    // What survives the loop is the even-exponent part, a perfect square;
    // the zero-derivative branch of the recursion supplies the factor 2.
    if (!c.is_one()) squarefree_decompose(c, mult, out);
}

// Distinct-degree factorization of a squarefree monic polynomial: returns
// (product of irreducible factors of degree d, d) pairs.
std::vector<std::pair<Poly, int>> distinct_degree(const Poly& f) {
    const FieldCtx& ctx = f.ctx();
    std::vector<std::pair<Poly, int>> out;
    Poly rem = f;
    Poly t = Poly::t(ctx);
    Poly h = t % rem;
    int d = 0;
    while (rem.deg() >= 1) {
        ++d;
        if (2 * d > rem.deg()) {  // what is left is a single irreducible
            out.emplace_back(rem, rem.deg());
            break;
        }
        h = frobenius_mod(h, rem);
        Poly g = gcd(h + t, rem);
        if (g.deg() > 0) {
            out.emplace_back(g, d);
            rem = rem / g;
            h = h % rem;
        }
    }
    return out;
}

// Equal-degree splitting via the additive trace map to F_2: for alpha in
// F_q[t]/u, T(alpha) = sum of alpha^(2^i) for i < m*d evaluates to 0 or 1 in
// each residue field, so gcd(T(alpha), u) splits u with probability about
// 1 - 2^(1-k) for k factors.
void equal_degree_split(const Poly& u, int d, Rng& rng, std::vector<Poly>& out) {
    const FieldCtx& ctx = u.ctx();
    if (u.deg() == d) {
        out.push_back(u);
        return;
    }
    int steps = ctx.degree() * d;
    for (;;) {
        std::vector<FieldElem> ac(static_cast<size_t>(u.deg()));
        for (auto& c : ac) c = {static_cast<uint32_t>(rng.below(ctx.order()))};
        Poly alpha(ctx, std::move(ac));
        Poly tr = alpha;
        Poly power = alpha;
        for (int i = 1; i < steps; ++i) {
            power = poly_sqr(power) % u;
            tr = tr + power;
        }
        Poly g = gcd(tr, u);
        if (g.deg() > 0 && g.deg() < u.deg()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split((u / g).make_monic(), d, rng, out);
            return;
        }
    }
}

std::string poly_key(const Poly& f) {
    std::string key;
    for (int i = 0; i <= f.deg(); ++i) {
        key += bits_to_hex(f.coeff(i).bits, f.ctx().degree());
        key += ',';
    }
    return key;
}

}  // namespace

bool is_irreducible(const Poly& f) {
    if (f.deg() < 1) throw InvalidDegree("is_irreducible: degree must be at least 1");
    if (f.deg() == 1) return true;
    const FieldCtx& ctx = f.ctx();
    int d = f.deg();
    Poly t = Poly::t(ctx);
    // Walk h through t^(q^j) mod f for increasing j, checking the Rabin
    // conditions at j = d/r for each prime r | d and at j = d.
    std::vector<int> checkpoints;
    for (int r : prime_divisors(d)) checkpoints.push_back(d / r);
    std::sort(checkpoints.begin(), checkpoints.end());
    Poly h = t % f;
    int j = 0;
    for (int cp : checkpoints) {
        while (j < cp) {
            h = frobenius_mod(h, f);
            ++j;
        }
        if (gcd(h + t, f).deg() != 0) return false;
    }
    while (j < d) {
        h = frobenius_mod(h, f);
        ++j;
    }
    return (h + t).is_zero();
}

std::vector<std::pair<Poly, int>> factor(const Poly& f) {
    if (f.is_zero()) throw PreconditionViolated("factor: zero polynomial");
    std::vector<std::pair<Poly, int>> result;
    if (f.deg() == 0) return result;
    Poly work = f.make_monic();

    std::vector<std::pair<Poly, int>> squarefree_parts;
    squarefree_decompose(work, 1, squarefree_parts);

    // Randomness for equal-degree splitting is derived from the input, so
    // factorizations are reproducible across runs and platforms.
    Rng rng(fnv1a(poly_key(work)) ^ 0x0a5f152eed1c2b37ull);
    for (const auto& [part, mult] : squarefree_parts) {
        for (const auto& [prod, d] : distinct_degree(part)) {
            std::vector<Poly> irreducibles;
            equal_degree_split(prod, d, rng, irreducibles);
            for (const Poly& p : irreducibles) result.emplace_back(p, mult);
        }
    }
    std::sort(result.begin(), result.end(),
              [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    return result;
}

std::vector<Poly> enumerate_irreducibles(const FieldCtx& ctx, int d) {
    if (d < 1) throw InvalidDegree("enumerate_irreducibles: degree must be at least 1");
    if ((d + 1) * ctx.degree() > 60)
        throw InvalidDegree("enumerate_irreducibles: enumeration range too large");
    std::vector<Poly> out;
    uint64_t qd = 1ull << (static_cast<uint64_t>(d) * ctx.degree());
    for (uint64_t r = 0; r < qd; ++r) {
        Poly candidate = Poly::from_value(ctx, qd + r);
        if (is_irreducible(candidate)) out.push_back(candidate);
    }
    return out;
}

}  // namespace chatelet2
