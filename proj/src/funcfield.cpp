#include "chatelet2/funcfield.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace chatelet2 {

RationalFn::RationalFn(const FieldCtx& ctx)
    : num_(Poly(ctx)), den_(Poly::constant(ctx, ctx.one())) {}

RationalFn::RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (!(num_.ctx() == den_.ctx()))
        throw PreconditionViolated("RationalFn: mixed field contexts");
    if (den_.is_zero()) throw DivisionByZero("RationalFn: zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::constant(num_.ctx(), num_.ctx().one());
        return;
    }
    Poly g = gcd(num_, den_);
    if (g.deg() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    FieldElem lc = den_.leading();
    if (lc.bits != 1) {
        FieldElem s = num_.ctx().inv(lc);
        num_ = num_ * s;
        den_ = den_ * s;
    }
}

RationalFn RationalFn::of(Poly p) {
    Poly one = Poly::constant(p.ctx(), p.ctx().one());
    return RationalFn(std::move(p), std::move(one));
}

RationalFn RationalFn::constant(const FieldCtx& ctx, FieldElem c) {
    return of(Poly::constant(ctx, c));
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
    return RationalFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFn RationalFn::operator*(const RationalFn& o) const {
    return RationalFn(num_ * o.num_, den_ * o.den_);
}

RationalFn RationalFn::operator/(const RationalFn& o) const { return *this * o.inv(); }

RationalFn RationalFn::inv() const {
    if (is_zero()) throw DivisionByZero("RationalFn::inv: zero has no inverse");
    return RationalFn(den_, num_);
}

RationalFn RationalFn::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    RationalFn r = RationalFn::constant(ctx(), ctx().one());
    RationalFn base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

std::string RationalFn::to_string() const {
    if (is_polynomial()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

Place Place::infinite(const FieldCtx& ctx) { return Place(ctx); }

Place Place::finite(Poly prime) {
    if (prime.deg() < 1 || !prime.is_monic() || !is_irreducible(prime))
        throw PreconditionViolated("Place::finite: prime must be monic irreducible, got " +
                                   prime.to_string());
    Place p(prime.ctx());
    p.prime_ = std::move(prime);
    return p;
}

const Poly& Place::prime() const {
    if (is_infinite()) throw PreconditionViolated("Place::prime: infinite place has no prime");
    return *prime_;
}

bool Place::operator==(const Place& o) const {
    if (!(ctx_ == o.ctx_)) return false;
    if (is_infinite() != o.is_infinite()) return false;
    return is_infinite() || *prime_ == *o.prime_;
}

std::string Place::to_string() const {
    return is_infinite() ? "infinite" : "(" + prime_->to_string() + ")";
}

bool place_less(const Place& a, const Place& b) {
    if (a.is_infinite() != b.is_infinite()) return a.is_infinite();
    if (a.is_infinite()) return false;
    return poly_less(a.prime(), b.prime());
}

namespace {

// Multiplicity of the prime p in a nonzero polynomial.
long prime_multiplicity(Poly f, const Poly& p) {
    long k = 0;
    for (;;) {
        auto [q, r] = divmod(f, p);
        if (!r.is_zero()) return k;
        f = q;
        ++k;
    }
}

// Least root (by bit value) of an F_2 polynomial, given as modulus bits, in
// the field `big`. Exists whenever the polynomial's degree divides big's.
FieldElem least_root_of_f2_poly(const FieldCtx& big, uint32_t poly_bits, int poly_deg) {
    for (uint64_t y = 0; y < big.order(); ++y) {
        FieldElem ye{static_cast<uint32_t>(y)};
        FieldElem acc = big.zero();
        FieldElem pw = big.one();
        for (int i = 0; i <= poly_deg; ++i) {
            if ((poly_bits >> i) & 1u) acc = big.add(acc, pw);
            pw = big.mul(pw, ye);
        }
        if (acc.bits == 0) return ye;
    }
    throw PreconditionViolated("least_root_of_f2_poly: no root in extension");
}

FieldElem least_root_of_poly(const ResidueField& rf, const Poly& p) {
    for (uint64_t y = 0; y < rf.field.order(); ++y) {
        FieldElem ye{static_cast<uint32_t>(y)};
        FieldElem acc = rf.field.zero();
        for (int i = p.deg(); i >= 0; --i)
            acc = rf.field.add(rf.field.mul(acc, ye), rf.embed_base(p.coeff(i)));
        if (acc.bits == 0) return ye;
    }
    throw PreconditionViolated("least_root_of_poly: no root in residue field");
}

std::unique_ptr<ResidueField> build_residue_field(const Place& v) {
    auto rf = std::make_unique<ResidueField>(ResidueField{
        v.ctx(), v.ctx(), {}, FieldElem{0}, !v.is_infinite()});
    const FieldCtx& base = v.ctx();
    int m = base.degree();
    int big_deg = m * v.degree();
    if (big_deg > FieldCtx::kMaxDegree)
        throw InvalidDegree("residue_field: extension degree " + std::to_string(big_deg) +
                            " exceeds " + std::to_string(FieldCtx::kMaxDegree));

    if (big_deg == m) {
        // Residue field is the base field itself; the identity embedding.
        rf->field = base;
        rf->base_gen_pows.resize(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) rf->base_gen_pows[static_cast<size_t>(i)] = {1u << i};
    } else {
        rf->field = FieldCtx(big_deg);
        FieldElem root = least_root_of_f2_poly(rf->field, base.modulus(), m);
        rf->base_gen_pows.resize(static_cast<size_t>(m));
        FieldElem pw = rf->field.one();
        for (int i = 0; i < m; ++i) {
            rf->base_gen_pows[static_cast<size_t>(i)] = pw;
            pw = rf->field.mul(pw, root);
        }
    }
    if (!v.is_infinite()) rf->t_image = least_root_of_poly(*rf, v.prime());
    return rf;
}

}  // namespace

std::string place_key(const Place& v) {
    std::string key = std::to_string(v.ctx().degree()) + "/" +
                      bits_to_hex(v.ctx().modulus(), v.ctx().degree() + 1) + "/";
    if (v.is_infinite()) return key + "inf";
    for (int i = 0; i <= v.prime().deg(); ++i)
        key += bits_to_hex(v.prime().coeff(i).bits, v.ctx().degree()) + ",";
    return key;
}

FieldElem ResidueField::embed_base(FieldElem a) const {
    // The embedding is F_2-linear, so the image is the xor of the images of
    // the set bits.
    FieldElem acc = field.zero();
    for (size_t i = 0; i < base_gen_pows.size(); ++i)
        if ((a.bits >> i) & 1u) acc = field.add(acc, base_gen_pows[i]);
    return acc;
}

FieldElem ResidueField::eval_poly(const Poly& p) const {
    if (!finite) throw PreconditionViolated("ResidueField::eval_poly: infinite place");
    FieldElem acc = field.zero();
    for (int i = p.deg(); i >= 0; --i)
        acc = field.add(field.mul(acc, t_image), embed_base(p.coeff(i)));
    return acc;
}

const ResidueField& residue_field(const Place& v) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<ResidueField>> cache;
    std::string key = place_key(v);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_residue_field(v)).first;
    return *it->second;
}

long valuation(const RationalFn& r, const Place& v) {
    if (r.is_zero()) return kValInfinity;
    if (v.is_infinite()) return r.den().deg() - r.num().deg();
    // In lowest terms at most one of num, den is divisible by the prime.
    long vn = prime_multiplicity(r.num(), v.prime());
    if (vn > 0) return vn;
    return -prime_multiplicity(r.den(), v.prime());
}

FieldElem residue(const RationalFn& r, const Place& v) {
    const ResidueField& rf = residue_field(v);
    if (r.is_zero()) return rf.field.zero();
    long val = valuation(r, v);
    if (val < 0) throw PoleAtPlace("residue: pole at " + v.to_string());
    if (val > 0) return rf.field.zero();
    if (v.is_infinite()) {
        // deg num = deg den and den is monic, so the residue is the leading
        // coefficient of the numerator.
        return rf.embed_base(r.num().leading());
    }
    FieldElem n = rf.eval_poly(r.num());
    FieldElem d = rf.eval_poly(r.den());
    return rf.field.mul(n, rf.field.inv(d));
}

std::vector<Place> places_up_to(const FieldCtx& ctx, int max_deg) {
    if (max_deg < 1) throw InvalidDegree("places_up_to: bound must be at least 1");
    std::vector<Place> out;
    out.push_back(Place::infinite(ctx));
    for (int d = 1; d <= max_deg; ++d)
        for (const Poly& p : enumerate_irreducibles(ctx, d)) out.push_back(Place::finite(p));
    return out;
}

std::vector<std::pair<Place, long>> support(const RationalFn& r) {
    if (r.is_zero()) throw PreconditionViolated("support: zero function");
    std::vector<std::pair<Place, long>> out;
    long inf = r.den().deg() - r.num().deg();
    if (inf != 0) out.emplace_back(Place::infinite(r.ctx()), inf);
    for (const auto& [p, e] : factor(r.num())) out.emplace_back(Place::finite(p), e);
    for (const auto& [p, e] : factor(r.den())) out.emplace_back(Place::finite(p), -e);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return place_less(a.first, b.first); });
    return out;
}

}  // namespace chatelet2
