#include "chatelet2/localfield.hpp"

#include <algorithm>
#include <map>

namespace chatelet2 {

namespace {

void require_same_field(const LocalFieldPtr& a, const LocalFieldPtr& b, const char* where) {
    if (a.get() != b.get())
        throw PreconditionViolated(std::string(where) + ": series from different completions");
}

}  // namespace

LaurentSeries::LaurentSeries(LocalFieldPtr lf, long lead, std::vector<FieldElem> coeffs,
                             long prec)
    : lf_(std::move(lf)), lead_(lead), c_(std::move(coeffs)), prec_(prec) {
    // Normalize: keep only the window [lead, prec), make coeffs[0] nonzero,
    // drop trailing zeros; an empty window is the imprecise zero.
    if (lead_ < prec_ && static_cast<long>(c_.size()) > prec_ - lead_)
        c_.resize(static_cast<size_t>(prec_ - lead_));
    else if (lead_ >= prec_)
        c_.clear();
    size_t skip = 0;
    while (skip < c_.size() && c_[skip].bits == 0) ++skip;
    if (skip) {
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(skip));
        lead_ += static_cast<long>(skip);
    }
    while (!c_.empty() && c_.back().bits == 0) c_.pop_back();
    if (c_.empty()) lead_ = prec_;
}

LaurentSeries LaurentSeries::imprecise_zero(LocalFieldPtr lf, long prec) {
    return LaurentSeries(std::move(lf), prec, {}, prec);
}

LaurentSeries LaurentSeries::uniformizer(const LocalFieldPtr& lf, long prec) {
    return LaurentSeries(lf, 1, {lf->res_ctx().one()}, prec);
}

LaurentSeries LaurentSeries::constant(const LocalFieldPtr& lf, FieldElem residue_value,
                                      long prec) {
    return LaurentSeries(lf, 0, {residue_value}, prec);
}

long LaurentSeries::valuation() const {
    if (is_imprecise_zero())
        throw PrecisionExhausted("valuation undetermined: 0 + O(pi^" + std::to_string(prec_) +
                                 ") at " + lf_->place().to_string());
    return lead_;
}

FieldElem LaurentSeries::coeff(long e) const {
    if (e >= prec_)
        throw PreconditionViolated("LaurentSeries::coeff: exponent beyond precision");
    if (e < lead_ || e - lead_ >= static_cast<long>(c_.size())) return {0};
    return c_[static_cast<size_t>(e - lead_)];
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
    require_same_field(lf_, o.lf_, "LaurentSeries::operator+");
    long prec = std::min(prec_, o.prec_);
    long lo = std::min(lead_, o.lead_);
    if (lo >= prec) return imprecise_zero(lf_, prec);
    std::vector<FieldElem> c(static_cast<size_t>(prec - lo), FieldElem{0});
    const FieldCtx& E = lf_->res_ctx();
    for (long e = lo; e < prec; ++e) {
        FieldElem a = (e >= lead_ && e - lead_ < static_cast<long>(c_.size()))
                          ? c_[static_cast<size_t>(e - lead_)]
                          : FieldElem{0};
        FieldElem b = (e >= o.lead_ && e - o.lead_ < static_cast<long>(o.c_.size()))
                          ? o.c_[static_cast<size_t>(e - o.lead_)]
                          : FieldElem{0};
        c[static_cast<size_t>(e - lo)] = E.add(a, b);
    }
    return LaurentSeries(lf_, lo, std::move(c), prec);
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
    require_same_field(lf_, o.lf_, "LaurentSeries::operator*");
    // Known window of the product: each factor is only known relative to its
    // leading term, so the weaker of prec_a + val_b, prec_b + val_a wins.
    long prec = std::min(prec_ + o.lead_, o.prec_ + lead_);
    long lead = lead_ + o.lead_;
    if (c_.empty() || o.c_.empty() || lead >= prec) {
        return imprecise_zero(lf_, std::min(prec, lead));
    }
    std::vector<FieldElem> c(static_cast<size_t>(prec - lead), FieldElem{0});
    const FieldCtx& E = lf_->res_ctx();
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].bits == 0) continue;
        for (size_t j = 0; j < o.c_.size() && i + j < c.size(); ++j)
            c[i + j] = E.add(c[i + j], E.mul(c_[i], o.c_[j]));
    }
    return LaurentSeries(lf_, lead, std::move(c), prec);
}

LaurentSeries LaurentSeries::sqr() const {
    // Characteristic 2: squaring maps pi^e -> pi^(2e) coefficient-wise.
    long prec = prec_ + lead_;
    if (c_.empty()) return imprecise_zero(lf_, prec);
    long lead = 2 * lead_;
    std::vector<FieldElem> c(static_cast<size_t>(prec - lead), FieldElem{0});
    const FieldCtx& E = lf_->res_ctx();
    for (size_t i = 0; i < c_.size(); ++i) {
        if (2 * i >= c.size()) break;
        c[2 * i] = E.sqr(c_[i]);
    }
    return LaurentSeries(lf_, lead, std::move(c), prec);
}

LaurentSeries LaurentSeries::inv() const {
    if (is_imprecise_zero())
        throw PrecisionExhausted("LaurentSeries::inv: valuation unknown at " +
                                 lf_->place().to_string());
    const FieldCtx& E = lf_->res_ctx();
    long len = prec_ - lead_;  // relative precision is preserved
    std::vector<FieldElem> r(static_cast<size_t>(len), FieldElem{0});
    FieldElem c0inv = E.inv(c_[0]);
    r[0] = c0inv;
    for (long k = 1; k < len; ++k) {
        FieldElem acc{0};
        long jmax = std::min<long>(k, static_cast<long>(c_.size()) - 1);
        for (long j = 1; j <= jmax; ++j)
            acc = E.add(acc, E.mul(c_[static_cast<size_t>(j)], r[static_cast<size_t>(k - j)]));
        r[static_cast<size_t>(k)] = E.mul(c0inv, acc);
    }
    return LaurentSeries(lf_, -lead_, std::move(r), prec_ - 2 * lead_);
}

LaurentSeries LaurentSeries::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    LaurentSeries r = constant(lf_, lf_->res_ctx().one(), prec_ - lead_ + 1);
    LaurentSeries base = *this;
    for (;;) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (!e) break;
        base = base.sqr();
    }
    return r;
}

LaurentSeries LaurentSeries::scaled(FieldElem k) const {
    if (k.bits == 0) return imprecise_zero(lf_, prec_);
    const FieldCtx& E = lf_->res_ctx();
    std::vector<FieldElem> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = E.mul(c_[i], k);
    return LaurentSeries(lf_, lead_, std::move(c), prec_);
}

LaurentSeries LaurentSeries::shifted(long k) const {
    return LaurentSeries(lf_, lead_ + k, c_, prec_ + k);
}

LaurentSeries LaurentSeries::truncated(long p) const {
    if (p > prec_)
        throw PreconditionViolated("LaurentSeries::truncated: cannot raise precision");
    return LaurentSeries(lf_, lead_, c_, p);
}

std::string LaurentSeries::to_string() const {
    std::string out;
    const FieldCtx& E = lf_->res_ctx();
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].bits == 0) continue;
        if (!out.empty()) out += " + ";
        if (c_[i].bits != 1) out += "(" + E.to_hex(c_[i]) + ")";
        long e = lead_ + static_cast<long>(i);
        if (e != 0) out += "pi^" + std::to_string(e);
        else if (c_[i].bits == 1) out += "1";
    }
    if (!out.empty()) out += " + ";
    return out + "O(pi^" + std::to_string(prec_) + ")";
}

LocalField::LocalField(const Place& v) : place_(v), rf_(residue_field(v)) {
    const FieldCtx& E = rf_.field;
    as_table_.assign(E.order(), -1);
    for (uint64_t y = 0; y < E.order(); ++y) {
        FieldElem ye{static_cast<uint32_t>(y)};
        uint32_t img = E.add(E.sqr(ye), ye).bits;
        if (as_table_[img] < 0) as_table_[img] = static_cast<int32_t>(y);
    }
}

LocalFieldPtr LocalField::get(const Place& v) {
    static std::mutex mu;
    static std::map<std::string, LocalFieldPtr> cache;
    std::string key = place_key(v);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, LocalFieldPtr(new LocalField(v))).first;
    return it->second;
}

std::optional<FieldElem> LocalField::artin_schreier_root(FieldElem c) const {
    int32_t r = as_table_[c.bits];
    if (r < 0) return std::nullopt;
    return FieldElem{static_cast<uint32_t>(r)};
}

bool LocalField::splits(FieldElem gamma_base) const {
    return rf_.field.trace(rf_.embed_base(gamma_base)) == 0;
}

namespace {

// p evaluated at a series with nonnegative valuation, coefficients taken
// through the residue embedding. Horner keeps every intermediate at
// precision >= prec.
LaurentSeries eval_base_poly(const Poly& p, const LaurentSeries& x, long prec) {
    const LocalFieldPtr& lf = x.field();
    const ResidueField& rf = lf->residue();
    LaurentSeries acc = LaurentSeries::imprecise_zero(lf, prec);
    for (int i = p.deg(); i >= 0; --i)
        acc = acc * x + LaurentSeries::constant(lf, rf.embed_base(p.coeff(i)), prec);
    return acc;
}

// Exact value of p(1/pi) at the infinite place, to the given precision.
LaurentSeries eval_poly_at_inv_pi(const Poly& p, const LocalFieldPtr& lf, long prec) {
    if (p.is_zero()) return LaurentSeries::imprecise_zero(lf, prec);
    const ResidueField& rf = lf->residue();
    int d = p.deg();
    std::vector<FieldElem> c(static_cast<size_t>(d + 1));
    for (int j = 0; j <= d; ++j) c[static_cast<size_t>(j)] = rf.embed_base(p.coeff(d - j));
    return LaurentSeries(lf, -d, std::move(c), prec);
}

// Splits f = p^k * g with p irreducible not dividing g; returns (k, g).
std::pair<long, Poly> strip_prime_power(Poly f, const Poly& p) {
    long k = 0;
    for (;;) {
        auto [q, r] = divmod(f, p);
        if (!r.is_zero()) return {k, f};
        f = q;
        ++k;
    }
}

}  // namespace

LaurentSeries LocalField::t_series(long prec) const {
    LocalFieldPtr self = shared_from_this();
    if (place_.is_infinite())
        return LaurentSeries(self, -1, {rf_.field.one()}, prec);

    std::lock_guard<std::mutex> lock(tau_mu_);
    if (tau_ && tau_->prec() >= prec) return tau_->truncated(prec);

    const Poly& p = place_.prime();
    Poly dp = p.derivative();
    // Start from the cached lift (an exact element near the root) or the
    // residue root itself, and refine with Newton steps; each step at least
    // doubles the valuation of p(tau) + pi.
    LaurentSeries tau = tau_ ? LaurentSeries(self, tau_->lead(), tau_->coeffs(), prec)
                             : LaurentSeries::constant(self, rf_.t_image, prec);
    LaurentSeries pi = LaurentSeries::uniformizer(self, prec);
    bool converged = false;
    for (int it = 0; it < 64 && !converged; ++it) {
        LaurentSeries err = eval_base_poly(p, tau, prec) + pi;
        if (err.is_imprecise_zero()) {
            converged = true;
            break;
        }
        tau = tau + err * eval_base_poly(dp, tau, prec).inv();
    }
    if (!converged)
        throw PrecisionExhausted("t_series: lift failed to converge at " + place_.to_string());
    tau_ = tau;
    return tau;
}

LaurentSeries embed(const RationalFn& r, const LocalFieldPtr& lf, long prec) {
    if (prec < 1) throw PreconditionViolated("embed: precision must be positive");
    if (r.is_zero()) return LaurentSeries::imprecise_zero(lf, prec);
    const Place& v = lf->place();
    if (v.is_infinite()) {
        long pad = prec + r.num().deg() + r.den().deg() + 2;
        LaurentSeries ns = eval_poly_at_inv_pi(r.num(), lf, pad);
        LaurentSeries ds = eval_poly_at_inv_pi(r.den(), lf, pad);
        return (ns * ds.inv()).truncated(prec);
    }
    // Factor out exact powers of the prime so the valuation of the result is
    // exact, then divide the remaining units as series.
    auto [k, n1] = strip_prime_power(r.num(), v.prime());
    auto [l, d1] = strip_prime_power(r.den(), v.prime());
    long pad = prec + std::max(0L, l - k) + 2;
    LaurentSeries tau = lf->t_series(pad);
    LaurentSeries ns = eval_base_poly(n1, tau, pad);
    LaurentSeries ds = eval_base_poly(d1, tau, pad);
    return (ns * ds.inv()).shifted(k - l).truncated(prec);
}

std::optional<LaurentSeries> solve_artin_schreier(const LaurentSeries& c) {
    const LocalFieldPtr& lf = c.field();
    long prec = c.prec();
    if (c.is_imprecise_zero()) return LaurentSeries::imprecise_zero(lf, prec);
    long v = c.valuation();
    if (v < 0)
        throw PreconditionViolated("solve_artin_schreier: input must have valuation >= 0");
    LaurentSeries y = LaurentSeries::imprecise_zero(lf, prec);
    if (v == 0) {
        auto root = lf->artin_schreier_root(c.coeff(0));
        if (!root) return std::nullopt;  // residue equation has trace 1
        y = LaurentSeries::constant(lf, *root, prec);
    }
    // y <- y^2 + c fixes exactly the roots of y^2 + y = c, and the error
    // squares each iteration, so log2(prec) + 1 steps reach full precision.
    int iters = 1;
    for (long reach = 1; reach < prec; reach <<= 1) ++iters;
    for (int i = 0; i < iters; ++i) y = y.sqr().truncated(prec) + c;
    return y;
}

LaurentSeries norm_form_value(const LaurentSeries& y, const LaurentSeries& z,
                              FieldElem gamma_base) {
    FieldElem g = y.field()->residue().embed_base(gamma_base);
    return y.sqr() + y * z + z.sqr().scaled(g);
}

std::optional<std::pair<LaurentSeries, LaurentSeries>> solve_norm_form(
    const LaurentSeries& c, FieldElem gamma_base) {
    const LocalFieldPtr& lf = c.field();
    const FieldCtx& E = lf->res_ctx();
    FieldElem g = lf->residue().embed_base(gamma_base);

    if (lf->splits(gamma_base)) {
        // With theta^2 + theta = gamma, N(theta*z + w, z) = w(w + z); taking
        // w = 1 turns N = c into z = 1 + c. An even power of pi is shifted
        // out first so the working valuations stay nonnegative; otherwise
        // the cross terms of the norm would cost the caller precision.
        FieldElem theta = *lf->artin_schreier_root(g);
        long half = c.is_imprecise_zero() ? 0 : c.valuation() >> 1;
        LaurentSeries unit = c.shifted(-2 * half);
        LaurentSeries one = LaurentSeries::constant(lf, E.one(), unit.prec());
        LaurentSeries z = one + unit;
        LaurentSeries y = one + z.scaled(theta);
        return std::make_pair(y.shifted(half), z.shifted(half));
    }

    if (c.is_imprecise_zero())
        throw PrecisionExhausted("solve_norm_form: valuation of rhs unknown at " +
                                 lf->place().to_string());
    long v = c.valuation();
    if (v & 1) return std::nullopt;  // odd valuation is never a norm inertly
    long s = v / 2;
    LaurentSeries u = c.shifted(-v);  // unit part
    FieldElem u0 = u.coeff(0);

    // Pick the least w != 0 making Tr(gamma + u0/w^2) = 0; one always exists
    // because w -> u0/w^2 is a bijection of the units and Tr(gamma) = 1
    // excludes only w = 0.
    FieldElem w{0};
    for (uint64_t cand = 1; cand < E.order(); ++cand) {
        FieldElem we{static_cast<uint32_t>(cand)};
        FieldElem val = E.add(g, E.mul(u0, E.inv(E.sqr(we))));
        if (E.trace(val) == 0) {
            w = we;
            break;
        }
    }
    if (w.bits == 0)
        throw PreconditionViolated("solve_norm_form: no admissible residue scaling");

    // Scale so the problem becomes Artin-Schreier: with z = pi^s * w and
    // y = z * Y, the norm form equals pi^(2s) w^2 (Y^2 + Y + gamma), so
    // Y^2 + Y = u/w^2 + gamma.
    LaurentSeries cc = u.scaled(E.inv(E.sqr(w))) +
                       LaurentSeries::constant(lf, g, u.prec());
    auto yy = solve_artin_schreier(cc);
    if (!yy)
        throw PreconditionViolated("solve_norm_form: scaled residue unexpectedly unsolvable");
    LaurentSeries zz = LaurentSeries::constant(lf, w, u.prec()).shifted(s);
    return std::make_pair(zz * *yy, zz);
}

}  // namespace chatelet2
