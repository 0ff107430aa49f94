#include "chatelet2/surface.hpp"

#include <algorithm>

#include "chatelet2/parallel.hpp"

namespace chatelet2 {

XPoly::XPoly(const FieldCtx& ctx, std::vector<RationalFn> coeffs)
    : ctx_(ctx), c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

RationalFn XPoly::coeff(int i) const {
    if (i >= 0 && i <= deg()) return c_[static_cast<size_t>(i)];
    return RationalFn(ctx_);
}

XPoly XPoly::operator+(const XPoly& o) const {
    std::vector<RationalFn> c;
    int d = std::max(deg(), o.deg());
    c.reserve(static_cast<size_t>(d + 1));
    for (int i = 0; i <= d; ++i) c.push_back(coeff(i) + o.coeff(i));
    return XPoly(ctx_, std::move(c));
}

XPoly XPoly::operator*(const XPoly& o) const {
    if (is_zero() || o.is_zero()) return XPoly(ctx_);
    std::vector<RationalFn> c(static_cast<size_t>(deg() + o.deg() + 1), RationalFn(ctx_));
    for (int i = 0; i <= deg(); ++i)
        for (int j = 0; j <= o.deg(); ++j)
            c[static_cast<size_t>(i + j)] =
                c[static_cast<size_t>(i + j)] + c_[static_cast<size_t>(i)] * o.coeff(j);
    return XPoly(ctx_, std::move(c));
}

XPoly XPoly::scaled(const RationalFn& s) const {
    std::vector<RationalFn> c;
    c.reserve(c_.size());
    for (const RationalFn& r : c_) c.push_back(r * s);
    return XPoly(ctx_, std::move(c));
}

XPoly XPoly::derivative() const {
    std::vector<RationalFn> c;
    for (int i = 1; i <= deg(); i += 2) {
        c.resize(static_cast<size_t>(i), RationalFn(ctx_));
        c[static_cast<size_t>(i - 1)] = c_[static_cast<size_t>(i)];
    }
    return XPoly(ctx_, std::move(c));
}

RationalFn XPoly::eval(const RationalFn& x0) const {
    RationalFn acc(ctx_);
    for (int i = deg(); i >= 0; --i) acc = acc * x0 + c_[static_cast<size_t>(i)];
    return acc;
}

XPoly gcd(const XPoly& f, const XPoly& g) {
    XPoly a = f, b = g;
    while (!b.is_zero()) {
        // Remainder of a by b via monic long division over k.
        XPoly r = a;
        RationalFn lb_inv = b.coeff(b.deg()).inv();
        while (!r.is_zero() && r.deg() >= b.deg()) {
            RationalFn c = r.coeff(r.deg()) * lb_inv;
            int shift = r.deg() - b.deg();
            std::vector<RationalFn> sub(static_cast<size_t>(r.deg() + 1),
                                        RationalFn(f.ctx()));
            for (int j = 0; j <= b.deg(); ++j)
                sub[static_cast<size_t>(j + shift)] = b.coeff(j) * c;
            r = r + XPoly(f.ctx(), std::move(sub));
        }
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return a.scaled(a.coeff(a.deg()).inv());
}

FieldElem find_gamma(const FieldCtx& ctx) {
    for (uint64_t bits = 0; bits < ctx.order(); ++bits) {
        FieldElem c{static_cast<uint32_t>(bits)};
        if (ctx.trace(c) == 1) return c;
    }
    throw PreconditionViolated("find_gamma: no trace-1 element");  // unreachable
}

std::optional<std::pair<Poly, Poly>> find_parameters(const FieldCtx& ctx, FieldElem gamma,
                                                     int max_deg, int threads) {
    if (ctx.trace(gamma) != 1)
        throw PreconditionViolated("find_parameters: gamma must have trace 1");
    if (max_deg < 1) throw InvalidDegree("find_parameters: max_deg must be at least 1");
    Poly gamma_poly = Poly::constant(ctx, gamma);

    for (int db = 1; db <= max_deg; db += 2) {
        std::vector<Poly> bs = enumerate_irreducibles(ctx, db);
        for (int da = 2 * db; da <= max_deg; da += 2) {
            int dh = da - 2 * db;
            if ((dh + 1) * ctx.degree() > 60)
                throw InvalidDegree("find_parameters: candidate range too large");
            uint64_t hcount = 1ull << (static_cast<uint64_t>(dh) * ctx.degree());

            // Independent slots per b keep the block result deterministic
            // regardless of the thread count.
            std::vector<std::optional<Poly>> hit(bs.size());
            parallel_for(bs.size(), threads, [&](size_t bi) {
                const Poly& b = bs[bi];
                Poly b2 = b * b;
                std::vector<Poly> candidates;
                candidates.reserve(hcount);
                for (uint64_t r = 0; r < hcount; ++r) {
                    Poly h = Poly::from_value(ctx, hcount + r);  // monic of degree dh
                    candidates.push_back(b2 * h + gamma_poly);
                }
                std::sort(candidates.begin(), candidates.end(), poly_less);
                for (const Poly& a : candidates) {
                    if (is_irreducible(a)) {
                        hit[bi] = a;
                        break;
                    }
                }
            });
            for (size_t bi = 0; bi < bs.size(); ++bi)
                if (hit[bi]) return std::make_pair(*hit[bi], bs[bi]);
        }
    }
    return std::nullopt;
}

ChateletInstance build_instance(const FieldCtx& ctx, FieldElem gamma, Poly a, Poly b) {
    auto fail = [](const std::string& cond, const std::string& detail) {
        throw ConstructionError(cond, detail);
    };
    if (ctx.trace(gamma) != 1)
        fail("gamma_trace", "trace of gamma is 0, so T^2 + T + gamma splits globally");
    if (!a.is_monic() || a.deg() < 2 || a.deg() % 2 != 0 || !is_irreducible(a))
        fail("a_irreducible_even", "a = " + a.to_string());
    if (!b.is_monic() || b.deg() % 2 != 1 || !is_irreducible(b))
        fail("b_irreducible_odd", "b = " + b.to_string());
    Poly gamma_poly = Poly::constant(ctx, gamma);
    if (!((a + gamma_poly) % (b * b)).is_zero())
        fail("a_congruent_gamma_mod_b2", "a + gamma not divisible by b^2");

    uint64_t n = ctx.unit_order();
    Poly a4n = a.pow(4 * n);
    Poly a8n = a4n * a4n;
    RationalFn one = RationalFn::constant(ctx, ctx.one());
    RationalFn gamma_fn = RationalFn::constant(ctx, gamma);

    XPoly f(ctx, {RationalFn(a, b), one, RationalFn(b, a4n)});
    XPoly g(ctx, {RationalFn(a, a4n) + gamma_fn, RationalFn(b, a4n), RationalFn(b * b, a8n)});

    // The defining relation between the two quadratics; everything
    // downstream (separability, P' = gamma) follows from it.
    XPoly twist = f.scaled(RationalFn(b, a4n)) +
                  XPoly(ctx, {gamma_fn});
    if (!(g == twist)) fail("twist_identity", "g != a^(-4n) b f + gamma");

    XPoly P = f * g;
    if (P.deg() != 4) fail("rhs_degree", "deg fg = " + std::to_string(P.deg()));
    if (!(P.derivative() == XPoly(ctx, {gamma_fn})))
        fail("rhs_derivative", "(fg)' != gamma");
    if (gcd(P, P.derivative()).deg() != 0) fail("rhs_separable", "fg has a repeated root");
    if (gcd(f, g).deg() != 0) fail("fg_coprime", "f and g share a root");

    ChateletInstance inst{ctx,  gamma, n, a, b, f, g, P,
                          Place::infinite(ctx), Place::finite(a), Place::finite(b)};

    // The splitting pattern the obstruction argument needs: T^2 + T + gamma
    // splits at the place of a and stays inert at the place of b and at
    // infinity (equivalently, the residue trace of gamma is 0 / 1 / 1).
    if (!LocalField::get(inst.place_a)->splits(gamma))
        fail("place_a_split", "gamma has nonzero trace in the residue field of a");
    if (LocalField::get(inst.place_b)->splits(gamma))
        fail("place_b_inert", "gamma has zero trace in the residue field of b");
    if (LocalField::get(inst.place_inf)->splits(gamma))
        fail("place_inf_inert", "gamma has zero trace in the residue field at infinity");
    return inst;
}

RationalFn rhs_at(const ChateletInstance& inst, const RationalFn& x0) {
    return inst.f.eval(x0) * inst.g.eval(x0);
}

LaurentSeries LocalSurface::eval_f(const LaurentSeries& x) const {
    LaurentSeries acc = LaurentSeries::imprecise_zero(lf, fc.back().prec());
    for (size_t i = fc.size(); i-- > 0;) acc = acc * x + fc[i];
    return acc;
}

LaurentSeries LocalSurface::eval_g(const LaurentSeries& x) const {
    LaurentSeries acc = LaurentSeries::imprecise_zero(lf, gc.back().prec());
    for (size_t i = gc.size(); i-- > 0;) acc = acc * x + gc[i];
    return acc;
}

LaurentSeries LocalSurface::eval_rhs(const LaurentSeries& x) const {
    return eval_f(x) * eval_g(x);
}

LocalSurface localize(const ChateletInstance& inst, const LocalFieldPtr& lf, long prec) {
    LocalSurface ls{lf, inst.gamma, prec, {}, {}};
    for (int i = 0; i <= inst.f.deg(); ++i) ls.fc.push_back(embed(inst.f.coeff(i), lf, prec));
    for (int i = 0; i <= inst.g.deg(); ++i) ls.gc.push_back(embed(inst.g.coeff(i), lf, prec));
    return ls;
}

}  // namespace chatelet2
