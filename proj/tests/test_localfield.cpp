#include <doctest.h>

#include <vector>

#include "chatelet2/localfield.hpp"

using namespace chatelet2;

namespace {

Poly bits(const FieldCtx& F2, uint64_t v) { return Poly::from_value(F2, v); }

LaurentSeries random_series(const LocalFieldPtr& lf, Rng& rng, long lead_lo, long lead_hi,
                            int window) {
    const FieldCtx& E = lf->res_ctx();
    long lead = rng.in_range(lead_lo, lead_hi);
    std::vector<FieldElem> c(static_cast<size_t>(window));
    c[0] = E.from_bits(static_cast<uint32_t>(1 + rng.below(E.order() - 1)));
    for (int i = 1; i < window; ++i)
        c[i] = E.from_bits(static_cast<uint32_t>(rng.below(E.order())));
    return LaurentSeries(lf, lead, std::move(c), lead + window);
}

}  // namespace

TEST_CASE("series arithmetic tracks leads and precision windows") {
    FieldCtx F2(1);
    LocalFieldPtr lf = LocalField::get(Place::finite(bits(F2, 0b10)));
    FieldElem one = F2.one();

    LaurentSeries pi = LaurentSeries::uniformizer(lf, 6);
    CHECK(pi.lead() == 1);
    CHECK(pi.prec() == 6);
    CHECK(pi.valuation() == 1);

    // Cancellation leaves an imprecise zero at the joint precision.
    LaurentSeries a = LaurentSeries::constant(lf, one, 5);
    LaurentSeries b = LaurentSeries::constant(lf, one, 3);
    LaurentSeries z = a + b;
    CHECK(z.is_imprecise_zero());
    CHECK(z.prec() == 3);
    CHECK_THROWS_AS(z.valuation(), PrecisionExhausted);
    CHECK_THROWS_AS(z.inv(), PrecisionExhausted);

    // Relative precision is preserved by multiplication.
    LaurentSeries u(lf, 2, {one, one}, 7);   // pi^2 + pi^3 + O(pi^7)
    LaurentSeries v(lf, 3, {one}, 5);        // pi^3 + O(pi^5)
    LaurentSeries w = u * v;
    CHECK(w.lead() == 5);
    CHECK(w.prec() == 7);  // min(7 + 3, 5 + 2)
    CHECK(w.coeff(5) == one);
    CHECK(w.coeff(6) == one);

    LaurentSeries s(lf, 1, {one, one}, 4);  // pi + pi^2 + O(pi^4)
    LaurentSeries sq = s.sqr();             // pi^2 + pi^4 + O(pi^5)
    CHECK(sq.lead() == 2);
    CHECK(sq.prec() == 5);
    CHECK(sq.coeff(2) == one);
    CHECK(sq.coeff(3) == F2.zero());
    CHECK(sq.coeff(4) == one);

    CHECK(s.shifted(3).lead() == 4);
    CHECK(s.shifted(3).prec() == 7);
    CHECK(s.truncated(2).prec() == 2);
    CHECK(s.truncated(2).is_imprecise_zero() == false);
    CHECK_THROWS_AS(s.truncated(9), PreconditionViolated);
    CHECK(s.scaled(F2.zero()).is_imprecise_zero());
    CHECK(s.scaled(F2.zero()).prec() == 4);

    Rng rng(0xe53d19ab7c20f864ull);
    for (int it = 0; it < 200; ++it) {
        LaurentSeries x = random_series(lf, rng, -4, 4, 6);
        LaurentSeries res = x * x.inv() + LaurentSeries::constant(lf, one, x.prec());
        CHECK(res.is_imprecise_zero());  // x / x = 1 to working precision
        CHECK(x.inv().lead() == -x.lead());
    }
}

TEST_CASE("t embeds as the exact expected series at small places") {
    FieldCtx F2(1);
    RationalFn t = RationalFn::t(F2);
    FieldElem one = F2.one();

    LocalFieldPtr at_inf = LocalField::get(Place::infinite(F2));
    LaurentSeries tau_inf = at_inf->t_series(10);
    CHECK(tau_inf.lead() == -1);
    CHECK(tau_inf.coeffs() == std::vector<FieldElem>{one});  // t = 1/pi exactly

    LocalFieldPtr at_t = LocalField::get(Place::finite(bits(F2, 0b10)));
    LaurentSeries e = embed(t, at_t, 9);
    CHECK(e.lead() == 1);
    CHECK(e.prec() == 9);
    CHECK(e.coeffs() == std::vector<FieldElem>{one});  // t is the uniformizer

    LocalFieldPtr at_t1 = LocalField::get(Place::finite(bits(F2, 0b11)));
    LaurentSeries e1 = embed(t, at_t1, 9);
    CHECK(e1.lead() == 0);
    CHECK(e1.coeff(0) == one);  // t = 1 + pi at the place (t+1)
    CHECK(e1.coeff(1) == one);
    for (long k = 2; k < 9; ++k) CHECK(e1.coeff(k) == F2.zero());
}

TEST_CASE("Hensel lift satisfies the prime equation at a degree-2 place") {
    FieldCtx F2(1);
    Place v = Place::finite(bits(F2, 0b111));  // t^2 + t + 1
    LocalFieldPtr lf = LocalField::get(v);
    const FieldCtx& E = lf->res_ctx();
    REQUIRE(E.degree() == 2);

    for (long prec : {6, 17, 5, 30}) {  // exercises cache resume and re-truncation
        LaurentSeries tau = embed(RationalFn::t(F2), lf, prec);
        CHECK(tau.lead() == 0);
        CHECK(tau.prec() == prec);
        LaurentSeries lhs = tau.sqr() + tau + LaurentSeries::constant(lf, E.one(), prec) +
                            LaurentSeries::uniformizer(lf, prec);
        CHECK(lhs.is_imprecise_zero());  // tau^2 + tau + 1 = pi to full precision
        CHECK(lhs.prec() >= prec);
    }
}

TEST_CASE("series embedding matches exact valuations and respects products") {
    FieldCtx F2(1);
    std::vector<Place> places{Place::infinite(F2), Place::finite(bits(F2, 0b10)),
                              Place::finite(bits(F2, 0b11)), Place::finite(bits(F2, 0b111))};
    for (const Place& v : places) {
        LocalFieldPtr lf = LocalField::get(v);
        Rng rng(fnv1a(place_key(v)) ^ 0x11d3a6f59b08c247ull);
        int done = 0;
        while (done < 120) {
            auto draw = [&] {
                int d = static_cast<int>(rng.below(5));
                std::vector<FieldElem> c(static_cast<size_t>(d) + 1);
                for (auto& x : c) x = F2.from_bits(static_cast<uint32_t>(rng.below(2)));
                return Poly(F2, std::move(c));
            };
            Poly num = draw(), den = draw();
            if (num.is_zero() || den.is_zero()) continue;
            ++done;
            RationalFn r(num, den);
            LaurentSeries s = embed(r, lf, 12);
            CHECK(s.prec() == 12);
            CHECK(s.lead() == valuation(r, v));  // embedding keeps valuations exact

            RationalFn r2(den, num);
            LaurentSeries s2 = embed(r2, lf, 12);
            LaurentSeries prod = s * s2;  // r * (1/r) = 1
            LaurentSeries res = prod + LaurentSeries::constant(lf, lf->res_ctx().one(),
                                                               prod.prec());
            CHECK(res.is_imprecise_zero());
        }
    }
    LocalFieldPtr lf = LocalField::get(places[1]);
    CHECK(embed(RationalFn(F2), lf, 7).is_imprecise_zero());
    CHECK(embed(RationalFn(F2), lf, 7).prec() == 7);
}

TEST_CASE("Artin-Schreier solving from the frozen series") {
    FieldCtx F2(1);
    LocalFieldPtr lf = LocalField::get(Place::finite(bits(F2, 0b10)));

    LaurentSeries c = LaurentSeries::uniformizer(lf, 16);
    auto y = solve_artin_schreier(c);
    REQUIRE(y.has_value());
    CHECK(y->lead() == 1);
    for (long k = 1; k < 16; ++k) {
        bool expect_one = (k == 1 || k == 2 || k == 4 || k == 8);
        CAPTURE(k);
        CHECK(y->coeff(k) == (expect_one ? F2.one() : F2.zero()));
    }
    LaurentSeries residual = y->sqr().truncated(16) + *y + c;
    CHECK(residual.is_imprecise_zero());
    CHECK(residual.prec() >= 16);

    // Residue equation y^2 + y = 1 has no root over F_2.
    CHECK_FALSE(solve_artin_schreier(LaurentSeries::constant(lf, F2.one(), 8)).has_value());
    // Imprecise zero in, imprecise zero out.
    auto z = solve_artin_schreier(LaurentSeries::imprecise_zero(lf, 6));
    REQUIRE(z.has_value());
    CHECK(z->is_imprecise_zero());
    CHECK_THROWS_AS(solve_artin_schreier(LaurentSeries(lf, -1, {F2.one()}, 4)),
                    PreconditionViolated);

    // Over the degree-2 residue field the least of the two roots is returned.
    LocalFieldPtr lq = LocalField::get(Place::finite(bits(F2, 0b111)));
    const FieldCtx& E = lq->res_ctx();
    auto yq = solve_artin_schreier(LaurentSeries::constant(lq, E.one(), 8));
    REQUIRE(yq.has_value());
    CHECK(yq->coeff(0) == E.from_bits(2));  // x and x+1 both solve; x is least
    CHECK(lq->artin_schreier_root(E.one()) == E.from_bits(2));
}

TEST_CASE("inert completions admit exactly the even-valuation norms") {
    FieldCtx F2(1);
    FieldElem gamma = F2.one();
    LocalFieldPtr lf = LocalField::get(Place::finite(bits(F2, 0b10)));
    REQUIRE_FALSE(lf->splits(gamma));

    Rng rng(0x95a07c3e2d18b4f6ull);
    for (int it = 0; it < 400; ++it) {
        LaurentSeries y = random_series(lf, rng, -3, 3, 8);
        LaurentSeries z = random_series(lf, rng, -3, 3, 8);
        LaurentSeries c = norm_form_value(y, z, gamma);
        REQUIRE_FALSE(c.is_imprecise_zero());
        CHECK(c.valuation() % 2 == 0);  // norms have even valuation

        auto back = solve_norm_form(c, gamma);
        REQUIRE(back.has_value());
        LaurentSeries res = norm_form_value(back->first, back->second, gamma) + c;
        CHECK(res.is_imprecise_zero());
        CHECK(res.prec() >= c.prec());
    }
    for (int it = 0; it < 50; ++it) {
        LaurentSeries c = random_series(lf, rng, -2, 2, 6);
        bool odd = (c.valuation() % 2) != 0;
        CHECK(solve_norm_form(c, gamma).has_value() == !odd);
    }
    CHECK_THROWS_AS(solve_norm_form(LaurentSeries::imprecise_zero(lf, 5), gamma),
                    PrecisionExhausted);
}

TEST_CASE("split completions admit every nonzero value as a norm") {
    FieldCtx F2(1);
    FieldElem gamma = F2.one();
    LocalFieldPtr lf = LocalField::get(Place::finite(bits(F2, 0b111)));
    REQUIRE(lf->splits(gamma));  // residue field F_4 kills the trace of 1

    Rng rng(0x37c8d05916eb42aaull);
    for (int it = 0; it < 200; ++it) {
        LaurentSeries c = random_series(lf, rng, -3, 3, 8);  // any parity included
        auto sol = solve_norm_form(c, gamma);
        REQUIRE(sol.has_value());
        LaurentSeries res = norm_form_value(sol->first, sol->second, gamma) + c;
        CHECK(res.is_imprecise_zero());
        CHECK(res.prec() >= c.prec());
    }
}

TEST_CASE("splitting behavior over F_2 separates even and odd degrees") {
    FieldCtx F2(1);
    FieldElem gamma = F2.one();
    CHECK_FALSE(LocalField::get(Place::infinite(F2))->splits(gamma));
    CHECK_FALSE(LocalField::get(Place::finite(bits(F2, 0b10)))->splits(gamma));
    CHECK_FALSE(LocalField::get(Place::finite(bits(F2, 0b11)))->splits(gamma));
    CHECK(LocalField::get(Place::finite(bits(F2, 0b111)))->splits(gamma));
    CHECK_FALSE(LocalField::get(Place::finite(bits(F2, 0b1011)))->splits(gamma));
    CHECK(LocalField::get(Place::finite(bits(F2, 0b11001)))->splits(gamma));
}
