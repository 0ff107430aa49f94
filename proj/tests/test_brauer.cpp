#include <doctest.h>

#include <vector>

#include "chatelet2/brauer.hpp"
#include "chatelet2/serialize.hpp"

using namespace chatelet2;

namespace {

Poly bits(const FieldCtx& F2, uint64_t v) { return Poly::from_value(F2, v); }

const ChateletInstance& base_instance() {
    static ChateletInstance inst = [] {
        FieldCtx F2(1);
        return build_instance(F2, F2.one(), bits(F2, 0b11001), bits(F2, 0b10));
    }();
    return inst;
}

bool same_series(const LaurentSeries& a, const LaurentSeries& b) {
    return a.lead() == b.lead() && a.prec() == b.prec() && a.coeffs() == b.coeffs();
}

}  // namespace

TEST_CASE("witness x-coordinates reproduce the proof valuations exactly") {
    const ChateletInstance& inst = base_instance();
    const FieldCtx& F2 = inst.ctx;
    RationalFn one = RationalFn::constant(F2, F2.one());

    // Generic inert place: x = 1/p makes both factors doubly polar.
    for (uint64_t pv : {0b11ull, 0b1011ull, 0b1101ull}) {
        Place v = Place::finite(bits(F2, pv));
        RationalFn x0 = RationalFn::of(bits(F2, pv)).inv();
        CHECK(valuation(inst.f.eval(x0), v) == -2);
        CHECK(valuation(inst.g.eval(x0), v) == -2);
        CHECK(valuation(rhs_at(inst, x0), v) == -4);
    }

    // Infinite place: x = a^2/(t b) lands f at an even pole and g on a unit.
    RationalFn x_inf(inst.a * inst.a, Poly::t(F2) * inst.b);
    CHECK(valuation(inst.f.eval(x_inf), inst.place_inf) == -6);
    CHECK(valuation(inst.g.eval(x_inf), inst.place_inf) == 0);

    // Place of b: x = 1/b + 1 splits the parities -1 / +1.
    RationalFn x_b = RationalFn::of(inst.b).inv() + one;
    CHECK(valuation(inst.f.eval(x_b), inst.place_b) == -1);
    CHECK(valuation(inst.g.eval(x_b), inst.place_b) == 1);
    CHECK(valuation(rhs_at(inst, x_b), inst.place_b) == 0);
}

TEST_CASE("witness points satisfy the norm equation to the requested precision") {
    const ChateletInstance& inst = base_instance();
    for (const Place& v : places_up_to(inst.ctx, 3)) {
        CAPTURE(v.to_string());
        LocalPoint pt = local_point_search(inst, v, 16);
        LocalSurface surf = localize(inst, LocalField::get(v), pt.x.prec());
        LaurentSeries residual =
            norm_form_value(pt.y, pt.z, inst.gamma) + surf.eval_rhs(pt.x);
        CHECK(residual.is_imprecise_zero());
        CHECK(residual.prec() >= 16);
    }
}

TEST_CASE("the local invariant is 1/2 at the place of b and 0 elsewhere") {
    const ChateletInstance& inst = base_instance();
    std::vector<Place> places = places_up_to(inst.ctx, 4);
    REQUIRE(places.size() == 9);
    for (const Place& v : places) {
        CAPTURE(v.to_string());
        LocalPoint pt = local_point_search(inst, v, 16);
        LocalSurface surf = localize(inst, LocalField::get(v), pt.x.prec());
        InvariantValue expected =
            v == inst.place_b ? InvariantValue::half : InvariantValue::zero;
        CHECK(local_invariant(surf, pt) == expected);
    }
}

TEST_CASE("sampling is deterministic per (seed, place) and prefix-stable") {
    const ChateletInstance& inst = base_instance();
    Place v = Place::finite(bits(inst.ctx, 0b11));
    auto a = sample_local_points(inst, v, 10, 42, 12);
    auto b = sample_local_points(inst, v, 10, 42, 12);
    auto c = sample_local_points(inst, v, 4, 42, 12);
    REQUIRE(a.size() == 10);
    REQUIRE(c.size() == 4);
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(same_series(a[i].x, b[i].x));
        CHECK(same_series(a[i].y, b[i].y));
        CHECK(same_series(a[i].z, b[i].z));
        if (i < c.size()) CHECK(same_series(a[i].x, c[i].x));
    }
    auto d = sample_local_points(inst, v, 10, 43, 12);
    bool all_equal = true;
    for (size_t i = 0; i < a.size(); ++i) all_equal = all_equal && same_series(a[i].x, d[i].x);
    CHECK_FALSE(all_equal);  // a different seed must explore different points
}

TEST_CASE("certificates assemble, verify, and ignore the thread count") {
    const ChateletInstance& inst = base_instance();
    Certificate cert = obstruction_certificate(inst, 2, 4, 3, 16, 1, 2);

    REQUIRE(cert.reports.size() == 5);  // infinity, t, t+1, t^2+t+1, and a
    CHECK(cert.reports[0].place.is_infinite());
    CHECK(cert.reports[1].place == inst.place_b);
    CHECK(cert.reports[4].place == inst.place_a);
    for (size_t i = 0; i < cert.reports.size(); ++i) {
        const PlaceReport& r = cert.reports[i];
        CHECK(r.constant);
        CHECK(r.samples == 4);
        CHECK((r.invariant == InvariantValue::half) == (r.place == inst.place_b));
        if (i) CHECK(place_less(cert.reports[i - 1].place, r.place));
    }
    CHECK(cert.invariant_sum == InvariantValue::half);

    CHECK(cert.global_search.height == 1);
    CHECK(cert.global_search.points_found == 0);
    REQUIRE(cert.global_search.excluded.size() == 8);
    const SearchEntry& first = cert.global_search.excluded[0];
    CHECK(first.x0.is_zero());
    CHECK(first.place.is_infinite());  // v_inf(fg(0)) = -3: the first odd inert valuation
    CHECK(first.val == -3);
    for (const SearchEntry& e : cert.global_search.excluded) {
        CHECK(e.val % 2 != 0);
        CHECK(e.place.degree() % 2 != 0);  // gamma = 1 is inert exactly at odd degrees
        CHECK(valuation(rhs_at(inst, e.x0), e.place) == e.val);
    }

    CHECK_NOTHROW(check_certificate(cert));

    Certificate serial = obstruction_certificate(inst, 2, 4, 3, 16, 1, 1);
    CHECK(certificate_to_json(serial).dump(2) == certificate_to_json(cert).dump(2));
}

TEST_CASE("verification rejects each kind of tampering") {
    const ChateletInstance& inst = base_instance();
    Certificate cert = obstruction_certificate(inst, 1, 2, 5, 12, 1, 2);
    CHECK_NOTHROW(check_certificate(cert));

    Certificate t1 = cert;
    t1.reports[0].invariant = InvariantValue::half;  // recomputes to 0 at infinity
    CHECK_THROWS_AS(check_certificate(t1), CertificateInvalid);

    Certificate t2 = cert;
    t2.invariant_sum = InvariantValue::zero;
    CHECK_THROWS_AS(check_certificate(t2), CertificateInvalid);

    Certificate t3 = cert;
    t3.reports.pop_back();
    CHECK_THROWS_AS(check_certificate(t3), CertificateInvalid);

    Certificate t4 = cert;
    t4.samples_per_place += 1;
    CHECK_THROWS_AS(check_certificate(t4), CertificateInvalid);

    Certificate t5 = cert;
    std::swap(t5.reports[1].witness, t5.reports[2].witness);  // wrong completion
    CHECK_THROWS_AS(check_certificate(t5), CertificateInvalid);

    Certificate t6 = cert;
    t6.global_search.excluded[0].val += 2;
    CHECK_THROWS_AS(check_certificate(t6), CertificateInvalid);

    Certificate t7 = cert;
    t7.degree_bound = 3;  // promises places the reports do not cover
    CHECK_THROWS_AS(check_certificate(t7), CertificateInvalid);
}

TEST_CASE("random global values satisfy reciprocity") {
    for (int m : {1, 2}) {
        FieldCtx F(m);
        FieldElem gamma = find_gamma(F);
        Rng rng(0xb6f03d25c8a1e794ull + static_cast<uint64_t>(m));
        int done = 0;
        while (done < 100) {
            auto draw = [&] {
                int d = static_cast<int>(rng.below(6));
                std::vector<FieldElem> c(static_cast<size_t>(d) + 1);
                for (auto& x : c)
                    x = F.from_bits(static_cast<uint32_t>(rng.below(F.order())));
                return Poly(F, std::move(c));
            };
            Poly num = draw(), den = draw();
            if (num.is_zero() || den.is_zero()) continue;
            ++done;
            CHECK(odd_inert_count(RationalFn(num, den), gamma) % 2 == 0);
        }
    }
}

TEST_CASE("the exclusion scan covers each coprime coordinate once") {
    const ChateletInstance& inst = base_instance();
    GlobalSearch s = global_point_absence(inst, 2);
    // Coprime pairs (num, den) with deg <= 2 and den monic over F_2:
    // 8 for den = 1, 4 each for den = t and t+1, then 4 + 4 + 2 + 6 for
    // t^2, (t+1)^2, t(t+1), t^2+t+1.
    CHECK(s.excluded.size() == 32);
    for (size_t i = 0; i < s.excluded.size(); ++i)
        for (size_t j = i + 1; j < s.excluded.size(); ++j)
            CHECK_FALSE(s.excluded[i].x0 == s.excluded[j].x0);
    CHECK_THROWS_AS(global_point_absence(inst, 0), PreconditionViolated);
}
