#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "chatelet2/poly.hpp"

using namespace chatelet2;

namespace {

Poly bits(const FieldCtx& F2, uint64_t v) { return Poly::from_value(F2, v); }

// Brute-force irreducibility by trial division against every monic divisor
// of degree 1..deg/2 — independent of the Frobenius-based test under test.
bool irreducible_by_trial_division(const Poly& f) {
    if (f.deg() < 1) return false;
    const FieldCtx& F = f.ctx();
    uint64_t q = F.order();
    for (int d = 1; 2 * d <= f.deg(); ++d) {
        uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= q;
        for (uint64_t r = 0; r < count; ++r) {
            Poly g = Poly::from_value(F, count + r);  // monic of degree d
            if ((f % g).is_zero()) return false;
        }
    }
    return true;
}

int mobius(int n) {
    int mu = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

// Number of monic irreducibles of degree d over F_q: (1/d) sum_{e|d} mu(e) q^{d/e}.
long necklace_count(uint64_t q, int d) {
    long sum = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e) continue;
        long qe = 1;
        for (int i = 0; i < d / e; ++i) qe *= static_cast<long>(q);
        sum += mobius(e) * qe;
    }
    return sum / d;
}

Poly random_poly(const FieldCtx& F, Rng& rng, int max_deg) {
    int d = static_cast<int>(rng.below(static_cast<uint64_t>(max_deg + 1)));
    std::vector<FieldElem> c(static_cast<size_t>(d) + 1);
    for (auto& x : c) x = F.from_bits(static_cast<uint32_t>(rng.below(F.order())));
    return Poly(F, std::move(c));
}

}  // namespace

TEST_CASE("long division over F_2 gives the hand-checked quotient and remainder") {
    FieldCtx F2(1);
    Poly f = bits(F2, 0b11001);  // t^4 + t^3 + 1
    Poly g = bits(F2, 0b111);    // t^2 + t + 1
    auto [q, r] = divmod(f, g);
    CHECK(q == bits(F2, 0b101));  // t^2 + 1
    CHECK(r == bits(F2, 0b10));   // t
    CHECK(q * g + r == f);
    CHECK(gcd(f, g).is_one());  // the remainder chain never hits zero
    CHECK_THROWS_AS(divmod(f, Poly(F2)), DivisionByZero);
}

TEST_CASE("division postconditions on random pairs") {
    for (int m : {1, 2, 3}) {
        FieldCtx F(m);
        Rng rng(0x8f2c4b16d7e3a95ull + static_cast<uint64_t>(m));
        for (int it = 0; it < 300; ++it) {
            Poly f = random_poly(F, rng, 9);
            Poly g = random_poly(F, rng, 5);
            if (g.is_zero()) continue;
            auto [q, r] = divmod(f, g);
            CHECK(q * g + r == f);
            CHECK(r.deg() < g.deg());
        }
    }
}

TEST_CASE("gcd conventions and divisibility") {
    FieldCtx F2(1);
    CHECK(gcd(bits(F2, 0b110), bits(F2, 0b10)) == bits(F2, 0b10));  // gcd(t^2+t, t) = t
    CHECK(gcd(bits(F2, 0b110), Poly(F2)) == bits(F2, 0b110));       // gcd(f, 0) = monic f
    CHECK(gcd(Poly(F2), Poly(F2)).is_zero());

    FieldCtx F4(2);
    Rng rng(0x3f61e59c824d07bbull);
    for (int it = 0; it < 200; ++it) {
        Poly f = random_poly(F4, rng, 8), g = random_poly(F4, rng, 8);
        Poly d = gcd(f, g);
        if (d.is_zero()) {
            CHECK(f.is_zero());
            CHECK(g.is_zero());
            continue;
        }
        CHECK(d.is_monic());
        CHECK((f % d).is_zero());
        CHECK((g % d).is_zero());
    }
}

TEST_CASE("derivative drops even-exponent terms") {
    FieldCtx F2(1);
    CHECK(bits(F2, 0b100).derivative().is_zero());              // (t^2)' = 0
    CHECK(bits(F2, 0b1011).derivative() == bits(F2, 0b101));    // (t^3+t+1)' = t^2+1
    CHECK(bits(F2, 0b11001).derivative() == bits(F2, 0b100));   // (t^4+t^3+1)' = t^2
}

TEST_CASE("irreducibility test agrees with trial division") {
    FieldCtx F2(1);
    CHECK(is_irreducible(bits(F2, 0b111)));
    CHECK(is_irreducible(bits(F2, 0b11001)));
    CHECK_FALSE(is_irreducible(bits(F2, 0b100)));  // t^2
    CHECK_THROWS_AS(is_irreducible(Poly::constant(F2, F2.one())), InvalidDegree);

    for (uint64_t v = 2; v < (2ull << 8); ++v)  // every F_2 polynomial of degree <= 8
        CHECK(is_irreducible(bits(F2, v)) == irreducible_by_trial_division(bits(F2, v)));

    FieldCtx F4(2);
    for (int d = 1; d <= 4; ++d) {
        uint64_t count = 1ull << (2 * d);
        for (uint64_t r = 0; r < count; ++r) {
            Poly f = Poly::from_value(F4, count + r);
            CHECK(is_irreducible(f) == irreducible_by_trial_division(f));
        }
    }
}

TEST_CASE("factorizations from the examples") {
    FieldCtx F2(1);
    using Fac = std::vector<std::pair<Poly, int>>;
    CHECK(factor(bits(F2, 0b110)) == Fac{{bits(F2, 0b10), 1}, {bits(F2, 0b11), 1}});
    CHECK(factor(bits(F2, 0b10100)) == Fac{{bits(F2, 0b10), 2}, {bits(F2, 0b11), 2}});
    CHECK(factor(bits(F2, 0b11001)) == Fac{{bits(F2, 0b11001), 1}});
    CHECK_THROWS_AS(factor(Poly(F2)), PreconditionViolated);
}

TEST_CASE("factor output re-expands to the input") {
    for (int m : {1, 2, 3}) {
        FieldCtx F(m);
        Rng rng(0x51b30c92ea7d46f8ull * static_cast<uint64_t>(m + 1));
        for (int it = 0; it < 250; ++it) {
            Poly f = random_poly(F, rng, 12);
            if (f.deg() < 1) continue;
            // Fold in a square every few iterations to exercise the
            // coefficient-wise square root inside squarefree decomposition.
            if (it % 4 == 0) f = f * f;
            if (it % 8 == 0) f = f * random_poly(F, rng, 3);
            if (f.deg() < 1) continue;
            Poly prod = Poly::constant(F, f.leading());
            Poly prev(F);
            bool ordered = true, all_irreducible = true;
            for (const auto& [p, e] : factor(f)) {
                REQUIRE(e >= 1);
                all_irreducible = all_irreducible && p.is_monic() && is_irreducible(p);
                if (!prev.is_zero() && !poly_less(prev, p)) ordered = false;
                prev = p;
                for (int i = 0; i < e; ++i) prod = prod * p;
            }
            CHECK(prod == f);
            CHECK(ordered);
            CHECK(all_irreducible);
        }
    }
}

TEST_CASE("separability matches a splitting-field multiple-root scan") {
    // Independent oracle: f in F_2[t] of degree <= 6 has a repeated factor
    // exactly when f and f' share a root in some F_{2^j}, j <= 6 (a repeated
    // factor has degree <= 3, so its roots appear in the scan).
    FieldCtx F2(1);
    for (uint64_t v = 2; v < (1ull << 7); ++v) {
        Poly f = bits(F2, v);
        Poly fp = f.derivative();
        bool shared_root = false;
        for (int j = 1; j <= 6 && !shared_root; ++j) {
            FieldCtx E(j);
            Poly fe = Poly::from_value(E, 0), fpe = Poly::from_value(E, 0);
            for (int i = 0; i <= f.deg(); ++i)
                fe = fe + Poly::constant(E, E.from_bits(f.coeff(i).bits)) *
                              Poly::t(E).pow(static_cast<uint64_t>(i));
            for (int i = 0; i <= fp.deg(); ++i)
                fpe = fpe + Poly::constant(E, E.from_bits(fp.coeff(i).bits)) *
                                Poly::t(E).pow(static_cast<uint64_t>(i));
            for (uint64_t x = 0; x < E.order() && !shared_root; ++x) {
                FieldElem a = E.from_bits(static_cast<uint32_t>(x));
                shared_root = fe.eval(a).bits == 0 && fpe.eval(a).bits == 0;
            }
        }
        bool repeated = false;
        for (const auto& [p, e] : factor(f)) repeated = repeated || e > 1;
        CAPTURE(v);
        CHECK(repeated == shared_root);
        CHECK(repeated == !gcd(f, fp).is_one());
    }
}

TEST_CASE("irreducible enumeration matches the necklace formula") {
    FieldCtx F2(1);
    auto deg1 = enumerate_irreducibles(F2, 1);
    CHECK(deg1 == std::vector<Poly>{bits(F2, 0b10), bits(F2, 0b11)});
    auto deg2 = enumerate_irreducibles(F2, 2);
    CHECK(deg2 == std::vector<Poly>{bits(F2, 0b111)});
    CHECK(enumerate_irreducibles(F2, 3).size() == 2);

    for (int m : {1, 2, 3}) {
        FieldCtx F(m);
        int dmax = m == 1 ? 8 : (m == 2 ? 4 : 3);
        for (int d = 1; d <= dmax; ++d) {
            auto irr = enumerate_irreducibles(F, d);
            CHECK(static_cast<long>(irr.size()) == necklace_count(F.order(), d));
            for (size_t i = 0; i < irr.size(); ++i) {
                CHECK(irr[i].is_monic());
                CHECK(irreducible_by_trial_division(irr[i]));
                if (i) CHECK(poly_less(irr[i - 1], irr[i]));
            }
        }
    }
    CHECK_THROWS_AS(enumerate_irreducibles(F2, 0), InvalidDegree);
}

TEST_CASE("value packing round-trips and orders like poly_less") {
    for (int m : {1, 2, 5}) {
        FieldCtx F(m);
        for (uint64_t v = 0; v < 200; ++v) {
            Poly p = Poly::from_value(F, v);
            CHECK(p.value() == v);
            if (v) CHECK(poly_less(Poly::from_value(F, v - 1), p));
        }
    }
}

TEST_CASE("pow_mod matches naive exponentiation") {
    FieldCtx F4(2);
    Rng rng(0xd1c08a4be9f26573ull);
    for (int it = 0; it < 100; ++it) {
        Poly f = random_poly(F4, rng, 4);
        Poly g = random_poly(F4, rng, 3);
        if (g.deg() < 1) continue;
        uint64_t e = rng.below(16);
        CHECK(pow_mod(f, e, g) == f.pow(e) % g);
    }
}
