#include "chatelet2/brauer.hpp"

#include <algorithm>
#include <cstdlib>

#include "chatelet2/parallel.hpp"

namespace chatelet2 {

namespace {

constexpr int kMaxPrecisionRetries = 4;
constexpr int kExpansionCoeffs = 8;   // random expansion length per sample
// Rejection budget per requested sample. At the infinite place only the
// valuation band where the linear term of f dominates can have even v(fg),
// roughly a sixth of the draw window, so the budget is sized for that
// worst case with a wide margin.
constexpr int kBudgetFactor = 64;

bool inert_for(const Place& v, FieldElem gamma) {
    const ResidueField& rf = residue_field(v);
    return rf.field.trace(rf.embed_base(gamma)) == 1;
}

// Largest coefficient valuation of f and g at v; bounds the precision lost
// when evaluating them at series arguments.
long coeff_val_spread(const ChateletInstance& inst, const Place& v) {
    long mx = 0;
    for (const XPoly* h : {&inst.f, &inst.g})
        for (int i = 0; i <= h->deg(); ++i) {
            RationalFn c = h->coeff(i);
            if (!c.is_zero()) mx = std::max(mx, std::labs(valuation(c, v)));
        }
    return mx;
}

// Window for the valuation of sampled x. At the infinite place it must
// straddle the valuation where f's three terms exchange dominance (around
// 4n deg a - deg b); elsewhere a small window suffices.
long sample_radius(const ChateletInstance& inst, const Place& v) {
    if (!v.is_infinite()) return 4;
    return std::labs(4 * static_cast<long>(inst.n) * inst.a.deg() - inst.b.deg()) + 2;
}

long working_precision(const ChateletInstance& inst, const Place& v, long prec) {
    return prec + 2 * (sample_radius(inst, v) + coeff_val_spread(inst, v)) + 8;
}

// The deterministic witness x-coordinate for each place class. At split
// places any x works (the norm form is surjective), so x = 0. The inert
// choices make v(f(x)) + v(g(x)) even by direct expansion:
//   place of b:  x = 1/b + 1    -> v(f) = -1, v(g) = 1
//   infinity:    x = a^2/(t b)  -> v(f) even (three terms of equal even
//                                  valuation summing to a unit multiple),
//                                  v(g) = 0
//   other inert: x = 1/p        -> v(f) = v(g) = -2
RationalFn witness_x(const ChateletInstance& inst, const Place& v, bool split) {
    const FieldCtx& ctx = inst.ctx;
    if (split) return RationalFn(ctx);
    Poly one = Poly::constant(ctx, ctx.one());
    if (v.is_infinite()) return RationalFn(inst.a * inst.a, Poly::t(ctx) * inst.b);
    if (v == inst.place_b) return RationalFn(one, inst.b) + RationalFn::of(one);
    return RationalFn(one, v.prime());
}

LocalPoint witness_point(const ChateletInstance& inst, const LocalSurface& surf,
                         long target_prec) {
    const LocalFieldPtr& lf = surf.lf;
    bool split = lf->splits(inst.gamma);
    RationalFn x0 = witness_x(inst, lf->place(), split);
    LaurentSeries x = embed(x0, lf, surf.prec);
    LaurentSeries c = surf.eval_rhs(x);
    auto yz = solve_norm_form(c, inst.gamma);
    if (!yz)
        throw WitnessFailed("witness rhs is not a local norm at " + lf->place().to_string() +
                            " (x = " + x0.to_string() + ")");
    LaurentSeries residual = norm_form_value(yz->first, yz->second, inst.gamma) + c;
    if (!residual.is_imprecise_zero() || residual.prec() < target_prec)
        throw PrecisionExhausted("witness residual certified only to O(pi^" +
                                 std::to_string(residual.prec()) + ") at " +
                                 lf->place().to_string());
    return LocalPoint{x, yz->first, yz->second};
}

std::vector<LocalPoint> sample_points(const ChateletInstance& inst, const LocalSurface& surf,
                                      int count, uint64_t seed, long target_prec) {
    const LocalFieldPtr& lf = surf.lf;
    const FieldCtx& E = lf->res_ctx();
    bool split = lf->splits(inst.gamma);
    // Stream derived from (seed, place): independent of thread scheduling,
    // and a precision retry replays the identical draw sequence.
    Rng rng(fnv1a(place_key(lf->place())) ^ (seed * 0x9e3779b97f4a7c15ull));
    long radius = sample_radius(inst, lf->place());

    std::vector<LocalPoint> out;
    out.reserve(static_cast<size_t>(count));
    long budget = static_cast<long>(kBudgetFactor) * count;
    while (static_cast<int>(out.size()) < count) {
        if (budget-- <= 0)
            throw SamplingExhausted("sample_local_points: accepted only " +
                                    std::to_string(out.size()) + "/" + std::to_string(count) +
                                    " at " + lf->place().to_string());
        // Fixed number of draws per attempt keeps the stream aligned across
        // accept/reject decisions.
        long lead = rng.in_range(-radius, radius);
        std::vector<FieldElem> cs(kExpansionCoeffs);
        cs[0] = {static_cast<uint32_t>(1 + rng.below(E.order() - 1))};
        for (size_t i = 1; i < cs.size(); ++i)
            cs[i] = {static_cast<uint32_t>(rng.below(E.order()))};
        LaurentSeries x(lf, lead, std::move(cs), surf.prec);

        LaurentSeries c = surf.eval_rhs(x);
        if (c.is_imprecise_zero()) continue;              // cannot certify; redraw
        if (!split && (c.valuation() & 1)) continue;      // not a local norm
        auto yz = solve_norm_form(c, inst.gamma);
        if (!yz)
            throw PreconditionViolated("sample_points: even-valuation rhs not a norm");
        LaurentSeries residual = norm_form_value(yz->first, yz->second, inst.gamma) + c;
        if (!residual.is_imprecise_zero() || residual.prec() < target_prec)
            throw PrecisionExhausted("sample residual certified only to O(pi^" +
                                     std::to_string(residual.prec()) + ") at " +
                                     lf->place().to_string());
        out.push_back(LocalPoint{x, yz->first, yz->second});
    }
    return out;
}

PlaceReport place_report(const ChateletInstance& inst, const Place& v, int count,
                         uint64_t seed, long prec) {
    std::string last;
    for (int attempt = 0; attempt <= kMaxPrecisionRetries; ++attempt) {
        long wp = working_precision(inst, v, prec << attempt);
        try {
            LocalFieldPtr lf = LocalField::get(v);
            LocalSurface surf = localize(inst, lf, wp);
            LocalPoint witness = witness_point(inst, surf, prec);
            InvariantValue inv = local_invariant(surf, witness);
            std::vector<LocalPoint> pts = sample_points(inst, surf, count, seed, prec);
            bool constant = true;
            for (const LocalPoint& p : pts)
                if (local_invariant(surf, p) != inv) constant = false;
            return PlaceReport{v, witness, count, inv, constant};
        } catch (const PrecisionExhausted& e) {
            last = e.what();
        }
    }
    throw PrecisionExhausted("place " + v.to_string() + " failed after " +
                             std::to_string(kMaxPrecisionRetries) + " retries: " + last);
}

std::vector<Place> certified_places(const ChateletInstance& inst, int degree_bound) {
    std::vector<Place> places = places_up_to(inst.ctx, degree_bound);
    if (inst.a.deg() > degree_bound) places.push_back(inst.place_a);
    if (inst.b.deg() > degree_bound) places.push_back(inst.place_b);
    std::sort(places.begin(), places.end(), place_less);
    return places;
}

}  // namespace

LocalPoint local_point_search(const ChateletInstance& inst, const Place& v, long prec) {
    std::string last;
    for (int attempt = 0; attempt <= kMaxPrecisionRetries; ++attempt) {
        long wp = working_precision(inst, v, prec << attempt);
        try {
            LocalSurface surf = localize(inst, LocalField::get(v), wp);
            return witness_point(inst, surf, prec);
        } catch (const PrecisionExhausted& e) {
            last = e.what();
        }
    }
    throw PrecisionExhausted("local_point_search at " + v.to_string() + ": " + last);
}

InvariantValue local_invariant(const LocalSurface& surf, const LocalPoint& pt) {
    if (surf.lf->splits(surf.gamma)) return InvariantValue::zero;
    // The parities of v(f(x)), v(g(x)) and v(f(x)/x^2) agree on the norm-form
    // locus (their pairwise ratios are norms there), so consult them in a
    // fixed per-place preference order and take the first with a determined
    // valuation: g leads at the infinite place, f everywhere else.
    auto parity = [](const LaurentSeries& h) {
        return (h.valuation() & 1) ? InvariantValue::half : InvariantValue::zero;
    };
    LaurentSeries fx = surf.eval_f(pt.x);
    LaurentSeries gx = surf.eval_g(pt.x);
    const bool g_first = surf.lf->place().is_infinite();
    const LaurentSeries& lead = g_first ? gx : fx;
    const LaurentSeries& next = g_first ? fx : gx;
    if (!lead.is_imprecise_zero()) return parity(lead);
    if (!next.is_imprecise_zero()) return parity(next);
    if (!pt.x.is_imprecise_zero()) {
        // f(x)/x^2 via the reversed coefficients, so the evaluation does not
        // inherit whatever cancellation exhausted f(x) itself.
        LaurentSeries u = pt.x.inv();
        LaurentSeries fxx = (surf.fc[0] * u + surf.fc[1]) * u + surf.fc[2];
        if (!fxx.is_imprecise_zero()) return parity(fxx);
    }
    throw PrecisionExhausted("local_invariant: no representative has known valuation at " +
                             surf.lf->place().to_string());
}

std::vector<LocalPoint> sample_local_points(const ChateletInstance& inst, const Place& v,
                                            int count, uint64_t seed, long prec) {
    if (count < 0) throw PreconditionViolated("sample_local_points: negative count");
    std::string last;
    for (int attempt = 0; attempt <= kMaxPrecisionRetries; ++attempt) {
        long wp = working_precision(inst, v, prec << attempt);
        try {
            LocalSurface surf = localize(inst, LocalField::get(v), wp);
            return sample_points(inst, surf, count, seed, prec);
        } catch (const PrecisionExhausted& e) {
            last = e.what();
        }
    }
    throw PrecisionExhausted("sample_local_points at " + v.to_string() + ": " + last);
}

Certificate obstruction_certificate(const ChateletInstance& inst, int degree_bound,
                                    int samples_per_place, uint64_t seed, long precision,
                                    int height, int threads) {
    if (degree_bound < 1)
        throw PreconditionViolated("obstruction_certificate: degree bound must be >= 1");
    if (precision < 1)
        throw PreconditionViolated("obstruction_certificate: precision must be >= 1");
    if (samples_per_place < 0)
        throw PreconditionViolated("obstruction_certificate: negative sample count");
    if (threads < 1) threads = default_thread_count();

    std::vector<Place> places = certified_places(inst, degree_bound);
    std::vector<PlaceReport> reports;
    reports.reserve(places.size());
    for (const Place& v : places)
        reports.push_back(PlaceReport{v, LocalPoint{
            LaurentSeries::imprecise_zero(LocalField::get(v), 1),
            LaurentSeries::imprecise_zero(LocalField::get(v), 1),
            LaurentSeries::imprecise_zero(LocalField::get(v), 1)},
            0, InvariantValue::zero, false});
    parallel_for(places.size(), threads, [&](size_t i) {
        reports[i] = place_report(inst, places[i], samples_per_place, seed, precision);
    });

    size_t halves = 0;
    for (const PlaceReport& r : reports) {
        if (!r.constant)
            throw CertificateInvalid("sampled invariants not constant at " +
                                     r.place.to_string());
        if (r.invariant == InvariantValue::half) {
            ++halves;
            if (!(r.place == inst.place_b))
                throw CertificateInvalid("invariant 1/2 at unexpected place " +
                                         r.place.to_string());
        }
    }
    if (halves != 1)
        throw CertificateInvalid("invariant sum is " + std::to_string(halves) +
                                 "/2 mod 1, expected 1/2");

    Certificate cert{inst,    degree_bound,        precision, seed,
                     samples_per_place, std::move(reports), InvariantValue::half,
                     global_point_absence(inst, height)};
    return cert;
}

GlobalSearch global_point_absence(const ChateletInstance& inst, int height) {
    if (height < 1) throw PreconditionViolated("global_point_absence: height must be >= 1");
    const FieldCtx& ctx = inst.ctx;
    int m = ctx.degree();
    if ((height + 1) * m > 30)
        throw PreconditionViolated("global_point_absence: height too large to enumerate");

    GlobalSearch out{height, 0, {}};
    uint64_t num_count = 1ull << (static_cast<uint64_t>(height + 1) * m);
    for (int dd = 0; dd <= height; ++dd) {
        uint64_t den_count = 1ull << (static_cast<uint64_t>(dd) * m);
        for (uint64_t dr = 0; dr < den_count; ++dr) {
            Poly den = Poly::from_value(ctx, den_count + dr);  // monic of degree dd
            for (uint64_t nv = 0; nv < num_count; ++nv) {
                Poly num = Poly::from_value(ctx, nv);
                if (!gcd(num, den).is_one()) continue;  // each x0 exactly once
                RationalFn x0(num, den);
                RationalFn c = rhs_at(inst, x0);
                if (c.is_zero())
                    throw CounterexampleToPaper("f(x)g(x) vanishes at x = " + x0.to_string() +
                                                ": the fiber has the rational point (0, 0)");
                bool excluded = false;
                for (const auto& [pl, val] : support(c)) {
                    if ((val & 1) && inert_for(pl, inst.gamma)) {
                        out.excluded.push_back(SearchEntry{x0, pl, val});
                        excluded = true;
                        break;
                    }
                }
                if (!excluded)
                    throw CounterexampleToPaper(
                        "f(x)g(x) has even valuation at every inert place for x = " +
                        x0.to_string());
            }
        }
    }
    return out;
}

size_t odd_inert_count(const RationalFn& c, FieldElem gamma) {
    size_t count = 0;
    for (const auto& [pl, val] : support(c))
        if ((val & 1) && inert_for(pl, gamma)) ++count;
    return count;
}

void check_certificate(const Certificate& cert) {
    const ChateletInstance& inst = cert.instance;
    std::vector<Place> expected = certified_places(inst, cert.degree_bound);
    if (expected.size() != cert.reports.size())
        throw CertificateInvalid("certificate covers " + std::to_string(cert.reports.size()) +
                                 " places, expected " + std::to_string(expected.size()));
    size_t halves = 0;
    for (size_t i = 0; i < expected.size(); ++i) {
        const PlaceReport& r = cert.reports[i];
        if (!(r.place == expected[i]))
            throw CertificateInvalid("place list mismatch at index " + std::to_string(i));
        if (!r.constant)
            throw CertificateInvalid("non-constant invariant recorded at " +
                                     r.place.to_string());
        if (r.samples != cert.samples_per_place)
            throw CertificateInvalid("sample count mismatch at " + r.place.to_string());
        if (!(r.witness.x.field()->place() == r.place))
            throw CertificateInvalid("witness series at wrong place for " +
                                     r.place.to_string());
        try {
            long wp = std::min({r.witness.x.prec(), r.witness.y.prec(), r.witness.z.prec()});
            LocalSurface surf = localize(inst, r.witness.x.field(), wp);
            LaurentSeries c = surf.eval_rhs(r.witness.x);
            LaurentSeries residual =
                norm_form_value(r.witness.y, r.witness.z, inst.gamma) + c;
            if (!residual.is_imprecise_zero() || residual.prec() < cert.precision)
                throw CertificateInvalid("witness off the surface at " + r.place.to_string() +
                                         " (residual known to O(pi^" +
                                         std::to_string(residual.prec()) + "))");
            if (local_invariant(surf, r.witness) != r.invariant)
                throw CertificateInvalid("invariant mismatch at " + r.place.to_string());
        } catch (const PrecisionExhausted& e) {
            throw CertificateInvalid("stored witness precision insufficient at " +
                                     r.place.to_string() + ": " + e.what());
        }
        if (r.invariant == InvariantValue::half) {
            ++halves;
            if (!(r.place == inst.place_b))
                throw CertificateInvalid("invariant 1/2 at unexpected place " +
                                         r.place.to_string());
        }
    }
    InvariantValue sum = (halves % 2) ? InvariantValue::half : InvariantValue::zero;
    if (sum != cert.invariant_sum || cert.invariant_sum != InvariantValue::half)
        throw CertificateInvalid("invariant sum does not certify an obstruction");

    GlobalSearch fresh = global_point_absence(inst, cert.global_search.height);
    if (cert.global_search.points_found != 0 || fresh.excluded.size() != cert.global_search.excluded.size())
        throw CertificateInvalid("exclusion scan does not reproduce");
    for (size_t i = 0; i < fresh.excluded.size(); ++i) {
        const SearchEntry& want = fresh.excluded[i];
        const SearchEntry& got = cert.global_search.excluded[i];
        if (!(want.x0 == got.x0) || !(want.place == got.place) || want.val != got.val)
            throw CertificateInvalid("exclusion entry mismatch at index " + std::to_string(i));
    }
}

}  // namespace chatelet2
