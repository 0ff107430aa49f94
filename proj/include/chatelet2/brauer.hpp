#ifndef CHATELET2_BRAUER_HPP
#define CHATELET2_BRAUER_HPP

#include <cstdint>
#include <vector>

#include "chatelet2/surface.hpp"

namespace chatelet2 {

// Value of the local invariant pairing in (1/2)Z / Z.
enum class InvariantValue { zero, half };

// Local solvability evidence and invariant data at one place.
struct PlaceReport {
    Place place;
    LocalPoint witness;       // deterministic witness point
    int samples;              // additional random local points tested
    InvariantValue invariant; // common invariant of witness and samples
    bool constant;            // whether all sampled invariants agreed
};

// One excluded affine x-coordinate: at `place` (inert for gamma) the
// right-hand side f(x0)g(x0) has odd valuation, so the fiber has no local
// point there and x0 lifts to no rational point.
struct SearchEntry {
    RationalFn x0;
    Place place;
    long val;
};

struct GlobalSearch {
    int height = 0;  // bound on deg num, deg den of the x0 scanned
    uint64_t points_found = 0;
    std::vector<SearchEntry> excluded;
};

struct Certificate {
    ChateletInstance instance;
    int degree_bound;
    long precision;
    uint64_t seed;
    int samples_per_place;
    std::vector<PlaceReport> reports;
    InvariantValue invariant_sum;
    GlobalSearch global_search;
};

// A local point with x at a fixed small rational value chosen per place
// class (split, the place of b, infinity, generic inert); the norm equation
// is then solved exactly to the working precision. The residual
// N(y,z) - f(x)g(x) is checked to vanish to at least `prec`.
LocalPoint local_point_search(const ChateletInstance& inst, const Place& v, long prec);

// (1/2) * (v(h(x)) mod 2) for h in {f, g, f/x^2} (all parities agree on the
// norm-form locus), 0 at split places. Throws PrecisionExhausted when no
// representative has a determined valuation.
InvariantValue local_invariant(const LocalSurface& surf, const LocalPoint& pt);

// `count` random local points: x is drawn with valuation in a per-place
// window and random expansion coefficients, rejected until the right-hand
// side is a local norm. The stream is derived from (seed, place), so results
// do not depend on thread scheduling. Throws SamplingExhausted if the
// rejection budget (8x count) runs out.
std::vector<LocalPoint> sample_local_points(const ChateletInstance& inst, const Place& v,
                                            int count, uint64_t seed, long prec);

// Certifies the Brauer-Manin obstruction: local points and invariants at
// every place of degree <= degree_bound (plus the places of a and b), the
// invariant sum, and a rational-point exclusion scan up to `height`.
// Throws CertificateInvalid if any computed fact contradicts the expected
// obstruction (non-constant invariant, sum != 1/2, or 1/2 anywhere other
// than the place of b); PrecisionExhausted if a place fails even after
// doubling the working precision 4 times.
Certificate obstruction_certificate(const ChateletInstance& inst, int degree_bound,
                                    int samples_per_place, uint64_t seed, long precision,
                                    int height, int threads = 1);

// Scans every x0 = num/den with deg <= height (coprime, den monic) and
// records an inert place of odd valuation for each; f(x0)g(x0) = 0 or a
// fully even x0 would contradict the construction and throws
// CounterexampleToPaper.
GlobalSearch global_point_absence(const ChateletInstance& inst, int height);

// Number of gamma-inert places where c has odd valuation (the infinite
// place included). Product-formula parity forces this count to be even.
size_t odd_inert_count(const RationalFn& c, FieldElem gamma);

// Full coherence check of a certificate against its instance: witnesses lie
// on the surface to the stated precision, invariants recompute, the sum and
// the location of the nonzero invariant match, the place list is exactly
// the required one, and the exclusion scan reproduces. Throws
// CertificateInvalid with a description on any mismatch.
void check_certificate(const Certificate& cert);

}  // namespace chatelet2

#endif
