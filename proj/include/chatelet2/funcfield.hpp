#ifndef CHATELET2_FUNCFIELD_HPP
#define CHATELET2_FUNCFIELD_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chatelet2/poly.hpp"

namespace chatelet2 {

// Element of F_q(t) in lowest terms: denominator monic, gcd(num, den) = 1,
// zero is 0/1. Canonical form is restored after every operation, so equality
// is coefficient equality.
class RationalFn {
public:
    explicit RationalFn(const FieldCtx& ctx);  // zero
    RationalFn(Poly num, Poly den);            // throws DivisionByZero if den = 0
    static RationalFn of(Poly p);
    static RationalFn constant(const FieldCtx& ctx, FieldElem c);
    static RationalFn t(const FieldCtx& ctx) { return of(Poly::t(ctx)); }

    const FieldCtx& ctx() const { return num_.ctx(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }

    RationalFn operator+(const RationalFn& o) const;
    RationalFn operator*(const RationalFn& o) const;
    RationalFn operator/(const RationalFn& o) const;  // throws DivisionByZero
    RationalFn inv() const;                            // throws DivisionByZero
    RationalFn pow(long e) const;  // negative e inverts first
    bool operator==(const RationalFn& o) const { return num_ == o.num_ && den_ == o.den_; }

    std::string to_string() const;

private:
    Poly num_, den_;
};

// Place of F_q(t): either the degree-one place at infinity (1/t local
// parameter) or the place of a monic irreducible polynomial.
class Place {
public:
    static Place infinite(const FieldCtx& ctx);
    static Place finite(Poly prime);  // validated monic irreducible

    bool is_infinite() const { return !prime_.has_value(); }
    const Poly& prime() const;  // finite places only
    const FieldCtx& ctx() const { return ctx_; }
    int degree() const { return is_infinite() ? 1 : prime_->deg(); }

    bool operator==(const Place& o) const;
    std::string to_string() const;

private:
    explicit Place(const FieldCtx& ctx) : ctx_(ctx) {}
    FieldCtx ctx_;
    std::optional<Poly> prime_;
};

// Canonical order: infinite place first, then finite places by poly_less on
// the prime. Used whenever places are enumerated, sorted, or reported.
bool place_less(const Place& a, const Place& b);

// Stable serialization of (base field, place); cache key and random-stream
// label.
std::string place_key(const Place& v);

// Order of vanishing of r at v; kValInfinity when r = 0.
long valuation(const RationalFn& r, const Place& v);

// Residue field of v: F_{2^(m*deg v)} together with the data needed to map
// base-field constants and evaluate polynomials into it. The extension
// context uses the default modulus of its degree; the base field embeds via
// the least root of its modulus, and t maps to the least root of the prime.
struct ResidueField {
    FieldCtx base;
    FieldCtx field;
    std::vector<FieldElem> base_gen_pows;  // images of x^0..x^(m-1) of the base
    FieldElem t_image;                     // root of the prime; unused at infinity

    FieldElem embed_base(FieldElem a) const;
    FieldElem eval_poly(const Poly& p) const;  // p(t_image), finite places only
    bool finite = true;
};

// Built once per (base field, place) and cached; safe to call concurrently.
// Total extension degree m*deg(v) must be at most 16.
const ResidueField& residue_field(const Place& v);

// Image of r in the residue field of v; requires valuation(r, v) >= 0 (else
// PoleAtPlace) and r != 0 is not required.
FieldElem residue(const RationalFn& r, const Place& v);

// All places of degree <= max_deg, canonically ordered (infinite first).
std::vector<Place> places_up_to(const FieldCtx& ctx, int max_deg);

// The places where r has a zero or pole, with valuations, canonically
// ordered. Requires r != 0. The degree-weighted valuations sum to zero.
std::vector<std::pair<Place, long>> support(const RationalFn& r);

}  // namespace chatelet2

#endif
