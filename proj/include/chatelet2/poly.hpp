#ifndef CHATELET2_POLY_HPP
#define CHATELET2_POLY_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chatelet2/gf2m.hpp"

namespace chatelet2 {

// Polynomial in t over F_{2^m}. Coefficients are stored little-endian
// (c_[i] multiplies t^i) with no trailing zeros, so deg() is c_.size()-1 and
// the zero polynomial has an empty vector and degree -1.
class Poly {
public:
    explicit Poly(const FieldCtx& ctx) : ctx_(ctx) {}
    Poly(const FieldCtx& ctx, std::vector<FieldElem> coeffs);

    // Packs little-endian m-bit digits of `value` into coefficients; digit i
    // is the coefficient of t^i. This is the enumeration order used
    // everywhere a polynomial range is scanned.
    static Poly from_value(const FieldCtx& ctx, uint64_t value);
    uint64_t value() const;  // inverse of from_value; requires deg*m < 64

    static Poly t(const FieldCtx& ctx) { return from_value(ctx, 1ull << ctx.degree()); }
    static Poly constant(const FieldCtx& ctx, FieldElem c);

    const FieldCtx& ctx() const { return ctx_; }
    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].bits == 1; }
    bool is_monic() const { return !c_.empty() && c_.back().bits == 1; }
    FieldElem coeff(int i) const {
        return (i >= 0 && i <= deg()) ? c_[static_cast<size_t>(i)] : FieldElem{0};
    }
    FieldElem leading() const;
    const std::vector<FieldElem>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(FieldElem s) const;
    Poly shifted(int k) const;  // multiply by t^k, k >= 0
    bool operator==(const Poly& o) const { return ctx_ == o.ctx_ && c_ == o.c_; }

    FieldElem eval(FieldElem x) const;
    Poly derivative() const;
    Poly make_monic() const;  // throws DivisionByZero on 0
    Poly pow(uint64_t e) const;

    std::string to_string() const;  // e.g. "t^4 + t^3 + 1"

private:
    FieldCtx ctx_;
    std::vector<FieldElem> c_;
};

// (quotient, remainder) with f = q*g + r and deg r < deg g. Throws
// DivisionByZero when g = 0.
std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g);
Poly operator%(const Poly& f, const Poly& g);
Poly operator/(const Poly& f, const Poly& g);

// Monic gcd; gcd(f, 0) = monic(f), gcd(0, 0) = 0.
Poly gcd(const Poly& f, const Poly& g);

// f^e mod g by square and multiply.
Poly pow_mod(const Poly& f, uint64_t e, const Poly& g);

// Total order used wherever polynomials are enumerated or sorted: by degree,
// then by coefficient bits from the top coefficient down (for polynomials
// whose packed value fits in 64 bits this coincides with value() order).
bool poly_less(const Poly& a, const Poly& b);

// Rabin's test: f irreducible over F_q iff x^(q^d) = x mod f for d = deg f
// and x^(q^(d/r)) - x is coprime to f for every prime r | d.
// Requires deg f >= 1.
bool is_irreducible(const Poly& f);

// Factorization into monic irreducibles with multiplicities, sorted by
// poly_less; the unit leading coefficient is discarded. Squarefree
// decomposition handles the characteristic-2 case (when f' = 0, f is a
// square and its square root is extracted coefficient-wise), then
// distinct-degree and equal-degree splitting. Deterministic: the randomness
// for equal-degree splitting is seeded from the input polynomial's bits.
std::vector<std::pair<Poly, int>> factor(const Poly& f);

// All monic irreducibles of degree exactly d, in poly_less order.
std::vector<Poly> enumerate_irreducibles(const FieldCtx& ctx, int d);

}  // namespace chatelet2

#endif
