#ifndef CHATELET2_SURFACE_HPP
#define CHATELET2_SURFACE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "chatelet2/localfield.hpp"

namespace chatelet2 {

// Polynomial in x with coefficients in F_q(t), little-endian.
class XPoly {
public:
    explicit XPoly(const FieldCtx& ctx) : ctx_(ctx) {}
    XPoly(const FieldCtx& ctx, std::vector<RationalFn> coeffs);

    const FieldCtx& ctx() const { return ctx_; }
    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    RationalFn coeff(int i) const;
    const std::vector<RationalFn>& coeffs() const { return c_; }

    XPoly operator+(const XPoly& o) const;
    XPoly operator*(const XPoly& o) const;
    XPoly scaled(const RationalFn& s) const;
    XPoly derivative() const;  // d/dx in characteristic 2
    RationalFn eval(const RationalFn& x0) const;
    bool operator==(const XPoly& o) const { return ctx_ == o.ctx_ && c_ == o.c_; }

private:
    FieldCtx ctx_;
    std::vector<RationalFn> c_;
};

// Monic gcd in k[x] (k = F_q(t)); gcd(f, 0) is f scaled monic.
XPoly gcd(const XPoly& f, const XPoly& g);

// A Chatelet surface y^2 + yz + gamma*z^2 = f(x)g(x) over F_q(t), built so
// that the quadratic twist data forces a Brauer-Manin obstruction:
//   f = a^(-4n) b x^2 + x + a b^(-1)
//   g = a^(-8n) b^2 x^2 + a^(-4n) b x + a^(1-4n) + gamma
// with n = q - 1, gamma of trace 1, a, b monic irreducible of even/odd
// degree, and a = gamma mod b^2. These satisfy g = a^(-4n) b f + gamma, so
// P = fg is separable of degree 4 with P' = gamma.
struct ChateletInstance {
    FieldCtx ctx;
    FieldElem gamma;
    uint64_t n;  // order of the unit group, q - 1
    Poly a, b;
    XPoly f, g, P;
    Place place_inf, place_a, place_b;
};

// Least trace-1 element, i.e. the first gamma making T^2 + T + gamma
// irreducible.
FieldElem find_gamma(const FieldCtx& ctx);

// Least (a, b) pair satisfying the construction constraints with
// deg a, deg b <= max_deg, or nullopt. Scan order: odd deg b ascending;
// even deg a ascending from 2*deg b; b ascending; candidates a = b^2 h +
// gamma ascending. The per-(deg b, deg a) blocks may be searched on several
// threads; the reported pair is independent of the thread count.
std::optional<std::pair<Poly, Poly>> find_parameters(const FieldCtx& ctx, FieldElem gamma,
                                                     int max_deg, int threads = 1);

// Validates every construction constraint (ConstructionError names the
// violated condition) and assembles the surface data.
ChateletInstance build_instance(const FieldCtx& ctx, FieldElem gamma, Poly a, Poly b);

// f(x0) * g(x0) as an exact rational function.
RationalFn rhs_at(const ChateletInstance& inst, const RationalFn& x0);

// The surface with coefficients embedded into one completion, for repeated
// evaluation at series arguments.
struct LocalSurface {
    LocalFieldPtr lf;
    FieldElem gamma;
    long prec = 0;  // absolute precision the coefficients carry
    std::vector<LaurentSeries> fc, gc;  // embedded coefficients

    LaurentSeries eval_f(const LaurentSeries& x) const;
    LaurentSeries eval_g(const LaurentSeries& x) const;
    LaurentSeries eval_rhs(const LaurentSeries& x) const;
};

LocalSurface localize(const ChateletInstance& inst, const LocalFieldPtr& lf, long prec);

}  // namespace chatelet2

#endif
