#ifndef CHATELET2_LOCALFIELD_HPP
#define CHATELET2_LOCALFIELD_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chatelet2/funcfield.hpp"

namespace chatelet2 {

class LocalField;
using LocalFieldPtr = std::shared_ptr<const LocalField>;

// Truncated Laurent series over the residue field of a place: the element
// sum coeffs[i] * pi^(lead+i) + O(pi^prec), where pi is the local
// uniformizer. Normal form: coeffs[0] != 0 (so lead is the exact valuation)
// and the window stays below prec. A series with no known nonzero
// coefficient is the "imprecise zero" 0 + O(pi^prec), stored as lead = prec
// with empty coeffs; its valuation is undetermined.
class LaurentSeries {
public:
    LaurentSeries(LocalFieldPtr lf, long lead, std::vector<FieldElem> coeffs, long prec);
    static LaurentSeries imprecise_zero(LocalFieldPtr lf, long prec);
    static LaurentSeries uniformizer(const LocalFieldPtr& lf, long prec);
    static LaurentSeries constant(const LocalFieldPtr& lf, FieldElem residue_value, long prec);

    const LocalFieldPtr& field() const { return lf_; }
    long lead() const { return lead_; }
    long prec() const { return prec_; }
    bool is_imprecise_zero() const { return c_.empty(); }
    long valuation() const;  // throws PrecisionExhausted on imprecise zero
    FieldElem coeff(long e) const;  // requires e < prec
    const std::vector<FieldElem>& coeffs() const { return c_; }

    // Precision tracking: addition keeps min(prec); multiplication keeps
    // min(prec_a + val_b, prec_b + val_a); squaring is coefficient-wise
    // (characteristic 2); inversion keeps the relative precision.
    LaurentSeries operator+(const LaurentSeries& o) const;
    LaurentSeries operator*(const LaurentSeries& o) const;
    LaurentSeries sqr() const;
    LaurentSeries inv() const;  // throws on imprecise zero (valuation unknown)
    LaurentSeries pow(long e) const;
    LaurentSeries scaled(FieldElem k) const;  // multiply by a residue constant
    LaurentSeries shifted(long k) const;      // multiply by pi^k
    LaurentSeries truncated(long p) const;    // lower precision to p

    std::string to_string() const;

private:
    LocalFieldPtr lf_;
    long lead_;
    std::vector<FieldElem> c_;
    long prec_;
};

// Completion of F_q(t) at a place: residue field data, Artin-Schreier root
// table over the residue field, and the image of t as a series in the local
// uniformizer (pi = the monic prime at finite places, pi = 1/t at infinity).
// Instances are cached per place and shared; all queries are thread-safe.
class LocalField : public std::enable_shared_from_this<LocalField> {
public:
    static LocalFieldPtr get(const Place& v);

    const Place& place() const { return place_; }
    const FieldCtx& base() const { return rf_.base; }
    const ResidueField& residue() const { return rf_; }
    const FieldCtx& res_ctx() const { return rf_.field; }

    // Least y in the residue field with y^2 + y = c, if any (table lookup).
    std::optional<FieldElem> artin_schreier_root(FieldElem c) const;
    int res_trace(FieldElem a) const { return rf_.field.trace(a); }

    // Whether T^2 + T + gamma splits over this completion, for gamma in the
    // base field: equivalent to the residue-field trace of gamma vanishing.
    bool splits(FieldElem gamma_base) const;

    // t as an element of the completion, to absolute precision prec. At the
    // infinite place this is exactly pi^(-1); at a finite place it is the
    // Hensel lift of the chosen root of the prime, refined by Newton steps
    // (the prime is separable, so the derivative is a unit). Lifts are
    // cached and extended incrementally.
    LaurentSeries t_series(long prec) const;

private:
    explicit LocalField(const Place& v);

    Place place_;
    const ResidueField& rf_;
    std::vector<int32_t> as_table_;  // value -> least root of y^2+y=value, or -1
    mutable std::mutex tau_mu_;
    mutable std::optional<LaurentSeries> tau_;  // best lift so far
};

// r as an element of the completion at lf's place, with precision exactly
// prec. Exact prime powers are split off before series division, so the
// valuation of the result is exact whenever r != 0; embed(0) is the
// imprecise zero.
LaurentSeries embed(const RationalFn& r, const LocalFieldPtr& lf, long prec);

// Least-residue solution of y^2 + y = c, or nullopt when the residue
// equation has no root (trace 1). Requires valuation(c) >= 0; an imprecise
// zero input yields the imprecise zero solution. Solutions are refined by
// y <- y^2 + c, whose error squares each step.
std::optional<LaurentSeries> solve_artin_schreier(const LaurentSeries& c);

// y^2 + y*z + gamma*z^2, the norm form of the Artin-Schreier extension
// attached to gamma (an element of the base field).
LaurentSeries norm_form_value(const LaurentSeries& y, const LaurentSeries& z,
                              FieldElem gamma_base);

// Solves y^2 + y*z + gamma*z^2 = c over the completion of c. In the split
// case every c is a norm. In the inert case c is a norm iff its valuation
// is even; nullopt otherwise. Throws PrecisionExhausted when c is an
// imprecise zero at an inert place (parity of the valuation unknown).
std::optional<std::pair<LaurentSeries, LaurentSeries>> solve_norm_form(
    const LaurentSeries& c, FieldElem gamma_base);

// A local point of a surface y^2 + yz + gamma*z^2 = P(x): coordinates in
// the completion, with (y, z) solving the norm form at x.
struct LocalPoint {
    LaurentSeries x, y, z;
};

}  // namespace chatelet2

#endif
