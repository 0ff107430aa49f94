#ifndef CHATELET2_GF2M_HPP
#define CHATELET2_GF2M_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "chatelet2/common.hpp"

namespace chatelet2 {

// Element of F_{2^m}, stored as the coefficient bits of its polynomial
// representative: bit i is the coefficient of x^i. Only meaningful together
// with the FieldCtx that produced it.
struct FieldElem {
    uint32_t bits = 0;
    friend bool operator==(FieldElem, FieldElem) = default;
    friend auto operator<=>(FieldElem, FieldElem) = default;
};

// F_{2^m} for 1 <= m <= 16, as F_2[x] modulo an irreducible polynomial of
// degree m (bit i of `modulus` is the coefficient of x^i). Plain value type;
// copying is trivial and contexts compare by (m, modulus).
class FieldCtx {
public:
    // Uses the least irreducible modulus of degree m (ordered by bit value).
    explicit FieldCtx(int m);
    FieldCtx(int m, uint32_t modulus);  // validates irreducibility over F_2

    static constexpr int kMaxDegree = 16;

    int degree() const { return m_; }
    uint32_t modulus() const { return mod_; }
    uint64_t order() const { return 1ull << m_; }          // q = 2^m
    uint64_t unit_order() const { return order() - 1; }    // n = 2^m - 1

    FieldElem zero() const { return {0}; }
    FieldElem one() const { return {1}; }
    FieldElem from_bits(uint32_t bits) const;  // requires bits < 2^m

    FieldElem add(FieldElem a, FieldElem b) const { return {a.bits ^ b.bits}; }
    FieldElem mul(FieldElem a, FieldElem b) const;
    FieldElem sqr(FieldElem a) const { return mul(a, a); }
    FieldElem pow(FieldElem a, uint64_t e) const;
    FieldElem inv(FieldElem a) const;  // throws DivisionByZero on 0
    FieldElem sqrt(FieldElem a) const;  // inverse of Frobenius; always exists

    // Absolute trace to F_2: a + a^2 + a^4 + ... + a^(2^(m-1)), in {0, 1}.
    int trace(FieldElem a) const;

    // Whether T^2 + T + c has no root in F_{2^m}; equivalent to trace(c) = 1.
    // Tested by root search so it can serve as the oracle for the trace
    // criterion.
    bool artin_schreier_irreducible_by_search(FieldElem c) const;

    std::string to_hex(FieldElem a) const { return bits_to_hex(a.bits, m_); }
    FieldElem from_hex(std::string_view s) const { return {bits_from_hex(s, m_)}; }

    friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
        return a.m_ == b.m_ && a.mod_ == b.mod_;
    }

private:
    int m_;
    uint32_t mod_;
};

// The baked default moduli, exposed so tests can recompute them.
uint32_t default_modulus(int m);

}  // namespace chatelet2

#endif
