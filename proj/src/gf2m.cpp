#include "chatelet2/gf2m.hpp"

#include <array>

namespace chatelet2 {

namespace {

// Carry-less product of two <=17-bit operands, branch-free.
inline uint64_t clmul(uint64_t a, uint32_t b) {
    uint64_t r = 0;
    while (b) {
        r ^= a & (0ull - static_cast<uint64_t>(b & 1u));
        a <<= 1;
        b >>= 1;
    }
    return r;
}

// Degree of a nonzero F_2[x] polynomial given as bits.
inline int poly2_degree(uint64_t bits) {
    int d = -1;
    while (bits) {
        bits >>= 1;
        ++d;
    }
    return d;
}

inline uint64_t poly2_mod(uint64_t a, uint64_t b) {
    int db = poly2_degree(b);
    while (a && poly2_degree(a) >= db) a ^= b << (poly2_degree(a) - db);
    return a;
}

bool poly2_irreducible(uint32_t f, int m) {
    if (poly2_degree(f) != m) return false;
    if (m == 1) return true;
    // Trial division by every polynomial of degree 1..m/2. Degrees here are
    // at most 16, so this brute force is instant and has no preconditions.
    for (int d = 1; 2 * d <= m; ++d)
        for (uint64_t g = (1ull << d); g < (1ull << (d + 1)); ++g)
            if (poly2_mod(f, g) == 0) return false;
    return true;
}

// Least irreducible polynomial of each degree 1..16, ordered by bit value.
constexpr std::array<uint32_t, 17> kDefaultModuli = {
    0,       // unused
    0x2,     // x
    0x7,     // x^2 + x + 1
    0xb,     // x^3 + x + 1
    0x13,    // x^4 + x + 1
    0x25,    // x^5 + x^2 + 1
    0x43,    // x^6 + x + 1
    0x83,    // x^7 + x + 1
    0x11b,   // x^8 + x^4 + x^3 + x + 1
    0x203,   // x^9 + x + 1
    0x409,   // x^10 + x^3 + 1
    0x805,   // x^11 + x^2 + 1
    0x1009,  // x^12 + x^3 + 1
    0x201b,  // x^13 + x^4 + x^3 + x + 1
    0x4021,  // x^14 + x^5 + 1
    0x8003,  // x^15 + x + 1
    0x1002b  // x^16 + x^5 + x^3 + x + 1
};

}  // namespace

uint32_t default_modulus(int m) {
    if (m < 1 || m > FieldCtx::kMaxDegree)
        throw InvalidDegree("default_modulus: degree must be in [1, 16], got " + std::to_string(m));
    return kDefaultModuli[static_cast<size_t>(m)];
}

FieldCtx::FieldCtx(int m) : FieldCtx(m, default_modulus(m)) {}

FieldCtx::FieldCtx(int m, uint32_t modulus) : m_(m), mod_(modulus) {
    if (m < 1 || m > kMaxDegree)
        throw InvalidDegree("FieldCtx: degree must be in [1, 16], got " + std::to_string(m));
    if (!poly2_irreducible(modulus, m))
        throw PreconditionViolated("FieldCtx: modulus " + bits_to_hex(modulus, m + 1) +
                                   " is not irreducible of degree " + std::to_string(m));
}

FieldElem FieldCtx::from_bits(uint32_t bits) const {
    if (m_ < 32 && (bits >> m_) != 0)
        throw PreconditionViolated("FieldCtx::from_bits: value exceeds field size");
    return {bits};
}

FieldElem FieldCtx::mul(FieldElem a, FieldElem b) const {
    uint64_t p = clmul(a.bits, b.bits);
    // Reduce from degree 2m-2 down to < m, branch-free on the conditional xor.
    for (int i = 2 * m_ - 2; i >= m_; --i) {
        uint64_t bit = (p >> i) & 1u;
        p ^= (static_cast<uint64_t>(mod_) << (i - m_)) * bit;
    }
    return {static_cast<uint32_t>(p)};
}

FieldElem FieldCtx::pow(FieldElem a, uint64_t e) const {
    FieldElem r = one();
    FieldElem base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

FieldElem FieldCtx::inv(FieldElem a) const {
    if (a.bits == 0) throw DivisionByZero("FieldCtx::inv: zero has no inverse");
    return pow(a, order() - 2);
}

FieldElem FieldCtx::sqrt(FieldElem a) const { return pow(a, 1ull << (m_ - 1)); }

int FieldCtx::trace(FieldElem a) const {
    FieldElem acc = a;
    FieldElem t = a;
    for (int i = 1; i < m_; ++i) {
        t = sqr(t);
        acc = add(acc, t);
    }
    // The trace lands in the prime field.
    if (acc.bits > 1) throw PreconditionViolated("trace: result not in F_2");
    return static_cast<int>(acc.bits);
}

bool FieldCtx::artin_schreier_irreducible_by_search(FieldElem c) const {
    for (uint32_t y = 0; y < order(); ++y) {
        FieldElem ye{y};
        if (add(sqr(ye), add(ye, c)).bits == 0) return false;
    }
    return true;
}

}  // namespace chatelet2
