#ifndef CHATELET2_COMMON_HPP
#define CHATELET2_COMMON_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chatelet2 {

// Valuation of the zero element at any place.
inline constexpr long kValInfinity = std::numeric_limits<long>::max();

struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};
struct InvalidDegree : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct PoleAtPlace : std::domain_error {
    using std::domain_error::domain_error;
};
struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionViolated : std::logic_error {
    using std::logic_error::logic_error;
};
struct ConstructionError : std::runtime_error {
    ConstructionError(const std::string& condition, const std::string& detail)
        : std::runtime_error(condition + ": " + detail), condition(condition) {}
    std::string condition;
};
struct WitnessFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SamplingExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CertificateInvalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CounterexampleToPaper : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 64-bit FNV-1a, used to derive per-object random streams from serialized keys.
inline uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// SplitMix64. Fully specified, so streams are identical on every platform;
// std::uniform_int_distribution is implementation-defined and must not be
// used anywhere results are serialized.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) via 128-bit multiply-shift.
    uint64_t below(uint64_t n) {
        return static_cast<uint64_t>((static_cast<__uint128_t>(next_u64()) * n) >> 64);
    }

    long in_range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

private:
    uint64_t state_;
};

// Hex codec for bit vectors: character i holds bits [4i, 4i+4), so bit 0 is
// the low bit of the first character.
std::string bits_to_hex(uint32_t bits, int nbits);
uint32_t bits_from_hex(std::string_view hex, int nbits);

}  // namespace chatelet2

#endif
