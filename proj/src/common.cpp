#include "chatelet2/common.hpp"

#include <cstdlib>
#include <thread>

#include "chatelet2/parallel.hpp"

namespace chatelet2 {

std::string bits_to_hex(uint32_t bits, int nbits) {
    if (nbits < 1) throw PreconditionViolated("bits_to_hex: nbits must be positive");
    static const char* digits = "0123456789abcdef";
    int nibbles = (nbits + 3) / 4;
    std::string out(static_cast<size_t>(nibbles), '0');
    for (int i = 0; i < nibbles; ++i) out[static_cast<size_t>(i)] = digits[(bits >> (4 * i)) & 15u];
    return out;
}

uint32_t bits_from_hex(std::string_view hex, int nbits) {
    int nibbles = (nbits + 3) / 4;
    if (nbits < 1 || static_cast<int>(hex.size()) != nibbles)
        throw PreconditionViolated("bits_from_hex: expected " + std::to_string(nibbles) +
                                   " hex digits, got \"" + std::string(hex) + "\"");
    uint32_t bits = 0;
    for (int i = 0; i < nibbles; ++i) {
        char c = hex[static_cast<size_t>(i)];
        uint32_t v;
        if (c >= '0' && c <= '9') v = static_cast<uint32_t>(c - '0');
        else if (c >= 'a' && c <= 'f') v = static_cast<uint32_t>(c - 'a' + 10);
        else throw PreconditionViolated(std::string("bits_from_hex: bad digit '") + c + "'");
        bits |= v << (4 * i);
    }
    if (nbits < 32 && (bits >> nbits) != 0)
        throw PreconditionViolated("bits_from_hex: value exceeds " + std::to_string(nbits) + " bits");
    return bits;
}

int default_thread_count() {
    if (const char* env = std::getenv("CHATELET_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return static_cast<int>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return static_cast<int>(hw > 8 ? 8 : hw);
}

}  // namespace chatelet2
