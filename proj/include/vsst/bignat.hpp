#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "vsst/errors.hpp"

namespace vsst {

// Arbitrary-precision natural number. Values are kept non-negative by
// construction everywhere in this library; the external text form is always
// lowercase big-endian hex with no 0x prefix (see to_hex/from_hex).
using BigNat = boost::multiprecision::cpp_int;

// Seedable generator used by every sampling routine. mt19937_64 output is
// pinned by the standard, so seeded runs are reproducible across platforms.
using Rng = std::mt19937_64;

inline std::string to_hex(const BigNat& v) {
    if (v == 0) return "0";
    std::string out;
    static const char digits[] = "0123456789abcdef";
    BigNat x = v;
    while (x != 0) {
        out.push_back(digits[static_cast<unsigned>(x & 0xf)]);
        x >>= 4;
    }
    return {out.rbegin(), out.rend()};
}

// Fixed-width variant: left-pads with zeros to `width` digits.
inline std::string to_hex(const BigNat& v, std::size_t width) {
    std::string s = to_hex(v);
    if (s.size() < width) s.insert(0, width - s.size(), '0');
    return s;
}

inline BigNat from_hex(std::string_view s) {
    if (s.empty()) throw ParseError("empty hex string");
    BigNat v = 0;
    for (char c : s) {
        unsigned d;
        if (c >= '0' && c <= '9') d = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') d = static_cast<unsigned>(c - 'a') + 10;
        else if (c >= 'A' && c <= 'F') d = static_cast<unsigned>(c - 'A') + 10;
        else throw ParseError(std::string("bad hex digit '") + c + "'");
        v <<= 4;
        v |= d;
    }
    return v;
}

// Uniform value in [0, bound). bound >= 1.
inline BigNat random_below(const BigNat& bound, Rng& rng) {
    if (bound <= 0) throw Error("random_below: bound must be positive");
    if (bound == 1) return 0;
    const std::size_t bits = boost::multiprecision::msb(bound - 1) + 1;
    const std::size_t words = (bits + 63) / 64;
    const std::size_t top_bits = bits - (words - 1) * 64;
    const std::uint64_t top_mask =
        top_bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << top_bits) - 1);
    for (;;) {
        BigNat v = 0;
        for (std::size_t i = 0; i < words; ++i) {
            std::uint64_t w = rng();
            if (i == 0) w &= top_mask;
            v <<= 64;
            v |= w;
        }
        if (v < bound) return v;
    }
}

// Uniform value in [lo, hi], inclusive on both ends.
inline BigNat random_range(const BigNat& lo, const BigNat& hi, Rng& rng) {
    if (hi < lo) throw Error("random_range: empty range");
    return lo + random_below(hi - lo + 1, rng);
}

inline std::uint64_t random_index(std::uint64_t bound, Rng& rng) {
    return static_cast<std::uint64_t>(random_below(BigNat(bound), rng));
}

}  // namespace vsst
