#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>

#include "vsst/bignat.hpp"
#include "vsst/errors.hpp"

namespace vsst {

/// Number of binary digits of x; by convention bitsize(0) = 1.
inline std::size_t bitsize(const BigNat& x) {
    if (x == 0) return 1;
    return boost::multiprecision::msb(x) + 1;
}

/// Bitsize of a set of naturals: enough digits for the largest member.
inline std::size_t bitsize(std::span<const BigNat> values) {
    if (values.empty()) throw EmptySet("bitsize of an empty set");
    std::size_t best = 1;
    for (const BigNat& v : values) best = std::max(best, bitsize(v));
    return best;
}

// A bit string of explicit length (leading zeros are significant).
struct Bitstring {
    BigNat value;        // numeric value of the bits, MSB first
    std::size_t length;  // number of bits; invariant: value < 2^length

    Bitstring(BigNat v, std::size_t len) : value(std::move(v)), length(len) {
        if (length == 0 || bitsize(value) > length)
            throw Error("Bitstring: value does not fit declared length");
    }

    /// Shortest string holding v (length = bitsize(v), so "0" for zero).
    static Bitstring minimal(const BigNat& v) { return {v, bitsize(v)}; }

    std::string to_string() const {
        std::string s(length, '0');
        for (std::size_t i = 0; i < length; ++i)
            if (boost::multiprecision::bit_test(value, i)) s[length - 1 - i] = '1';
        return s;
    }

    bool operator==(const Bitstring& o) const = default;
};

/// Left-pad with zeros to `target` bits.
inline Bitstring zero_pad(const Bitstring& s, std::size_t target) {
    if (target < s.length)
        throw TargetTooSmall("zero_pad: target shorter than string");
    return {s.value, target};
}

/// Split into the most significant ceil(n/2) bits and the least significant
/// floor(n/2) bits. Strings of length < 2 have no meaningful halves.
inline std::pair<Bitstring, Bitstring> split_halves(const Bitstring& s) {
    if (s.length < 2)
        throw EmptyString("split_halves: need at least 2 bits");
    const std::size_t lo_len = s.length / 2;
    const std::size_t hi_len = s.length - lo_len;
    BigNat lo_mask = (BigNat(1) << lo_len) - 1;
    return {Bitstring(s.value >> lo_len, hi_len),
            Bitstring(s.value & lo_mask, lo_len)};
}

/// Inverse of split_halves: hi bits followed by lo bits.
inline Bitstring concat(const Bitstring& hi, const Bitstring& lo) {
    return {(hi.value << lo.length) | lo.value, hi.length + lo.length};
}

}  // namespace vsst
