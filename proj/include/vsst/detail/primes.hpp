#pragma once

#include <cstdint>
#include <vector>

#include "vsst/bignat.hpp"

namespace vsst::detail {

// Odd primes below 2^16, used for trial division ahead of Miller-Rabin and
// for sieving safe-prime candidate windows. Built once.
inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t limit = 1u << 16;
        std::vector<bool> composite(limit, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 3; i < limit; i += 2) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j < limit; j += 2 * i)
                composite[static_cast<std::uint32_t>(j)] = true;
        }
        return out;
    }();
    return primes;
}

inline bool miller_rabin_witness(const BigNat& n, const BigNat& n_minus_1,
                                 const BigNat& d, unsigned r, const BigNat& a) {
    // Returns true if `a` proves n composite.
    BigNat x = boost::multiprecision::powm(a % n, d, n);
    if (x == 1 || x == n_minus_1) return false;
    for (unsigned i = 1; i < r; ++i) {
        x = (x * x) % n;
        if (x == n_minus_1) return false;
    }
    return true;
}

// Miller-Rabin primality test. Deterministic (fixed witness set, exact) for
// n < 3,317,044,064,679,887,385,961,981; above that, 64 pseudorandom rounds
// (error < 2^-128) with witnesses derived reproducibly from n itself.
inline bool is_prime(const BigNat& n) {
    if (n < 2) return false;
    if (n == 2) return true;
    if ((n & 1) == 0) return false;
    for (std::uint32_t p : small_primes()) {
        if (n == p) return true;
        if (BigNat(p) * p > n) return true;  // trial-divided past sqrt(n)
        if (n % p == 0) return false;
    }

    const BigNat n_minus_1 = n - 1;
    BigNat d = n_minus_1;
    unsigned r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }

    static const BigNat deterministic_bound("3317044064679887385961981");
    if (n < deterministic_bound) {
        for (unsigned a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41})
            if (miller_rabin_witness(n, n_minus_1, d, r, BigNat(a))) return false;
        return true;
    }

    Rng rng(0x9e3779b97f4a7c15ull ^
            static_cast<std::uint64_t>(n & 0xffffffffffffffffull));
    for (int round = 0; round < 64; ++round) {
        BigNat a = random_range(2, n - 2, rng);
        if (miller_rabin_witness(n, n_minus_1, d, r, a)) return false;
    }
    return true;
}

}  // namespace vsst::detail
