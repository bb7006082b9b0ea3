#pragma once

#include <cstdint>
#include <vector>

#include "vsst/bignat.hpp"
#include "vsst/detail/primes.hpp"
#include "vsst/errors.hpp"

namespace vsst {

// Public commitment to a Shamir polynomial over Z_q: alpha generates the
// order-q subgroup of GF(p)* and alpha_j = alpha^{a_j} commits to each
// coefficient.
struct FeldmanParams {
    BigNat p;
    BigNat q;
    BigNat generator;
    std::vector<BigNat> commitments;
};

namespace detail {

inline void feldman_check_group(const BigNat& p, const BigNat& q, const BigNat& alpha) {
    if (!is_prime(p) || !is_prime(q)) throw BadParams("p and q must both be prime");
    if ((p - 1) % q != 0) throw BadParams("q must divide p - 1");
    const BigNat a = alpha % p;
    if (a <= 1) throw BadParams("generator must exceed 1");
    if (boost::multiprecision::powm(a, q, p) != 1)
        throw BadParams("generator order does not divide q");
}

}  // namespace detail

inline FeldmanParams feldman_commit(const std::vector<BigNat>& coeffs, const BigNat& p,
                                    const BigNat& q, const BigNat& alpha) {
    detail::feldman_check_group(p, q, alpha);
    if (coeffs.empty()) throw BadParams("need at least the constant coefficient");
    FeldmanParams out{p, q, alpha % p, {}};
    out.commitments.reserve(coeffs.size());
    for (const BigNat& a : coeffs)
        out.commitments.push_back(boost::multiprecision::powm(out.generator, a % q, p));
    return out;
}

// Share i checks alpha^{s_i} against prod_j alpha_j^{i^j}; the exponents i^j
// live in the order-q group, so they reduce mod q before use.
inline bool feldman_verify(std::uint32_t index, const BigNat& share,
                           const FeldmanParams& params) {
    detail::feldman_check_group(params.p, params.q, params.generator);
    if (index < 1) throw BadParams("shareholder index must be positive");
    const BigNat lhs =
        boost::multiprecision::powm(params.generator, share % params.q, params.p);
    BigNat rhs = 1;
    BigNat exponent = 1;  // i^j mod q, built incrementally
    for (const BigNat& commitment : params.commitments) {
        const BigNat term = boost::multiprecision::powm(commitment, exponent, params.p);
        rhs = rhs * term % params.p;
        exponent = exponent * index % params.q;
    }
    return lhs == rhs;
}

// Builds a usable group around a given order q: the smallest prime p = kq + 1
// hosts an order-q subgroup, and any h with h^{(p-1)/q} != 1 lands a generator
// of it.
inline FeldmanParams feldman_generate_params(const BigNat& q, Rng& rng) {
    if (!detail::is_prime(q)) throw BadParams("subgroup order must be prime");
    BigNat k = 2;
    BigNat p = 2 * q + 1;
    while (!detail::is_prime(p)) {
        k += 2;
        p = k * q + 1;
    }
    const BigNat cofactor = (p - 1) / q;
    for (;;) {
        const BigNat h = random_range(BigNat(2), p - 2, rng);
        const BigNat alpha = boost::multiprecision::powm(h, cofactor, p);
        if (alpha != 1) return FeldmanParams{p, q, alpha, {}};
    }
}

}  // namespace vsst
