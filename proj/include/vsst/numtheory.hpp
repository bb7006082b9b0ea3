#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <set>
#include <string>
#include <vector>

#include "vsst/bignat.hpp"
#include "vsst/detail/primes.hpp"
#include "vsst/encoding.hpp"
#include "vsst/errors.hpp"
#include "vsst/field.hpp"

namespace vsst {

// A prime p together with q = (p - 1) / 2, itself prime.  GF(p)* then has
// order 2q with factorization {2, q}, which is what makes cheap primitive
// root tests possible.
struct SafePrime {
    BigNat p;
    BigNat q;
};

inline bool is_prime(const BigNat& n) { return detail::is_prime(n); }

inline bool is_safe_prime(const BigNat& p) {
    return p >= 5 && (p & 1) != 0 && detail::is_prime(p >> 1) && detail::is_prime(p);
}

// strict = true gives NP(x), the lowest prime strictly above x; strict = false
// gives np(x), which may return x itself.
inline BigNat next_prime(const BigNat& x, bool strict = true) {
    BigNat c = strict ? x + 1 : x;
    if (c <= 2) return 2;
    if ((c & 1) == 0) ++c;
    while (!detail::is_prime(c)) c += 2;
    return c;
}

namespace detail {

inline std::uint64_t inv_mod_small(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
    while (nr != 0) {
        const std::int64_t quot = r / nr;
        std::int64_t tmp = t - quot * nt;
        t = nt;
        nt = tmp;
        tmp = r - quot * nr;
        r = nr;
        nr = tmp;
    }
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

inline unsigned popcount_big(const BigNat& v) {
    if (v == 0) return 0;
    std::vector<std::uint64_t> words;
    boost::multiprecision::export_bits(v, std::back_inserter(words), 64);
    unsigned n = 0;
    for (std::uint64_t w : words) n += static_cast<unsigned>(std::popcount(w));
    return n;
}

}  // namespace detail

struct SafePrimeSearchOptions {
    // Number of candidates allowed to reach primality testing; 0 = unlimited.
    std::uint64_t max_tested = 0;
    // Require popcount(q) at or above this floor; 0 disables the filter.
    // Dense q makes the field less attractive to special-form sieving.
    unsigned min_hamming_weight = 0;
};

inline SafePrime next_safe_prime(const BigNat& x, const SafePrimeSearchOptions& opts = {}) {
    if (x < 5) return {BigNat(5), BigNat(2)};

    std::uint64_t tested = 0;
    auto charge = [&] {
        if (opts.max_tested != 0 && ++tested > opts.max_tested)
            throw SearchBudgetExhausted("safe-prime search: candidate budget of " +
                                        std::to_string(opts.max_tested) + " exhausted");
    };

    if (x < (BigNat(1) << 20)) {
        BigNat c = x + 1;
        if ((c & 1) == 0) ++c;
        for (;; c += 2) {
            // Above 7, both p and q dodge 3 only when p ≡ 11 (mod 12).
            if (c % 12 != 11 && c != 5 && c != 7) continue;
            const BigNat q = c >> 1;
            if (opts.min_hamming_weight != 0 &&
                detail::popcount_big(q) < opts.min_hamming_weight)
                continue;
            charge();
            if (detail::is_prime(q) && detail::is_prime(c)) return {c, q};
        }
    }

    // Large candidates: walk p ≡ 11 (mod 12) in windows and strike indices
    // where some small prime r divides p (p ≡ 0 mod r) or divides q
    // (p ≡ 1 mod r).  Survivors are rare enough that the Miller-Rabin cost
    // stays manageable even at thousands of bits.
    const auto& primes = detail::small_primes();
    constexpr std::uint64_t window = 4096;
    BigNat base = x + 1;
    base += (11 + 12 - static_cast<std::uint64_t>(base % 12)) % 12;
    std::vector<std::uint8_t> alive(window);
    for (;; base += 12 * window) {
        std::fill(alive.begin(), alive.end(), std::uint8_t{1});
        for (std::size_t pi = 0; pi < primes.size(); ++pi) {
            const std::uint64_t r = primes[pi];
            if (r == 3) continue;  // handled by the residue class
            const std::uint64_t b = static_cast<std::uint64_t>(base % r);
            const std::uint64_t inv12 = detail::inv_mod_small(12 % r, r);
            for (std::uint64_t i = (r - b) % r * inv12 % r; i < window; i += r)
                alive[i] = 0;
            for (std::uint64_t i = (r + 1 - b) % r * inv12 % r; i < window; i += r)
                alive[i] = 0;
        }
        for (std::uint64_t i = 0; i < window; ++i) {
            if (!alive[i]) continue;
            const BigNat p = base + 12 * BigNat(i);
            const BigNat q = p >> 1;
            if (opts.min_hamming_weight != 0 &&
                detail::popcount_big(q) < opts.min_hamming_weight)
                continue;
            charge();
            if (detail::is_prime(q) && detail::is_prime(p)) return {p, q};
        }
    }
}

// Uniform trial over {2, ..., p-2}: g fails to generate GF(p)* exactly when
// g^2 = 1 or g^q = 1, so each candidate costs two exponentiations and about
// half of them succeed.  attempts_out, when given, reports how many
// candidates were drawn.
inline FieldElement find_primitive_root(const FieldPtr& field, const BigNat& q, Rng& rng,
                                        std::uint64_t* attempts_out = nullptr) {
    std::uint64_t attempts = 0;
    for (;;) {
        ++attempts;
        const BigNat g = random_range(BigNat(2), field->modulus() - 2, rng);
        if (field->pow(g, 2) != 1 && field->pow(g, q) != 1) {
            if (attempts_out) *attempts_out = attempts;
            return FieldElement(field, g);
        }
    }
}

inline FieldElement find_primitive_root(const SafePrime& sp, Rng& rng,
                                        std::uint64_t* attempts_out = nullptr) {
    return find_primitive_root(FieldSpec::prime(sp.p), sp.q, rng, attempts_out);
}

// Every further primitive root is g^a with gcd(a, 2q) = 1, i.e. a odd and
// a ≠ q.  Restricting a to [3, p-2] keeps g itself out of the result, so for
// odd q there are q - 2 derivable roots (g makes up the last of the q - 1
// total); the q = 2 field GF(5) has exactly one.
inline std::vector<FieldElement> derive_primitive_roots(const FieldElement& g,
                                                        const SafePrime& sp,
                                                        std::size_t count, Rng& rng) {
    const BigNat odd_slots = sp.q - 1;  // odd exponents in [3, 2q-1]
    const BigNat available = (sp.q & 1) != 0 ? sp.q - 2 : odd_slots;
    if (BigNat(count) > available)
        throw CountExceedsAvailable("requested " + std::to_string(count) +
                                    " primitive roots, only " + available.str() +
                                    " can be derived");
    std::set<BigNat> used;
    std::vector<FieldElement> out;
    out.reserve(count);
    while (out.size() < count) {
        const BigNat a = 3 + 2 * random_below(odd_slots, rng);
        if (a == sp.q || !used.insert(a).second) continue;
        out.push_back(g.pow(a));
    }
    return out;
}

// GF(2^e) for prime 2^e - 1.  The group order being prime means every element
// outside {0, 1} has full order, so primitive elements can be sampled without
// any verification.
struct MersenneFieldHandle {
    unsigned exponent = 0;
    FieldPtr spec;

    FieldElement random_primitive(Rng& rng) const {
        return FieldElement(spec, random_range(BigNat(2), spec->size() - 1, rng));
    }
};

inline MersenneFieldHandle mersenne_field(unsigned exponent) {
    if (exponent < 2 || !detail::is_prime((BigNat(1) << exponent) - 1))
        throw NotMersenneExponent("2^" + std::to_string(exponent) + " - 1 is not prime");
    return MersenneFieldHandle{exponent, FieldSpec::binary(exponent)};
}

// Factorization by trial division over the small-prime table, good for the
// smooth or modest group orders this toolkit meets.  Anything left after the
// sieve must itself be prime or the attempt is reported as failed.
inline std::vector<std::pair<BigNat, unsigned>> factor_by_trial(BigNat n) {
    if (n < 1) throw BadParams("factorization needs a positive integer");
    std::vector<std::pair<BigNat, unsigned>> out;
    auto push = [&](const BigNat& p) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1);
    };
    while ((n & 1) == 0) {
        push(2);
        n >>= 1;
    }
    for (std::uint32_t p : detail::small_primes()) {
        if (BigNat(p) * p > n) break;
        while (n % p == 0) {
            push(p);
            n /= p;
        }
    }
    if (n > 1) {
        if (!detail::is_prime(n))
            throw BadFactorization("cofactor " + n.str() + " resists trial division");
        push(n);
    }
    return out;
}

// Density heuristic for Sophie Germain primes below x: 1.32032 x / (ln x)^2.
inline double sophie_germain_estimate(const BigNat& x) {
    const std::size_t bits = bitsize(x);
    double lnx;
    if (bits <= 512) {
        lnx = std::log(x.convert_to<double>());
    } else {
        const BigNat top = x >> (bits - 64);
        lnx = std::log(top.convert_to<double>()) +
              static_cast<double>(bits - 64) * std::log(2.0);
    }
    return 1.32032 * x.convert_to<double>() / (lnx * lnx);
}

}  // namespace vsst
