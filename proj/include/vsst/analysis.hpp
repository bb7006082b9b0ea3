#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "vsst/bignat.hpp"
#include "vsst/encoding.hpp"
#include "vsst/errors.hpp"
#include "vsst/field.hpp"
#include "vsst/numtheory.hpp"
#include "vsst/polynomial.hpp"
#include "vsst/vss.hpp"

namespace vsst {

using Rational = boost::multiprecision::cpp_rational;

// Root-finding target p(x) = base^x. Discrete log is the deg(p) = 0 case.
// Bases are expected to be primitive; the scan itself works for any unit.
struct EprpInstance {
    Polynomial polynomial;
    FieldElement base;
};

// Exhaustive solution set of p(x) = r^x for x in {0..order}, ascending.
inline std::vector<FieldElement> eprp_roots_bruteforce(const EprpInstance& inst) {
    const FieldPtr& f = inst.polynomial.field();
    if (!same_field(f, inst.base.field()))
        throw MixedFields("instance polynomial and base live in different fields");
    if (f->size() > (BigNat(1) << 24))
        throw FieldTooLarge("exhaustive scan capped at 2^24 elements");

    const std::uint64_t order = static_cast<std::uint64_t>(f->group_order());
    std::vector<FieldElement> roots;
    BigNat rx = 1;
    for (std::uint64_t x = 0; x <= order; ++x) {
        const BigNat xv(x);
        if (inst.polynomial.evaluate_value(xv) == rx) roots.emplace_back(f, xv);
        rx = f->mul(rx, inst.base.value());
    }
    return roots;
}

struct GcdAttackResult {
    Polynomial gcd;
    std::vector<BigNat> candidates;  // recovered share values, ascending
};

namespace detail {

// Colluder j's handle on the missing share: V_j(x) - x^{u_j}. Dense
// materialization only pays off for small exponents, hence the 2^20 cap.
inline Polynomial collusion_difference(const VerificationBundle& b) {
    if (b.base < 1) throw BadParams("private bundle carries no exponent");
    if (b.base > (BigNat(1) << 20))
        throw DegreeTooLarge("x^u with u = " + b.base.str() +
                             " is too dense to materialize");
    const Polynomial v(b.field, b.coefficients);
    return v - Polynomial::monomial(b.field, BigNat(1),
                                    static_cast<std::size_t>(b.base));
}

}  // namespace detail

// Collusion attack on the private schemes: each of the n-1 colluders' bundles
// vanishes on every other party's share, so their folded gcd isolates the one
// share no colluder holds. With a single bundle this degenerates to plain
// root-finding and every root comes back.
//
// For the string-split variant the gcd roots are mid halves M; each candidate
// low half L is then found by exhaustive u_j-th root search against every
// bundle, and candidates are reassembled as M || L at the declared width.
// Note the difference V_j(x) - x^{u_j} only vanishes at M when L^{u_j} equals
// M^{u_j} there, so string-split instances without that alignment fold to a
// constant and the attack reports TrivialGcd.
inline GcdAttackResult gcd_collusion_attack(const std::vector<VerificationBundle>& bundles,
                                            VssScheme variant) {
    if (variant != VssScheme::pow_priv && variant != VssScheme::ssp_priv)
        throw BadParams("collusion attack applies to the private schemes only");
    if (bundles.empty()) throw EmptySet("attack needs at least one bundle");

    const FieldPtr& f = bundles.front().field;
    const std::size_t width = bundles.front().domain_bits;
    for (const VerificationBundle& b : bundles) {
        if (b.scheme != variant)
            throw BadParams("bundle scheme does not match the attacked variant");
        if (b.verifier_index == 0)
            throw BadParams("public bundle in a collusion set");
        if (!same_field(b.field, f))
            throw MixedFields("collusion bundles from different fields");
        if (b.domain_bits != width)
            throw BadParams("collusion bundles disagree on share width");
    }

    bool first = true;
    Polynomial g = Polynomial::zero(f);
    for (const VerificationBundle& b : bundles) {
        const Polynomial w = detail::collusion_difference(b);
        if (w.is_zero()) continue;  // V_j is exactly x^{u_j}: no information
        g = first ? w : poly_gcd(g, w);
        first = false;
    }
    if (first || g.degree() < 1)
        throw TrivialGcd("residual gcd is constant; attack inconclusive");

    GcdAttackResult result{g, {}};
    const std::vector<FieldElement> roots = roots_bruteforce(g);

    if (variant == VssScheme::pow_priv) {
        for (const FieldElement& r : roots) result.candidates.push_back(r.value());
        return result;
    }

    // ssp_priv: roots are candidate mid halves; recover the low half by brute
    // force and keep only values every colluder's bundle agrees on.
    if (width < 2) throw BadParams("split shares need at least 2 bits");
    const std::size_t lo_len = width / 2;
    const std::size_t hi_len = width - lo_len;
    const std::uint64_t lo_bound = std::uint64_t{1} << lo_len;
    for (const FieldElement& root : roots) {
        const BigNat& mid = root.value();
        if (bitsize(mid) > hi_len) continue;
        std::vector<BigNat> targets;
        targets.reserve(bundles.size());
        for (const VerificationBundle& b : bundles)
            targets.push_back(Polynomial(f, b.coefficients).evaluate_value(mid));
        for (std::uint64_t l = 0; l < lo_bound; ++l) {
            const BigNat lv(l);
            bool consistent = true;
            for (std::size_t j = 0; j < bundles.size() && consistent; ++j)
                consistent = f->pow(lv, bundles[j].base) == targets[j];
            if (consistent)
                result.candidates.push_back(
                    concat(Bitstring(mid, hi_len), Bitstring(lv, lo_len)).value);
        }
    }
    std::sort(result.candidates.begin(), result.candidates.end());
    result.candidates.erase(
        std::unique(result.candidates.begin(), result.candidates.end()),
        result.candidates.end());
    return result;
}

enum class RateScheme { feldman, vss_exp, vss_exp_ssp };

// Storage accounting for one verification layer over n shares of bs(q) bits.
// total_bits is what the layer publishes, committed_bits what it covers; the
// headline rate follows each scheme's own convention: Feldman's equals
// total/committed exactly, the exponent schemes quote the per-element blow-up
// bs(p)/bs(q).
struct RateReport {
    RateScheme scheme;
    BigNat total_bits;
    BigNat committed_bits;
    Rational rate;
    std::size_t bs_q = 0;
    std::size_t bs_p = 0;
    std::uint32_t t = 0;
    std::uint32_t n = 0;
    Rational k;  // bs(p)/bs(q)
};

// For the Feldman row, bs_p is the commitment modulus width (default 2048,
// smaller is rejected). The exponent schemes derive their field from bs_q and
// ignore bs_p.
inline RateReport rate_report(RateScheme scheme, std::size_t bs_q, std::uint32_t t,
                              std::uint32_t n, std::size_t bs_p = 0) {
    if (bs_q < 1) throw BadParams("secret field width must be positive");
    if (t < 1 || n < t)
        throw BadParams("need 1 <= t <= n, got t=" + std::to_string(t) +
                        " n=" + std::to_string(n));

    RateReport r;
    r.scheme = scheme;
    r.bs_q = bs_q;
    r.t = t;
    r.n = n;

    switch (scheme) {
        case RateScheme::feldman: {
            if (bs_p == 0) bs_p = 2048;
            if (bs_p < 2048)
                throw BadParams("commitment modulus must be at least 2048 bits");
            r.bs_p = bs_p;
            r.total_bits = BigNat(t + 1) * bs_p;
            r.committed_bits = BigNat(t) * bs_q;
            r.rate = Rational(r.total_bits, r.committed_bits);
            break;
        }
        case RateScheme::vss_exp: {
            const SafePrime p1 = next_safe_prime(BigNat(1) << bs_q);
            r.bs_p = bitsize(p1.p);
            r.total_bits = BigNat(bitsize(BigNat(bs_q))) + BigNat(n) * r.bs_p;
            r.committed_bits = BigNat(n) * bs_q;
            r.rate = Rational(r.bs_p, bs_q);
            break;
        }
        case RateScheme::vss_exp_ssp: {
            const std::size_t w = (bs_q + 1) / 2;
            const SafePrime p2 = next_safe_prime(BigNat(1) << w);
            r.bs_p = bitsize(p2.p);
            r.total_bits = BigNat(bitsize(BigNat(w))) + BigNat(n) * r.bs_p;
            r.committed_bits = BigNat(n) * bs_q;
            r.rate = Rational(r.bs_p, bs_q);
            break;
        }
    }
    r.k = Rational(r.bs_p, r.bs_q);
    return r;
}

// Fixed-point decimal rendering, round half up. Presentation only; reports
// keep exact rationals.
inline std::string format_rational(const Rational& r, unsigned digits = 4) {
    BigNat scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    const BigNat num = boost::multiprecision::numerator(r) * scale;
    const BigNat den = boost::multiprecision::denominator(r);
    BigNat q = num / den;
    const BigNat rem = num % den;
    if (rem * 2 >= den) ++q;
    const BigNat whole = q / scale;
    const BigNat frac_part = q % scale;
    const std::string frac = frac_part.str();
    std::string out = whole.str();
    if (digits > 0) {
        out += '.';
        out += std::string(digits - frac.size(), '0');
        out += frac;
    }
    return out;
}

}  // namespace vsst
