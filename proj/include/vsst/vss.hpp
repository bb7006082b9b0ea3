#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vsst/bignat.hpp"
#include "vsst/encoding.hpp"
#include "vsst/errors.hpp"
#include "vsst/field.hpp"
#include "vsst/numtheory.hpp"
#include "vsst/polynomial.hpp"

namespace vsst {

enum class VssScheme { pow, ssp, pow_priv, ssp_priv, exp, exp_ssp };

inline const char* scheme_name(VssScheme s) {
    switch (s) {
        case VssScheme::pow: return "pow";
        case VssScheme::ssp: return "ssp";
        case VssScheme::pow_priv: return "pow-priv";
        case VssScheme::ssp_priv: return "ssp-priv";
        case VssScheme::exp: return "exp";
        case VssScheme::exp_ssp: return "exp-ssp";
    }
    throw BadParams("unknown scheme tag");
}

inline VssScheme scheme_from_name(const std::string& name) {
    for (VssScheme s : {VssScheme::pow, VssScheme::ssp, VssScheme::pow_priv,
                        VssScheme::ssp_priv, VssScheme::exp, VssScheme::exp_ssp})
        if (name == scheme_name(s)) return s;
    throw ParseError("unknown scheme \"" + name + "\"");
}

// How the verification field is derived from the share domain: from the exact
// domain bound (NSP(q), NP(q)) or from its bitsize alone (NSP(2^b), GF(2^b),
// or the next Mersenne-exponent binary field).
enum class FieldChoice {
    next_safe_prime_of_value,
    next_safe_prime_of_bitsize,
    next_prime_of_value,
    binary_of_bitsize,
    mersenne,
};

inline FieldPtr choose_verification_field(FieldChoice choice, const BigNat& domain_bound,
                                          std::size_t domain_bits) {
    switch (choice) {
        case FieldChoice::next_safe_prime_of_value:
            return FieldSpec::prime(next_safe_prime(domain_bound).p);
        case FieldChoice::next_safe_prime_of_bitsize:
            return FieldSpec::prime(next_safe_prime(BigNat(1) << domain_bits).p);
        case FieldChoice::next_prime_of_value:
            return FieldSpec::prime(next_prime(domain_bound));
        case FieldChoice::binary_of_bitsize:
            return FieldSpec::binary(static_cast<unsigned>(domain_bits));
        case FieldChoice::mersenne:
            for (unsigned e = std::max<unsigned>(static_cast<unsigned>(domain_bits), 2);
                 e <= 127; ++e) {
                if (!detail::is_prime(BigNat(e))) continue;
                if (detail::is_prime((BigNat(1) << e) - 1)) return FieldSpec::binary(e);
            }
            throw BadParams("no Mersenne exponent covers " + std::to_string(domain_bits) +
                            " bits");
    }
    throw BadParams("unknown field choice");
}

// Width of one serialized field element.
inline std::size_t field_element_bits(const FieldPtr& f) {
    return f->kind() == FieldKind::prime ? bitsize(f->modulus())
                                         : static_cast<std::size_t>(f->degree());
}

// Uniform primitive element.  Safe-prime fields need two exponentiations per
// candidate, Mersenne binary fields none at all; anything else falls back to
// factoring the group order, which trial division must be able to finish.
inline FieldElement sample_primitive(const FieldPtr& f, Rng& rng) {
    if (f->kind() == FieldKind::binary) {
        if (detail::is_prime(f->group_order()))
            return FieldElement(f, random_range(BigNat(2), f->size() - 1, rng));
        const auto factors = factor_by_trial(f->group_order());
        for (;;) {
            FieldElement g(f, random_range(BigNat(2), f->size() - 1, rng));
            if (is_primitive(g, factors)) return g;
        }
    }
    const BigNat& p = f->modulus();
    if (p < 5) {
        if (p == 3) return FieldElement(f, BigNat(2));
        throw FieldTooSmall("GF(2) has a trivial multiplicative group");
    }
    const BigNat half = (p - 1) >> 1;
    if (detail::is_prime(half)) return find_primitive_root(f, half, rng);
    const auto factors = factor_by_trial(p - 1);
    for (;;) {
        FieldElement g(f, random_range(BigNat(2), p - 2, rng));
        if (is_primitive(g, factors)) return g;
    }
}

// phi(group order): how many primitive elements exist at all.
inline BigNat primitive_count(const FieldPtr& f) {
    BigNat phi = f->group_order();
    for (const auto& [prime, exp] : factor_by_trial(f->group_order())) phi -= phi / prime;
    return phi;
}

// The data one verifier holds.  Coefficient lists have a fixed width (n for
// the public schemes, n-1 for per-verifier ones) regardless of the actual
// polynomial degree, so their size leaks nothing about the shares.
struct VerificationBundle {
    VssScheme scheme = VssScheme::pow;
    std::uint32_t verifier_index = 0;  // 0 marks a public bundle
    FieldPtr field;
    BigNat base;                       // r, u_j, or r_j; stays 0 for plain ssp
    std::vector<BigNat> coefficients;
    std::size_t domain_bits = 0;       // share width bs(q), or the half bound w
};

inline std::size_t bundle_payload_bits(const VerificationBundle& b) {
    std::size_t bits = bitsize(BigNat(b.domain_bits)) + bitsize(b.base);
    for (const BigNat& c : b.coefficients) bits += bitsize(c);
    return bits;
}

namespace detail {

template <class Err>
inline void require_distinct(const std::vector<BigNat>& values, const char* what) {
    std::set<BigNat> seen;
    for (const BigNat& v : values)
        if (!seen.insert(v).second) throw Err(std::string(what) + " " + to_hex(v) + " repeated");
}

// Resolves the (exclusive) share domain bound and its bitsize, deriving both
// from the data when the caller did not state them.
inline std::pair<BigNat, std::size_t> domain_of(const std::vector<BigNat>& shares,
                                                const BigNat& declared_bound) {
    if (shares.empty()) throw EmptySet("no shares given");
    if (declared_bound != 0) {
        for (const BigNat& s : shares)
            if (s >= declared_bound)
                throw ShareOutOfField("share " + to_hex(s) + " outside its declared domain");
        return {declared_bound, bitsize(declared_bound)};
    }
    BigNat mx = 0;
    for (const BigNat& s : shares) mx = std::max(mx, s);
    return {mx + 1, bitsize(mx)};
}

inline void require_in_field(const std::vector<BigNat>& values, const FieldPtr& f) {
    for (const BigNat& v : values)
        if (v >= f->size())
            throw ShareOutOfField("value " + to_hex(v) + " exceeds the verification field");
}

inline Polynomial interpolate_pairs(const FieldPtr& f,
                                    const std::vector<std::pair<BigNat, BigNat>>& pts) {
    PointSet ps;
    ps.reserve(pts.size());
    for (const auto& [x, y] : pts) ps.push_back({FieldElement(f, x), FieldElement(f, y)});
    return lagrange_interpolate(ps);
}

inline std::pair<BigNat, BigNat> split_at(const BigNat& value, std::size_t width) {
    const auto [hi, lo] = split_halves(zero_pad(Bitstring::minimal(value), width));
    return {hi.value, lo.value};
}

inline FieldElement distinct_primitive(const FieldPtr& f, std::set<BigNat>& used, Rng& rng) {
    for (;;) {
        FieldElement g = sample_primitive(f, rng);
        if (used.insert(g.value()).second) return g;
    }
}

}  // namespace detail

// V interpolates (s_i, s_i^r) for a published random exponent r; anyone can
// replay the check V(s) = s^r.
inline VerificationBundle vss_pow_deal(const std::vector<BigNat>& shares, FieldChoice choice,
                                       Rng& rng, const BigNat& domain_bound = 0) {
    const auto [bound, bits] = detail::domain_of(shares, domain_bound);
    detail::require_distinct<DuplicateShareValue>(shares, "share value");
    FieldPtr f = choose_verification_field(choice, bound, bits);
    detail::require_in_field(shares, f);
    const BigNat r = random_range(BigNat(1), f->group_order(), rng);
    std::vector<std::pair<BigNat, BigNat>> pts;
    pts.reserve(shares.size());
    for (const BigNat& s : shares) pts.emplace_back(s, f->pow(s, r));
    const Polynomial v = detail::interpolate_pairs(f, pts);
    return {VssScheme::pow, 0, f, r, v.coefficients_padded(shares.size()), bits};
}

inline bool vss_pow_verify(const BigNat& candidate, const VerificationBundle& b) {
    if (b.scheme != VssScheme::pow) throw BadParams("bundle does not carry a pow polynomial");
    if (candidate >= b.field->size())
        throw ShareOutOfField("candidate exceeds the verification field");
    const Polynomial v(b.field, b.coefficients);
    return v.evaluate_value(candidate) == b.field->pow(candidate, b.base);
}

// V maps each share's M-half to its L-half.  No secret parameter exists, so
// this is the stepping stone whose binding the forgery test breaks.
inline VerificationBundle vss_ssp_deal(const std::vector<BigNat>& shares,
                                       std::size_t domain_bits, FieldChoice choice) {
    if (shares.empty()) throw EmptySet("no shares given");
    const BigNat bound = BigNat(1) << domain_bits;
    for (const BigNat& s : shares)
        if (s >= bound) throw ShareOutOfField("share " + to_hex(s) + " wider than " +
                                              std::to_string(domain_bits) + " bits");
    std::vector<BigNat> ms, ls;
    for (const BigNat& s : shares) {
        auto [m, l] = detail::split_at(s, domain_bits);
        ms.push_back(std::move(m));
        ls.push_back(std::move(l));
    }
    detail::require_distinct<MidHalfCollision>(ms, "M-half");
    const std::size_t half = (domain_bits + 1) / 2;
    FieldPtr f = choose_verification_field(choice, BigNat(1) << half, half);
    std::vector<std::pair<BigNat, BigNat>> pts;
    for (std::size_t i = 0; i < ms.size(); ++i) pts.emplace_back(ms[i], ls[i]);
    const Polynomial v = detail::interpolate_pairs(f, pts);
    return {VssScheme::ssp, 0, f, BigNat(0), v.coefficients_padded(shares.size()),
            domain_bits};
}

inline bool vss_ssp_verify(const BigNat& candidate, const VerificationBundle& b) {
    if (b.scheme != VssScheme::ssp) throw BadParams("bundle does not carry an ssp polynomial");
    if (candidate >= BigNat(1) << b.domain_bits)
        throw ShareOutOfField("candidate wider than " + std::to_string(b.domain_bits) +
                              " bits");
    const auto [m, l] = detail::split_at(candidate, b.domain_bits);
    const Polynomial v(b.field, b.coefficients);
    return v.evaluate_value(m) == l;
}

// Per-verifier variants of the two schemes above: shareholder j gets its own
// exponent u_j and a polynomial through everyone else's points, so colluders
// cannot simply pool one public polynomial.
inline std::vector<VerificationBundle> vss_private_deal(
    const std::vector<BigNat>& shares, const std::vector<BigNat>& exponents,
    VssScheme variant, FieldChoice choice, std::size_t ssp_domain_bits = 0,
    const BigNat& domain_bound = 0) {
    if (variant != VssScheme::pow_priv && variant != VssScheme::ssp_priv)
        throw BadParams("variant must be pow-priv or ssp-priv");
    if (shares.empty()) throw EmptySet("no shares given");
    if (shares.size() < 2) throw BadParams("per-verifier bundles need at least two parties");
    if (exponents.size() != shares.size())
        throw BadParams("need exactly one private exponent per shareholder");
    for (const BigNat& u : exponents)
        if (u < 1) throw BadParams("private exponents must be positive");
    detail::require_distinct<BadParams>(exponents, "private exponent");

    const std::uint32_t n = static_cast<std::uint32_t>(shares.size());
    std::vector<VerificationBundle> out;
    out.reserve(n);

    if (variant == VssScheme::pow_priv) {
        const auto [bound, bits] = detail::domain_of(shares, domain_bound);
        detail::require_distinct<DuplicateShareValue>(shares, "share value");
        FieldPtr f = choose_verification_field(choice, bound, bits);
        detail::require_in_field(shares, f);
        for (std::uint32_t j = 1; j <= n; ++j) {
            std::vector<std::pair<BigNat, BigNat>> pts;
            for (std::uint32_t i = 1; i <= n; ++i)
                if (i != j)
                    pts.emplace_back(shares[i - 1], f->pow(shares[i - 1], exponents[j - 1]));
            const Polynomial v = detail::interpolate_pairs(f, pts);
            out.push_back({variant, j, f, exponents[j - 1],
                           v.coefficients_padded(n - 1), bits});
        }
        return out;
    }

    std::size_t domain_bits = ssp_domain_bits;
    if (domain_bits == 0) {
        domain_bits = 2;
        for (const BigNat& s : shares) domain_bits = std::max(domain_bits, bitsize(s));
    }
    const BigNat bound = BigNat(1) << domain_bits;
    for (const BigNat& s : shares)
        if (s >= bound) throw ShareOutOfField("share " + to_hex(s) + " wider than " +
                                              std::to_string(domain_bits) + " bits");
    std::vector<BigNat> ms, ls;
    for (const BigNat& s : shares) {
        auto [m, l] = detail::split_at(s, domain_bits);
        ms.push_back(std::move(m));
        ls.push_back(std::move(l));
    }
    detail::require_distinct<MidHalfCollision>(ms, "M-half");
    const std::size_t half = (domain_bits + 1) / 2;
    FieldPtr f = choose_verification_field(choice, BigNat(1) << half, half);
    for (std::uint32_t j = 1; j <= n; ++j) {
        std::vector<std::pair<BigNat, BigNat>> pts;
        for (std::uint32_t i = 1; i <= n; ++i)
            if (i != j) pts.emplace_back(ms[i - 1], f->pow(ls[i - 1], exponents[j - 1]));
        const Polynomial v = detail::interpolate_pairs(f, pts);
        out.push_back({variant, j, f, exponents[j - 1], v.coefficients_padded(n - 1),
                       domain_bits});
    }
    return out;
}

inline bool vss_private_verify(std::uint32_t claim_index, const BigNat& candidate,
                               const VerificationBundle& b) {
    if (b.scheme != VssScheme::pow_priv && b.scheme != VssScheme::ssp_priv)
        throw BadParams("bundle does not carry a private-exponent polynomial");
    if (claim_index == b.verifier_index)
        throw SelfVerification("shareholder " + std::to_string(claim_index) +
                               " cannot verify its own share");
    const Polynomial v(b.field, b.coefficients);
    if (b.scheme == VssScheme::pow_priv) {
        if (candidate >= b.field->size())
            throw ShareOutOfField("candidate exceeds the verification field");
        return v.evaluate_value(candidate) == b.field->pow(candidate, b.base);
    }
    if (candidate >= BigNat(1) << b.domain_bits)
        throw ShareOutOfField("candidate wider than " + std::to_string(b.domain_bits) +
                              " bits");
    const auto [m, l] = detail::split_at(candidate, b.domain_bits);
    return v.evaluate_value(m) == b.field->pow(l, b.base);
}

// Verifier j holds a private primitive base r_j and the polynomial through
// (s_i, r_j^{s_i}) for everyone else; the check is V_j(s) = r_j^s.  Its own
// share stays off the curve, hence the self-verification refusal.
inline std::vector<VerificationBundle> vss_exp_deal(const std::vector<BigNat>& shares,
                                                    const FieldPtr& field, Rng& rng,
                                                    const BigNat& domain_bound = 0) {
    const std::size_t bits = detail::domain_of(shares, domain_bound).second;
    detail::require_distinct<DuplicateShareValue>(shares, "share value");
    if (shares.size() < 2) throw BadParams("per-verifier bundles need at least two parties");
    detail::require_in_field(shares, field);
    const std::uint32_t n = static_cast<std::uint32_t>(shares.size());
    if (primitive_count(field) < n)
        throw BadParams("field has fewer than " + std::to_string(n) +
                        " primitive elements");
    const std::size_t elem_bits = field_element_bits(field);
    std::set<BigNat> used;
    std::vector<VerificationBundle> out;
    out.reserve(n);
    for (std::uint32_t j = 1; j <= n; ++j) {
        const FieldElement r = detail::distinct_primitive(field, used, rng);
        std::vector<std::pair<BigNat, BigNat>> pts;
        for (std::uint32_t i = 1; i <= n; ++i)
            if (i != j) pts.emplace_back(shares[i - 1], field->pow(r.value(), shares[i - 1]));
        const Polynomial v = detail::interpolate_pairs(field, pts);
        VerificationBundle b{VssScheme::exp, j, field, r.value(),
                             v.coefficients_padded(n - 1), bits};
        if (bundle_payload_bits(b) > bitsize(BigNat(bits)) + n * elem_bits)
            throw Error("bundle exceeded its transmission bound");
        out.push_back(std::move(b));
    }
    return out;
}

inline bool vss_exp_verify(std::uint32_t claim_index, const BigNat& candidate,
                           const VerificationBundle& b) {
    if (b.scheme != VssScheme::exp) throw BadParams("bundle does not carry an exp polynomial");
    if (claim_index == b.verifier_index)
        throw SelfVerification("shareholder " + std::to_string(claim_index) +
                               " cannot verify its own share");
    if (candidate >= b.field->size())
        throw ShareOutOfField("candidate exceeds the verification field");
    const Polynomial v(b.field, b.coefficients);
    return v.evaluate_value(candidate) == b.field->pow(b.base, candidate);
}

// Split variant: the check compresses to V_j(M(s)) = r_j^{L(s)} with both
// halves at most w bits, shrinking the verification field accordingly.
inline std::vector<VerificationBundle> vss_exp_ssp_deal(const std::vector<BigNat>& shares,
                                                        std::size_t w, const FieldPtr& field,
                                                        Rng& rng) {
    if (w < 1) throw BadParams("half-size bound must be positive");
    if (shares.empty()) throw EmptySet("no shares given");
    if (shares.size() < 2) throw BadParams("per-verifier bundles need at least two parties");
    const BigNat bound = BigNat(1) << (2 * w);
    for (const BigNat& s : shares)
        if (s >= bound) throw ShareOutOfField("share " + to_hex(s) + " wider than " +
                                              std::to_string(2 * w) + " bits");
    std::vector<BigNat> ms, ls;
    for (const BigNat& s : shares) {
        auto [m, l] = detail::split_at(s, 2 * w);
        ms.push_back(std::move(m));
        ls.push_back(std::move(l));
    }
    detail::require_distinct<MidHalfCollision>(ms, "M-half");
    detail::require_in_field(ms, field);
    const std::uint32_t n = static_cast<std::uint32_t>(shares.size());
    if (primitive_count(field) < n)
        throw BadParams("field has fewer than " + std::to_string(n) +
                        " primitive elements");
    const std::size_t elem_bits = field_element_bits(field);
    std::set<BigNat> used;
    std::vector<VerificationBundle> out;
    out.reserve(n);
    for (std::uint32_t j = 1; j <= n; ++j) {
        const FieldElement r = detail::distinct_primitive(field, used, rng);
        std::vector<std::pair<BigNat, BigNat>> pts;
        for (std::uint32_t i = 1; i <= n; ++i)
            if (i != j) pts.emplace_back(ms[i - 1], field->pow(r.value(), ls[i - 1]));
        const Polynomial v = detail::interpolate_pairs(field, pts);
        VerificationBundle b{VssScheme::exp_ssp, j, field, r.value(),
                             v.coefficients_padded(n - 1), w};
        if (bundle_payload_bits(b) > bitsize(BigNat(w)) + n * elem_bits)
            throw Error("bundle exceeded its transmission bound");
        out.push_back(std::move(b));
    }
    return out;
}

inline bool vss_exp_ssp_verify(std::uint32_t claim_index, const BigNat& candidate,
                               const VerificationBundle& b) {
    if (b.scheme != VssScheme::exp_ssp)
        throw BadParams("bundle does not carry an exp-ssp polynomial");
    if (claim_index == b.verifier_index)
        throw SelfVerification("shareholder " + std::to_string(claim_index) +
                               " cannot verify its own share");
    if (candidate >= BigNat(1) << (2 * b.domain_bits))
        throw ShareOutOfField("candidate wider than " + std::to_string(2 * b.domain_bits) +
                              " bits");
    const auto [m, l] = detail::split_at(candidate, 2 * b.domain_bits);
    const Polynomial v(b.field, b.coefficients);
    return v.evaluate_value(m) == b.field->pow(b.base, l);
}

// Single entry point used by the command-line front end; claim_index is
// ignored by the public schemes.
inline bool bundle_verify(const VerificationBundle& b, std::uint32_t claim_index,
                          const BigNat& candidate) {
    switch (b.scheme) {
        case VssScheme::pow: return vss_pow_verify(candidate, b);
        case VssScheme::ssp: return vss_ssp_verify(candidate, b);
        case VssScheme::pow_priv:
        case VssScheme::ssp_priv: return vss_private_verify(claim_index, candidate, b);
        case VssScheme::exp: return vss_exp_verify(claim_index, candidate, b);
        case VssScheme::exp_ssp: return vss_exp_ssp_verify(claim_index, candidate, b);
    }
    throw BadParams("unknown scheme tag");
}

}  // namespace vsst
