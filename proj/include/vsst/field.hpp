#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "vsst/bignat.hpp"
#include "vsst/detail/primes.hpp"
#include "vsst/errors.hpp"

namespace vsst {

namespace detail {

// ---- GF(2)[x] helpers: polynomials as bit vectors packed into a BigNat ----

inline int gf2_deg(const BigNat& a) {
    return a == 0 ? -1 : static_cast<int>(boost::multiprecision::msb(a));
}

inline BigNat gf2_mul(const BigNat& a, const BigNat& b) {
    BigNat r = 0, bb = b;
    std::size_t shift = 0;
    while (bb != 0) {
        if (boost::multiprecision::bit_test(bb, 0)) r ^= a << shift;
        bb >>= 1;
        ++shift;
    }
    return r;
}

inline BigNat gf2_mod(BigNat a, const BigNat& f) {
    const int df = gf2_deg(f);
    for (int da = gf2_deg(a); da >= df; da = gf2_deg(a))
        a ^= f << (da - df);
    return a;
}

inline BigNat gf2_mulmod(const BigNat& a, const BigNat& b, const BigNat& f) {
    return gf2_mod(gf2_mul(a, b), f);
}

inline BigNat gf2_gcd(BigNat a, BigNat b) {
    while (b != 0) {
        BigNat r = gf2_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Inverse of a modulo irreducible f, by the extended Euclidean algorithm.
inline BigNat gf2_inv(const BigNat& a, const BigNat& f) {
    BigNat r0 = f, r1 = gf2_mod(a, f);
    BigNat s0 = 0, s1 = 1;
    while (r1 != 0) {
        // one long-division step: r0 = q*r1 + r
        BigNat r = r0, q = 0;
        const int d1 = gf2_deg(r1);
        for (int dr = gf2_deg(r); dr >= d1; dr = gf2_deg(r)) {
            q ^= BigNat(1) << (dr - d1);
            r ^= r1 << (dr - d1);
        }
        BigNat s = s0 ^ gf2_mul(q, s1);
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s);
    }
    if (r0 != 1) throw DivisionByZero("gf2_inv: element not invertible");
    return gf2_mod(s0, f);
}

// Rabin's irreducibility test: f (degree k) is irreducible over GF(2) iff
// x^(2^k) = x (mod f) and gcd(x^(2^(k/d)) - x, f) = 1 for each prime d | k.
inline bool gf2_irreducible(const BigNat& f, unsigned k) {
    if (k == 0 || gf2_deg(f) != static_cast<int>(k)) return false;
    if (k == 1) return true;  // x and x+1, the only degree-1 polynomials
    if (!boost::multiprecision::bit_test(f, 0)) return false;  // x divides f

    std::vector<unsigned> targets;  // k/d for each prime divisor d of k
    unsigned m = k;
    for (unsigned d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            targets.push_back(k / d);
            while (m % d == 0) m /= d;
        }
    if (m > 1) targets.push_back(k / m);
    std::sort(targets.begin(), targets.end());

    BigNat x_pow = 2;  // x
    unsigned step = 0;
    for (unsigned target : targets) {
        while (step < target) {
            x_pow = gf2_mulmod(x_pow, x_pow, f);
            ++step;
        }
        if (gf2_gcd(x_pow ^ 2, f) != 1) return false;
    }
    while (step < k) {
        x_pow = gf2_mulmod(x_pow, x_pow, f);
        ++step;
    }
    return x_pow == 2;
}

// Lowest-weight irreducible of the given degree: the trinomial with the
// smallest middle term if one exists, else the smallest pentanomial.
inline BigNat gf2_default_reduction(unsigned k) {
    if (k == 1) return BigNat(3);  // x + 1
    const BigNat top = BigNat(1) << k;
    for (unsigned a = 1; a < k; ++a) {
        BigNat f = top | (BigNat(1) << a) | 1;
        if (gf2_irreducible(f, k)) return f;
    }
    for (unsigned a = 3; a < k; ++a)
        for (unsigned b = 2; b < a; ++b)
            for (unsigned c = 1; c < b; ++c) {
                BigNat f = top | (BigNat(1) << a) | (BigNat(1) << b) |
                           (BigNat(1) << c) | 1;
                if (gf2_irreducible(f, k)) return f;
            }
    throw BadParams("no low-weight irreducible polynomial found for degree " +
                    std::to_string(k));
}

using u128 = unsigned __int128;

inline int u128_deg(u128 a) {
    if (a == 0) return -1;
    int d = 0;
    if (a >> 64) { d += 64; a >>= 64; }
    std::uint64_t w = static_cast<std::uint64_t>(a);
    while (w >>= 1) ++d;
    return d;
}

}  // namespace detail

enum class FieldKind { prime, binary };

// Immutable description of a finite field plus its raw arithmetic. Prime
// fields are residues mod p; binary fields GF(2^k) are bit-polynomials
// reduced by an irreducible polynomial. Elements are canonical naturals in
// [0, size). Shared by pointer and never mutated, so concurrent reads are
// safe.
class FieldSpec {
public:
    static std::shared_ptr<const FieldSpec> prime(const BigNat& p) {
        if (p < 2 || !detail::is_prime(p))
            throw BadParams("field modulus " + to_hex(p) + " is not prime");
        return std::shared_ptr<const FieldSpec>(new FieldSpec(p));
    }

    // GF(2^degree) with the built-in lowest-weight reduction polynomial.
    // Covered degrees: every k <= 64, plus Mersenne exponents up to 127.
    static std::shared_ptr<const FieldSpec> binary(unsigned degree) {
        if (degree == 0) throw BadParams("binary field degree must be positive");
        if (degree > 64 &&
            !(degree <= 127 && detail::is_prime((BigNat(1) << degree) - 1)))
            throw BadParams(
                "no built-in reduction polynomial for degree " +
                std::to_string(degree) + "; supply one explicitly");
        return binary(degree, detail::gf2_default_reduction(degree));
    }

    static std::shared_ptr<const FieldSpec> binary(unsigned degree,
                                                   const BigNat& reduction) {
        if (degree == 0) throw BadParams("binary field degree must be positive");
        if (!detail::gf2_irreducible(reduction, degree))
            throw BadParams("reduction polynomial is not irreducible of degree " +
                            std::to_string(degree));
        return std::shared_ptr<const FieldSpec>(new FieldSpec(degree, reduction));
    }

    FieldKind kind() const { return kind_; }

    /// Prime fields: p. Binary fields: the field size 2^k (handy for range
    /// checks; the reduction polynomial is what defines the arithmetic).
    const BigNat& modulus() const { return modulus_; }

    unsigned degree() const { return degree_; }
    const BigNat& reduction_polynomial() const { return reduction_; }

    /// Field cardinality: p, or 2^k.
    const BigNat& size() const { return size_; }

    /// Order of the multiplicative group: p-1, or 2^k - 1.
    const BigNat& group_order() const { return group_order_; }

    bool operator==(const FieldSpec& o) const {
        if (kind_ != o.kind_) return false;
        if (kind_ == FieldKind::prime) return modulus_ == o.modulus_;
        return degree_ == o.degree_ && reduction_ == o.reduction_;
    }

    // ---- value-level arithmetic on canonical representatives ----

    BigNat canon(const BigNat& v) const {
        if (v >= 0 && v < size_) return v;
        if (kind_ == FieldKind::prime) {
            BigNat r = v % modulus_;
            if (r < 0) r += modulus_;
            return r;
        }
        return detail::gf2_mod(v, reduction_);
    }

    bool canonical(const BigNat& v) const { return v >= 0 && v < size_; }

    BigNat add(const BigNat& a, const BigNat& b) const {
        if (kind_ == FieldKind::binary) return a ^ b;
        BigNat s = a + b;
        if (s >= modulus_) s -= modulus_;
        return s;
    }

    BigNat sub(const BigNat& a, const BigNat& b) const {
        if (kind_ == FieldKind::binary) return a ^ b;
        return a >= b ? BigNat(a - b) : BigNat(a + modulus_ - b);
    }

    BigNat neg(const BigNat& a) const {
        if (kind_ == FieldKind::binary || a == 0) return a;
        return modulus_ - a;
    }

    BigNat mul(const BigNat& a, const BigNat& b) const {
        if (fast_) {
            return BigNat(mul_fast(static_cast<std::uint64_t>(a),
                                   static_cast<std::uint64_t>(b)));
        }
        if (kind_ == FieldKind::prime) return (a * b) % modulus_;
        return detail::gf2_mulmod(a, b, reduction_);
    }

    BigNat inv(const BigNat& a) const {
        if (a == 0) throw DivisionByZero("inverse of zero");
        if (kind_ == FieldKind::binary) return detail::gf2_inv(a, reduction_);
        // extended Euclid over the integers
        BigNat r0 = modulus_, r1 = a, s0 = 0, s1 = 1;
        while (r1 != 0) {
            BigNat q = r0 / r1;
            BigNat r = r0 - q * r1;
            BigNat s = s0 - q * s1;
            r0 = std::move(r1); r1 = std::move(r);
            s0 = std::move(s1); s1 = std::move(s);
        }
        if (s0 < 0) s0 += modulus_;
        return s0;
    }

    BigNat div(const BigNat& a, const BigNat& b) const { return mul(a, inv(b)); }

    /// Square-and-multiply; exponent is a plain natural. 0^0 = 1.
    BigNat pow(const BigNat& base, const BigNat& exponent) const {
        if (exponent == 0) return 1;
        if (base == 0) return 0;
        if (fast_) {
            std::uint64_t result = 1, b = static_cast<std::uint64_t>(base);
            for (int i = static_cast<int>(boost::multiprecision::msb(exponent));
                 i >= 0; --i) {
                result = mul_fast(result, result);
                if (boost::multiprecision::bit_test(exponent, i))
                    result = mul_fast(result, b);
            }
            return BigNat(result);
        }
        BigNat result = 1, b = base;
        for (int i = static_cast<int>(boost::multiprecision::msb(exponent));
             i >= 0; --i) {
            result = mul(result, result);
            if (boost::multiprecision::bit_test(exponent, i)) result = mul(result, b);
        }
        return result;
    }

private:
    explicit FieldSpec(const BigNat& p)
        : kind_(FieldKind::prime), modulus_(p), size_(p), group_order_(p - 1) {
        if (p < (BigNat(1) << 63)) {
            fast_ = true;
            mod64_ = static_cast<std::uint64_t>(p);
        }
    }

    FieldSpec(unsigned degree, const BigNat& reduction)
        : kind_(FieldKind::binary),
          degree_(degree),
          reduction_(reduction),
          modulus_(BigNat(1) << degree),
          size_(BigNat(1) << degree),
          group_order_((BigNat(1) << degree) - 1) {
        if (degree <= 63) {
            fast_ = true;
            red64_ = static_cast<std::uint64_t>(reduction);
        }
    }

    std::uint64_t mul_fast(std::uint64_t a, std::uint64_t b) const {
        using detail::u128;
        if (kind_ == FieldKind::prime)
            return static_cast<std::uint64_t>(u128(a) * b % mod64_);
        // carry-less multiply, then reduce by the 64-bit reduction polynomial
        u128 acc = 0;
        std::uint64_t x = a;
        while (x) {
            const int i = std::countr_zero(x);
            acc ^= u128(b) << i;
            x &= x - 1;
        }
        const int df = static_cast<int>(degree_);
        for (int d = detail::u128_deg(acc); d >= df; d = detail::u128_deg(acc))
            acc ^= u128(red64_) << (d - df);
        return static_cast<std::uint64_t>(acc);
    }

    FieldKind kind_;
    unsigned degree_ = 0;
    BigNat reduction_;
    BigNat modulus_;
    BigNat size_;
    BigNat group_order_;
    bool fast_ = false;
    std::uint64_t mod64_ = 0;
    std::uint64_t red64_ = 0;
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

inline bool same_field(const FieldPtr& a, const FieldPtr& b) {
    return a == b || (a && b && *a == *b);
}

// A canonical residue paired with its field. Immutable value type; all
// arithmetic stays inside one field and throws MixedFields otherwise.
class FieldElement {
public:
    FieldElement(FieldPtr field, BigNat v)
        : field_(std::move(field)), v_(field_->canon(std::move(v))) {}

    const BigNat& value() const { return v_; }
    const FieldPtr& field() const { return field_; }
    bool is_zero() const { return v_ == 0; }

    FieldElement operator+(const FieldElement& o) const {
        return {field_, field_->add(v_, check(o).v_)};
    }
    FieldElement operator-(const FieldElement& o) const {
        return {field_, field_->sub(v_, check(o).v_)};
    }
    FieldElement operator*(const FieldElement& o) const {
        return {field_, field_->mul(v_, check(o).v_)};
    }
    FieldElement operator/(const FieldElement& o) const {
        return {field_, field_->div(v_, check(o).v_)};
    }
    FieldElement operator-() const { return {field_, field_->neg(v_)}; }

    FieldElement inv() const { return {field_, field_->inv(v_)}; }
    FieldElement pow(const BigNat& exponent) const {
        return {field_, field_->pow(v_, exponent)};
    }

    bool operator==(const FieldElement& o) const {
        return same_field(field_, o.field_) && v_ == o.v_;
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    bool operator<(const FieldElement& o) const { return v_ < o.v_; }

private:
    const FieldElement& check(const FieldElement& o) const {
        if (!same_field(field_, o.field_))
            throw MixedFields("operands belong to different fields");
        return o;
    }

    FieldPtr field_;
    BigNat v_;
};

/// Order of `a` in the multiplicative group, given the factorization of the
/// group order as (prime, exponent) pairs. The factor product must equal the
/// group order; primality of the factors is the caller's responsibility.
inline BigNat multiplicative_order(
    const FieldElement& a,
    const std::vector<std::pair<BigNat, unsigned>>& factored_group_order) {
    if (a.is_zero())
        throw ZeroElement("multiplicative order of zero is undefined");
    const FieldSpec& f = *a.field();

    BigNat product = 1;
    for (const auto& [p, e] : factored_group_order)
        for (unsigned i = 0; i < e; ++i) product *= p;
    if (product != f.group_order())
        throw BadFactorization("factor product does not equal the group order");

    BigNat order = f.group_order();
    for (const auto& [p, e] : factored_group_order)
        for (unsigned i = 0; i < e; ++i) {
            if (order % p != 0) break;
            BigNat reduced = order / p;
            if (f.pow(a.value(), reduced) != 1) break;
            order = std::move(reduced);
        }
    return order;
}

/// True when `a` generates the whole multiplicative group.
inline bool is_primitive(
    const FieldElement& a,
    const std::vector<std::pair<BigNat, unsigned>>& factored_group_order) {
    if (a.is_zero()) return false;
    return multiplicative_order(a, factored_group_order) ==
           a.field()->group_order();
}

}  // namespace vsst
