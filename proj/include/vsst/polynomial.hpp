#pragma once

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "vsst/bignat.hpp"
#include "vsst/errors.hpp"
#include "vsst/field.hpp"

namespace vsst {

// Coefficients are stored low degree first as canonical field values; the top
// stored coefficient is nonzero except for the zero polynomial, which keeps a
// single zero so the list is never empty.
class Polynomial {
public:
    Polynomial(FieldPtr field, std::vector<BigNat> coeffs)
        : field_(std::move(field)), coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.push_back(0);
        for (BigNat& c : coeffs_) c = field_->canon(c);
        trim();
    }

    static Polynomial zero(FieldPtr field) { return Polynomial(std::move(field), {}); }

    static Polynomial monomial(FieldPtr field, const BigNat& coeff, std::size_t power) {
        std::vector<BigNat> c(power + 1, BigNat(0));
        c[power] = coeff;
        return Polynomial(std::move(field), std::move(c));
    }

    // -1 stands in for the zero polynomial's undefined degree.
    int degree() const { return is_zero() ? -1 : static_cast<int>(coeffs_.size()) - 1; }

    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0; }

    const FieldPtr& field() const { return field_; }

    const std::vector<BigNat>& coefficients() const { return coeffs_; }

    // Fixed-width view for serialization; the canonical list is zero-extended.
    std::vector<BigNat> coefficients_padded(std::size_t width) const {
        if (width < coeffs_.size())
            throw TargetTooSmall("cannot pad " + std::to_string(coeffs_.size()) +
                                 " coefficients into width " + std::to_string(width));
        std::vector<BigNat> out = coeffs_;
        out.resize(width, BigNat(0));
        return out;
    }

    FieldElement coefficient(std::size_t i) const {
        return FieldElement(field_, i < coeffs_.size() ? coeffs_[i] : BigNat(0));
    }

    BigNat evaluate_value(const BigNat& x) const {
        const BigNat xc = field_->canon(x);
        BigNat acc = 0;
        for (std::size_t i = coeffs_.size(); i-- > 0;)
            acc = field_->add(field_->mul(acc, xc), coeffs_[i]);
        return acc;
    }

    FieldElement evaluate(const FieldElement& x) const {
        if (!same_field(x.field(), field_))
            throw MixedFields("polynomial evaluated at a point from another field");
        return FieldElement(field_, evaluate_value(x.value()));
    }

    bool operator==(const Polynomial& o) const {
        return same_field(field_, o.field_) && coeffs_ == o.coeffs_;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial operator+(const Polynomial& o) const {
        check(o);
        std::vector<BigNat> out(std::max(coeffs_.size(), o.coeffs_.size()), BigNat(0));
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = field_->add(i < coeffs_.size() ? coeffs_[i] : BigNat(0),
                                 i < o.coeffs_.size() ? o.coeffs_[i] : BigNat(0));
        return Polynomial(field_, std::move(out));
    }

    Polynomial operator-(const Polynomial& o) const {
        check(o);
        std::vector<BigNat> out(std::max(coeffs_.size(), o.coeffs_.size()), BigNat(0));
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = field_->sub(i < coeffs_.size() ? coeffs_[i] : BigNat(0),
                                 i < o.coeffs_.size() ? o.coeffs_[i] : BigNat(0));
        return Polynomial(field_, std::move(out));
    }

    Polynomial operator*(const Polynomial& o) const {
        check(o);
        if (is_zero() || o.is_zero()) return zero(field_);
        std::vector<BigNat> out(coeffs_.size() + o.coeffs_.size() - 1, BigNat(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
                out[i + j] = field_->add(out[i + j], field_->mul(coeffs_[i], o.coeffs_[j]));
        }
        return Polynomial(field_, std::move(out));
    }

    Polynomial scaled(const BigNat& c) const {
        std::vector<BigNat> out = coeffs_;
        for (BigNat& v : out) v = field_->mul(v, c);
        return Polynomial(field_, std::move(out));
    }

    Polynomial monic() const {
        if (is_zero()) throw ZeroElement("zero polynomial has no monic form");
        const BigNat& lead = coeffs_.back();
        if (lead == 1) return *this;
        return scaled(field_->inv(lead));
    }

    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const {
        check(divisor);
        if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
        if (is_zero() || coeffs_.size() < divisor.coeffs_.size())
            return {zero(field_), *this};
        std::vector<BigNat> rem = coeffs_;
        std::vector<BigNat> quot(coeffs_.size() - divisor.coeffs_.size() + 1, BigNat(0));
        const BigNat lead_inv = field_->inv(divisor.coeffs_.back());
        for (std::size_t k = quot.size(); k-- > 0;) {
            const BigNat factor =
                field_->mul(rem[k + divisor.coeffs_.size() - 1], lead_inv);
            if (factor == 0) continue;
            quot[k] = factor;
            for (std::size_t j = 0; j < divisor.coeffs_.size(); ++j)
                rem[k + j] = field_->sub(rem[k + j], field_->mul(factor, divisor.coeffs_[j]));
        }
        return {Polynomial(field_, std::move(quot)), Polynomial(field_, std::move(rem))};
    }

private:
    void check(const Polynomial& o) const {
        if (!same_field(field_, o.field_))
            throw MixedFields("polynomial arithmetic across distinct fields");
    }

    void trim() {
        while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
    }

    FieldPtr field_;
    std::vector<BigNat> coeffs_;
};

struct Point {
    FieldElement x;
    FieldElement y;
};

using PointSet = std::vector<Point>;

// Lagrange basis accumulation via the full product: build F(x) = prod (x - x_j)
// once, peel off each (x - x_i) by synthetic division, and scale by
// y_i / F_i(x_i).  Quadratic in the point count, which is all these protocols
// ever need.
inline Polynomial lagrange_interpolate(const PointSet& pts) {
    if (pts.empty()) throw EmptySet("interpolation needs at least one point");
    const FieldPtr& f = pts[0].x.field();
    std::set<BigNat> seen;
    for (const Point& pt : pts) {
        if (!same_field(pt.x.field(), f) || !same_field(pt.y.field(), f))
            throw MixedFields("interpolation points from distinct fields");
        if (!seen.insert(pt.x.value()).second)
            throw DuplicateAbscissa("repeated abscissa " + to_hex(pt.x.value()));
    }

    const std::size_t t = pts.size();
    std::vector<BigNat> full(t + 1, BigNat(0));
    full[0] = 1;
    std::size_t deg = 0;
    for (const Point& pt : pts) {
        const BigNat neg_x = f->neg(pt.x.value());
        full[deg + 1] = full[deg];
        for (std::size_t k = deg; k-- > 0;)
            full[k + 1] = f->add(full[k], f->mul(neg_x, full[k + 1]));
        full[0] = f->mul(full[0], neg_x);
        ++deg;
    }

    std::vector<BigNat> acc(t, BigNat(0));
    std::vector<BigNat> basis(t, BigNat(0));
    for (const Point& pt : pts) {
        const BigNat& xi = pt.x.value();
        basis[t - 1] = full[t];
        for (std::size_t k = t - 1; k-- > 0;)
            basis[k] = f->add(full[k + 1], f->mul(xi, basis[k + 1]));
        BigNat denom = 0;
        for (std::size_t k = basis.size(); k-- > 0;)
            denom = f->add(f->mul(denom, xi), basis[k]);
        const BigNat scale = f->mul(pt.y.value(), f->inv(denom));
        if (scale == 0) continue;
        for (std::size_t k = 0; k < t; ++k)
            acc[k] = f->add(acc[k], f->mul(scale, basis[k]));
    }
    return Polynomial(f, std::move(acc));
}

inline Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    if (!same_field(a.field(), b.field()))
        throw MixedFields("gcd of polynomials over distinct fields");
    if (a.is_zero() && b.is_zero()) throw BothZero("gcd(0, 0) is undefined");
    Polynomial r0 = a, r1 = b;
    while (!r1.is_zero()) {
        Polynomial r2 = r0.divmod(r1).second;
        r0 = std::move(r1);
        r1 = std::move(r2);
    }
    return r0.monic();
}

// Exhaustive root scan; the guard keeps this a desk-scale oracle.
inline std::vector<FieldElement> roots_bruteforce(const Polynomial& p) {
    const FieldPtr& f = p.field();
    if (f->size() > (BigNat(1) << 24))
        throw FieldTooLarge("root scan limited to fields of size 2^24");
    std::vector<FieldElement> roots;
    const std::uint64_t n = static_cast<std::uint64_t>(f->size());
    for (std::uint64_t x = 0; x < n; ++x) {
        if (p.evaluate_value(BigNat(x)) == 0) roots.emplace_back(f, BigNat(x));
    }
    return roots;
}

// Uniform coefficients with a forced-nonzero leading term, so the degree is
// exactly as requested; the constant term is pinned by the caller.
inline Polynomial random_polynomial(std::size_t degree, const FieldElement& constant,
                                    Rng& rng) {
    const FieldPtr& f = constant.field();
    if (BigNat(degree) >= f->size())
        throw DegreeTooLarge("degree " + std::to_string(degree) +
                             " needs a field larger than " + f->size().str());
    std::vector<BigNat> coeffs(degree + 1);
    coeffs[0] = constant.value();
    for (std::size_t i = 1; i < degree; ++i) coeffs[i] = random_below(f->size(), rng);
    if (degree > 0) coeffs[degree] = random_range(BigNat(1), f->size() - 1, rng);
    return Polynomial(f, std::move(coeffs));
}

}  // namespace vsst
