#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "vsst/bignat.hpp"
#include "vsst/errors.hpp"
#include "vsst/field.hpp"
#include "vsst/polynomial.hpp"

namespace vsst {

// One shareholder's slice: the abscissa it was evaluated at and the ordinate.
struct Share {
    std::uint32_t index = 0;
    FieldElement value;
};

struct ShareSet {
    std::vector<Share> shares;
    std::uint32_t threshold = 0;
    std::uint32_t total = 0;
    FieldPtr field;
};

// Classic (t, n) dealing: sample a polynomial of exact degree t-1 whose
// constant term is the secret and hand out evaluations at 1..n.  The field
// must exceed n so the abscissas stay distinct and nonzero.
inline ShareSet deal(const FieldElement& secret, std::uint32_t t, std::uint32_t n,
                     Rng& rng) {
    if (t < 1 || t > n)
        throw BadThreshold("threshold " + std::to_string(t) + " outside 1.." +
                           std::to_string(n));
    const FieldPtr& f = secret.field();
    if (BigNat(n) >= f->size())
        throw FieldTooSmall("need " + std::to_string(n) +
                            " distinct nonzero abscissas in a field of size " +
                            f->size().str());
    const Polynomial p = random_polynomial(t - 1, secret, rng);
    ShareSet out{{}, t, n, f};
    out.shares.reserve(n);
    for (std::uint32_t i = 1; i <= n; ++i)
        out.shares.push_back({i, FieldElement(f, p.evaluate_value(BigNat(i)))});
    return out;
}

// Interpolates the first t of the given shares and reads the secret off at
// x = 0.  Which t shares participate is the caller's choice; pass exactly the
// coalition under test.
inline FieldElement reconstruct(const std::vector<Share>& shares, std::uint32_t t) {
    if (t < 1) throw BadThreshold("threshold must be at least 1");
    if (shares.size() < t)
        throw NotEnoughShares("have " + std::to_string(shares.size()) + " shares, need " +
                              std::to_string(t));
    std::set<std::uint32_t> seen;
    PointSet pts;
    pts.reserve(t);
    for (std::uint32_t i = 0; i < t; ++i) {
        const Share& s = shares[i];
        if (!seen.insert(s.index).second)
            throw DuplicateIndex("share index " + std::to_string(s.index) + " repeated");
        pts.push_back({FieldElement(s.value.field(), BigNat(s.index)), s.value});
    }
    const Polynomial p = lagrange_interpolate(pts);
    return FieldElement(p.field(), p.evaluate_value(BigNat(0)));
}

}  // namespace vsst
