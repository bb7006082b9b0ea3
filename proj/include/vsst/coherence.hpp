#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "vsst/bignat.hpp"
#include "vsst/errors.hpp"
#include "vsst/shamir.hpp"

namespace vsst {

struct HistogramEntry {
    std::size_t count = 0;
    std::vector<std::vector<std::uint32_t>> witness_subsets;  // shareholder indices
};

// One entry per distinct reconstructed secret, ordered by value so merged
// results never depend on enumeration order.
using ReconstructionHistogram = std::map<BigNat, HistogramEntry>;

struct BoundsCheck {
    bool detection_ok = false;
    bool identification_ok = false;
};

// Coalition bounds: m members, threshold t, c cheaters.  Organized cheaters
// submit mutually consistent fakes, which costs an extra c of headroom on the
// identification side.
inline BoundsCheck check_bounds(std::uint32_t m, std::uint32_t t, std::uint32_t c,
                                bool organized) {
    const std::int64_t honest = static_cast<std::int64_t>(m) - c;
    if (organized)
        return {honest > t, honest >= static_cast<std::int64_t>(c) + t};
    return {m > t, honest > t};
}

struct CheaterReport {
    bool consistent = false;
    std::optional<BigNat> majority_secret;
    std::vector<std::uint32_t> cheaters;
    ReconstructionHistogram histogram;
    std::uint32_t coalition = 0;
    std::uint32_t threshold = 0;
    BoundsCheck bounds_independent;
    BoundsCheck bounds_organized;
};

using Reconstructor = std::function<FieldElement(const std::vector<Share>&, std::uint32_t)>;

inline FieldElement shamir_reconstructor(const std::vector<Share>& shares, std::uint32_t t) {
    return reconstruct(shares, t);
}

namespace detail {

inline std::uint64_t subset_count_guarded(std::uint32_t m, std::uint32_t t) {
    BigNat combos = 1;
    for (std::uint32_t i = 1; i <= t; ++i) combos = combos * (m - t + i) / i;
    if (combos > 1000000)
        throw SubsetBudgetExceeded("C(" + std::to_string(m) + ", " + std::to_string(t) +
                                   ") = " + combos.str() + " subsets exceed the 10^6 budget");
    return static_cast<std::uint64_t>(combos);
}

}  // namespace detail

// Reconstructs every t-subset of the coalition and tallies the outcomes.  A
// lone histogram entry clears everyone; anything else proves tampering without
// yet saying by whom.
inline CheaterReport detect(const std::vector<Share>& shares, std::uint32_t t,
                            const Reconstructor& rebuild = shamir_reconstructor) {
    const std::uint32_t m = static_cast<std::uint32_t>(shares.size());
    if (t < 1) throw BadThreshold("threshold must be at least 1");
    if (m <= t)
        throw CoalitionTooSmall("coalition of " + std::to_string(m) +
                                " cannot cross-check threshold " + std::to_string(t));
    {
        std::set<std::uint32_t> seen;
        for (const Share& s : shares)
            if (!seen.insert(s.index).second)
                throw DuplicateIndex("share index " + std::to_string(s.index) + " repeated");
    }
    detail::subset_count_guarded(m, t);

    CheaterReport report;
    report.coalition = m;
    report.threshold = t;

    // lexicographic t-combinations of positions {0..m-1}
    const auto advance = [m, t](std::vector<std::uint32_t>& pick) {
        std::uint32_t i = t;
        while (i-- > 0) {
            if (pick[i] != i + m - t) {
                ++pick[i];
                for (std::uint32_t j = i + 1; j < t; ++j) pick[j] = pick[j - 1] + 1;
                return true;
            }
        }
        return false;
    };

    std::vector<std::uint32_t> pick(t);
    for (std::uint32_t i = 0; i < t; ++i) pick[i] = i;
    do {
        std::vector<Share> subset;
        std::vector<std::uint32_t> labels;
        subset.reserve(t);
        labels.reserve(t);
        for (std::uint32_t pos : pick) {
            subset.push_back(shares[pos]);
            labels.push_back(shares[pos].index);
        }
        HistogramEntry& entry = report.histogram[rebuild(subset, t).value()];
        ++entry.count;
        entry.witness_subsets.push_back(std::move(labels));
    } while (advance(pick));

    report.consistent = report.histogram.size() == 1;
    if (report.consistent) report.majority_secret = report.histogram.begin()->first;
    report.bounds_independent = check_bounds(m, t, 0, false);
    report.bounds_organized = check_bounds(m, t, 0, true);
    return report;
}

// Majority vote over the histogram, then one pivot swap per outsider: replace
// the witness subset's lowest index with candidate j and see whether the
// majority secret survives.  Needs a strict majority; a tie means the honest
// majority premise broke down.
inline CheaterReport identify(const CheaterReport& detection,
                              const std::vector<Share>& shares, std::uint32_t t,
                              const Reconstructor& rebuild = shamir_reconstructor) {
    if (detection.consistent) return detection;

    std::size_t best = 0, runners_up = 0;
    const BigNat* majority = nullptr;
    const HistogramEntry* witness = nullptr;
    for (const auto& [secret, entry] : detection.histogram) {
        if (entry.count > best) {
            best = entry.count;
            runners_up = 0;
            majority = &secret;
            witness = &entry;
        } else if (entry.count == best) {
            ++runners_up;
        }
    }
    if (majority == nullptr || runners_up > 0)
        throw NoMajority("no strict-majority secret in " +
                         std::to_string(detection.histogram.size()) + " histogram entries");

    std::vector<std::uint32_t> base = witness->witness_subsets.front();
    std::sort(base.begin(), base.end());
    const std::uint32_t pivot = base.front();

    CheaterReport report = detection;
    report.majority_secret = *majority;
    report.cheaters.clear();
    for (const Share& candidate : shares) {
        if (std::find(base.begin(), base.end(), candidate.index) != base.end()) continue;
        std::vector<Share> trial;
        trial.reserve(t);
        trial.push_back(candidate);
        for (const Share& s : shares)
            if (s.index != pivot &&
                std::find(base.begin(), base.end(), s.index) != base.end())
                trial.push_back(s);
        if (rebuild(trial, t).value() != *majority) report.cheaters.push_back(candidate.index);
    }
    std::sort(report.cheaters.begin(), report.cheaters.end());
    const std::uint32_t c = static_cast<std::uint32_t>(report.cheaters.size());
    report.bounds_independent = check_bounds(report.coalition, t, c, false);
    report.bounds_organized = check_bounds(report.coalition, t, c, true);
    return report;
}

}  // namespace vsst
