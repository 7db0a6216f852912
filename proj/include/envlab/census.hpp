#pragma once

#include <array>
#include <optional>

#include "envlab/families.hpp"
#include "envlab/singularity.hpp"

namespace envlab {

struct CountPair {
    int numeric = 0;
    std::optional<int> analytic;

    bool matches() const noexcept { return !analytic || *analytic == numeric; }
};

// Numeric detections of one family next to the counting results, where the
// counting results apply.
struct CensusReport {
    RationalSlope slope{2, 1};
    FamilyKind kind = FamilyKind::OneCircle;
    CircleParams params;

    // Finite singular points; the analytic side discounts cusps that sit at
    // infinity when r = 1/|m|.
    CountPair cusps;
    CountPair tangencies;
    CountPair crossings;
    CountPair infinity_cuts;
    // Indexed by SingularClass.
    std::array<int, 4> by_class{};
    bool crossings_partial = false;
    bool in_regime = true;

    bool consistent() const noexcept {
        return cusps.matches() && tangencies.matches() && crossings.matches() && infinity_cuts.matches();
    }
};

struct CensusOptions {
    bool crossings = true;
    int crossing_samples = 0;
};

CensusReport census(const LineFamily& fam, const CensusOptions& opt = {});

}  // namespace envlab
