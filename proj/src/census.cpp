#include "envlab/census.hpp"

#include <cmath>

#include "envlab/crossings.hpp"
#include "envlab/envelope.hpp"

namespace envlab {

CensusReport census(const LineFamily& fam, const CensusOptions& opt) {
    CensusReport rep;
    rep.slope = fam.slope;
    rep.kind = fam.kind;
    rep.params = fam.params;
    rep.in_regime = fam.in_regime;

    const Envelope env = make_envelope(fam);
    const auto points = find_singular_points(env, singular_search_samples(fam));
    rep.cusps.numeric = static_cast<int>(points.size());
    for (const auto& p : points) ++rep.by_class[static_cast<std::size_t>(p.cls)];
    rep.tangencies.numeric = static_cast<int>(env.removable_points().size());
    rep.infinity_cuts.numeric = static_cast<int>(env.cuts().size());

    if (opt.crossings) {
        CrossingOptions copt;
        copt.samples = opt.crossing_samples;
        const auto cr = count_self_crossings(fam, copt);
        rep.crossings.numeric = cr.count();
        rep.crossings_partial = cr.partial;
    }

    if (fam.kind == FamilyKind::OneCircle || fam.kind == FamilyKind::TwoCircle) {
        const AnalyticPrediction pred = predict(fam);
        int finite = pred.total_cusps();
        if (fam.kind == FamilyKind::TwoCircle) {
            const double boundary = static_cast<double>(fam.slope.b()) / std::abs(static_cast<double>(fam.slope.a()));
            if (std::abs(fam.params.r - boundary) <= 1e-12 * boundary)
                finite -= static_cast<int>(std::abs(fam.slope.b() - fam.slope.a()));
            rep.infinity_cuts.analytic = pred.infinity_cut_count;
        }
        if (fam.in_regime) rep.cusps.analytic = finite;
        rep.tangencies.analytic = pred.tangency_count;
        if (opt.crossings && pred.crossing_count) rep.crossings.analytic = *pred.crossing_count;
    }
    return rep;
}

}  // namespace envlab
