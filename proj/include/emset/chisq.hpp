#pragma once

#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "emset/numeric.hpp"

namespace emset::boltz {

struct ChiSquareResult {
    double stat = 0;
    long dof = 0;
    double p_value = 1;
    long cells_used = 0;
    long cells_pooled = 0;
};

/// Pearson goodness-of-fit with pooling: cells whose expected count falls
/// below min_expected are merged into one remainder cell. expected holds
/// per-cell probabilities; any unlisted mass belongs to the final implicit
/// remainder, whose observed count is total_draws - sum(observed).
inline ChiSquareResult chi_square_gof(const std::vector<double>& expected_prob,
                                      const std::vector<long>& observed, long total_draws,
                                      double min_expected = 5.0) {
    if (expected_prob.size() != observed.size())
        throw DomainError("chi_square_gof: mismatched inputs");
    double rest_prob = 1.0;
    long rest_obs = total_draws;
    double stat = 0;
    long used = 0, pooled = 0;
    double pool_prob = 0;
    long pool_obs = 0;
    for (size_t i = 0; i < expected_prob.size(); ++i) {
        rest_prob -= expected_prob[i];
        rest_obs -= observed[i];
        double e = expected_prob[i] * static_cast<double>(total_draws);
        if (e < min_expected) {
            pool_prob += expected_prob[i];
            pool_obs += observed[i];
            ++pooled;
            continue;
        }
        double d = static_cast<double>(observed[i]) - e;
        stat += d * d / e;
        ++used;
    }
    if (rest_prob < 0) rest_prob = 0;
    // pooled small cells + unlisted remainder form one final cell
    pool_prob += rest_prob;
    pool_obs += rest_obs;
    double e = pool_prob * static_cast<double>(total_draws);
    if (e >= min_expected) {
        double d = static_cast<double>(pool_obs) - e;
        stat += d * d / e;
        ++used;
    }
    ChiSquareResult r;
    r.stat = stat;
    r.cells_used = used;
    r.cells_pooled = pooled;
    r.dof = used - 1;
    if (r.dof < 1) r.dof = 1;
    r.p_value = boost::math::gamma_q(static_cast<double>(r.dof) / 2.0, stat / 2.0);
    return r;
}

}  // namespace emset::boltz
