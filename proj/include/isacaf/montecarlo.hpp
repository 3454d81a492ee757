// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "isacaf/basis.hpp"
#include "isacaf/constellation.hpp"
#include "isacaf/grid.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace isacaf {

/// Trials are processed in fixed blocks of this many; partial statistics are
/// merged in block order, so the result does not depend on the thread count.
inline constexpr std::size_t kMcBlockTrials = 16;

struct McConfig {
    std::size_t trials = 1000;
    std::uint64_t seed = 1;  // trial t draws with trial_seed(seed, t)
    std::shared_ptr<const UnitaryBasis> basis;
    std::shared_ptr<const Constellation> constellation;
    unsigned threads = 0;  // 0: hardware concurrency
    /// Called once per trial with the realized |X|^2 grid. Invoked from
    /// worker threads, each trial index exactly once.
    std::function<void(std::size_t trial, std::span<const double> sq_grid)> on_trial;
};

/// Mean of |X(k,q)|^2 over cfg.trials realizations, plus per-cell standard
/// errors (unbiased sample std / sqrt(trials)) when trials >= 2.
ExpectationGrid estimate_avg_grid(const McConfig& cfg);

/// Trial-level mean and standard error of a per-realization statistic.
struct TrialStat {
    double mean = 0.0;
    double std_error = 0.0;
};

struct McSummary {
    /// Ratio of means (sum of mean grid - mean mainlobe) / mean mainlobe; the
    /// standard error comes from the delta method on per-trial totals.
    TrialStat normalized_eisl;
    TrialStat mainlobe;
    /// Per-trial averages of |X(k,0)|^2 over k != 0 and |X(0,q)|^2 over q != 0.
    TrialStat zero_doppler_mean;
    TrialStat zero_delay_mean;
};

struct McResult {
    ExpectationGrid grid;
    McSummary summary;
};

/// estimate_avg_grid plus the summary statistics above. Any on_trial hook
/// in cfg is still called.
McResult run_monte_carlo(const McConfig& cfg);

inline constexpr std::size_t kDefaultEnumerationBudget = 65536;

/// Exact average over all M^N equiprobable symbol vectors.
ExpectationGrid exact_avg_grid(const UnitaryBasis& basis, const Constellation& c,
                               std::size_t budget = kDefaultEnumerationBudget);

struct GridComparison {
    double max_abs = 0.0;
    double max_rel = 0.0;  // over cells with |b| >= floor
    double rms = 0.0;
    std::size_t rel_cells = 0;
    /// (a - b) / se per cell when either grid carries standard errors; se is
    /// combined in quadrature and floored at 1e-12 * max(1, |b(0,0)|).
    std::vector<double> z;
    double max_abs_z = 0.0;
    std::size_t cells_beyond_3 = 0;
    std::size_t cells_beyond_4 = 0;

    bool has_z() const noexcept { return !z.empty(); }
    double fraction_within(double limit) const;
};

GridComparison compare_grids(const ExpectationGrid& a, const ExpectationGrid& b, double floor);

/// 1e-6 N^2, the mainlobe scale.
inline double default_relative_floor(std::size_t n) {
    return 1e-6 * static_cast<double>(n) * static_cast<double>(n);
}

}  // namespace isacaf
