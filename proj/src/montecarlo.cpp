// SPDX-License-Identifier: Apache-2.0
#include "isacaf/montecarlo.hpp"

#include "isacaf/dpaf.hpp"
#include "isacaf/error.hpp"
#include "isacaf/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace isacaf {

namespace {

// Welford state for one block of trials, one entry per grid cell.
struct BlockStats {
    std::size_t count = 0;
    std::vector<double> mean;
    std::vector<double> m2;
};

void run_block(const McConfig& cfg, std::size_t first, std::size_t last, BlockStats& out) {
    const UnitaryBasis& basis = *cfg.basis;
    const std::size_t n = basis.size();
    out.mean.assign(n * n, 0.0);
    out.m2.assign(n * n, 0.0);
    std::vector<double> sq(n * n);
    for (std::size_t t = first; t < last; ++t) {
        const CVector s = sample_symbols(*cfg.constellation, n, trial_seed(cfg.seed, t));
        const CVector x = basis.matrix() * std::span<const cplx>(s);
        dpaf_sq_grid_fft(x, sq);
        if (cfg.on_trial) cfg.on_trial(t, sq);
        ++out.count;
        const double inv = 1.0 / static_cast<double>(out.count);
        for (std::size_t c = 0; c < sq.size(); ++c) {
            const double d = sq[c] - out.mean[c];
            out.mean[c] += d * inv;
            out.m2[c] += d * (sq[c] - out.mean[c]);
        }
    }
}

// Chan et al. pairwise merge of b into a.
void merge(BlockStats& a, const BlockStats& b) {
    if (b.count == 0) return;
    if (a.count == 0) {
        a = b;
        return;
    }
    const double na = static_cast<double>(a.count);
    const double nb = static_cast<double>(b.count);
    const double nt = na + nb;
    for (std::size_t c = 0; c < a.mean.size(); ++c) {
        const double d = b.mean[c] - a.mean[c];
        a.mean[c] += d * nb / nt;
        a.m2[c] += b.m2[c] + d * d * na * nb / nt;
    }
    a.count += b.count;
}

}  // namespace

ExpectationGrid estimate_avg_grid(const McConfig& cfg) {
    if (!cfg.basis || !cfg.constellation)
        throw Error(ErrorCode::InvalidArgument, "Monte Carlo config needs a basis and a constellation");
    if (cfg.trials < 1) throw Error(ErrorCode::InvalidArgument, "Monte Carlo needs at least one trial");

    const std::size_t n = cfg.basis->size();
    const std::size_t blocks = (cfg.trials + kMcBlockTrials - 1) / kMcBlockTrials;
    std::vector<BlockStats> partial(blocks);

    unsigned workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, blocks));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            for (std::size_t b = next++; b < blocks; b = next++) {
                const std::size_t first = b * kMcBlockTrials;
                const std::size_t last = std::min(cfg.trials, first + kMcBlockTrials);
                run_block(cfg, first, last, partial[b]);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = blocks;
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    BlockStats total;
    for (const auto& b : partial) merge(total, b);

    ExpectationGrid g(n, Provenance::MonteCarlo);
    g.trials = cfg.trials;
    g.values = std::move(total.mean);
    if (cfg.trials >= 2) {
        const double t = static_cast<double>(cfg.trials);
        g.std_errors.resize(n * n);
        for (std::size_t c = 0; c < n * n; ++c)
            g.std_errors[c] = std::sqrt(std::max(total.m2[c], 0.0) / (t - 1.0) / t);
    }
    return g;
}

ExpectationGrid exact_avg_grid(const UnitaryBasis& basis, const Constellation& c, std::size_t budget) {
    const std::size_t n = basis.size();
    const std::size_t m = c.size();
    std::size_t count = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (count > budget / m)
            throw Error(ErrorCode::BudgetExceeded, "enumeration of " + std::to_string(m) + "^" + std::to_string(n) +
                                                       " symbol vectors exceeds budget " + std::to_string(budget));
        count *= m;
    }

    const auto& pts = c.points();
    std::vector<std::size_t> digits(n, 0);
    CVector s(n, pts[0]);
    std::vector<double> acc(n * n, 0.0), sq(n * n);
    for (std::size_t v = 0; v < count; ++v) {
        const CVector x = basis.matrix() * std::span<const cplx>(s);
        dpaf_sq_grid_fft(x, sq);
        for (std::size_t cell = 0; cell < acc.size(); ++cell) acc[cell] += sq[cell];
        // Mixed-radix increment, symbol 0 fastest.
        for (std::size_t i = 0; i < n; ++i) {
            if (++digits[i] < m) {
                s[i] = pts[digits[i]];
                break;
            }
            digits[i] = 0;
            s[i] = pts[0];
        }
    }
    ExpectationGrid g(n, Provenance::ExactEnumeration);
    g.trials = count;
    for (std::size_t cell = 0; cell < acc.size(); ++cell) g.values[cell] = acc[cell] / static_cast<double>(count);
    return g;
}

double GridComparison::fraction_within(double limit) const {
    if (z.empty()) return 1.0;
    const auto inside = std::count_if(z.begin(), z.end(), [&](double v) { return std::abs(v) <= limit; });
    return static_cast<double>(inside) / static_cast<double>(z.size());
}

GridComparison compare_grids(const ExpectationGrid& a, const ExpectationGrid& b, double floor) {
    if (a.n != b.n || a.values.size() != b.values.size())
        throw Error(ErrorCode::ShapeMismatch,
                    "cannot compare grids of size " + std::to_string(a.n) + " and " + std::to_string(b.n));
    GridComparison r;
    const std::size_t cells = a.values.size();
    if (cells == 0) return r;

    const bool with_z = a.has_std_errors() || b.has_std_errors();
    const double se_floor = 1e-12 * std::max(1.0, std::abs(b.values[0]));
    if (with_z) r.z.resize(cells);

    double sumsq = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
        const double d = a.values[c] - b.values[c];
        const double ad = std::abs(d);
        r.max_abs = std::max(r.max_abs, ad);
        sumsq += d * d;
        if (std::abs(b.values[c]) >= floor) {
            r.max_rel = std::max(r.max_rel, ad / std::abs(b.values[c]));
            ++r.rel_cells;
        }
        if (with_z) {
            const double sa = a.has_std_errors() ? a.std_errors[c] : 0.0;
            const double sb = b.has_std_errors() ? b.std_errors[c] : 0.0;
            const double se = std::max(std::sqrt(sa * sa + sb * sb), se_floor);
            const double z = d / se;
            r.z[c] = z;
            r.max_abs_z = std::max(r.max_abs_z, std::abs(z));
            if (std::abs(z) > 3.0) ++r.cells_beyond_3;
            if (std::abs(z) > 4.0) ++r.cells_beyond_4;
        }
    }
    r.rms = std::sqrt(sumsq / static_cast<double>(cells));
    return r;
}

namespace {

TrialStat trial_stat(const std::vector<double>& v) {
    TrialStat s;
    const double t = static_cast<double>(v.size());
    for (double x : v) s.mean += x;
    s.mean /= t;
    if (v.size() >= 2) {
        double ss = 0.0;
        for (double x : v) ss += (x - s.mean) * (x - s.mean);
        s.std_error = std::sqrt(ss / (t - 1.0) / t);
    }
    return s;
}

}  // namespace

McResult run_monte_carlo(const McConfig& cfg) {
    if (!cfg.basis) throw Error(ErrorCode::InvalidArgument, "Monte Carlo config needs a basis");
    const std::size_t n = cfg.basis->size();
    const std::size_t trials = cfg.trials;
    std::vector<double> totals(trials), mains(trials), doppler(trials), delay(trials);

    McConfig inner = cfg;
    inner.on_trial = [&](std::size_t t, std::span<const double> sq) {
        double total = 0.0;
        for (double v : sq) total += v;
        double zd = 0.0;
        double zq = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            zd += sq[i * n];
            zq += sq[i];
        }
        totals[t] = total;
        mains[t] = sq[0];
        doppler[t] = n > 1 ? zd / static_cast<double>(n - 1) : 0.0;
        delay[t] = n > 1 ? zq / static_cast<double>(n - 1) : 0.0;
        if (cfg.on_trial) cfg.on_trial(t, sq);
    };

    McResult r;
    r.grid = estimate_avg_grid(inner);
    r.summary.mainlobe = trial_stat(mains);
    r.summary.zero_doppler_mean = trial_stat(doppler);
    r.summary.zero_delay_mean = trial_stat(delay);

    const TrialStat total = trial_stat(totals);
    const double main = r.summary.mainlobe.mean;
    const double ratio = total.mean / main;
    r.summary.normalized_eisl.mean = ratio - 1.0;
    if (trials >= 2) {
        // Linearization of A/B: residual_t = total_t - ratio * main_t.
        std::vector<double> resid(trials);
        for (std::size_t t = 0; t < trials; ++t) resid[t] = totals[t] - ratio * mains[t];
        r.summary.normalized_eisl.std_error = trial_stat(resid).std_error / main;
    }
    return r;
}

}  // namespace isacaf
