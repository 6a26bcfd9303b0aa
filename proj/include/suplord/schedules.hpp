#pragma once

#include <vector>

#include "suplord/boosts.hpp"

namespace suplord {

enum class GammaNormalization {
    horizon,       // entries sum to 1 over the materialized horizon
    infinite_sum,  // entries divided by the full-series sum; finite prefix sums to < 1
};

/// Nonnegative spending weights gamma_1..gamma_n.  Indices beyond the
/// horizon are treated as an exhausted sequence (weight 0).
struct SpendingSequence {
    std::vector<double> gamma;

    double at(int i) const {
        return (i >= 1 && i <= static_cast<int>(gamma.size())) ? gamma[static_cast<std::size_t>(i) - 1] : 0.0;
    }
    int horizon() const { return static_cast<int>(gamma.size()); }
    double sum() const;
};

/// The usual default: gamma_i proportional to log(i v 2) / (i exp(sqrt(log i))).
SpendingSequence default_gamma(int n, GammaNormalization norm = GammaNormalization::horizon);

/// Full-series sum of the unnormalized default weights (partial sum plus an
/// analytic integral tail; the series alone converges far too slowly).
double default_gamma_infinite_sum();

enum class ScheduleKind { steady, aggressive, dynamic };

struct ScheduleConfig {
    ScheduleKind kind = ScheduleKind::steady;
    SpendingSequence base;
    double xi = 0.08;  // dynamic: acceleration coefficient
    int rho = 200;     // dynamic: active-window length

    void validate() const;
};

ScheduleConfig make_schedule(ScheduleKind kind, int horizon,
                             GammaNormalization norm = GammaNormalization::horizon,
                             double xi = 0.08, int rho = 200);

/// One per-rejection wealth snapshot, plus cached dynamic-schedule terms so
/// the active-case normalization is computed once per rejection.
struct WealthSnapshot {
    int t = 0;
    double wealth = 0.0;
    bool accel = false;
    double exponent = 1.0;
    double gamma_max = 0.0;
    long double denom = 1.0L;  // sum over the window of (gamma_j / gamma_max)^exponent
};

/// Immutable-once-written rejection history owned by the schedule layer.
/// The first snapshot is the t0 = 0 convention entry carrying W(0).
class ScheduleState {
public:
    void reset(double initial_wealth, const ScheduleConfig& cfg);
    void record_rejection(int t, double wealth, const ScheduleConfig& cfg);
    const std::vector<WealthSnapshot>& snapshots() const { return snaps_; }
    double initial_wealth() const { return snaps_.empty() ? 0.0 : snaps_.front().wealth; }

private:
    std::vector<WealthSnapshot> snaps_;
};

/// Steady spending: alpha_k = gamma_k beta0 + sum_j gamma_{k - t_j} beta_j.
double steady_alpha(const ScheduleState& state, const BoostSequence& boosts, int k,
                    const SpendingSequence& gamma);

/// Aggressive spending: alpha_k = gamma_{k - tau} W(tau) for the most recent
/// rejection time tau (0 before any rejection).
double aggressive_alpha(const ScheduleState& state, int k, const SpendingSequence& gamma);

/// Wealth-adaptive weight: when xi W / W0 > 1 the base weights are raised to
/// that power and renormalized over the first rho entries (then cut to zero);
/// otherwise the base weight is returned unchanged.
double dynamic_gamma(int i, double wealth, double initial_wealth, const ScheduleConfig& cfg);

/// Dynamic spending: the steady form with each rejection's weights replaced
/// by dynamic_gamma evaluated at that rejection's wealth snapshot.
double dynamic_alpha(const ScheduleState& state, const BoostSequence& boosts, int k,
                     const ScheduleConfig& cfg);

/// Dispatch on cfg.kind.
double next_alpha(const ScheduleConfig& cfg, const ScheduleState& state,
                  const BoostSequence& boosts, int k);

}  // namespace suplord
