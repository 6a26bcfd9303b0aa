#pragma once

#include <limits>
#include <vector>

#include "suplord/engine.hpp"

namespace suplord {

/// Trajectory paired with the ground-truth labels of the simulated
/// hypotheses (true = null).  Only simulations know the labels; real
/// streams run without them.
struct LabeledTrajectory {
    Trajectory trajectory;
    std::vector<bool> labels;

    void validate() const;  // throws on length mismatch
};

/// False discovery proportion after k steps: null rejections over total
/// rejections, with the denominator floored at 1.
double fdp(const LabeledTrajectory& lt, int k);

/// Alpha-sum estimator sum_i alpha_i / (|R_k| v 1).
double fdp_hat_lord(const Trajectory& traj, int k);

/// Offset estimator scaled by the bound coefficient:
/// C_a(1/delta) (sum_i alpha_i + a) / |R_k|; +inf while no rejection exists.
double fdp_bar(const Trajectory& traj, int k, double delta, double a);

/// Per-step time-uniform upper confidence band for the FDP, clipped to [0,1].
/// Covers the whole FDP path with probability at least 1 - delta.
std::vector<double> fdp_band(const Trajectory& traj, double delta, double a);

constexpr double undefined_metric = std::numeric_limits<double>::quiet_NaN();

struct TrialMetrics {
    std::vector<double> fdp_path;
    std::vector<double> fdp_suffix_max;       // max_{j >= k} fdp(j)
    std::vector<int> rejections_path;         // |R_k|
    std::vector<int> null_rejections_path;    // |V_k|
    std::vector<int> rejection_times;         // t_r, r = 1..
    double power_final = undefined_metric;    // NaN when no non-null exists
    int r_star = 1;
    bool reached_rstar = false;

    /// Supremum of the FDP over steps K..n (finite-horizon truncation).
    double sup_fdp_from_time(int K) const;
    /// Supremum from the r*-th rejection; 0 when r* was never reached.
    double sup_fdp_from_rstar() const;
};

TrialMetrics trial_metrics(const LabeledTrajectory& lt, int r_star);

enum class AggregateMode { from_rstar, fixed_k };

struct AggregateMetrics {
    std::vector<double> fdr_path;     // mean FDP per step
    std::vector<double> fdr_se_path;  // standard error of that mean
    std::vector<double> mfdr_path;    // mean |V_k| / mean (|R_k| v 1)
    double supfd = undefined_metric;
    double supfd_se = undefined_metric;
    double fdx = undefined_metric;    // fraction of trials with sup FDP >= eps*
    double power = undefined_metric;
    double power_se = undefined_metric;
    int trial_count = 0;
    double fraction_reached_rstar = undefined_metric;
};

/// Order-insensitive reductions over trials.  In from_rstar mode each trial
/// contributes its supremum from its own t_{r*}; trials that never reach r*
/// contribute 0 (empty supremum) and are reflected in fraction_reached_rstar.
AggregateMetrics aggregate(const std::vector<TrialMetrics>& trials, double eps_star,
                           AggregateMode mode, int fixed_k = 1);

}  // namespace suplord
