#pragma once

#include <optional>
#include <span>
#include <vector>

#include "suplord/boosts.hpp"
#include "suplord/schedules.hpp"

namespace suplord {

/// One tested hypothesis: the level offered, the p-value seen, the decision,
/// and the wealth left after settling the step.
struct StepRecord {
    int k = 0;
    double alpha = 0.0;
    double p_value = 0.0;
    bool rejected = false;
    double wealth_after = 0.0;
};

struct Trajectory {
    std::vector<StepRecord> records;
    double beta0 = 0.0;
    BoostTag policy = BoostTag::custom;

    int size() const { return static_cast<int>(records.size()); }
    int rejections() const;
    std::vector<int> rejection_times() const;
};

/// The sequential testing state: strictly one stream, one logical thread of
/// mutation.  Plain data, freely copyable and movable across threads.
struct GaiState {
    int k = 0;
    double wealth = 0.0;
    std::vector<int> rejection_times;
    double cumulative_alpha = 0.0;
    ScheduleState schedule_state;
    BoostSequence boosts;
    ScheduleConfig schedule;
    std::optional<SupLordParams> params;
};

GaiState init_state(const BoostSequence& boosts, const ScheduleConfig& schedule);

/// SupLORD form: rejects invalid boost sequences up front, naming the
/// violated condition.
GaiState init_state(const SupLordParams& params, const BoostSequence& boosts,
                    const ScheduleConfig& schedule);

/// Offers alpha_k (computed before seeing p), applies the rejection rule
/// p <= alpha, earns the boost for a rejection, and settles wealth.
/// Throws std::invalid_argument for p outside [0,1] and std::logic_error if
/// the schedule tries to overdraw wealth beyond float tolerance.
StepRecord step(GaiState& state, double p_value);

Trajectory run_stream(const BoostSequence& boosts, const ScheduleConfig& schedule,
                      std::span<const double> p_values);
Trajectory run_stream(const SupLordParams& params, const BoostSequence& boosts,
                      const ScheduleConfig& schedule, std::span<const double> p_values);

/// Alpha values are predictable: they depend on the rejection history alone.
/// Given indicators R_1..R_m, returns alpha_1..alpha_{m+1} exactly as the
/// engine would have emitted them, without any p-values.
std::vector<double> replay_alphas(const BoostSequence& boosts, const ScheduleConfig& schedule,
                                  const std::vector<bool>& rejections);

}  // namespace suplord
