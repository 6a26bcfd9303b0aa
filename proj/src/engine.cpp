#include "suplord/engine.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace suplord {

namespace {

// Slack for the wealth invariant: schedules satisfy alpha <= W(k-1) exactly
// in real arithmetic, so anything beyond accumulated rounding is a bug.
constexpr double overdraft_tol = 1e-9;

void check_boost_entries(const BoostSequence& boosts) {
    if (boosts.beta0 < 0.0) throw std::invalid_argument("init_state: beta0 must be nonnegative");
    for (double b : boosts.phase1)
        if (b < 0.0) throw std::invalid_argument("init_state: boosts must be nonnegative");
    if (boosts.phase2 < 0.0) throw std::invalid_argument("init_state: boosts must be nonnegative");
}

}  // namespace

int Trajectory::rejections() const {
    int r = 0;
    for (const auto& rec : records) r += rec.rejected ? 1 : 0;
    return r;
}

std::vector<int> Trajectory::rejection_times() const {
    std::vector<int> times;
    for (const auto& rec : records)
        if (rec.rejected) times.push_back(rec.k);
    return times;
}

GaiState init_state(const BoostSequence& boosts, const ScheduleConfig& schedule) {
    check_boost_entries(boosts);
    schedule.validate();
    GaiState state;
    state.boosts = boosts;
    state.schedule = schedule;
    state.wealth = boosts.beta0;
    state.schedule_state.reset(boosts.beta0, schedule);
    return state;
}

GaiState init_state(const SupLordParams& params, const BoostSequence& boosts,
                    const ScheduleConfig& schedule) {
    params.validate();
    const ValidationResult check = validate_boosts(boosts, params);
    if (!check.ok()) throw std::invalid_argument("init_state: " + check.message());
    GaiState state = init_state(boosts, schedule);
    state.params = params;
    return state;
}

StepRecord step(GaiState& state, double p_value) {
    if (!(p_value >= 0.0 && p_value <= 1.0))
        throw std::invalid_argument("step: p-value outside [0,1]");

    const int k = state.k + 1;
    double alpha = next_alpha(state.schedule, state.schedule_state, state.boosts, k);
    if (alpha > 1.0) alpha = 1.0;  // alpha is a probability threshold
    if (alpha > state.wealth) {
        if (alpha > state.wealth + overdraft_tol)
            throw std::logic_error("step: schedule overdrew wealth at step " + std::to_string(k));
        alpha = state.wealth;
    }

    const bool rejected = p_value <= alpha;
    double boost = 0.0;
    if (rejected)
        boost = state.boosts.boost_for_rejection(static_cast<int>(state.rejection_times.size()) + 1);
    const double wealth_after = (state.wealth - alpha) + boost;

    state.k = k;
    state.wealth = wealth_after;
    state.cumulative_alpha += alpha;
    if (rejected) {
        state.rejection_times.push_back(k);
        state.schedule_state.record_rejection(k, wealth_after, state.schedule);
    }
    return StepRecord{k, alpha, p_value, rejected, wealth_after};
}

namespace {

Trajectory run_stream_impl(GaiState state, std::span<const double> p_values) {
    Trajectory traj;
    traj.beta0 = state.boosts.beta0;
    traj.policy = state.boosts.tag;
    traj.records.reserve(p_values.size());
    for (std::size_t i = 0; i < p_values.size(); ++i) {
        const std::string where = "run_stream: at stream index " + std::to_string(i + 1) + ": ";
        try {
            traj.records.push_back(step(state, p_values[i]));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(where + e.what());
        } catch (const std::exception& e) {
            throw std::logic_error(where + e.what());
        }
    }
    return traj;
}

}  // namespace

Trajectory run_stream(const BoostSequence& boosts, const ScheduleConfig& schedule,
                      std::span<const double> p_values) {
    return run_stream_impl(init_state(boosts, schedule), p_values);
}

Trajectory run_stream(const SupLordParams& params, const BoostSequence& boosts,
                      const ScheduleConfig& schedule, std::span<const double> p_values) {
    return run_stream_impl(init_state(params, boosts, schedule), p_values);
}

std::vector<double> replay_alphas(const BoostSequence& boosts, const ScheduleConfig& schedule,
                                  const std::vector<bool>& rejections) {
    GaiState state = init_state(boosts, schedule);
    std::vector<double> alphas;
    alphas.reserve(rejections.size() + 1);
    for (std::size_t i = 0; i <= rejections.size(); ++i) {
        // Feed a p-value that forces the recorded decision; the alphas the
        // engine emits depend only on the decisions, never on the p itself.
        const bool reject = i < rejections.size() && rejections[i];
        const StepRecord rec = step(state, reject ? 0.0 : 1.0);
        alphas.push_back(rec.alpha);
        if (i < rejections.size() && rec.rejected != rejections[i])
            throw std::logic_error("replay_alphas: indicator could not be reproduced");
    }
    return alphas;
}

}  // namespace suplord
