#include "suplord/schedules.hpp"

#include <cmath>
#include <stdexcept>

namespace suplord {

namespace {

double raw_gamma(int i) {
    const double x = static_cast<double>(i);
    return std::log(std::max(x, 2.0)) / (x * std::exp(std::sqrt(std::log(x))));
}

// Fills the dynamic-case cache of a snapshot.  The window terms are divided
// by the largest base weight before exponentiation, so the normalizing sum
// stays in [1, rho] no matter how large the exponent gets and the quotient
// gamma_i^e / sum_j gamma_j^e never underflows as a whole.
void fill_dynamic_cache(WealthSnapshot& s, double initial_wealth, const ScheduleConfig& cfg) {
    const double ratio = cfg.xi * s.wealth / initial_wealth;
    s.accel = ratio > 1.0;
    if (!s.accel) return;
    s.exponent = ratio;
    s.gamma_max = 0.0;
    for (int j = 1; j <= cfg.rho; ++j) s.gamma_max = std::max(s.gamma_max, cfg.base.at(j));
    if (s.gamma_max == 0.0) {  // empty window: nothing to spend
        s.denom = 1.0L;
        return;
    }
    long double denom = 0.0L;
    for (int j = 1; j <= cfg.rho; ++j) {
        const double g = cfg.base.at(j);
        if (g > 0.0) denom += std::pow(g / s.gamma_max, s.exponent);
    }
    s.denom = denom;
}

double snapshot_gamma(const WealthSnapshot& s, int i, const ScheduleConfig& cfg) {
    if (!s.accel) return cfg.base.at(i);
    if (i > cfg.rho || s.gamma_max == 0.0) return 0.0;
    const double g = cfg.base.at(i);
    if (g <= 0.0) return 0.0;
    return static_cast<double>(std::pow(g / s.gamma_max, s.exponent) / s.denom);
}

}  // namespace

double SpendingSequence::sum() const {
    KahanAccumulator acc;
    for (double g : gamma) acc.add(g);
    return acc.value();
}

SpendingSequence default_gamma(int n, GammaNormalization norm) {
    if (n < 1) throw std::invalid_argument("default_gamma: horizon must be at least 1");
    SpendingSequence seq;
    seq.gamma.resize(static_cast<std::size_t>(n));
    KahanAccumulator total;
    for (int i = 1; i <= n; ++i) {
        const double g = raw_gamma(i);
        seq.gamma[static_cast<std::size_t>(i) - 1] = g;
        total.add(g);
    }
    const double divisor =
        norm == GammaNormalization::horizon ? total.value() : default_gamma_infinite_sum();
    for (double& g : seq.gamma) g /= divisor;
    return seq;
}

double default_gamma_infinite_sum() {
    // Partial sum plus the Euler-Maclaurin tail.  Substituting u = log x and
    // t = sqrt(u) turns the tail integral into 2 Gamma(4, sqrt(log N)), which
    // has a closed form; the correction terms beyond f(N)/2 are negligible.
    static const double value = [] {
        constexpr int cutoff = 1'000'000;
        KahanAccumulator acc;
        for (int i = 1; i < cutoff; ++i) acc.add(raw_gamma(i));
        const double x0 = std::sqrt(std::log(static_cast<double>(cutoff)));
        const double tail =
            2.0 * std::exp(-x0) * (x0 * x0 * x0 + 3.0 * x0 * x0 + 6.0 * x0 + 6.0);
        return acc.value() + tail + 0.5 * raw_gamma(cutoff);
    }();
    return value;
}

void ScheduleConfig::validate() const {
    if (base.horizon() < 1)
        throw std::invalid_argument("ScheduleConfig: spending sequence is empty");
    for (double g : base.gamma)
        if (!(g >= 0.0)) throw std::invalid_argument("ScheduleConfig: negative spending weight");
    if (base.sum() > 1.0 + 1e-9)
        throw std::invalid_argument("ScheduleConfig: spending weights sum above 1");
    if (kind == ScheduleKind::dynamic) {
        if (!(xi > 0.0)) throw std::invalid_argument("ScheduleConfig: xi must be positive");
        if (rho < 1) throw std::invalid_argument("ScheduleConfig: rho must be a positive integer");
    }
}

ScheduleConfig make_schedule(ScheduleKind kind, int horizon, GammaNormalization norm,
                             double xi, int rho) {
    ScheduleConfig cfg;
    cfg.kind = kind;
    cfg.base = default_gamma(horizon, norm);
    cfg.xi = xi;
    cfg.rho = rho;
    cfg.validate();
    return cfg;
}

void ScheduleState::reset(double initial_wealth, const ScheduleConfig& cfg) {
    if (cfg.kind == ScheduleKind::dynamic && !(initial_wealth > 0.0))
        throw std::invalid_argument("ScheduleState: dynamic schedule requires positive initial wealth");
    snaps_.clear();
    WealthSnapshot origin;
    origin.t = 0;
    origin.wealth = initial_wealth;
    if (cfg.kind == ScheduleKind::dynamic) fill_dynamic_cache(origin, initial_wealth, cfg);
    snaps_.push_back(origin);
}

void ScheduleState::record_rejection(int t, double wealth, const ScheduleConfig& cfg) {
    if (snaps_.empty()) throw std::logic_error("ScheduleState: reset before recording rejections");
    if (t <= snaps_.back().t) throw std::logic_error("ScheduleState: rejection times must increase");
    WealthSnapshot s;
    s.t = t;
    s.wealth = wealth;
    if (cfg.kind == ScheduleKind::dynamic) fill_dynamic_cache(s, initial_wealth(), cfg);
    snaps_.push_back(s);
}

double steady_alpha(const ScheduleState& state, const BoostSequence& boosts, int k,
                    const SpendingSequence& gamma) {
    const auto& snaps = state.snapshots();
    double alpha = gamma.at(k) * boosts.beta0;
    for (std::size_t j = 1; j < snaps.size(); ++j)
        alpha += gamma.at(k - snaps[j].t) * boosts.boost_for_rejection(static_cast<int>(j));
    return alpha;
}

double aggressive_alpha(const ScheduleState& state, int k, const SpendingSequence& gamma) {
    const auto& last = state.snapshots().back();
    return gamma.at(k - last.t) * last.wealth;
}

double dynamic_gamma(int i, double wealth, double initial_wealth, const ScheduleConfig& cfg) {
    if (i < 1) throw std::invalid_argument("dynamic_gamma: index starts at 1");
    if (!(wealth >= 0.0)) throw std::invalid_argument("dynamic_gamma: wealth must be nonnegative");
    if (!(initial_wealth > 0.0))
        throw std::invalid_argument("dynamic_gamma: initial wealth must be positive");
    WealthSnapshot probe;
    probe.wealth = wealth;
    fill_dynamic_cache(probe, initial_wealth, cfg);
    return snapshot_gamma(probe, i, cfg);
}

double dynamic_alpha(const ScheduleState& state, const BoostSequence& boosts, int k,
                     const ScheduleConfig& cfg) {
    const auto& snaps = state.snapshots();
    double alpha = snapshot_gamma(snaps[0], k, cfg) * boosts.beta0;
    for (std::size_t j = 1; j < snaps.size(); ++j) {
        const int lag = k - snaps[j].t;
        if (snaps[j].accel && lag > cfg.rho) continue;  // window already exhausted
        alpha += snapshot_gamma(snaps[j], lag, cfg) * boosts.boost_for_rejection(static_cast<int>(j));
    }
    return alpha;
}

double next_alpha(const ScheduleConfig& cfg, const ScheduleState& state,
                  const BoostSequence& boosts, int k) {
    switch (cfg.kind) {
        case ScheduleKind::steady:
            return steady_alpha(state, boosts, k, cfg.base);
        case ScheduleKind::aggressive:
            return aggressive_alpha(state, k, cfg.base);
        case ScheduleKind::dynamic:
            return dynamic_alpha(state, boosts, k, cfg);
    }
    throw std::logic_error("next_alpha: unknown schedule kind");
}

}  // namespace suplord
