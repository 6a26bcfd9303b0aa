#include "suplord/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace suplord {

namespace {

void check_step(int k, int n, const char* where) {
    if (k < 1 || k > n) throw std::invalid_argument(std::string(where) + ": step index out of range");
}

double sample_se(double sum, double sum_sq, int n) {
    if (n < 2) return undefined_metric;
    const double mean = sum / n;
    double var = (sum_sq - static_cast<double>(n) * mean * mean) / (n - 1);
    if (var < 0.0) var = 0.0;
    return std::sqrt(var / n);
}

}  // namespace

void LabeledTrajectory::validate() const {
    if (labels.size() != trajectory.records.size())
        throw std::invalid_argument("LabeledTrajectory: labels and records differ in length");
}

double fdp(const LabeledTrajectory& lt, int k) {
    lt.validate();
    check_step(k, lt.trajectory.size(), "fdp");
    int rejections = 0;
    int null_rejections = 0;
    for (int i = 0; i < k; ++i) {
        if (!lt.trajectory.records[static_cast<std::size_t>(i)].rejected) continue;
        ++rejections;
        if (lt.labels[static_cast<std::size_t>(i)]) ++null_rejections;
    }
    return static_cast<double>(null_rejections) / std::max(rejections, 1);
}

double fdp_hat_lord(const Trajectory& traj, int k) {
    check_step(k, traj.size(), "fdp_hat_lord");
    KahanAccumulator alpha_sum;
    int rejections = 0;
    for (int i = 0; i < k; ++i) {
        const auto& rec = traj.records[static_cast<std::size_t>(i)];
        alpha_sum.add(rec.alpha);
        rejections += rec.rejected ? 1 : 0;
    }
    return alpha_sum.value() / std::max(rejections, 1);
}

double fdp_bar(const Trajectory& traj, int k, double delta, double a) {
    check_step(k, traj.size(), "fdp_bar");
    KahanAccumulator alpha_sum;
    int rejections = 0;
    for (int i = 0; i < k; ++i) {
        const auto& rec = traj.records[static_cast<std::size_t>(i)];
        alpha_sum.add(rec.alpha);
        rejections += rec.rejected ? 1 : 0;
    }
    if (rejections == 0) return std::numeric_limits<double>::infinity();
    return coef(delta, a) * (alpha_sum.value() + a) / rejections;
}

std::vector<double> fdp_band(const Trajectory& traj, double delta, double a) {
    const double c = coef(delta, a);
    std::vector<double> band;
    band.reserve(traj.records.size());
    KahanAccumulator alpha_sum;
    int rejections = 0;
    for (const auto& rec : traj.records) {
        alpha_sum.add(rec.alpha);
        rejections += rec.rejected ? 1 : 0;
        if (rejections == 0) {
            band.push_back(1.0);
            continue;
        }
        band.push_back(std::min(1.0, c * (alpha_sum.value() + a) / rejections));
    }
    return band;
}

TrialMetrics trial_metrics(const LabeledTrajectory& lt, int r_star) {
    lt.validate();
    if (r_star < 1) throw std::invalid_argument("trial_metrics: r_star must be positive");
    const int n = lt.trajectory.size();
    TrialMetrics m;
    m.r_star = r_star;
    m.fdp_path.reserve(static_cast<std::size_t>(n));
    m.rejections_path.reserve(static_cast<std::size_t>(n));
    m.null_rejections_path.reserve(static_cast<std::size_t>(n));

    int rejections = 0;
    int null_rejections = 0;
    int non_null_total = 0;
    int non_null_rejected = 0;
    for (int i = 0; i < n; ++i) {
        const auto& rec = lt.trajectory.records[static_cast<std::size_t>(i)];
        const bool is_null = lt.labels[static_cast<std::size_t>(i)];
        if (!is_null) ++non_null_total;
        if (rec.rejected) {
            ++rejections;
            if (is_null) ++null_rejections;
            else ++non_null_rejected;
            m.rejection_times.push_back(rec.k);
        }
        m.rejections_path.push_back(rejections);
        m.null_rejections_path.push_back(null_rejections);
        m.fdp_path.push_back(static_cast<double>(null_rejections) / std::max(rejections, 1));
    }

    m.fdp_suffix_max.assign(static_cast<std::size_t>(n), 0.0);
    double running = 0.0;
    for (int i = n - 1; i >= 0; --i) {
        running = std::max(running, m.fdp_path[static_cast<std::size_t>(i)]);
        m.fdp_suffix_max[static_cast<std::size_t>(i)] = running;
    }

    m.power_final = non_null_total > 0
                        ? static_cast<double>(non_null_rejected) / non_null_total
                        : undefined_metric;
    m.reached_rstar = rejections >= r_star;
    return m;
}

double TrialMetrics::sup_fdp_from_time(int K) const {
    const int n = static_cast<int>(fdp_path.size());
    if (n == 0) return 0.0;
    if (K < 1) K = 1;
    if (K > n) return 0.0;  // empty supremum past the horizon
    return fdp_suffix_max[static_cast<std::size_t>(K) - 1];
}

double TrialMetrics::sup_fdp_from_rstar() const {
    if (!reached_rstar) return 0.0;
    return sup_fdp_from_time(rejection_times[static_cast<std::size_t>(r_star) - 1]);
}

AggregateMetrics aggregate(const std::vector<TrialMetrics>& trials, double eps_star,
                           AggregateMode mode, int fixed_k) {
    if (trials.empty()) throw std::invalid_argument("aggregate: no trials");
    const std::size_t n = trials.front().fdp_path.size();
    for (const auto& t : trials)
        if (t.fdp_path.size() != n)
            throw std::invalid_argument("aggregate: trials differ in stream length");

    AggregateMetrics agg;
    agg.trial_count = static_cast<int>(trials.size());
    const double T = static_cast<double>(trials.size());

    agg.fdr_path.assign(n, 0.0);
    agg.fdr_se_path.assign(n, 0.0);
    agg.mfdr_path.assign(n, 0.0);
    std::vector<double> fdp_sq(n, 0.0);
    std::vector<double> mean_r1(n, 0.0);
    for (const auto& t : trials) {
        for (std::size_t k = 0; k < n; ++k) {
            const double f = t.fdp_path[k];
            agg.fdr_path[k] += f;
            fdp_sq[k] += f * f;
            agg.mfdr_path[k] += t.null_rejections_path[k];
            mean_r1[k] += std::max(t.rejections_path[k], 1);
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        agg.fdr_se_path[k] = sample_se(agg.fdr_path[k], fdp_sq[k], agg.trial_count);
        agg.fdr_path[k] /= T;
        agg.mfdr_path[k] /= mean_r1[k];  // common 1/T factors cancel
    }

    double sup_sum = 0.0;
    double sup_sq = 0.0;
    int exceed = 0;
    int reached = 0;
    double power_sum = 0.0;
    double power_sq = 0.0;
    int power_defined = 0;
    for (const auto& t : trials) {
        const double s = mode == AggregateMode::from_rstar ? t.sup_fdp_from_rstar()
                                                           : t.sup_fdp_from_time(fixed_k);
        sup_sum += s;
        sup_sq += s * s;
        if (s >= eps_star) ++exceed;
        if (t.reached_rstar) ++reached;
        if (!std::isnan(t.power_final)) {
            power_sum += t.power_final;
            power_sq += t.power_final * t.power_final;
            ++power_defined;
        }
    }
    agg.supfd = sup_sum / T;
    agg.supfd_se = sample_se(sup_sum, sup_sq, agg.trial_count);
    agg.fdx = static_cast<double>(exceed) / T;
    agg.fraction_reached_rstar = static_cast<double>(reached) / T;
    if (power_defined > 0) {
        agg.power = power_sum / power_defined;
        agg.power_se = sample_se(power_sum, power_sq, power_defined);
    }
    return agg;
}

}  // namespace suplord
