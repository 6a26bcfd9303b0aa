#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "suplord/metrics.hpp"
#include "suplord/simgen.hpp"

namespace suplord {

struct CsvSource {
    std::string path;
};

struct DataSpec {
    std::variant<ConstantSetting, HmmSetting, CsvSource> source;
    int n = 0;  // stream length; for CSV sources, filled on load

    std::string id() const;
};

/// One algorithm column of the experiment grid.  kind is one of
/// "suplord", "lord", "alpha_spending".
struct AlgorithmSpec {
    std::string kind = "suplord";
    double eps = 0.15;
    double delta = 0.05;
    int r_star = 30;
    double a = 1.0;
    bool canonical = false;          // derive a from (eps, delta, r_star)
    std::string boost_kind = "default";  // or "mfdr_safe"
    double level = 0.05;             // lord / alpha_spending budget

    std::string id() const;
    std::optional<SupLordParams> make_params() const;
    BoostSequence make_boosts() const;  // throws when infeasible
    int control_start() const;          // r* for suplord, 1 for baselines
    double band_delta() const;
    double band_a() const;
};

struct ScheduleSpec {
    ScheduleKind kind = ScheduleKind::steady;
    double xi = 0.08;
    int rho = 200;
    std::optional<int> horizon;  // defaults to the stream length
    GammaNormalization norm = GammaNormalization::horizon;

    std::string id() const;
    ScheduleConfig make(int n) const;
};

struct MetricsSpec {
    AggregateMode mode = AggregateMode::from_rstar;
    int fixed_k = 1;
};

struct ExperimentConfig {
    std::vector<AlgorithmSpec> algorithms;
    std::vector<ScheduleSpec> schedules;
    std::vector<DataSpec> data;
    int trials = 1;
    std::uint64_t base_seed = 0;
    MetricsSpec metrics;
    std::string output_dir = "results";
    int threads = 0;  // 0: pick from hardware

    void validate() const;
};

ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

struct MeanPaths {
    std::vector<double> fdr;
    std::vector<double> supfd;
    std::vector<double> band;
    std::vector<double> mean_wealth;
    std::vector<double> mean_alpha;
    std::vector<double> fdp_p95;  // cross-trial 95th percentile of the FDP
};

struct CellResult {
    std::string cell_id;
    std::string algorithm;
    std::string schedule;
    std::string data;
    int trials = 0;
    std::string error;  // empty on success
    bool labeled = true;
    AggregateMetrics metrics;
    MeanPaths paths;
    double mean_rejections = undefined_metric;
};

struct ResultsBundle {
    std::vector<CellResult> cells;
    std::string config_echo;  // canonical JSON of the config that ran
    std::string version;
};

/// Full per-trial detail for one grid cell, for callers that need more than
/// the aggregated CellResult.
struct CellRun {
    CellResult result;
    std::vector<TrialMetrics> trials;
    std::vector<Trajectory> trajectories;  // kept only on request
};

CellRun run_cell(const AlgorithmSpec& algo, const ScheduleSpec& sched, const DataSpec& data,
                 int trials, std::uint64_t base_seed, const MetricsSpec& metrics,
                 int threads = 0, bool keep_trajectories = false);

/// Runs every (algorithm, schedule, data) combination.  A cell whose boost
/// construction fails is recorded with its error and the rest proceed.
ResultsBundle run_experiment(const ExperimentConfig& cfg);

struct IngestedStream {
    std::vector<double> p_values;
    std::optional<std::vector<bool>> labels;
};

/// Reads the stream schema `index,p_value[,is_null]`.  Errors carry the
/// offending file line number.
IngestedStream ingest_csv(const std::string& path);

void write_stream_csv(const LabeledStream& stream, const std::string& path);

/// Writes summary.csv, paths/<cell>.csv, config.json and run_info.json into
/// dir.  All floating-point values carry 17 significant digits, so parsing
/// them back recovers every double exactly.
void emit_results(const ResultsBundle& bundle, const std::string& dir);

/// Stable per-trial seed: reordering cells never changes any trial's stream.
std::uint64_t trial_seed(std::uint64_t base_seed, const std::string& cell_id, int trial);

std::string format_double(double x);  // %.17g
inline constexpr const char* tool_version = "0.1.0";

}  // namespace suplord
