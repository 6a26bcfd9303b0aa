#include "suplord/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "suplord/harness.hpp"

namespace suplord::cli {

namespace {

struct AlgorithmFlags {
    std::string policy = "suplord";
    double eps = 0.15;
    double delta = 0.05;
    int r_star = 30;
    double a = 1.0;
    bool canonical = false;
    std::string boosts = "default";
    double level = 0.05;

    AlgorithmSpec to_spec() const {
        AlgorithmSpec spec;
        spec.kind = policy;
        spec.eps = eps;
        spec.delta = delta;
        spec.r_star = r_star;
        spec.a = a;
        spec.canonical = canonical;
        spec.boost_kind = boosts;
        spec.level = level;
        return spec;
    }
};

void add_algorithm_flags(CLI::App* cmd, AlgorithmFlags& flags) {
    cmd->add_option("--policy", flags.policy, "suplord, lord or alpha_spending")
        ->check(CLI::IsMember({"suplord", "lord", "alpha_spending"}));
    cmd->add_option("--eps", flags.eps, "FDP threshold eps* (suplord)");
    cmd->add_option("--delta", flags.delta, "exceedance probability delta* (suplord)");
    cmd->add_option("--rstar", flags.r_star, "rejections before control applies (suplord)");
    auto* a_opt = cmd->add_option("--a", flags.a, "estimator offset a (suplord)");
    cmd->add_flag("--canonical-a", flags.canonical, "use the budget-maximizing offset")
        ->excludes(a_opt);
    cmd->add_option("--boosts", flags.boosts, "boost construction: default or mfdr_safe")
        ->check(CLI::IsMember({"default", "mfdr_safe"}));
    cmd->add_option("--level", flags.level, "error budget for lord / alpha_spending");
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    return file;
}

int run_simulate(const std::string& config_path, const std::string& output_dir, int threads) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    if (threads > 0) cfg.threads = threads;
    const ResultsBundle bundle = run_experiment(cfg);
    emit_results(bundle, cfg.output_dir);
    int failed = 0;
    for (const auto& cell : bundle.cells)
        if (!cell.error.empty()) ++failed;
    std::cerr << "wrote " << bundle.cells.size() << " cells to " << cfg.output_dir;
    if (failed > 0) std::cerr << " (" << failed << " with errors, see summary.csv)";
    std::cerr << "\n";
    return 0;
}

int run_stream_command(const std::string& input, const AlgorithmFlags& flags,
                       const std::string& schedule_name, double xi, int rho,
                       const std::string& output) {
    const IngestedStream stream = ingest_csv(input);
    const AlgorithmSpec algo = flags.to_spec();
    const BoostSequence boosts = algo.make_boosts();

    ScheduleSpec sched;
    if (schedule_name == "steady") sched.kind = ScheduleKind::steady;
    else if (schedule_name == "aggressive") sched.kind = ScheduleKind::aggressive;
    else sched.kind = ScheduleKind::dynamic;
    sched.xi = xi;
    sched.rho = rho;

    const ScheduleConfig schedule = sched.make(static_cast<int>(stream.p_values.size()));
    Trajectory traj;
    if (auto params = algo.make_params())
        traj = run_stream(*params, boosts, schedule, stream.p_values);
    else
        traj = run_stream(boosts, schedule, stream.p_values);

    const std::vector<double> band = fdp_band(traj, algo.band_delta(), algo.band_a());
    std::ofstream file;
    std::ostream& out = open_output(file, output);
    const bool labeled = stream.labels.has_value();
    out << "k,alpha,p_value,rejected,wealth,band" << (labeled ? ",fdp" : "") << "\n";
    std::optional<LabeledTrajectory> lt;
    if (labeled) lt = LabeledTrajectory{traj, *stream.labels};
    for (int k = 1; k <= traj.size(); ++k) {
        const auto& rec = traj.records[static_cast<std::size_t>(k) - 1];
        out << rec.k << ',' << format_double(rec.alpha) << ',' << format_double(rec.p_value)
            << ',' << (rec.rejected ? 1 : 0) << ',' << format_double(rec.wealth_after) << ','
            << format_double(band[static_cast<std::size_t>(k) - 1]);
        if (labeled) out << ',' << format_double(fdp(*lt, k));
        out << '\n';
    }
    std::cerr << traj.rejections() << " rejections over " << traj.size() << " hypotheses\n";
    return 0;
}

int run_bounds(const AlgorithmFlags& flags, bool as_csv) {
    AlgorithmSpec algo = flags.to_spec();
    algo.kind = "suplord";
    const SupLordParams params = *algo.make_params();
    const BoostSequence boosts = algo.make_boosts();
    const GuaranteeSummary summary = guarantee_summary(params, boosts);
    std::cout << (as_csv ? summary.to_csv() : summary.to_text());
    return 0;
}

int run_gamma(int n, const std::string& normalization, const std::string& output) {
    const GammaNormalization norm = normalization == "infinite"
                                        ? GammaNormalization::infinite_sum
                                        : GammaNormalization::horizon;
    const SpendingSequence seq = default_gamma(n, norm);
    std::ofstream file;
    std::ostream& out = open_output(file, output);
    out << "index,gamma\n";
    for (int i = 1; i <= seq.horizon(); ++i)
        out << i << ',' << format_double(seq.at(i)) << '\n';
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"online multiple testing with FDX/FDR control"};
    app.require_subcommand(1);

    auto* simulate = app.add_subcommand("simulate", "run an experiment grid from a JSON config");
    std::string config_path;
    std::string output_dir;
    int threads = 0;
    simulate->add_option("config", config_path, "experiment config JSON")->required();
    simulate->add_option("--output-dir", output_dir, "override the config output directory");
    simulate->add_option("--threads", threads, "worker threads (outputs do not depend on this)");

    auto* runcmd = app.add_subcommand("run", "test one p-value stream from a CSV file");
    std::string input;
    std::string run_output;
    std::string schedule_name = "steady";
    AlgorithmFlags run_flags;
    double xi = 0.08;
    int rho = 200;
    runcmd->add_option("--input", input, "stream CSV (index,p_value[,is_null])")->required();
    runcmd->add_option("--schedule", schedule_name, "steady, aggressive or dynamic")
        ->check(CLI::IsMember({"steady", "aggressive", "dynamic"}));
    runcmd->add_option("--xi", xi, "dynamic acceleration coefficient");
    runcmd->add_option("--rho", rho, "dynamic active-window length");
    runcmd->add_option("--output", run_output, "write the decision CSV here instead of stdout");
    add_algorithm_flags(runcmd, run_flags);

    auto* bounds = app.add_subcommand("bounds", "print the guarantee summary for a parameter triple");
    AlgorithmFlags bounds_flags;
    bool bounds_csv = false;
    bounds->add_option("--eps", bounds_flags.eps, "FDP threshold eps*")->required();
    bounds->add_option("--delta", bounds_flags.delta, "exceedance probability delta*")->required();
    bounds->add_option("--rstar", bounds_flags.r_star, "rejections before control applies")->required();
    auto* ba = bounds->add_option("--a", bounds_flags.a, "estimator offset a");
    bounds->add_flag("--canonical-a", bounds_flags.canonical, "use the budget-maximizing offset")
        ->excludes(ba);
    bounds->add_option("--boosts", bounds_flags.boosts, "default or mfdr_safe")
        ->check(CLI::IsMember({"default", "mfdr_safe"}));
    bounds->add_flag("--csv", bounds_csv, "emit CSV instead of key-value text");

    auto* gamma = app.add_subcommand("gamma", "emit the default spending sequence as CSV");
    int gamma_n = 0;
    std::string gamma_norm = "horizon";
    std::string gamma_output;
    gamma->add_option("--n", gamma_n, "horizon length")->required();
    gamma->add_option("--normalization", gamma_norm, "horizon or infinite")
        ->check(CLI::IsMember({"horizon", "infinite"}));
    gamma->add_option("--output", gamma_output, "write here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (simulate->parsed()) return run_simulate(config_path, output_dir, threads);
        if (runcmd->parsed())
            return run_stream_command(input, run_flags, schedule_name, xi, rho, run_output);
        if (bounds->parsed()) return run_bounds(bounds_flags, bounds_csv);
        if (gamma->parsed()) return run_gamma(gamma_n, gamma_norm, gamma_output);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand given\n";
    return 1;
}

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("suplord");
    for (const auto& arg : args) argv.push_back(arg.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace suplord::cli
