#include "suplord/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace suplord {

namespace {

using nlohmann::json;

std::string fmt_short(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return buf;
}

std::string sanitize_filename(const std::string& id) {
    std::string out = id;
    for (char& c : out) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
        if (!ok) c = '-';
    }
    return out;
}

std::string csv_field(double x) { return std::isnan(x) ? std::string() : format_double(x); }

// Rows never contain commas or quotes except possibly error messages.
std::string csv_safe(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '"') c = ';';
    return s;
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string DataSpec::id() const {
    std::ostringstream out;
    if (const auto* c = std::get_if<ConstantSetting>(&source)) {
        out << "gauss_pi" << fmt_short(c->pi) << "_mu" << fmt_short(c->mu) << "_n" << n;
    } else if (const auto* h = std::get_if<HmmSetting>(&source)) {
        out << "hmm_t" << fmt_short(h->transprob) << "_mu" << fmt_short(h->mu) << "_n" << n;
    } else {
        const auto& csv = std::get<CsvSource>(source);
        out << "csv_" << sanitize_filename(std::filesystem::path(csv.path).filename().string());
    }
    return out.str();
}

std::string AlgorithmSpec::id() const {
    std::ostringstream out;
    if (kind == "suplord") {
        out << "suplord_eps" << fmt_short(eps) << "_delta" << fmt_short(delta) << "_r" << r_star;
        if (canonical) out << "_acanon";
        else out << "_a" << fmt_short(a);
        if (boost_kind == "mfdr_safe") out << "_mfdr";
    } else if (kind == "lord") {
        out << "lord_l" << fmt_short(level);
    } else if (kind == "alpha_spending") {
        out << "spend_l" << fmt_short(level);
    } else {
        out << kind;
    }
    return out.str();
}

std::optional<SupLordParams> AlgorithmSpec::make_params() const {
    if (kind != "suplord") return std::nullopt;
    SupLordParams p;
    p.eps_star = eps;
    p.delta_star = delta;
    p.r_star = r_star;
    p.a = canonical ? canonical_a(eps, delta, r_star) : a;
    p.validate();
    return p;
}

BoostSequence AlgorithmSpec::make_boosts() const {
    if (kind == "suplord") {
        const SupLordParams p = *make_params();
        if (boost_kind == "default") return suplord_default_boosts(p);
        if (boost_kind == "mfdr_safe") return mfdr_safe_boosts(p);
        throw std::invalid_argument("algorithm: unknown boost construction '" + boost_kind + "'");
    }
    if (kind == "lord") return lord_boosts(level);
    if (kind == "alpha_spending") return alpha_spending_boosts(level);
    throw std::invalid_argument("algorithm: unknown kind '" + kind + "'");
}

int AlgorithmSpec::control_start() const { return kind == "suplord" ? r_star : 1; }

double AlgorithmSpec::band_delta() const { return kind == "suplord" ? delta : 0.05; }

double AlgorithmSpec::band_a() const {
    if (kind != "suplord") return 1.0;
    return make_params()->a;
}

std::string ScheduleSpec::id() const {
    std::ostringstream out;
    switch (kind) {
        case ScheduleKind::steady: out << "steady"; break;
        case ScheduleKind::aggressive: out << "aggressive"; break;
        case ScheduleKind::dynamic:
            out << "dynamic_xi" << fmt_short(xi) << "_rho" << rho;
            break;
    }
    if (horizon) out << "_h" << *horizon;
    if (norm == GammaNormalization::infinite_sum) out << "_inf";
    return out.str();
}

ScheduleConfig ScheduleSpec::make(int n) const {
    return make_schedule(kind, horizon.value_or(n), norm, xi, rho);
}

void ExperimentConfig::validate() const {
    if (algorithms.empty()) throw std::invalid_argument("config: no algorithms configured");
    if (schedules.empty()) throw std::invalid_argument("config: no schedules configured");
    if (data.empty()) throw std::invalid_argument("config: no data settings configured");
    if (trials < 1) throw std::invalid_argument("config: trials must be at least 1");
    if (threads < 0) throw std::invalid_argument("config: threads must be nonnegative");
    std::vector<std::string> ids;
    for (const auto& a : algorithms)
        for (const auto& s : schedules)
            for (const auto& d : data) ids.push_back(a.id() + "|" + s.id() + "|" + d.id());
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw std::invalid_argument("config: duplicate grid cell " +
                                    *std::adjacent_find(ids.begin(), ids.end()));
}

namespace {

double require_number(const json& j, const char* field) {
    if (!j.contains(field) || !j.at(field).is_number())
        throw std::invalid_argument(std::string("config: missing numeric field '") + field + "'");
    return j.at(field).get<double>();
}

AlgorithmSpec parse_algorithm(const json& j) {
    AlgorithmSpec spec;
    spec.kind = j.value("kind", std::string("suplord"));
    if (spec.kind == "suplord") {
        spec.eps = require_number(j, "eps");
        spec.delta = require_number(j, "delta");
        spec.r_star = static_cast<int>(require_number(j, "r_star"));
        if (j.contains("a")) {
            if (j.at("a").is_string()) {
                if (j.at("a").get<std::string>() != "canonical")
                    throw std::invalid_argument("config: algorithm field 'a' must be a number or \"canonical\"");
                spec.canonical = true;
            } else {
                spec.a = j.at("a").get<double>();
            }
        }
        spec.boost_kind = j.value("boosts", std::string("default"));
    } else if (spec.kind == "lord" || spec.kind == "alpha_spending") {
        spec.level = require_number(j, "level");
        if (j.contains("eps")) spec.eps = j.at("eps").get<double>();
    } else {
        throw std::invalid_argument("config: unknown algorithm kind '" + spec.kind + "'");
    }
    return spec;
}

ScheduleSpec parse_schedule(const json& j) {
    ScheduleSpec spec;
    const std::string kind = j.value("kind", std::string("steady"));
    if (kind == "steady") spec.kind = ScheduleKind::steady;
    else if (kind == "aggressive") spec.kind = ScheduleKind::aggressive;
    else if (kind == "dynamic") spec.kind = ScheduleKind::dynamic;
    else throw std::invalid_argument("config: unknown schedule kind '" + kind + "'");
    if (j.contains("xi")) spec.xi = j.at("xi").get<double>();
    if (j.contains("rho")) spec.rho = j.at("rho").get<int>();
    if (j.contains("horizon")) spec.horizon = j.at("horizon").get<int>();
    if (j.value("normalization", std::string("horizon")) == "infinite")
        spec.norm = GammaNormalization::infinite_sum;
    return spec;
}

DataSpec parse_data(const json& j) {
    DataSpec spec;
    const std::string setting = j.value("setting", std::string("constant"));
    if (setting == "constant") {
        ConstantSetting c;
        c.pi = require_number(j, "pi");
        c.mu = require_number(j, "mu");
        spec.source = c;
        spec.n = static_cast<int>(require_number(j, "n"));
    } else if (setting == "hmm") {
        HmmSetting h;
        h.transprob = require_number(j, "transprob");
        h.mu = require_number(j, "mu");
        spec.source = h;
        spec.n = static_cast<int>(require_number(j, "n"));
    } else if (setting == "csv") {
        if (!j.contains("path"))
            throw std::invalid_argument("config: csv data setting requires 'path'");
        spec.source = CsvSource{j.at("path").get<std::string>()};
    } else {
        throw std::invalid_argument("config: unknown data setting '" + setting + "'");
    }
    return spec;
}

json echo_algorithm(const AlgorithmSpec& a) {
    json j;
    j["kind"] = a.kind;
    if (a.kind == "suplord") {
        j["eps"] = a.eps;
        j["delta"] = a.delta;
        j["r_star"] = a.r_star;
        if (a.canonical) j["a"] = "canonical";
        else j["a"] = a.a;
        j["boosts"] = a.boost_kind;
    } else {
        j["level"] = a.level;
        j["eps"] = a.eps;
    }
    return j;
}

json echo_schedule(const ScheduleSpec& s) {
    json j;
    switch (s.kind) {
        case ScheduleKind::steady: j["kind"] = "steady"; break;
        case ScheduleKind::aggressive: j["kind"] = "aggressive"; break;
        case ScheduleKind::dynamic:
            j["kind"] = "dynamic";
            j["xi"] = s.xi;
            j["rho"] = s.rho;
            break;
    }
    if (s.horizon) j["horizon"] = *s.horizon;
    if (s.norm == GammaNormalization::infinite_sum) j["normalization"] = "infinite";
    return j;
}

json echo_data(const DataSpec& d) {
    json j;
    if (const auto* c = std::get_if<ConstantSetting>(&d.source)) {
        j["setting"] = "constant";
        j["pi"] = c->pi;
        j["mu"] = c->mu;
        j["n"] = d.n;
    } else if (const auto* h = std::get_if<HmmSetting>(&d.source)) {
        j["setting"] = "hmm";
        j["transprob"] = h->transprob;
        j["mu"] = h->mu;
        j["n"] = d.n;
    } else {
        j["setting"] = "csv";
        j["path"] = std::get<CsvSource>(d.source).path;
    }
    return j;
}

std::string echo_config(const ExperimentConfig& cfg) {
    json j;
    for (const auto& a : cfg.algorithms) j["algorithms"].push_back(echo_algorithm(a));
    for (const auto& s : cfg.schedules) j["schedules"].push_back(echo_schedule(s));
    for (const auto& d : cfg.data) j["data"].push_back(echo_data(d));
    j["trials"] = cfg.trials;
    j["base_seed"] = cfg.base_seed;
    j["metrics"]["mode"] =
        cfg.metrics.mode == AggregateMode::from_rstar ? "from_rstar" : "fixed_k";
    if (cfg.metrics.mode == AggregateMode::fixed_k) j["metrics"]["k"] = cfg.metrics.fixed_k;
    j["output_dir"] = cfg.output_dir;
    if (cfg.threads > 0) j["threads"] = cfg.threads;
    return j.dump(2) + "\n";
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        if (!root.contains("algorithms") || !root.contains("schedules") || !root.contains("data"))
            throw std::invalid_argument("config: requires 'algorithms', 'schedules' and 'data' lists");
        for (const auto& j : root.at("algorithms")) cfg.algorithms.push_back(parse_algorithm(j));
        for (const auto& j : root.at("schedules")) cfg.schedules.push_back(parse_schedule(j));
        for (const auto& j : root.at("data")) cfg.data.push_back(parse_data(j));
        cfg.trials = root.value("trials", 1);
        cfg.base_seed = root.value("base_seed", std::uint64_t{0});
        cfg.output_dir = root.value("output_dir", std::string("results"));
        cfg.threads = root.value("threads", 0);
        if (root.contains("metrics")) {
            const auto& m = root.at("metrics");
            const std::string mode = m.value("mode", std::string("from_rstar"));
            if (mode == "from_rstar") cfg.metrics.mode = AggregateMode::from_rstar;
            else if (mode == "fixed_k") {
                cfg.metrics.mode = AggregateMode::fixed_k;
                cfg.metrics.fixed_k = m.value("k", 1);
            } else throw std::invalid_argument("config: unknown metrics mode '" + mode + "'");
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_experiment_config(buf.str());
}

std::uint64_t trial_seed(std::uint64_t base_seed, const std::string& cell_id, int trial) {
    // FNV-1a over the cell id, then mixed with the base seed and trial index.
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : cell_id) {
        h ^= c;
        h *= 1099511628211ull;
    }
    h = mix64(h ^ base_seed);
    return mix64(h ^ static_cast<std::uint64_t>(trial));
}

namespace {

struct TrialOutput {
    TrialMetrics metrics;
    std::vector<double> band;
    std::vector<double> wealth;
    std::vector<double> alpha;
    int final_rejections = 0;
    Trajectory trajectory;
};

void run_one_trial(const BoostSequence& boosts, const ScheduleConfig& schedule,
                   const std::vector<double>& p_values, const std::vector<bool>* labels,
                   int control_start, double band_delta, double band_a,
                   bool keep_trajectory, TrialOutput& out) {
    Trajectory traj = run_stream(boosts, schedule, p_values);
    out.final_rejections = traj.rejections();
    out.band = fdp_band(traj, band_delta, band_a);
    out.wealth.reserve(traj.records.size());
    out.alpha.reserve(traj.records.size());
    for (const auto& rec : traj.records) {
        out.wealth.push_back(rec.wealth_after);
        out.alpha.push_back(rec.alpha);
    }
    if (labels) out.metrics = trial_metrics(LabeledTrajectory{traj, *labels}, control_start);
    if (keep_trajectory) out.trajectory = std::move(traj);
}

}  // namespace

CellRun run_cell(const AlgorithmSpec& algo, const ScheduleSpec& sched, const DataSpec& data,
                 int trials, std::uint64_t base_seed, const MetricsSpec& metrics, int threads,
                 bool keep_trajectories) {
    CellRun run;
    run.result.cell_id = algo.id() + "|" + sched.id() + "|" + data.id();
    run.result.algorithm = algo.id();
    run.result.schedule = sched.id();
    run.result.data = data.id();

    const BoostSequence boosts = algo.make_boosts();  // may throw: caller records the error

    // CSV sources carry one fixed stream; Monte Carlo repetition is meaningless.
    std::optional<IngestedStream> fixed_stream;
    int n = data.n;
    if (const auto* csv = std::get_if<CsvSource>(&data.source)) {
        fixed_stream = ingest_csv(csv->path);
        n = static_cast<int>(fixed_stream->p_values.size());
        trials = 1;
    }
    run.result.trials = trials;
    run.result.labeled = !fixed_stream || fixed_stream->labels.has_value();

    const ScheduleConfig schedule = sched.make(n);
    {  // surface invalid configurations before any trial runs
        GaiState probe = init_state(boosts, schedule);
        if (algo.make_params()) probe = init_state(*algo.make_params(), boosts, schedule);
    }

    std::vector<TrialOutput> outputs(static_cast<std::size_t>(trials));
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(trials));

    auto trial_body = [&](int j) {
        try {
            std::vector<double> p_values;
            const std::vector<bool>* labels = nullptr;
            std::vector<bool> owned_labels;
            if (fixed_stream) {
                p_values = fixed_stream->p_values;
                if (fixed_stream->labels) {
                    owned_labels = *fixed_stream->labels;
                    labels = &owned_labels;
                }
            } else {
                GeneratorConfig gen;
                gen.n = n;
                if (const auto* c = std::get_if<ConstantSetting>(&data.source)) gen.setting = *c;
                else gen.setting = std::get<HmmSetting>(data.source);
                gen.seed = trial_seed(base_seed, run.result.cell_id, j);
                LabeledStream stream = generate_stream(gen);
                p_values = std::move(stream.p_values);
                owned_labels = std::move(stream.labels);
                labels = &owned_labels;
            }
            run_one_trial(boosts, schedule, p_values, labels, algo.control_start(),
                          algo.band_delta(), algo.band_a(), keep_trajectories,
                          outputs[static_cast<std::size_t>(j)]);
        } catch (...) {
            failures[static_cast<std::size_t>(j)] = std::current_exception();
        }
    };

    int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::clamp(nthreads, 1, trials);
    if (nthreads == 1) {
        for (int j = 0; j < trials; ++j) trial_body(j);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(nthreads));
        for (int w = 0; w < nthreads; ++w)
            workers.emplace_back([&] {
                for (int j = next.fetch_add(1); j < trials; j = next.fetch_add(1)) trial_body(j);
            });
        for (auto& w : workers) w.join();
    }
    for (const auto& failure : failures)
        if (failure) std::rethrow_exception(failure);

    // Deterministic reduction in trial order, independent of thread timing.
    const std::size_t un = static_cast<std::size_t>(n);
    MeanPaths& paths = run.result.paths;
    paths.band.assign(un, 0.0);
    paths.mean_wealth.assign(un, 0.0);
    paths.mean_alpha.assign(un, 0.0);
    double rejections_sum = 0.0;
    for (const auto& out : outputs) {
        for (std::size_t k = 0; k < un; ++k) {
            paths.band[k] += out.band[k];
            paths.mean_wealth[k] += out.wealth[k];
            paths.mean_alpha[k] += out.alpha[k];
        }
        rejections_sum += out.final_rejections;
    }
    const double T = static_cast<double>(trials);
    for (std::size_t k = 0; k < un; ++k) {
        paths.band[k] /= T;
        paths.mean_wealth[k] /= T;
        paths.mean_alpha[k] /= T;
    }
    run.result.mean_rejections = rejections_sum / T;

    if (run.result.labeled) {
        run.trials.reserve(outputs.size());
        for (auto& out : outputs) run.trials.push_back(std::move(out.metrics));
        run.result.metrics = aggregate(run.trials, algo.eps, metrics.mode, metrics.fixed_k);
        paths.fdr = run.result.metrics.fdr_path;
        paths.supfd.assign(un, 0.0);
        for (const auto& t : run.trials)
            for (std::size_t k = 0; k < un; ++k) paths.supfd[k] += t.fdp_suffix_max[k];
        for (std::size_t k = 0; k < un; ++k) paths.supfd[k] /= T;

        paths.fdp_p95.assign(un, 0.0);
        std::vector<double> column(outputs.size());
        const std::size_t q_idx =
            static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(trials))) - 1;
        for (std::size_t k = 0; k < un; ++k) {
            for (std::size_t j = 0; j < run.trials.size(); ++j) column[j] = run.trials[j].fdp_path[k];
            std::nth_element(column.begin(), column.begin() + static_cast<std::ptrdiff_t>(q_idx),
                             column.end());
            paths.fdp_p95[k] = column[q_idx];
        }
    }

    if (keep_trajectories) {
        run.trajectories.reserve(outputs.size());
        for (auto& out : outputs) run.trajectories.push_back(std::move(out.trajectory));
    }
    return run;
}

ResultsBundle run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ResultsBundle bundle;
    bundle.version = tool_version;
    bundle.config_echo = echo_config(cfg);
    for (const auto& algo : cfg.algorithms) {
        for (const auto& sched : cfg.schedules) {
            for (const auto& data : cfg.data) {
                try {
                    CellRun run = run_cell(algo, sched, data, cfg.trials, cfg.base_seed,
                                           cfg.metrics, cfg.threads);
                    bundle.cells.push_back(std::move(run.result));
                } catch (const std::exception& e) {
                    CellResult failed;
                    failed.cell_id = algo.id() + "|" + sched.id() + "|" + data.id();
                    failed.algorithm = algo.id();
                    failed.schedule = sched.id();
                    failed.data = data.id();
                    failed.trials = cfg.trials;
                    failed.error = e.what();
                    bundle.cells.push_back(std::move(failed));
                }
            }
        }
    }
    return bundle;
}

IngestedStream ingest_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("ingest_csv: cannot open " + path);

    auto fail = [&path](int line, const std::string& what) {
        throw std::runtime_error("ingest_csv: " + path + ": line " + std::to_string(line) + ": " + what);
    };
    auto split = [](const std::string& line) {
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t pos = line.find(',', start);
            if (pos == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, pos - start));
            start = pos + 1;
        }
        for (auto& f : fields) {
            while (!f.empty() && (f.back() == ' ' || f.back() == '\r' || f.back() == '\t')) f.pop_back();
            std::size_t i = 0;
            while (i < f.size() && (f[i] == ' ' || f[i] == '\t')) ++i;
            f.erase(0, i);
        }
        return fields;
    };

    std::string line;
    if (!std::getline(in, line)) fail(1, "empty file, expected header index,p_value[,is_null]");
    const auto header = split(line);
    bool has_labels = false;
    if (header.size() == 3 && header[0] == "index" && header[1] == "p_value" && header[2] == "is_null")
        has_labels = true;
    else if (!(header.size() == 2 && header[0] == "index" && header[1] == "p_value"))
        fail(1, "expected header index,p_value[,is_null]");

    IngestedStream stream;
    if (has_labels) stream.labels.emplace();
    long long prev_index = 0;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = split(line);
        if (fields.size() != (has_labels ? 3u : 2u))
            fail(line_no, "expected " + std::to_string(has_labels ? 3 : 2) + " fields, found " +
                              std::to_string(fields.size()));
        char* end = nullptr;
        const long long index = std::strtoll(fields[0].c_str(), &end, 10);
        if (end == fields[0].c_str() || *end != '\0')
            fail(line_no, "index '" + fields[0] + "' is not an integer");
        if (index < 1) fail(line_no, "index must be at least 1");
        if (index <= prev_index) fail(line_no, "index must be strictly increasing");
        prev_index = index;

        const double p = std::strtod(fields[1].c_str(), &end);
        if (end == fields[1].c_str() || *end != '\0')
            fail(line_no, "p_value '" + fields[1] + "' is not a number");
        if (!(p >= 0.0 && p <= 1.0))
            fail(line_no, "p_value " + fields[1] + " outside [0,1]");
        stream.p_values.push_back(p);

        if (has_labels) {
            if (fields[2] == "0") stream.labels->push_back(false);
            else if (fields[2] == "1") stream.labels->push_back(true);
            else fail(line_no, "is_null '" + fields[2] + "' must be 0 or 1");
        }
    }
    return stream;
}

void write_stream_csv(const LabeledStream& stream, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_stream_csv: cannot open " + path);
    out << "index,p_value,is_null\n";
    for (std::size_t i = 0; i < stream.p_values.size(); ++i)
        out << (i + 1) << ',' << format_double(stream.p_values[i]) << ','
            << (stream.labels[i] ? 1 : 0) << '\n';
}

void emit_results(const ResultsBundle& bundle, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(fs::path(dir) / "paths", ec);
    if (ec) throw std::runtime_error("emit_results: cannot create " + dir + ": " + ec.message());

    std::ofstream summary(fs::path(dir) / "summary.csv");
    if (!summary) throw std::runtime_error("emit_results: cannot write summary.csv");
    summary << "cell,algorithm,schedule,data,trials,power,power_se,fdr_final,supfd,supfd_se,"
               "fdx,mfdr_final,mean_rejections,fraction_reached_rstar,error\n";
    for (const auto& cell : bundle.cells) {
        const auto& m = cell.metrics;
        const bool ok = cell.error.empty();
        summary << cell.cell_id << ',' << cell.algorithm << ',' << cell.schedule << ','
                << cell.data << ',' << cell.trials << ','
                << (ok ? csv_field(m.power) : std::string()) << ','
                << (ok ? csv_field(m.power_se) : std::string()) << ','
                << (ok && !m.fdr_path.empty() ? csv_field(m.fdr_path.back()) : std::string()) << ','
                << (ok ? csv_field(m.supfd) : std::string()) << ','
                << (ok ? csv_field(m.supfd_se) : std::string()) << ','
                << (ok ? csv_field(m.fdx) : std::string()) << ','
                << (ok && !m.mfdr_path.empty() ? csv_field(m.mfdr_path.back()) : std::string()) << ','
                << (ok ? csv_field(cell.mean_rejections) : std::string()) << ','
                << (ok ? csv_field(m.fraction_reached_rstar) : std::string()) << ','
                << csv_safe(cell.error) << '\n';
    }
    summary.close();

    for (const auto& cell : bundle.cells) {
        if (!cell.error.empty()) continue;
        const fs::path file = fs::path(dir) / "paths" / (sanitize_filename(cell.cell_id) + ".csv");
        std::ofstream out(file);
        if (!out) throw std::runtime_error("emit_results: cannot write " + file.string());
        out << "k,fdr,supfd,band,mean_wealth,mean_alpha,fdp_p95\n";
        const std::size_t n = cell.paths.mean_wealth.size();
        for (std::size_t k = 0; k < n; ++k) {
            out << (k + 1) << ','
                << (cell.labeled ? format_double(cell.paths.fdr[k]) : std::string()) << ','
                << (cell.labeled ? format_double(cell.paths.supfd[k]) : std::string()) << ','
                << format_double(cell.paths.band[k]) << ','
                << format_double(cell.paths.mean_wealth[k]) << ','
                << format_double(cell.paths.mean_alpha[k]) << ','
                << (cell.labeled ? format_double(cell.paths.fdp_p95[k]) : std::string()) << '\n';
        }
    }

    std::ofstream echo(fs::path(dir) / "config.json");
    echo << bundle.config_echo;
    std::ofstream info(fs::path(dir) / "run_info.json");
    info << "{\n  \"tool\": \"suplord\",\n  \"version\": \"" << bundle.version << "\"\n}\n";
}

}  // namespace suplord
