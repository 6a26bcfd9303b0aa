#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "suplord/harness.hpp"

namespace py = pybind11;
using namespace suplord;

namespace {

ScheduleConfig schedule_from_name(const std::string& kind, int horizon, double xi, int rho,
                                  const std::string& normalization) {
    ScheduleKind k;
    if (kind == "steady") k = ScheduleKind::steady;
    else if (kind == "aggressive") k = ScheduleKind::aggressive;
    else if (kind == "dynamic") k = ScheduleKind::dynamic;
    else throw std::invalid_argument("unknown schedule kind '" + kind + "'");
    const GammaNormalization norm = normalization == "infinite"
                                        ? GammaNormalization::infinite_sum
                                        : GammaNormalization::horizon;
    return make_schedule(k, horizon, norm, xi, rho);
}

GeneratorConfig gaussian_config(int n, double pi, double mu, std::uint64_t seed) {
    GeneratorConfig cfg;
    cfg.n = n;
    cfg.setting = ConstantSetting{pi, mu};
    cfg.seed = seed;
    return cfg;
}

GeneratorConfig hmm_config(int n, double transprob, double mu, std::uint64_t seed) {
    GeneratorConfig cfg;
    cfg.n = n;
    cfg.setting = HmmSetting{transprob, mu};
    cfg.seed = seed;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Online multiple testing with FDX/FDR control: generalized alpha-investing, "
              "SupLORD boost sequences, wealth-adaptive spending schedules.";
    m.attr("__version__") = tool_version;

    py::class_<SupLordParams>(m, "SupLordParams")
        .def(py::init([](double eps, double delta, int r_star, double a) {
                 SupLordParams p{eps, delta, r_star, a};
                 p.validate();
                 return p;
             }),
             py::arg("eps"), py::arg("delta"), py::arg("r_star"), py::arg("a") = 1.0)
        .def_readonly("eps", &SupLordParams::eps_star)
        .def_readonly("delta", &SupLordParams::delta_star)
        .def_readonly("r_star", &SupLordParams::r_star)
        .def_readonly("a", &SupLordParams::a)
        .def("__repr__", [](const SupLordParams& p) {
            return "SupLordParams(eps=" + std::to_string(p.eps_star) +
                   ", delta=" + std::to_string(p.delta_star) +
                   ", r_star=" + std::to_string(p.r_star) + ", a=" + std::to_string(p.a) + ")";
        });

    py::class_<BoostSequence>(m, "BoostSequence")
        .def_readonly("beta0", &BoostSequence::beta0)
        .def_readonly("phase1", &BoostSequence::phase1)
        .def_readonly("phase2", &BoostSequence::phase2)
        .def("boost_for_rejection", &BoostSequence::boost_for_rejection, py::arg("r"));

    py::class_<ScheduleConfig>(m, "ScheduleConfig");

    py::class_<StepRecord>(m, "StepRecord")
        .def_readonly("k", &StepRecord::k)
        .def_readonly("alpha", &StepRecord::alpha)
        .def_readonly("p_value", &StepRecord::p_value)
        .def_readonly("rejected", &StepRecord::rejected)
        .def_readonly("wealth", &StepRecord::wealth_after);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("records", &Trajectory::records)
        .def_property_readonly("beta0", [](const Trajectory& t) { return t.beta0; })
        .def("rejections", &Trajectory::rejections)
        .def("rejection_times", &Trajectory::rejection_times)
        .def("alphas",
             [](const Trajectory& t) {
                 std::vector<double> out;
                 out.reserve(t.records.size());
                 for (const auto& r : t.records) out.push_back(r.alpha);
                 return out;
             })
        .def("wealth_path",
             [](const Trajectory& t) {
                 std::vector<double> out;
                 out.reserve(t.records.size());
                 for (const auto& r : t.records) out.push_back(r.wealth_after);
                 return out;
             })
        .def("__len__", [](const Trajectory& t) { return t.records.size(); });

    py::class_<GuaranteeSummary>(m, "GuaranteeSummary")
        .def_readonly("coef", &GuaranteeSummary::coef_star)
        .def_readonly("c_a", &GuaranteeSummary::c_value)
        .def_readonly("supfd_bound", &GuaranteeSummary::supfd_bound)
        .def_readonly("fdr_stopping_bound", &GuaranteeSummary::fdr_stopping_bound)
        .def_readonly("fixed_time_fdr_bound", &GuaranteeSummary::fixed_time_fdr_bound)
        .def_readonly("mfdr_bound", &GuaranteeSummary::mfdr_bound)
        .def_readonly("fixed_time_bounds_active", &GuaranteeSummary::fixed_time_bounds_active)
        .def("fdx_epsilon_at", &GuaranteeSummary::fdx_epsilon_at, py::arg("delta"))
        .def("text", &GuaranteeSummary::to_text);

    py::class_<LabeledStream>(m, "LabeledStream")
        .def_readonly("p_values", &LabeledStream::p_values)
        .def_readonly("labels", &LabeledStream::labels)
        .def("__len__", [](const LabeledStream& s) { return s.p_values.size(); });

    m.def("coef", &coef, py::arg("delta"), py::arg("a") = 1.0,
          "Bound coefficient C_a(1/delta).");
    m.def("c_a", &c_a, py::arg("a") = 1.0, py::arg("abs_tol") = tol::quadrature,
          "Integral of C_a(1/delta) over delta in (0,1).");
    m.def("canonical_a", &canonical_a, py::arg("eps"), py::arg("delta"), py::arg("r_star"),
          "Offset maximizing the phase-1 budget.");
    m.def("suplord_default_boosts", &suplord_default_boosts, py::arg("params"));
    m.def("mfdr_safe_boosts", &mfdr_safe_boosts, py::arg("params"));
    m.def("lord_boosts", &lord_boosts, py::arg("level"), py::arg("beta0_fraction") = 0.1);
    m.def("alpha_spending_boosts", &alpha_spending_boosts, py::arg("level"));
    m.def(
        "validate_boosts",
        [](const BoostSequence& seq, const SupLordParams& p) {
            const auto result = validate_boosts(seq, p);
            return py::make_tuple(result.ok(), result.message());
        },
        py::arg("boosts"), py::arg("params"), "Returns (ok, message).");
    m.def("guarantee_summary", &guarantee_summary, py::arg("params"), py::arg("boosts"));

    m.def(
        "default_gamma",
        [](int n, const std::string& normalization) {
            const GammaNormalization norm = normalization == "infinite"
                                                ? GammaNormalization::infinite_sum
                                                : GammaNormalization::horizon;
            return default_gamma(n, norm).gamma;
        },
        py::arg("n"), py::arg("normalization") = "horizon");
    m.def("make_schedule", &schedule_from_name, py::arg("kind"), py::arg("horizon"),
          py::arg("xi") = 0.08, py::arg("rho") = 200, py::arg("normalization") = "horizon");

    m.def(
        "run_stream",
        [](const BoostSequence& boosts, const ScheduleConfig& schedule,
           const std::vector<double>& p_values, std::optional<SupLordParams> params) {
            if (params) return run_stream(*params, boosts, schedule, p_values);
            return run_stream(boosts, schedule, p_values);
        },
        py::arg("boosts"), py::arg("schedule"), py::arg("p_values"),
        py::arg("params") = std::nullopt);

    m.def("phi_neg", &phi_neg, py::arg("z"), "Upper-tail standard normal probability.");
    m.def("normal_quantile", &normal_quantile, py::arg("p"));
    m.def(
        "gaussian_stream",
        [](int n, double pi, double mu, std::uint64_t seed) {
            return gaussian_stream(gaussian_config(n, pi, mu, seed));
        },
        py::arg("n"), py::arg("pi"), py::arg("mu"), py::arg("seed"));
    m.def(
        "hmm_stream",
        [](int n, double transprob, double mu, std::uint64_t seed) {
            return hmm_stream(hmm_config(n, transprob, mu, seed));
        },
        py::arg("n"), py::arg("transprob"), py::arg("mu"), py::arg("seed"));

    m.def(
        "fdp",
        [](const Trajectory& traj, const std::vector<bool>& labels, int k) {
            return fdp(LabeledTrajectory{traj, labels}, k);
        },
        py::arg("trajectory"), py::arg("labels"), py::arg("k"));
    m.def("fdp_hat_lord", &fdp_hat_lord, py::arg("trajectory"), py::arg("k"));
    m.def("fdp_bar", &fdp_bar, py::arg("trajectory"), py::arg("k"), py::arg("delta"),
          py::arg("a") = 1.0);
    m.def("fdp_band", &fdp_band, py::arg("trajectory"), py::arg("delta"), py::arg("a") = 1.0);
}
