#include "suplord/simgen.hpp"

#include <cmath>
#include <stdexcept>

namespace suplord {

namespace {

constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t weyl = 0xD1B54A32D192ED03ull;

// Draw dimensions per step.
constexpr std::uint64_t dim_label = 0;
constexpr std::uint64_t dim_z = 1;

double sample_z(std::uint64_t seed, std::uint64_t step, bool non_null, double mu) {
    const double u = uniform01(rng_word(seed, step, dim_z));
    return normal_quantile(u) + (non_null ? mu : 0.0);
}

}  // namespace

void GeneratorConfig::validate() const {
    if (n < 0) throw std::invalid_argument("GeneratorConfig: n must be nonnegative");
    if (const auto* c = std::get_if<ConstantSetting>(&setting)) {
        if (!(c->pi >= 0.0 && c->pi <= 1.0))
            throw std::invalid_argument("GeneratorConfig: pi must lie in [0,1]");
    } else if (const auto* h = std::get_if<HmmSetting>(&setting)) {
        if (!(h->transprob > 0.0 && h->transprob < 1.0))
            throw std::invalid_argument("GeneratorConfig: transprob must lie in (0,1)");
    }
}

double phi_neg(double z) {
    const double v = 0.5 * std::erfc(z * 0.70710678118654752440);
    return v < 1e-300 ? 1e-300 : v;
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("normal_quantile: p must lie strictly inside (0,1)");
    // PPND16 (Wichura, AS 241).
    const double q = p - 0.5;
    double r;
    if (std::abs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }
    r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                      2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                    3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                  4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                      1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                    6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                  2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                      1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                    2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                  5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
                (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                      1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                    1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                  5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -value : value;
}

std::uint64_t mix64(std::uint64_t x) {
    x += golden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t rng_word(std::uint64_t seed, std::uint64_t step, std::uint64_t dim) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ (step + golden));
    h = mix64(h ^ (dim + weyl));
    return h;
}

double uniform01(std::uint64_t word) {
    // 52 bits: every value n + 0.5 is exact, so the result stays strictly
    // inside (0,1) even at the extreme words.
    return (static_cast<double>(word >> 12) + 0.5) * 0x1.0p-52;
}

LabeledStream gaussian_stream(const GeneratorConfig& cfg) {
    cfg.validate();
    const auto* c = std::get_if<ConstantSetting>(&cfg.setting);
    if (!c) throw std::invalid_argument("gaussian_stream: config does not hold a constant setting");
    LabeledStream out;
    out.p_values.reserve(static_cast<std::size_t>(cfg.n));
    out.labels.reserve(static_cast<std::size_t>(cfg.n));
    for (int i = 1; i <= cfg.n; ++i) {
        const auto step = static_cast<std::uint64_t>(i);
        const bool non_null = uniform01(rng_word(cfg.seed, step, dim_label)) < c->pi;
        const double z = sample_z(cfg.seed, step, non_null, c->mu);
        out.p_values.push_back(phi_neg(z));
        out.labels.push_back(!non_null);
    }
    return out;
}

LabeledStream hmm_stream(const GeneratorConfig& cfg) {
    cfg.validate();
    const auto* h = std::get_if<HmmSetting>(&cfg.setting);
    if (!h) throw std::invalid_argument("hmm_stream: config does not hold an hmm setting");
    LabeledStream out;
    out.p_values.reserve(static_cast<std::size_t>(cfg.n));
    out.labels.reserve(static_cast<std::size_t>(cfg.n));
    bool prev_non_null = false;
    for (int i = 1; i <= cfg.n; ++i) {
        const auto step = static_cast<std::uint64_t>(i);
        const double pi_i = i == 1 ? 0.5 : (prev_non_null ? 1.0 - h->transprob : h->transprob);
        const bool non_null = uniform01(rng_word(cfg.seed, step, dim_label)) < pi_i;
        const double z = sample_z(cfg.seed, step, non_null, h->mu);
        out.p_values.push_back(phi_neg(z));
        out.labels.push_back(!non_null);
        prev_non_null = non_null;
    }
    return out;
}

LabeledStream generate_stream(const GeneratorConfig& cfg) {
    return std::holds_alternative<ConstantSetting>(cfg.setting) ? gaussian_stream(cfg)
                                                                : hmm_stream(cfg);
}

}  // namespace suplord
