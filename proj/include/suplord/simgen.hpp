#pragma once

#include <cstdint>
#include <variant>
#include <vector>

namespace suplord {

struct ConstantSetting {
    double pi = 0.0;  // probability a hypothesis is non-null
    double mu = 0.0;  // non-null Gaussian mean shift
};

/// Two-state label chain: the first hypothesis is non-null with probability
/// 1/2; afterwards the chain switches state with probability transprob.
struct HmmSetting {
    double transprob = 0.5;
    double mu = 0.0;
};

struct GeneratorConfig {
    int n = 0;
    std::variant<ConstantSetting, HmmSetting> setting;
    std::uint64_t seed = 0;

    void validate() const;
};

struct LabeledStream {
    std::vector<double> p_values;
    std::vector<bool> labels;  // true = null hypothesis
};

/// Upper-tail standard normal probability P(Z >= z), computed through the
/// complementary error function so small p-values keep full relative
/// precision; floored at 1e-300 so a p-value never collapses to exact zero.
double phi_neg(double z);

/// Standard normal quantile (Wichura's PPND16 rational approximation),
/// accurate to double precision over (0,1).
double normal_quantile(double p);

// Counter-based generator: every draw is a pure hash of (seed, step, dim),
// so trials parallelize and reorder without changing a single stream.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t rng_word(std::uint64_t seed, std::uint64_t step, std::uint64_t dim);
double uniform01(std::uint64_t word);  // strictly inside (0,1)

LabeledStream gaussian_stream(const GeneratorConfig& cfg);
LabeledStream hmm_stream(const GeneratorConfig& cfg);
LabeledStream generate_stream(const GeneratorConfig& cfg);

}  // namespace suplord
