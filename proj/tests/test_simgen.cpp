#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "suplord/simgen.hpp"

using namespace suplord;

namespace {

GeneratorConfig constant_cfg(int n, double pi, double mu, std::uint64_t seed) {
    GeneratorConfig cfg;
    cfg.n = n;
    cfg.setting = ConstantSetting{pi, mu};
    cfg.seed = seed;
    return cfg;
}

GeneratorConfig hmm_cfg(int n, double transprob, double mu, std::uint64_t seed) {
    GeneratorConfig cfg;
    cfg.n = n;
    cfg.setting = HmmSetting{transprob, mu};
    cfg.seed = seed;
    return cfg;
}

double ks_uniform(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double hi = (static_cast<double>(i) + 1.0) / n - values[i];
        const double lo = values[i] - static_cast<double>(i) / n;
        d = std::max({d, hi, lo});
    }
    return d;
}

}  // namespace

TEST_CASE("upper-tail normal probability") {
    CHECK(phi_neg(0.0) == 0.5);
    CHECK(phi_neg(1.6448536269514722) == doctest::Approx(0.05).epsilon(1e-9));
    for (double z : {-3.0, -1.0, -0.2, 0.4, 1.7, 4.0})
        CHECK(std::abs(phi_neg(z) + phi_neg(-z) - 1.0) <= 1e-15);
    // Complementary formulation keeps deep-tail precision and never hits zero.
    CHECK(phi_neg(10.0) == doctest::Approx(7.6198530241605e-24).epsilon(1e-10));
    CHECK(phi_neg(40.0) == 1e-300);
    CHECK(phi_neg(-40.0) == 1.0);
}

TEST_CASE("normal quantile inverts the tail probability") {
    CHECK(normal_quantile(0.95) == doctest::Approx(1.6448536269514722).epsilon(1e-12));
    CHECK(normal_quantile(0.5) == 0.0);
    for (double p : {1e-10, 0.001, 0.3, 0.5, 0.941, 1.0 - 1e-12})
        CHECK(phi_neg(-normal_quantile(p)) == doctest::Approx(p).epsilon(1e-11));
    CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
}

TEST_CASE("counter rng separates every coordinate") {
    CHECK(rng_word(1, 2, 3) != rng_word(1, 2, 4));
    CHECK(rng_word(1, 2, 3) != rng_word(1, 3, 3));
    CHECK(rng_word(1, 2, 3) != rng_word(2, 2, 3));
    CHECK(rng_word(1, 2, 3) == rng_word(1, 2, 3));
    const double u = uniform01(rng_word(9, 9, 9));
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    CHECK(uniform01(0) > 0.0);
    CHECK(uniform01(~std::uint64_t{0}) < 1.0);
}

TEST_CASE("streams are bit-identical under a fixed seed") {
    const auto a = gaussian_stream(constant_cfg(500, 0.3, 3.0, 777));
    const auto b = gaussian_stream(constant_cfg(500, 0.3, 3.0, 777));
    REQUIRE(a.p_values.size() == 500);
    CHECK(a.p_values == b.p_values);
    CHECK(a.labels == b.labels);
    const auto c = gaussian_stream(constant_cfg(500, 0.3, 3.0, 778));
    CHECK(a.p_values != c.p_values);
}

TEST_CASE("a pure-null stream is exactly uniform") {
    const auto s = gaussian_stream(constant_cfg(100000, 0.0, 3.0, 101));
    for (bool is_null : s.labels) CHECK(is_null);
    // 1% critical value of the Kolmogorov statistic: 1.6276 / sqrt(n)
    CHECK(ks_uniform(s.p_values) < 1.6276 / std::sqrt(100000.0));
}

TEST_CASE("null p-values are superuniform at the usual thresholds") {
    const auto s = gaussian_stream(constant_cfg(100000, 0.0, 3.0, 303));
    const double n = 100000.0;
    for (double threshold : {0.01, 0.05, 0.1, 0.5}) {
        double fraction = 0.0;
        for (double p : s.p_values) fraction += p <= threshold ? 1.0 : 0.0;
        fraction /= n;
        CHECK(fraction <= threshold + 3.0 * std::sqrt(threshold * (1.0 - threshold) / n));
    }
}

TEST_CASE("a zero shift makes non-null p-values uniform too") {
    const auto s = gaussian_stream(constant_cfg(100000, 0.5, 0.0, 505));
    std::vector<double> non_null;
    for (std::size_t i = 0; i < s.p_values.size(); ++i)
        if (!s.labels[i]) non_null.push_back(s.p_values[i]);
    REQUIRE(non_null.size() > 40000);
    CHECK(ks_uniform(non_null) < 1.6276 / std::sqrt(static_cast<double>(non_null.size())));
}

TEST_CASE("signal shifts the small-p mass by a growing margin") {
    double prev = 0.05;
    for (double mu : {1.0, 2.0, 3.0}) {
        const auto s = gaussian_stream(constant_cfg(50000, 1.0, mu, 707));
        double fraction = 0.0;
        for (double p : s.p_values) fraction += p <= 0.05 ? 1.0 : 0.0;
        fraction /= 50000.0;
        CHECK(fraction > prev + 0.05);
        prev = fraction;
    }
}

TEST_CASE("hmm at transprob one-half degenerates to fair coin labels") {
    const auto s = hmm_stream(hmm_cfg(100000, 0.5, 2.0, 909));
    double non_null = 0.0;
    double switches = 0.0;
    for (std::size_t i = 0; i < s.labels.size(); ++i) {
        non_null += s.labels[i] ? 0.0 : 1.0;
        if (i > 0 && s.labels[i] != s.labels[i - 1]) switches += 1.0;
    }
    const double se = 0.5 / std::sqrt(100000.0);
    CHECK(std::abs(non_null / 100000.0 - 0.5) <= 3.0 * se);
    CHECK(std::abs(switches / 99999.0 - 0.5) <= 3.0 * se);
}

TEST_CASE("hmm halves the labels in the long run for any transprob") {
    for (double t : {0.1, 0.3, 0.7}) {
        const auto s = hmm_stream(hmm_cfg(100000, t, 2.0, 111));
        double non_null = 0.0;
        for (bool is_null : s.labels) non_null += is_null ? 0.0 : 1.0;
        // Markov-corrected standard error of the mean of a symmetric chain.
        const double rho = 1.0 - 2.0 * t;
        const double se = 0.5 * std::sqrt((1.0 + rho) / (1.0 - rho) / 100000.0);
        CHECK(std::abs(non_null / 100000.0 - 0.5) <= 3.0 * se);
    }
}

TEST_CASE("small transprob produces geometric run lengths") {
    const double t = 0.02;
    const auto s = hmm_stream(hmm_cfg(100000, t, 2.0, 131));
    std::vector<int> runs;
    int current = 1;
    for (std::size_t i = 1; i < s.labels.size(); ++i) {
        if (s.labels[i] == s.labels[i - 1]) ++current;
        else {
            runs.push_back(current);
            current = 1;
        }
    }
    double mean_run = 0.0;
    for (int r : runs) mean_run += r;
    mean_run /= static_cast<double>(runs.size());
    CHECK(mean_run == doctest::Approx(1.0 / t).epsilon(0.10));
}

TEST_CASE("generator config validation") {
    CHECK_THROWS_AS(gaussian_stream(constant_cfg(10, 1.5, 0.0, 1)), std::invalid_argument);
    CHECK_THROWS_AS(hmm_stream(hmm_cfg(10, 0.0, 0.0, 1)), std::invalid_argument);
    CHECK_THROWS_AS(hmm_stream(hmm_cfg(10, 1.0, 0.0, 1)), std::invalid_argument);
    // Dispatch picks the right generator.
    const auto s = generate_stream(hmm_cfg(10, 0.4, 2.0, 7));
    CHECK(s.p_values.size() == 10);
    CHECK_THROWS_AS(gaussian_stream(hmm_cfg(10, 0.4, 2.0, 7)), std::invalid_argument);
}
