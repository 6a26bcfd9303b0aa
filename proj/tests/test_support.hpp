#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "suplord/simgen.hpp"

namespace testsup {

// Small deterministic generator for property-test inputs, built on the
// library's counter hash so tests stay platform-stable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {}
    double uniform() { return suplord::uniform01(suplord::rng_word(seed_, ++counter_, 0)); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(uniform() * (hi - lo + 1));
    }
    bool coin(double p = 0.5) { return uniform() < p; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

// Mixed stream: uniform draws with occasional adversarial blocks of exact
// zeros and ones.
inline std::vector<double> random_p_stream(Rng& rng, int n) {
    std::vector<double> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n;) {
        if (rng.coin(0.08)) {
            const int len = std::min(n - i, rng.uniform_int(1, 5));
            const double v = rng.coin() ? 0.0 : 1.0;
            for (int j = 0; j < len; ++j) p[static_cast<std::size_t>(i++)] = v;
        } else {
            p[static_cast<std::size_t>(i++)] = rng.uniform();
        }
    }
    return p;
}

}  // namespace testsup
