#pragma once

#include <functional>

namespace suplord {

// Shared numerical tolerances, stated once.
namespace tol {
inline constexpr double validation = 1e-12;  // additive, boost-condition checks
inline constexpr double root = 1e-10;        // relative, bracketed root finding
inline constexpr double quadrature = 1e-4;   // absolute, default integration error
}  // namespace tol

/// Compensated (Kahan) accumulator for long sums of small terms.
struct KahanAccumulator {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

/// Adaptive Simpson quadrature of f over [lo, hi] to absolute tolerance.
/// Throws std::runtime_error if the recursion budget is exhausted before
/// the tolerance is met.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol, int max_depth = 48);

/// Bisection on a bracket [lo, hi] with f(lo) and f(hi) of opposite sign.
/// Stops when the bracket width falls below rel_tol relative to the root.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double rel_tol = tol::root, int max_iter = 500);

}  // namespace suplord
