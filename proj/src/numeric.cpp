#include "suplord/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace suplord {

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return (h / 6.0) * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double eps,
             int depth, bool& converged) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * eps) {
        return left + right + delta / 15.0;
    }
    if (depth <= 0) {
        converged = false;
        return left + right + delta / 15.0;
    }
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1, converged) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1, converged);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol, int max_depth) {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("integrate: tolerance must be positive");
    if (lo == hi) return 0.0;
    const double fa = f(lo);
    const double fb = f(hi);
    const double fm = f(0.5 * (lo + hi));
    const double whole = simpson(fa, fm, fb, hi - lo);
    bool converged = true;
    const double result = adapt(f, lo, hi, fa, fm, fb, whole, abs_tol, max_depth, converged);
    if (!converged) throw std::runtime_error("integrate: recursion budget exhausted before tolerance was met");
    return result;
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double rel_tol, int max_iter) {
    if (!(lo < hi)) throw std::invalid_argument("bisect: requires lo < hi");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw std::invalid_argument("bisect: root not bracketed");
    for (int i = 0; i < max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= rel_tol * std::abs(mid) || mid == lo || mid == hi) return mid;
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace suplord
