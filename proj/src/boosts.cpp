#include "suplord/boosts.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace suplord {

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fmt6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

// C_a(1/delta) extended by continuity to delta = 1 (value 1).  Used by the
// quadrature, which integrates up to the right endpoint.
double coef_extended(double delta, double a) {
    const double L = -std::log(delta);
    if (L == 0.0) return 1.0;
    return L / (a * std::log1p(L / a));
}

}  // namespace

void SupLordParams::validate() const {
    if (!(eps_star > 0.0 && eps_star < 1.0))
        throw std::invalid_argument("SupLordParams: eps_star must lie in (0,1)");
    if (!(delta_star > 0.0 && delta_star < 1.0))
        throw std::invalid_argument("SupLordParams: delta_star must lie in (0,1)");
    if (r_star < 1)
        throw std::invalid_argument("SupLordParams: r_star must be a positive integer");
    if (!(a > 0.0))
        throw std::invalid_argument("SupLordParams: a must be positive");
}

double coef(double delta, double a) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::domain_error("coef: delta must lie strictly inside (0,1)");
    if (!(a > 0.0))
        throw std::domain_error("coef: a must be positive");
    const double L = -std::log(delta);
    return L / (a * std::log1p(L / a));
}

double c_a(double a, double abs_tol) {
    if (!(a > 0.0)) throw std::domain_error("c_a: a must be positive");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("c_a: tolerance must be positive");

    // The integrand grows like log(1/d)/log log(1/d) as d -> 0: integrable,
    // but the interval near 0 is better handled analytically.  Pick d0 so the
    // bracketed tail contribution is below abs_tol/10, then take the bracket
    // midpoint as the tail estimate.
    auto tail_upper = [a](double d0) {
        const double L0 = -std::log(d0);
        return d0 * (1.0 + L0) / (a * std::log1p(L0 / a));
    };
    double d0 = 1e-4;
    while (tail_upper(d0) >= abs_tol / 10.0) d0 *= 0.5;
    const double tail_lower = d0 * coef_extended(d0, a);
    const double tail = 0.5 * (tail_lower + tail_upper(d0));

    const double body = integrate([a](double d) { return coef_extended(d, a); },
                                  d0, 1.0, 0.8 * abs_tol);
    return body + tail;
}

double canonical_a(double eps_star, double delta_star, int r_star) {
    SupLordParams probe{eps_star, delta_star, r_star, 1.0};
    probe.validate();
    const double L = -std::log(delta_star);
    const double rhs = L / (eps_star * static_cast<double>(r_star));
    auto f = [L, rhs](double x) { return std::log1p(L / x) - L / (x + L) - rhs; };

    // f decreases from +inf (x -> 0) to 0 (x -> inf), so a bracket always exists.
    double lo = 1e-12;
    while (f(lo) <= 0.0) lo *= 0.5;
    double hi = 1.0;
    while (f(hi) > 0.0) hi *= 2.0;
    return bisect(f, lo, hi, tol::root);
}

double phase1_budget(const SupLordParams& p) {
    p.validate();
    return p.eps_star * static_cast<double>(p.r_star) / coef(p.delta_star, p.a) - p.a;
}

double phase2_bound(const SupLordParams& p) {
    p.validate();
    return p.eps_star / coef(p.delta_star, p.a);
}

double BoostSequence::boost_for_rejection(int r) const {
    if (r < 1) throw std::invalid_argument("boost_for_rejection: rejection count starts at 1");
    const std::size_t idx = static_cast<std::size_t>(r) - 1;
    return idx < phase1.size() ? phase1[idx] : phase2;
}

double BoostSequence::beta1() const { return boost_for_rejection(1); }

BoostSequence suplord_default_boosts(const SupLordParams& p) {
    const double w0 = phase1_budget(p);
    if (w0 < 0.0) {
        std::ostringstream msg;
        msg << "suplord_default_boosts: infeasible parameters, "
            << "eps*r*/C_a(1/delta*) - a = " << fmt6(w0)
            << " < 0; increase r*";
        throw std::invalid_argument(msg.str());
    }
    BoostSequence seq;
    seq.tag = BoostTag::suplord_default;
    const double slot = w0 / static_cast<double>(p.r_star);
    seq.beta0 = slot;
    seq.phase1.assign(static_cast<std::size_t>(p.r_star) - 1, slot);
    seq.phase2 = phase2_bound(p);
    return seq;
}

BoostSequence mfdr_safe_boosts(const SupLordParams& p) {
    const double w0 = phase1_budget(p);
    if (w0 < 0.0) {
        std::ostringstream msg;
        msg << "mfdr_safe_boosts: infeasible parameters, "
            << "eps*r*/C_a(1/delta*) - a = " << fmt6(w0)
            << " < 0; increase r*";
        throw std::invalid_argument(msg.str());
    }
    const double r = static_cast<double>(p.r_star);
    const double budget = w0 + p.a;  // eps*r*/C_a(1/delta*)
    BoostSequence seq;
    seq.tag = BoostTag::mfdr_safe;
    // Halve the first two slots so beta0 + beta1 stays below the
    // per-rejection bound; the indicator drops the offset when r* = 1.
    seq.beta0 = w0 / (2.0 * r);
    const double beta1 = (budget - (p.r_star > 1 ? p.a : 0.0)) / (2.0 * r);
    seq.phase1.push_back(beta1);
    for (int i = 2; i <= p.r_star - 1; ++i) seq.phase1.push_back(w0 / r);
    seq.phase2 = phase2_bound(p);
    return seq;
}

BoostSequence lord_boosts(double level, double beta0_fraction) {
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("lord_boosts: level must lie in (0,1)");
    if (!(beta0_fraction > 0.0 && beta0_fraction < 1.0))
        throw std::invalid_argument("lord_boosts: beta0_fraction must lie in (0,1)");
    BoostSequence seq;
    seq.tag = BoostTag::lord;
    seq.beta0 = beta0_fraction * level;
    seq.phase1.push_back((1.0 - beta0_fraction) * level);
    seq.phase2 = level;
    return seq;
}

BoostSequence alpha_spending_boosts(double level) {
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("alpha_spending_boosts: level must lie in (0,1)");
    BoostSequence seq;
    seq.tag = BoostTag::alpha_spending;
    seq.beta0 = level;
    seq.phase2 = 0.0;
    return seq;
}

ValidationResult validate_boosts(const BoostSequence& seq, const SupLordParams& p) {
    ValidationResult result;
    const double w0 = phase1_budget(p);
    const double b = phase2_bound(p);

    if (seq.beta0 < 0.0)
        result.violations.push_back({"nonnegative beta0", 0.0, seq.beta0, -seq.beta0});
    for (std::size_t i = 0; i < seq.phase1.size(); ++i) {
        if (seq.phase1[i] < 0.0)
            result.violations.push_back(
                {"nonnegative boost " + std::to_string(i + 1), 0.0, seq.phase1[i], -seq.phase1[i]});
    }
    if (seq.phase2 < 0.0)
        result.violations.push_back({"nonnegative phase-2 boost", 0.0, seq.phase2, -seq.phase2});

    KahanAccumulator phase1_sum;
    phase1_sum.add(seq.beta0);
    for (int r = 1; r <= p.r_star - 1; ++r) phase1_sum.add(seq.boost_for_rejection(r));
    const double v1 = phase1_sum.value();
    if (v1 > w0 + tol::validation)
        result.violations.push_back(
            {"phase-1 sum: beta0 + first r*-1 boosts <= eps*r*/C_a(1/delta*) - a", w0, v1, v1 - w0});

    double worst = seq.phase2;
    for (std::size_t i = static_cast<std::size_t>(p.r_star) - 1; i < seq.phase1.size(); ++i)
        worst = std::max(worst, seq.phase1[i]);
    if (worst > b + tol::validation)
        result.violations.push_back(
            {"phase-2 size: boosts from rejection r* onward <= eps*/C_a(1/delta*)", b, worst, worst - b});
    return result;
}

std::string ValidationResult::message() const {
    if (ok()) return "ok";
    std::ostringstream out;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) out << "; ";
        const auto& v = violations[i];
        out << "violated " << v.condition << " (value " << fmt6(v.value)
            << " exceeds bound " << fmt6(v.bound) << " by " << fmt6(v.excess) << ")";
    }
    return out.str();
}

GuaranteeSummary guarantee_summary(const SupLordParams& p, const BoostSequence& seq) {
    const ValidationResult check = validate_boosts(seq, p);
    if (!check.ok())
        throw std::invalid_argument("guarantee_summary: " + check.message());

    GuaranteeSummary g;
    g.params = p;
    g.coef_star = coef(p.delta_star, p.a);
    g.c_value = c_a(p.a);
    g.supfd_bound = g.c_value * p.eps_star / g.coef_star;
    g.fdr_stopping_bound = g.supfd_bound;
    g.fixed_time_fdr_bound = p.eps_star / g.coef_star;
    g.mfdr_bound = g.fixed_time_fdr_bound;
    g.beta0_plus_beta1 = seq.beta0 + seq.beta1();
    g.fixed_time_bounds_active = g.beta0_plus_beta1 <= phase2_bound(p) + tol::validation;
    return g;
}

double GuaranteeSummary::fdx_epsilon_at(double delta) const {
    return params.eps_star * coef(delta, params.a) / coef_star;
}

std::string GuaranteeSummary::to_text() const {
    std::ostringstream out;
    out << "fdx eps=" << fmt6(params.eps_star) << " delta=" << fmt6(params.delta_star)
        << " from_rejection=" << params.r_star << "\n";
    out << "a " << fmt6(params.a) << "\n";
    out << "coef " << fmt6(coef_star) << "\n";
    out << "c_a " << fmt6(c_value) << "\n";
    out << "supfd_bound " << fmt6(supfd_bound) << "\n";
    out << "fdr_stopping_bound " << fmt6(fdr_stopping_bound) << "\n";
    out << "fixed_time_fdr_bound " << fmt6(fixed_time_fdr_bound)
        << (fixed_time_bounds_active ? " active" : " inactive") << "\n";
    out << "mfdr_bound " << fmt6(mfdr_bound)
        << (fixed_time_bounds_active ? " active" : " inactive") << "\n";
    out << "beta0_plus_beta1 " << fmt6(beta0_plus_beta1) << "\n";
    return out.str();
}

std::string GuaranteeSummary::to_csv() const {
    std::ostringstream out;
    out << "eps,delta,from_rejection,a,coef,c_a,supfd_bound,fdr_stopping_bound,"
           "fixed_time_fdr_bound,mfdr_bound,fixed_time_bounds_active,beta0_plus_beta1\n";
    out << fmt17(params.eps_star) << ',' << fmt17(params.delta_star) << ','
        << params.r_star << ',' << fmt17(params.a) << ',' << fmt17(coef_star) << ','
        << fmt17(c_value) << ',' << fmt17(supfd_bound) << ',' << fmt17(fdr_stopping_bound)
        << ',' << fmt17(fixed_time_fdr_bound) << ',' << fmt17(mfdr_bound) << ','
        << (fixed_time_bounds_active ? 1 : 0) << ',' << fmt17(beta0_plus_beta1) << "\n";
    return out.str();
}

}  // namespace suplord
