#pragma once

#include <optional>
#include <string>
#include <vector>

#include "suplord/numeric.hpp"

namespace suplord {

/// User-facing control triple for SupLORD plus the estimator offset a.
/// eps_star bounds the false discovery proportion, delta_star the
/// probability of ever exceeding it once r_star rejections have been made.
struct SupLordParams {
    double eps_star = 0.15;
    double delta_star = 0.05;
    int r_star = 30;
    double a = 1.0;

    void validate() const;  // throws std::invalid_argument on out-of-range fields
};

/// Bound coefficient C_a(1/delta) = log(1/delta) / (a log(1 + log(1/delta)/a)).
/// Scales the running alpha-sum estimator into a time-uniform FDP bound.
double coef(double delta, double a = 1.0);

/// Integral of C_a(1/delta) over delta in (0,1).  For a = 1 this is the
/// constant (~1.419) relating the FDX family to an expected-supremum bound.
double c_a(double a, double abs_tol = tol::quadrature);

/// Offset maximizing the phase-1 budget w0(a) = eps*r*/C_a(1/delta*) - a.
/// Unique positive root of log(1 + L/a) - L/(a+L) = L/(eps* r*), L = log(1/delta*).
double canonical_a(double eps_star, double delta_star, int r_star);

/// Upper bound on beta0 + the first r*-1 rejection boosts.
double phase1_budget(const SupLordParams& p);

/// Upper bound on each boost from rejection r* onward.
double phase2_bound(const SupLordParams& p);

enum class BoostTag { custom, alpha_spending, lord, suplord_default, mfdr_safe };

/// Per-rejection wealth rewards.  Rejection r earns phase1[r-1] while
/// r <= phase1.size(), and phase2 afterwards.
struct BoostSequence {
    double beta0 = 0.0;
    std::vector<double> phase1;
    double phase2 = 0.0;
    BoostTag tag = BoostTag::custom;

    double boost_for_rejection(int r) const;
    double beta1() const;  // boost earned by the first rejection
};

BoostSequence suplord_default_boosts(const SupLordParams& p);
BoostSequence mfdr_safe_boosts(const SupLordParams& p);
BoostSequence lord_boosts(double level, double beta0_fraction = 0.1);
BoostSequence alpha_spending_boosts(double level);

struct ConditionReport {
    std::string condition;
    double bound = 0.0;
    double value = 0.0;
    double excess = 0.0;
};

struct ValidationResult {
    std::vector<ConditionReport> violations;
    bool ok() const { return violations.empty(); }
    std::string message() const;
};

/// Checks the two SupLORD boost conditions to additive tolerance
/// tol::validation: the phase-1 sum against w0 and every later boost
/// against the per-rejection bound.
ValidationResult validate_boosts(const BoostSequence& seq, const SupLordParams& p);

struct GuaranteeSummary {
    SupLordParams params;
    double coef_star = 0.0;          // C_a(1/delta*)
    double c_value = 0.0;            // c_a
    double supfd_bound = 0.0;        // c_a eps* / C_a(1/delta*)
    double fdr_stopping_bound = 0.0; // equals supfd_bound
    double fixed_time_fdr_bound = 0.0;
    double mfdr_bound = 0.0;
    bool fixed_time_bounds_active = false;  // requires beta0 + beta1 <= phase2 bound
    double beta0_plus_beta1 = 0.0;

    /// FDX exceedance threshold controlled at level delta:
    /// eps* C_a(1/delta) / C_a(1/delta*).
    double fdx_epsilon_at(double delta) const;

    std::string to_text() const;  // flat key-value record
    std::string to_csv() const;   // header + one row, 17 significant digits
};

GuaranteeSummary guarantee_summary(const SupLordParams& p, const BoostSequence& seq);

}  // namespace suplord
