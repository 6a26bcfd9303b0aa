#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "suplord/boosts.hpp"

using namespace suplord;

namespace {
const SupLordParams defaults{0.15, 0.05, 30, 1.0};
}

TEST_CASE("coef matches direct evaluation") {
    // ln 20 / ln(1 + ln 20), evaluated independently of the implementation path
    const double expected = std::log(20.0) / std::log(1.0 + std::log(20.0));
    CHECK(std::abs(coef(0.05, 1.0) - expected) <= 1e-12);
    CHECK(coef(0.05, 1.0) == doctest::Approx(2.1626293571160795).epsilon(1e-12));
    CHECK(coef(0.5, 1.0) == doctest::Approx(1.3162962682905424).epsilon(1e-12));
}

TEST_CASE("coef approaches the unit-mass limit as delta -> 1") {
    const double d = 1.0 - 1e-9;
    CHECK(d * coef(d, 1.0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("coef domain errors") {
    CHECK_THROWS_AS(coef(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(coef(1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(coef(-0.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(coef(0.5, 0.0), std::domain_error);
}

TEST_CASE("coef monotonicity in delta and a") {
    double prev = coef(0.001, 1.0);
    for (double d = 0.01; d < 0.99; d += 0.01) {
        const double c = coef(d, 1.0);
        CHECK(c < prev);
        prev = c;
    }
    prev = coef(0.05, 0.05);
    for (double a = 0.1; a <= 8.0; a += 0.05) {
        const double c = coef(0.05, a);
        CHECK(c < prev);
        prev = c;
    }
}

TEST_CASE("c_a at a=1 lands in the pinned bracket") {
    const double c1 = c_a(1.0);
    CHECK(c1 >= 1.418);
    CHECK(c1 <= 1.420);
    CHECK(c1 <= 1.42);
    CHECK(c1 == doctest::Approx(1.41877139559).epsilon(1e-4));
}

TEST_CASE("c_a self-consistency under tolerance tightening") {
    CHECK(std::abs(c_a(1.0, 1e-4) - c_a(1.0, 1e-5)) <= 1e-4);
    CHECK(std::abs(c_a(0.5, 1e-4) - c_a(0.5, 1e-5)) <= 1e-4);
    CHECK(c_a(0.5) == doctest::Approx(1.76769800207).epsilon(1e-4));
    CHECK(c_a(2.0) == doctest::Approx(1.22370996835).epsilon(1e-4));
}

TEST_CASE("canonical a solves the budget-maximizing condition") {
    const double a = canonical_a(0.15, 0.05, 20);
    CHECK(a == doctest::Approx(0.565793817258).epsilon(1e-8));

    // Stationarity bracket around the root.
    const double L = -std::log(0.05);
    auto lhs = [&](double x) { return std::log1p(L / x) - L / (x + L); };
    const double rhs = L / (0.15 * 20);
    CHECK(lhs(0.55) > rhs);
    CHECK(rhs > lhs(0.57));
}

TEST_CASE("canonical a maximizes the phase-1 budget") {
    auto w0 = [](double a) {
        return 0.15 * 20 / coef(0.05, a) - a;
    };
    const double a_star = canonical_a(0.15, 0.05, 20);
    CHECK(w0(a_star) >= w0(a_star + 0.01));
    CHECK(w0(a_star) >= w0(a_star - 0.01));

    // 1000-point grid argmax lands within one grid cell of the root.
    const double hi = 10.0 * a_star;
    const int cells = 1000;
    double best = -1e300;
    int best_i = 0;
    for (int i = 1; i <= cells; ++i) {
        const double a = hi * i / cells;
        if (w0(a) > best) {
            best = w0(a);
            best_i = i;
        }
    }
    CHECK(std::abs(hi * best_i / cells - a_star) <= hi / cells + 1e-12);
}

TEST_CASE("phase-2 earning bound is increasing in a") {
    double prev = 0.0;
    for (double a = 0.05; a <= 20.0; a += 0.05) {
        const double b = 0.15 / coef(0.05, a);
        CHECK(b > prev);
        prev = b;
    }
    CHECK(prev < 0.15);  // approaches eps* from below
}

TEST_CASE("a above canonical trades budget for earning along a frontier") {
    const double a_star = canonical_a(0.15, 0.05, 20);
    double prev_b = 0.15 / coef(0.05, a_star);
    double prev_w0 = 0.15 * 20 / coef(0.05, a_star) - a_star;
    for (double a = a_star + 0.1; a <= a_star + 3.0; a += 0.1) {
        const double b = 0.15 / coef(0.05, a);
        const double w0 = 0.15 * 20 / coef(0.05, a) - a;
        CHECK(b > prev_b);
        CHECK(w0 < prev_w0);
        prev_b = b;
        prev_w0 = w0;
    }
}

TEST_CASE("default boost sequence at the experiment defaults") {
    const BoostSequence seq = suplord_default_boosts(defaults);
    CHECK(seq.beta0 == doctest::Approx(0.036026679516963).epsilon(1e-12));
    CHECK(seq.phase1.size() == 29);
    for (double b : seq.phase1) CHECK(b == seq.beta0);
    CHECK(seq.phase2 == doctest::Approx(0.069360012850297).epsilon(1e-12));
    CHECK(seq.boost_for_rejection(29) == seq.beta0);
    CHECK(seq.boost_for_rejection(30) == seq.phase2);
    CHECK(seq.boost_for_rejection(1000) == seq.phase2);
    CHECK(validate_boosts(seq, defaults).ok());
}

TEST_CASE("default boosts saturate both conditions") {
    const BoostSequence seq = suplord_default_boosts(defaults);
    double sum = seq.beta0;
    for (double b : seq.phase1) sum += b;
    CHECK(std::abs(sum - phase1_budget(defaults)) <= 1e-12);
    CHECK(std::abs(seq.phase2 - phase2_bound(defaults)) <= 1e-12);
}

TEST_CASE("infeasible parameters fail loudly with the r* hint") {
    const SupLordParams p{0.15, 0.05, 14, 1.0};
    CHECK(phase1_budget(p) == doctest::Approx(-0.02895982).epsilon(1e-5));
    CHECK_THROWS_WITH_AS(suplord_default_boosts(p),
                         doctest::Contains("increase r*"), std::invalid_argument);
    CHECK_THROWS_AS(mfdr_safe_boosts(p), std::invalid_argument);
}

TEST_CASE("validate_boosts reports constructed violations") {
    BoostSequence seq = suplord_default_boosts(defaults);
    seq.phase2 = phase2_bound(defaults) + 0.01;
    const ValidationResult r1 = validate_boosts(seq, defaults);
    REQUIRE_FALSE(r1.ok());
    CHECK(r1.violations.size() == 1);
    CHECK(r1.violations[0].condition.find("phase-2") != std::string::npos);
    CHECK(r1.violations[0].excess == doctest::Approx(0.01).epsilon(1e-9));

    seq = suplord_default_boosts(defaults);
    seq.beta0 += 1e-6;
    const ValidationResult r2 = validate_boosts(seq, defaults);
    REQUIRE_FALSE(r2.ok());
    CHECK(r2.violations[0].condition.find("phase-1") != std::string::npos);
    CHECK(r2.violations[0].excess == doctest::Approx(1e-6).epsilon(1e-3));

    seq = suplord_default_boosts(defaults);
    seq.phase1[3] = -0.1;
    CHECK_FALSE(validate_boosts(seq, defaults).ok());
}

TEST_CASE("mfdr-safe boosts halve the first two slots") {
    const BoostSequence seq = mfdr_safe_boosts(defaults);
    const double w0 = phase1_budget(defaults);
    CHECK(seq.beta0 == doctest::Approx(0.0180133397585).epsilon(1e-12));
    CHECK(seq.beta1() == doctest::Approx(w0 / 60.0).epsilon(1e-12));
    CHECK(seq.beta0 + seq.beta1() == doctest::Approx(0.036026679516963).epsilon(1e-12));
    CHECK(seq.beta0 + seq.beta1() <= phase2_bound(defaults));
    for (std::size_t i = 1; i < seq.phase1.size(); ++i)
        CHECK(seq.phase1[i] == doctest::Approx(w0 / 30.0).epsilon(1e-12));
    CHECK(seq.phase2 == doctest::Approx(phase2_bound(defaults)).epsilon(1e-12));
    CHECK(validate_boosts(seq, defaults).ok());
}

TEST_CASE("mfdr-safe boosts drop the offset indicator at r* = 1") {
    // r* = 1 needs a small offset to be feasible at all.
    const SupLordParams p{0.9, 0.5, 1, 0.1};
    const double w0 = phase1_budget(p);
    REQUIRE(w0 >= 0.0);
    const BoostSequence seq = mfdr_safe_boosts(p);
    CHECK(seq.beta0 == doctest::Approx(w0 / 2.0).epsilon(1e-12));
    // With the indicator gone the first boost keeps the offset term.
    CHECK(seq.beta1() == doctest::Approx((w0 + p.a) / 2.0).epsilon(1e-12));
    CHECK(validate_boosts(seq, p).ok());
}

TEST_CASE("lord boosts reproduce the standard split") {
    const BoostSequence seq = lord_boosts(0.05);
    CHECK(seq.beta0 == doctest::Approx(0.005).epsilon(1e-15));
    CHECK(seq.boost_for_rejection(1) == doctest::Approx(0.045).epsilon(1e-15));
    CHECK(seq.boost_for_rejection(2) == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(seq.boost_for_rejection(7) == doctest::Approx(0.05).epsilon(1e-15));
}

TEST_CASE("alpha-spending is the all-zero boost sequence") {
    const BoostSequence seq = alpha_spending_boosts(0.05);
    CHECK(seq.beta0 == 0.05);
    CHECK(seq.boost_for_rejection(1) == 0.0);
    CHECK(seq.boost_for_rejection(100) == 0.0);
}

TEST_CASE("guarantee summary at the defaults") {
    const BoostSequence seq = suplord_default_boosts(defaults);
    const GuaranteeSummary g = guarantee_summary(defaults, seq);
    CHECK(g.supfd_bound == doctest::Approx(0.09840600223).epsilon(1e-4));
    CHECK(g.supfd_bound == doctest::Approx(g.c_value * g.mfdr_bound).epsilon(1e-15));
    CHECK(g.fdr_stopping_bound == g.supfd_bound);
    CHECK(g.fixed_time_fdr_bound == doctest::Approx(0.069360012850297).epsilon(1e-12));
    CHECK(g.mfdr_bound == g.fixed_time_fdr_bound);
    // beta0 + beta1 = 0.07205 exceeds the per-rejection bound, so the
    // fixed-time bounds stay inactive for the default construction...
    CHECK_FALSE(g.fixed_time_bounds_active);
    // ...and become active for the mfdr-safe construction.
    CHECK(guarantee_summary(defaults, mfdr_safe_boosts(defaults)).fixed_time_bounds_active);
}

TEST_CASE("fdx family pins eps* at delta* exactly") {
    const GuaranteeSummary g = guarantee_summary(defaults, suplord_default_boosts(defaults));
    CHECK(g.fdx_epsilon_at(defaults.delta_star) == defaults.eps_star);
    CHECK(g.fdx_epsilon_at(0.01) > defaults.eps_star);
    CHECK(g.fdx_epsilon_at(0.5) < defaults.eps_star);
}

TEST_CASE("guarantee summary rejects an invalid sequence") {
    BoostSequence seq = suplord_default_boosts(defaults);
    seq.phase2 += 0.02;
    CHECK_THROWS_AS(guarantee_summary(defaults, seq), std::invalid_argument);
}

TEST_CASE("summary serializations carry the headline triple") {
    const GuaranteeSummary g = guarantee_summary(defaults, suplord_default_boosts(defaults));
    const std::string text = g.to_text();
    CHECK(text.find("fdx eps=0.15 delta=0.05 from_rejection=30") != std::string::npos);
    const std::string csv = g.to_csv();
    CHECK(csv.find("supfd_bound") != std::string::npos);
    // 17-digit rendering of 0.15
    CHECK(csv.find("0.14999999999999999") != std::string::npos);
}

TEST_CASE("params validation") {
    CHECK_THROWS_AS((SupLordParams{0.0, 0.05, 30, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((SupLordParams{0.15, 1.0, 30, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((SupLordParams{0.15, 0.05, 0, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((SupLordParams{0.15, 0.05, 30, 0.0}).validate(), std::invalid_argument);
}
