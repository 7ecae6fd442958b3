#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "autocat/model.hpp"
#include "oracles.hpp"

using namespace autocat::model;
using doctest::Approx;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_SUITE("model") {

TEST_CASE("reaction spot values") {
    CHECK(reaction_derivative({1.0, 2.0, 0.0}, 1.0) == Approx(-1.0));
    CHECK(reaction_derivative({0.5, 0.25, 0.5}, 1.0) == Approx(-1.125));
    for (double s : {0.1, 0.4, 2.0}) CHECK(reaction_derivative({1.0, 1.0, 0.3}, s) == Approx(1.0 - 2.0 * s - 0.3));
    CHECK(reaction_primitive({1.0, 1.0, 0.0}, 1.0) == Approx(1.0 / 6.0));
    CHECK(reaction_primitive({0.5, 0.25, 0.3}, 0.0) == 0.0);
    CHECK(reaction({0.5, 0.25, -2.0}, 0.0) == 0.0);
    CHECK(reaction({0.3, 0.1, 5.0}, 0.0) == 0.0);
}

TEST_CASE("reaction rejects arguments outside its domain") {
    CHECK_THROWS(reaction({0.5, 0.25, 0.0}, -0.1));
    CHECK_THROWS(reaction_primitive({0.5, 0.25, 0.0}, -0.1));
    CHECK_THROWS(reaction_derivative({0.5, 0.25, 0.0}, 0.0));
}

TEST_CASE("primitive differentiates to the reaction term") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> um(0.05, 1.0), un(0.05, 3.0), ul(-3.0, 3.0), us(0.05, 3.0);
    for (int k = 0; k < 100; ++k) {
        const ProblemParams p(um(rng), un(rng), ul(rng));
        const double s = us(rng);
        auto fd = [&](double h) { return (reaction_primitive(p, s + h) - reaction_primitive(p, s - h)) / (2 * h); };
        const double e1 = std::abs(fd(1e-3 * s) - reaction(p, s));
        const double e2 = std::abs(fd(5e-4 * s) - reaction(p, s));
        CHECK(e1 <= 1e-5 * (1.0 + std::abs(reaction(p, s))));
        if (e1 > 1e-11) CHECK(e1 / e2 == Approx(4.0).epsilon(0.05));
        const double h = 1e-5 * s;
        CHECK((reaction(p, s + h) - reaction(p, s - h)) / (2 * h) ==
              Approx(reaction_derivative(p, s)).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("classify spot values") {
    CHECK(classify(0.5, 0.25).tag == Case::C1);
    CHECK(classify(0.5, 1.2).tag == Case::C3);
    CHECK(classify(1.0, 1.5).tag == Case::C6);
    CHECK(classify(1.0, 3.0).tag == Case::C7);
    CHECK(classify(0.5, 0.5).subcase == Subcase::n_equals_m);
    CHECK(classify(0.5, 0.75).tag == Case::C2);
    CHECK(classify(0.5, 1.5).subcase == Subcase::n_equals_m_plus_1);
    CHECK(classify(0.5, 2.0).tag == Case::C4);
    CHECK(classify(1.0, 0.5).tag == Case::C5);
    CHECK(classify(1.0, 2.0).subcase == Subcase::n_equals_2);
    CHECK_THROWS(classify(1.5, 1.0));
    CHECK_THROWS(classify(0.0, 1.0));
    CHECK_THROWS(classify(0.5, -1.0));
}

TEST_CASE("classify is a partition of the admissible exponents") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> um(1e-3, 1.0), un(1e-3, 4.0);
    std::bernoulli_distribution m_one(0.3);
    for (int k = 0; k < 10000; ++k) {
        const double m = m_one(rng) ? 1.0 : um(rng);
        const double n = un(rng);
        const int matches = (m < 1 && n < m) + (m < 1 && m <= n && n <= 1) + (m < 1 && 1 < n && n < m + 1) +
                            (m < 1 && n >= m + 1) + (m == 1 && n <= 1) + (m == 1 && 1 < n && n <= 2) +
                            (m == 1 && n > 2);
        REQUIRE(matches == 1);
        const Case c = classify(m, n).tag;
        Case expect = Case::C7;
        if (m < 1 && n < m) expect = Case::C1;
        else if (m < 1 && n <= 1) expect = Case::C2;
        else if (m < 1 && n < m + 1) expect = Case::C3;
        else if (m < 1) expect = Case::C4;
        else if (n <= 1) expect = Case::C5;
        else if (n <= 2) expect = Case::C6;
        CHECK(c == expect);
    }
}

TEST_CASE("uniqueness certificate") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> um(0.01, 1.0), un(0.01, 4.0);
    for (int k = 0; k < 500; ++k) CHECK(uniqueness_certificate({um(rng), un(rng), 0.0}, 10.0).holds);
    CHECK_FALSE(uniqueness_certificate({0.5, 1.5, -5.0}, 10.0).holds);
    const ProblemParams p(0.5, 0.75, 0.4);
    CHECK(uniqueness_certificate(p, *apriori_bound(p)).holds);
    CHECK_THROWS(uniqueness_certificate(p, 0.0));
}

TEST_CASE("a-priori bound") {
    CHECK(*apriori_bound({0.5, 0.25, 0.0}) == 1.0);
    CHECK(*apriori_bound({0.25, 0.5, 4.0}) == Approx(0.00390625).epsilon(1e-12));
    CHECK(*apriori_bound({0.5, 1.5, -0.5}) == Approx(2.0).epsilon(1e-10));
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> um(0.05, 1.0), un(0.05, 3.0), ul(-4.0, 4.0), ut(1e-6, 10.0);
    int bounded = 0;
    for (int k = 0; k < 2000; ++k) {
        const ProblemParams p(um(rng), un(rng), ul(rng));
        const auto M = apriori_bound(p);
        if (!M || *M > 1e100 || *M < 1e-100) continue;
        ++bounded;
        const double s = *M * (1.0 + ut(rng));
        CHECK(reaction(p, s) < 0.0);
    }
    CHECK(bounded > 500);
}

TEST_CASE("lambda_c and the Case I fold bound") {
    // frozen from the scalar extremization oracle
    CHECK(lambda_c(0.5, 0.25) == Approx(0.5065571237677284).epsilon(1e-12));
    CHECK(threshold_fold_caseI(0.5, 0.25) == Approx(0.5349922439811376).epsilon(1e-12));
    CHECK(threshold_fold_caseI(0.9, 0.1) == Approx(0.29038988210485767).epsilon(1e-12));
    CHECK(std::abs(lambda_c(0.5, 0.25) - 0.50651) < 1e-4);
    CHECK(std::abs(threshold_fold_caseI(0.5, 0.25) - 0.53494) < 1e-4);
    CHECK(rel(lambda_c(0.5, 0.25), oracle::lambda_c(0.5, 0.25)) < 1e-10);
    CHECK_THROWS(lambda_c(0.25, 0.5));
    CHECK_THROWS(threshold_fold_caseI(0.5, 0.5));
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> u(1e-3, 1.0 - 1e-3);
    for (int k = 0; k < 1000; ++k) {
        double m = u(rng), n = u(rng);
        if (n > m) std::swap(m, n);
        if (m - n < 1e-6) continue;
        CHECK(threshold_fold_caseI(m, n) < 1.0);
        CHECK(lambda_c(m, n) < 1.0);
        CHECK(lambda_c(m, n) < threshold_fold_caseI(m, n));
    }
}

TEST_CASE("thresholds match the scalar oracles on random draws") {
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        double m = 0.02 + 0.96 * u(rng), n = 0.02 + 0.96 * u(rng);
        if (n > m) std::swap(m, n);
        if (m - n > 1e-3) {
            CHECK(rel(threshold_fold_caseI(m, n), oracle::fold_caseI(m, n)) < 1e-8);
            CHECK(rel(lambda_c(m, n), oracle::lambda_c(m, n)) < 1e-8);
        }
        const double l1 = 0.05 + 20.0 * u(rng);
        CHECK(rel(threshold_caseIV_nonexistence(m, l1), oracle::caseIV_nonexistence(m, l1)) < 1e-8);
        const double nv = 0.02 + 0.96 * u(rng), lv = 0.02 + 0.96 * u(rng);
        CHECK(rel(threshold_caseV(nv, lv), oracle::caseV(nv, lv)) < 1e-8);
        const double n6 = 1.02 + 0.96 * u(rng), l6 = 1.02 + 20.0 * u(rng);
        CHECK(rel(threshold_caseVI(n6, l6), oracle::caseVI(n6, l6)) < 1e-8);
        const double n7 = 2.05 + 3.0 * u(rng), l7 = 0.02 + 0.96 * u(rng);
        CHECK(rel(threshold_caseVII(n7, l7), oracle::caseVII(n7, l7)) < 1e-8);
    }
}

TEST_CASE("Case Ib admissible exponents") {
    CHECK(caseIb_admissible(0.5, 3).empty());
    CHECK(caseIb_bound(0.5, 3) == Approx(-0.0625));
    const Interval i = caseIb_admissible(0.8, 3);
    CHECK(i.lo == 0.0);
    CHECK(i.hi == Approx(0.59));
    for (double m = 0.05; m < 1.0; m += 0.05) CHECK(caseIb_admissible(m, 9).empty());
}

TEST_CASE("Case IV nonexistence threshold") {
    CHECK(threshold_caseIV_nonexistence(0.5, 1.0) == Approx(-1.25));
    CHECK(threshold_caseIV_nonexistence(0.5, 4.0) == Approx(-5.0));
    for (double m = 0.05; m < 1.0; m += 0.1)
        for (double l1 : {0.5, 1.0, 9.87}) CHECK(threshold_caseIV_nonexistence(m, l1) < -1.0);
    CHECK_THROWS(threshold_caseIV_nonexistence(1.0, 1.0));
}

TEST_CASE("Case III window") {
    const CaseIIIWindow w = caseIII_window(0.5, 1.2, 1.0, 1.0, 1.0);
    CHECK(w.lambda_under < 0.0);
    CHECK(w.lambda_over < 0.0);
    CHECK(rel(w.lambda_under, oracle::caseIII_under(0.5, 1.2, 1.0, 1.0)) < 1e-8);
    CHECK(rel(w.lambda_over, oracle::caseIII_over(0.5, 1.2, 1.0, 1.0)) < 1e-8);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const double m = 0.1 + 0.8 * u(rng);
        const double n = 1.0 + m * (0.05 + 0.9 * u(rng));
        const double A1 = 0.1 + 2 * u(rng), A2 = 0.1 + 2 * u(rng), A3 = 0.1 + 2 * u(rng);
        const CaseIIIWindow a = caseIII_window(m, n, A1, A2, A3);
        const CaseIIIWindow b = caseIII_window(m, n, 0.9 * A1, A2, A3);
        CHECK(a.lambda_under < 0.0);
        CHECK(a.lambda_over < 0.0);
        CHECK(b.lambda_under < a.lambda_under);
        CHECK(a.lambda_ordered == (a.lambda_under < a.lambda_over));
        CHECK(rel(a.lambda_under, oracle::caseIII_under(m, n, A1, A2)) < 1e-8);
        CHECK(rel(a.lambda_over, oracle::caseIII_over(m, n, A2, A3)) < 1e-8);
    }
    CHECK_THROWS(caseIII_window(0.5, 0.9, 1, 1, 1));
    CHECK_THROWS(caseIII_window(0.5, 1.2, 0, 1, 1));
}

TEST_CASE("omega size bound") {
    const double m = 0.5, n = 1.2, b = m + 1 - n;
    const double ct = std::exp(std::log((n - 1) / 2) / (m * (1 - m)) + std::log((1 - m) / m) / (n - 1) +
                               b * std::log(b) / (m * (n - 1)) - (n - m) * std::log(n - m) / ((1 - m) * (n - 1)));
    CHECK(rel(caseIII_C_tilde(m, n), ct) < 1e-12);
    CHECK(unit_ball_volume(1) == Approx(2.0));
    CHECK(unit_ball_volume(2) == Approx(std::numbers::pi));
    CHECK(unit_ball_volume(3) == Approx(4.0 * std::numbers::pi / 3.0));
    CHECK(omega_size_bound(m, n, 1, 0.3, 0.2) > 0.0);
    CHECK(omega_size_bound(0.3, 1.1, 3, 1.0, 1.0) > 0.0);
}

TEST_CASE("m = 1 thresholds") {
    CHECK(threshold_caseV(0.5, 0.5) == Approx(0.13608276348795437).epsilon(1e-12));
    CHECK(threshold_caseV(0.5, 1.0 - 1e-12) < 1e-15);
    double prev = INFINITY;
    for (double l1 = 0.05; l1 < 1.0; l1 += 0.05) {
        const double t = threshold_caseV(0.3, l1);
        CHECK(t < prev);
        prev = t;
    }
    CHECK_THROWS(threshold_caseV(0.5, 1.0));
    CHECK(threshold_caseVI(1.5, 2.0) == Approx(-2.0));
    CHECK(threshold_caseVI(1.5, 1.0 + 1e-12) < 0.0);
    CHECK(threshold_caseVI(1.5, 1.0 + 1e-12) > -1e-5);
    CHECK_THROWS(threshold_caseVI(2.5, 2.0));
    CHECK(threshold_caseVII(3.0, 0.5) == Approx(-0.5));
    CHECK(threshold_caseVII(3.0, 0.999) < -100.0);
    for (double l1 = 0.1; l1 < 1.0; l1 += 0.2) CHECK(threshold_caseVII(2.5, l1) < 0.0);
    CHECK_THROWS(threshold_caseVII(1.5, 0.5));
}

TEST_CASE("existence verdicts") {
    CHECK(existence_verdict({0.5, 0.5, 1.2}, 9.87).kind == VerdictKind::none);
    CHECK(existence_verdict({1.0, 1.0, 0.5}, 1.0).kind == VerdictKind::none);
    CHECK(existence_verdict({1.0, 1.0, -0.5}, 1.0).kind == VerdictKind::unique_positive);
    CHECK(existence_verdict({0.5, 0.75, -2.0}, 9.87).kind == VerdictKind::unique_positive);
    CHECK(existence_verdict({0.5, 0.25, 0.3}, 9.87).kind == VerdictKind::unknown);
    CHECK(existence_verdict({0.5, 0.25, 0.6}, 9.87).kind == VerdictKind::none);
    for (const auto& id : existence_verdict({0.5, 0.25, 0.3}, 9.87).citations) {
        const auto& all = all_result_ids();
        CHECK(std::find(all.begin(), all.end(), id) != all.end());
    }
}

TEST_CASE("rescaling at n = m + 1") {
    const AbcRescale a = abc_rescale({0.5, 1.5, -2.0});
    CHECK(a.mu == Approx(1.0));
    CHECK(a.amplitude_scale == Approx(1.0));
    const AbcRescale b = abc_rescale({0.5, 1.5, -5.0});
    CHECK(b.mu == Approx(4.0));
    CHECK(b.amplitude_scale == Approx(16.0));
    CHECK_THROWS(abc_rescale({0.5, 1.5, -1.0}));
    CHECK_THROWS(abc_rescale({0.5, 1.2, -3.0}));
}

}  // TEST_SUITE
