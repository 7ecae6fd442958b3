#pragma once

// Scalar oracles written independently of the library: a log-spaced scan of
// (0, inf) followed by golden-section refinement, and plain bisection.

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

inline double golden_max(const std::function<double(double)>& g, double a, double b, int iters = 200) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - r * (b - a), d = a + r * (b - a);
    double gc = g(c), gd = g(d);
    for (int i = 0; i < iters && b - a > 1e-15 * (1.0 + std::abs(a)); ++i) {
        if (gc > gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - r * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + r * (b - a);
            gd = g(d);
        }
    }
    return 0.5 * (a + b);
}

struct Extremum {
    double arg = 0.0;
    double value = 0.0;
};

/// Maximum of g over s in [lo, hi] (log scale): 400-point scan, then golden section in log s.
inline Extremum maximize_log(const std::function<double(double)>& g, double lo = 1e-8, double hi = 1e8,
                             int samples = 400) {
    const double tlo = std::log(lo), thi = std::log(hi);
    int best = 0;
    double best_v = -INFINITY;
    for (int i = 0; i < samples; ++i) {
        const double v = g(std::exp(tlo + (thi - tlo) * i / (samples - 1)));
        if (v > best_v) {
            best_v = v;
            best = i;
        }
    }
    const double step = (thi - tlo) / (samples - 1);
    const double a = tlo + step * std::max(0, best - 1);
    const double b = tlo + step * std::min(samples - 1, best + 1);
    const double t = golden_max([&](double x) { return g(std::exp(x)); }, a, b);
    return {std::exp(t), g(std::exp(t))};
}

inline Extremum minimize_log(const std::function<double(double)>& g, double lo = 1e-8, double hi = 1e8,
                             int samples = 400) {
    Extremum e = maximize_log([&](double s) { return -g(s); }, lo, hi, samples);
    e.value = -e.value;
    return e;
}

/// Root of g on [a, b] where g changes sign.
inline double bisect(const std::function<double(double)>& g, double a, double b, int iters = 200) {
    double ga = g(a);
    if (ga * g(b) > 0.0) throw std::invalid_argument("bisect: no sign change");
    for (int i = 0; i < iters; ++i) {
        const double c = 0.5 * (a + b);
        const double gc = g(c);
        if (gc == 0.0) return c;
        if ((gc < 0.0) == (ga < 0.0)) {
            a = c;
            ga = gc;
        } else {
            b = c;
        }
    }
    return 0.5 * (a + b);
}

// Auxiliary functions of the threshold arguments. Each threshold is the
// extremal value of a one-variable function of s > 0.

/// max_s s^{m-n} - s^{m+1-n}.
inline double fold_caseI(double m, double n) {
    return maximize_log([=](double s) { return std::pow(s, m - n) - std::pow(s, m + 1 - n); }).value;
}

/// Largest λ for which F(s) = s^{m+1}/(m+1) - s^{m+2}/(m+2) - λ s^{n+1}/(n+1) has a positive zero.
inline double lambda_c(double m, double n) {
    return (n + 1.0) *
           maximize_log([=](double s) { return std::pow(s, m - n) / (m + 1) - std::pow(s, m - n + 1) / (m + 2); })
               .value;
}

/// n = m+1: the λ below which f(s)/s > λ₁ for every s > 0, located by bisection
/// on log μ with μ = -1 - λ.
inline double caseIV_nonexistence(double m, double lambda1) {
    auto margin = [=](double t) {
        const double mu = std::exp(t);
        return minimize_log([=](double s) { return std::pow(s, m - 1) + mu * std::pow(s, m); }, 1e-280, 1e20, 3000)
                   .value -
               lambda1;
    };
    return -1.0 - std::exp(bisect(margin, std::log(1e-30), std::log(1e250)));
}

/// λ at which min_s (λ₁-1)s^{1-n} + s^{2-n} + λ vanishes.
inline double caseV(double n, double lambda1) {
    return -minimize_log([=](double s) { return (lambda1 - 1) * std::pow(s, 1 - n) + std::pow(s, 2 - n); }).value;
}

/// λ at which min_s (λ₁-1) + s + λ s^{n-1} vanishes, 1 < n < 2.
inline double caseVI(double n, double lambda1) {
    return -minimize_log([=](double s) { return (lambda1 - 1 + s) / std::pow(s, n - 1); }).value;
}

/// λ at which max_s (λ₁-1) + s + λ s^{n-1} vanishes, n > 2.
inline double caseVII(double n, double lambda1) {
    return -maximize_log([=](double s) { return (s - (1 - lambda1)) / std::pow(s, n - 1); }).value;
}

/// λ at which max_s s^{1-m}/2 - A1 + λ A2 s^{n-m} vanishes, 1 < n < m+1.
inline double caseIII_under(double m, double n, double A1, double A2) {
    auto top = [=](double lam) {
        return maximize_log([=](double s) { return std::pow(s, 1 - m) / 2 - A1 + lam * A2 * std::pow(s, n - m); },
                            1e-60, 1e60, 2400)
            .value;
    };
    return bisect(top, -1e-12, -1e12);
}

/// λ at which min_s 1/2 + A3 s^m + λ A2 s^{n-1} vanishes, 1 < n < m+1.
inline double caseIII_over(double m, double n, double A2, double A3) {
    auto bottom = [=](double lam) {
        return minimize_log([=](double s) { return 0.5 + A3 * std::pow(s, m) + lam * A2 * std::pow(s, n - 1); },
                            1e-60, 1e60, 2400)
            .value;
    };
    return bisect(bottom, -1e-12, -1e12);
}

/// First positive zero of F for 0 < n < m, 0 < λ < λ_c: F dips below zero,
/// then rises, so the zero lies between its minimum and maximum on (0, 1).
inline double primitive_root(double m, double n, double lam) {
    auto F = [=](double s) {
        return std::pow(s, m + 1) / (m + 1) - std::pow(s, m + 2) / (m + 2) - lam * std::pow(s, n + 1) / (n + 1);
    };
    const double trough = minimize_log(F, 1e-12, 1.0).arg;
    const double peak = maximize_log(F, trough, 1.0).arg;
    return bisect(F, trough, peak);
}

}  // namespace oracle
