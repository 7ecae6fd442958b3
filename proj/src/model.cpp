#include "autocat/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace autocat::model {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool near(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

bool is_m_one(double m) { return near(m, 1.0); }

void require_exponents(double m, double n) {
    if (!(m > 0.0) || !(m <= 1.0 + 1e-12) || !(n > 0.0) || !std::isfinite(n))
        throw std::invalid_argument("exponents must satisfy 0 < m <= 1 and n > 0");
}

void require_caseI(double m, double n) {
    require_exponents(m, n);
    if (!(n < m) || !(m < 1.0)) throw std::invalid_argument("requires 0 < n < m < 1");
}

// Largest root above 1 of 1 - M - λ M^{n-m}, λ < 0.
std::optional<double> root_above_one(double m, double n, double lambda) {
    auto psi = [&](double M) { return 1.0 - M - lambda * std::pow(M, n - m); };
    double lo = 1.0;
    double hi = 2.0;
    while (psi(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) return std::nullopt;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (psi(mid) > 0.0 ? lo : hi) = mid;
    }
    return hi;
}

}  // namespace

ProblemParams::ProblemParams(double m_, double n_, double lambda_, int dim_)
    : m(m_), n(n_), lambda(lambda_), dim(dim_) {
    require_exponents(m, n);
    if (is_m_one(m)) m = 1.0;
    if (!std::isfinite(lambda)) throw std::invalid_argument("lambda must be finite");
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
}

double ProblemParams::critical_exponent() const {
    if (dim <= 2) return kInf;
    return 2.0 * dim / (dim - 2.0);
}

ProblemParams ProblemParams::with_lambda(double lam) const {
    ProblemParams q = *this;
    q.lambda = lam;
    return q;
}

std::string to_string(Case c) {
    switch (c) {
        case Case::C1: return "C1";
        case Case::C2: return "C2";
        case Case::C3: return "C3";
        case Case::C4: return "C4";
        case Case::C5: return "C5";
        case Case::C6: return "C6";
        case Case::C7: return "C7";
    }
    return "?";
}

std::string to_string(Subcase s) {
    switch (s) {
        case Subcase::none: return "";
        case Subcase::n_equals_m: return "n=m";
        case Subcase::n_equals_m_plus_1: return "n=m+1";
        case Subcase::n_equals_2: return "n=2";
    }
    return "";
}

std::string to_string(const CaseTag& t) {
    std::string s = to_string(t.tag);
    if (t.subcase != Subcase::none) s += " (" + to_string(t.subcase) + ")";
    return s;
}

Case parse_case(const std::string& s) {
    static const char* names[] = {"C1", "C2", "C3", "C4", "C5", "C6", "C7"};
    for (int i = 0; i < 7; ++i)
        if (s == names[i]) return static_cast<Case>(i);
    throw std::invalid_argument("unknown case tag: " + s);
}

std::string to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::none: return "none";
        case VerdictKind::at_least_one: return "at_least_one";
        case VerdictKind::unique_positive: return "unique_positive";
        case VerdictKind::at_least_two: return "at_least_two";
        case VerdictKind::at_least_three: return "at_least_three";
        case VerdictKind::infinitely_many: return "infinitely_many";
        case VerdictKind::unknown: return "unknown";
    }
    return "unknown";
}

const std::vector<std::string>& all_result_ids() {
    static const std::vector<std::string> ids = {
        result::positivity,          result::apriori,
        result::subsuper,            result::m1_existence,
        result::uniqueness,          result::palais_smale,
        result::caseI_fold,          result::caseI_mountain_pass,
        result::caseII_equal,        result::caseII_monotone,
        result::caseIII_uniqueness,  result::caseIII_three,
        result::caseIV_critical,     result::caseIV_nonexistence,
        result::caseIV_supercritical, result::caseV_sign,
        result::caseV_fold,          result::caseV_logistic,
        result::caseVI_small_eigenvalue, result::caseVI_fold,
        result::caseVI_quadratic,    result::caseVII_uniqueness,
        result::caseVII_large_eigenvalue,
    };
    return ids;
}

// nonlinearity -------------------------------------------------------------

double reaction(const ProblemParams& p, double s) {
    if (s < 0.0 || std::isnan(s)) throw std::domain_error("reaction: s must be >= 0");
    if (s == 0.0) return 0.0;
    return std::pow(s, p.m) - std::pow(s, p.m + 1.0) - p.lambda * std::pow(s, p.n);
}

double reaction_derivative(const ProblemParams& p, double s) {
    if (!(s > 0.0)) throw std::domain_error("reaction_derivative: s must be > 0");
    return p.m * std::pow(s, p.m - 1.0) - (p.m + 1.0) * std::pow(s, p.m) -
           p.lambda * p.n * std::pow(s, p.n - 1.0);
}

double reaction_primitive(const ProblemParams& p, double s) {
    if (s < 0.0 || std::isnan(s)) throw std::domain_error("reaction_primitive: s must be >= 0");
    if (s == 0.0) return 0.0;
    return std::pow(s, p.m + 1.0) / (p.m + 1.0) - std::pow(s, p.m + 2.0) / (p.m + 2.0) -
           p.lambda * std::pow(s, p.n + 1.0) / (p.n + 1.0);
}

std::optional<double> primitive_root(const ProblemParams& p) {
    // F(s) = s^{n+1} G(s) with G(s) = s^{m-n}/(m+1) - s^{m-n+1}/(m+2) - λ/(n+1).
    // For n < m, G rises from -λ/(n+1) to a single maximum then falls.
    if (!(p.n < p.m) || !(p.lambda > 0.0)) return std::nullopt;
    const double k = p.m - p.n;
    auto G = [&](double s) {
        return std::pow(s, k) / (p.m + 1.0) - std::pow(s, k + 1.0) / (p.m + 2.0) -
               p.lambda / (p.n + 1.0);
    };
    const double s_peak = k * (p.m + 2.0) / ((k + 1.0) * (p.m + 1.0));
    if (G(s_peak) <= 0.0) return std::nullopt;
    double lo = 0.0, hi = s_peak;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (G(mid) > 0.0 ? hi : lo) = mid;
        if (hi - lo <= 1e-16 * hi) break;
    }
    return 0.5 * (lo + hi);
}

// classification -----------------------------------------------------------

CaseTag classify(double m, double n) {
    require_exponents(m, n);
    if (is_m_one(m)) {
        if (n < 1.0 || near(n, 1.0))
            return {Case::C5, near(n, 1.0) ? Subcase::n_equals_m : Subcase::none};
        if (n < 2.0 || near(n, 2.0))
            return {Case::C6, near(n, 2.0) ? Subcase::n_equals_2 : Subcase::none};
        return {Case::C7, Subcase::none};
    }
    if (near(n, m)) return {Case::C2, Subcase::n_equals_m};
    if (n < m) return {Case::C1, Subcase::none};
    if (n < 1.0 || near(n, 1.0)) return {Case::C2, Subcase::none};
    if (near(n, m + 1.0)) return {Case::C4, Subcase::n_equals_m_plus_1};
    if (n < m + 1.0) return {Case::C3, Subcase::none};
    return {Case::C4, Subcase::none};
}

bool positivity_guaranteed(const ProblemParams& p) {
    const double lam = p.lambda;
    if (lam <= 0.0) return true;
    if (p.n >= 1.0 || near(p.n, 1.0)) return true;
    if (p.n > p.m && !near(p.n, p.m)) return true;
    return near(p.n, p.m) && lam < 1.0;
}

bool palais_smale_regime(const ProblemParams& p) {
    const double crit = p.critical_exponent();
    if (!(p.m < crit - 2.0) || !(p.n < crit - 1.0)) return false;
    const bool first = p.lambda >= 0.0 && p.m < 1.0 && (p.n <= p.m + 1.0 || near(p.n, p.m + 1.0));
    const bool second = p.m < p.n - 1.0 && !near(p.m, p.n - 1.0);
    return first || second;
}

bool energy_coercive(const ProblemParams& p) {
    if (p.lambda >= 0.0) return true;
    if (near(p.n, p.m + 1.0)) return p.lambda > -1.0;
    return p.n < p.m + 1.0;
}

bool constant_supersolution_exists(const ProblemParams& p) {
    if (p.lambda >= 0.0) return true;
    if (near(p.n, p.m + 1.0)) return p.lambda > -1.0;
    return p.n < p.m + 1.0;
}

UniquenessCertificate uniqueness_certificate(const ProblemParams& p, double s_max) {
    if (!(s_max > 0.0)) throw std::invalid_argument("s_max must be positive");
    const double m = p.m, n = p.n, lam = p.lambda;
    const bool m_lt_1 = m < 1.0;
    // (1-m)s^m + m s^{m+1} + λ(n-1)s^n = s^m h(s), h(s) = (1-m) + m s + λ(n-1)s^{n-m}.
    if (lam == 0.0) return {true, Provenance::analytic};
    if (near(n, m + 1.0) && lam > -1.0) return {true, Provenance::analytic};
    if (lam >= 0.0 && (n >= 1.0 || near(n, 1.0))) return {true, Provenance::analytic};
    if (near(n, m) && lam > 0.0 && lam < 1.0 && m_lt_1) return {true, Provenance::analytic};
    if (lam <= 0.0 && (n <= 1.0 || near(n, 1.0))) return {true, Provenance::analytic};
    if (lam > 0.0 && n > m && s_max <= std::pow(lam, 1.0 / (m - n)) * (1.0 + 1e-14))
        return {true, Provenance::analytic};

    auto h = [&](double s) { return (1.0 - m) + m * s + lam * (n - 1.0) * std::pow(s, n - m); };
    auto scale = [&](double s) {
        return (1.0 - m) + m * s + std::abs(lam * (n - 1.0)) * std::pow(s, n - m);
    };
    const int samples = 4000;
    const double lo = std::log(s_max) - 16.0 * std::log(10.0);
    const double hi = std::log(s_max);
    double worst = kInf;
    int worst_i = 0;
    for (int i = 0; i <= samples; ++i) {
        double s = std::exp(lo + (hi - lo) * i / samples);
        double r = h(s) / scale(s);
        if (r < worst) {
            worst = r;
            worst_i = i;
        }
    }
    // golden-section refinement of the relative margin around the worst sample
    double a = lo + (hi - lo) * std::max(0, worst_i - 1) / samples;
    double b = lo + (hi - lo) * std::min(samples, worst_i + 1) / samples;
    auto rel = [&](double t) {
        double s = std::exp(t);
        return h(s) / scale(s);
    };
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    for (int it = 0; it < 100; ++it) {
        if (rel(c) < rel(d))
            b = d;
        else
            a = c;
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    worst = std::min(worst, rel(0.5 * (a + b)));
    return {worst > 1e-12, Provenance::numerical};
}

bool caseIII_uniqueness_condition(const ProblemParams& p) {
    if (p.lambda >= 0.0) return true;
    const double m = p.m, n = p.n, a = -p.lambda;
    if (!(n > 1.0 && n < m + 1.0)) throw std::invalid_argument("requires 1 < n < m+1");
    const double s_star = std::pow(a * (n - 1.0) * (n - m) / m, 1.0 / (1.0 + m - n));
    return 1.0 - m > a * (n - 1.0) * std::pow(s_star, n - m) - m * s_star;
}

std::optional<double> apriori_bound(const ProblemParams& p) {
    const double m = p.m, n = p.n, lam = p.lambda;
    if (lam >= 0.0) {
        if (lam > 0.0 && n > m && !near(n, m)) return std::min(1.0, std::pow(lam, 1.0 / (m - n)));
        return 1.0;
    }
    if (near(n, m + 1.0)) {
        if (lam > -1.0) return 1.0 / (1.0 + lam);
        return std::nullopt;
    }
    if (n < m + 1.0) return root_above_one(m, n, lam);
    return std::nullopt;
}

// thresholds ---------------------------------------------------------------

double lambda_c(double m, double n) {
    require_caseI(m, n);
    const double k = m - n;
    return ((n + 1.0) / (m + 1.0)) * std::pow((m + 2.0) / (m + 1.0), k) * std::pow(k, k) /
           std::pow(k + 1.0, k + 1.0);
}

double threshold_fold_caseI(double m, double n) {
    require_caseI(m, n);
    const double k = m - n;
    return std::pow(k, k) / std::pow(k + 1.0, k + 1.0);
}

double caseIb_bound(double m, int N) {
    return ((N + 2.0) * (2.0 * m - 1.0) - (N - 2.0) * m * m) / 4.0;
}

Interval caseIb_admissible(double m, int N) {
    if (!(m > 0.0 && m < 1.0)) throw std::invalid_argument("requires 0 < m < 1");
    if (N < 1) throw std::invalid_argument("dimension must be >= 1");
    const double crit = N > 2 ? 2.0 * N / (N - 2.0) : kInf;
    if (!(m < crit - 2.0)) return {0.0, 0.0};
    const double hi = std::min(m, caseIb_bound(m, N));
    if (!(hi > 0.0)) return {0.0, 0.0};
    return {0.0, hi};
}

double threshold_caseIV_nonexistence(double m, double lambda1) {
    if (!(m > 0.0 && m < 1.0) || is_m_one(m)) throw std::invalid_argument("requires 0 < m < 1");
    if (!(lambda1 > 0.0)) throw std::invalid_argument("lambda1 must be positive");
    return -1.0 - std::pow(lambda1, 1.0 / (1.0 - m)) * (1.0 - m) * std::pow(m, m / (1.0 - m));
}

namespace {
void require_caseIII(double m, double n) {
    if (!(m > 0.0 && m < 1.0 && n > 1.0 && n < m + 1.0))
        throw std::invalid_argument("requires 0 < m < 1 < n < m+1");
}
}  // namespace

double caseIII_s(double m, double n, double lambda, double A2) {
    require_caseIII(m, n);
    return std::pow((1.0 - m) / (-2.0 * lambda * (n - m) * A2), 1.0 / (n - 1.0));
}

double caseIII_s_hat(double m, double n, double lambda, double A2, double A3) {
    require_caseIII(m, n);
    return std::pow(-lambda * (n - 1.0) * A2 / (m * A3), 1.0 / (m + 1.0 - n));
}

CaseIIIWindow caseIII_window(double m, double n, double A1, double A2, double A3) {
    require_caseIII(m, n);
    if (!(A1 > 0.0 && A2 > 0.0 && A3 > 0.0))
        throw std::invalid_argument("functional constants must be positive");
    const double a = 1.0 - m;
    const double b = m + 1.0 - n;
    CaseIIIWindow w;
    w.lambda_under = -std::pow(n - 1.0, (n - 1.0) / a) * a /
                     (std::pow(2.0, (n - m) / a) * std::pow(n - m, (n - m) / a) *
                      std::pow(A1, (n - 1.0) / a) * A2);
    w.lambda_over = -m * std::pow(A3, (n - 1.0) / m) /
                    (std::pow(2.0, b / m) * std::pow(n - 1.0, (n - 1.0) / m) * std::pow(b, b / m) * A2);
    w.s_under = caseIII_s(m, n, w.lambda_under, A2);
    w.s_hat_over = caseIII_s_hat(m, n, w.lambda_over, A2, A3);
    w.lambda_ordered = w.lambda_under < w.lambda_over;
    w.radius_ordered = w.s_under < w.s_hat_over;
    return w;
}

double caseIII_C_tilde(double m, double n) {
    require_caseIII(m, n);
    const double b = m + 1.0 - n;
    return std::pow((n - 1.0) / 2.0, 1.0 / (m * (1.0 - m))) * std::pow((1.0 - m) / m, 1.0 / (n - 1.0)) *
           std::pow(b, b / (m * (n - 1.0))) /
           std::pow(n - m, (n - m) / ((1.0 - m) * (n - 1.0)));
}

double unit_ball_volume(int N) {
    if (N < 1) throw std::invalid_argument("dimension must be >= 1");
    return std::pow(std::numbers::pi, N / 2.0) / std::tgamma(N / 2.0 + 1.0);
}

double omega_size_bound(double m, double n, int N, double A1_star, double A3_star) {
    require_caseIII(m, n);
    if (!(A1_star > 0.0 && A3_star > 0.0)) throw std::invalid_argument("constants must be positive");
    const double ct = caseIII_C_tilde(m, n);
    return std::pow(ct, N * m * (1.0 - m) / 2.0) * unit_ball_volume(N) *
           std::pow(A1_star, -N * m / 2.0) * std::pow(A3_star, -N * (1.0 - m) / 2.0);
}

double threshold_caseV(double n, double lambda1) {
    if (!(n > 0.0 && n < 1.0)) throw std::invalid_argument("requires 0 < n < 1");
    if (!(lambda1 > 0.0 && lambda1 < 1.0)) throw std::invalid_argument("requires 0 < lambda1 < 1");
    return std::pow(1.0 - lambda1, 2.0 - n) * std::pow(1.0 - n, 1.0 - n) / std::pow(2.0 - n, 2.0 - n);
}

double threshold_caseVI(double n, double lambda1) {
    if (!(n > 1.0 && n < 2.0)) throw std::invalid_argument("requires 1 < n < 2");
    if (!(lambda1 > 1.0)) throw std::invalid_argument("requires lambda1 > 1");
    return -std::pow(lambda1 - 1.0, 2.0 - n) /
           (std::pow(n - 1.0, n - 1.0) * std::pow(2.0 - n, 2.0 - n));
}

double threshold_caseVII(double n, double lambda1) {
    if (!(n > 2.0)) throw std::invalid_argument("requires n > 2");
    if (!(lambda1 > 0.0 && lambda1 < 1.0)) throw std::invalid_argument("requires 0 < lambda1 < 1");
    return -std::pow(n - 2.0, n - 2.0) / (std::pow(n - 1.0, n - 1.0) * std::pow(1.0 - lambda1, n - 2.0));
}

// decision table -----------------------------------------------------------

ExistenceVerdict existence_verdict(const ProblemParams& p, double lambda1) {
    using VK = VerdictKind;
    namespace r = result;
    const CaseTag tag = classify(p.m, p.n);
    const double m = p.m, n = p.n, lam = p.lambda;
    const bool l1 = std::isfinite(lambda1) && lambda1 > 0.0;
    const bool l1_eq_1 = l1 && near(lambda1, 1.0);
    const bool l1_lt_1 = l1 && lambda1 < 1.0 && !l1_eq_1;
    const bool l1_gt_1 = l1 && lambda1 > 1.0 && !l1_eq_1;
    const double crit = p.critical_exponent();
    auto v = [](VK k, std::initializer_list<const char*> c) {
        ExistenceVerdict out;
        out.kind = k;
        for (const char* s : c) out.citations.emplace_back(s);
        return out;
    };

    switch (tag.tag) {
        case Case::C1:
            if (lam <= 0.0) return v(VK::unique_positive, {r::subsuper, r::uniqueness, r::caseI_fold});
            if (lam > threshold_fold_caseI(m, n)) return v(VK::none, {r::caseI_fold});
            return v(VK::unknown, {r::caseI_fold});
        case Case::C2:
            if (tag.subcase == Subcase::n_equals_m)
                return v(lam < 1.0 ? VK::unique_positive : VK::none, {r::caseII_equal});
            return v(VK::unique_positive, {r::caseII_monotone});
        case Case::C3:
            if (lam >= 0.0) return v(VK::unique_positive, {r::subsuper, r::uniqueness, r::caseIII_uniqueness});
            if (caseIII_uniqueness_condition(p)) return v(VK::unique_positive, {r::caseIII_uniqueness});
            return v(VK::at_least_one, {r::subsuper, r::caseIII_uniqueness});
        case Case::C4:
            if (tag.subcase == Subcase::n_equals_m_plus_1) {
                if (lam >= -1.0) return v(VK::unique_positive, {r::caseIV_critical});
                if (l1 && lam < threshold_caseIV_nonexistence(m, lambda1))
                    return v(VK::none, {r::caseIV_nonexistence});
                return v(VK::unknown, {r::caseIV_critical, r::caseIV_nonexistence});
            }
            if (lam >= 0.0) return v(VK::unique_positive, {r::subsuper, r::uniqueness, r::caseIV_supercritical});
            return v(VK::unknown, {r::caseIV_supercritical});
        case Case::C5:
            if (tag.subcase == Subcase::n_equals_m) {
                if (!l1) return v(VK::unknown, {r::caseV_logistic});
                return v(lam < 1.0 - lambda1 ? VK::unique_positive : VK::none, {r::caseV_logistic});
            }
            if (lam < 0.0) return v(VK::unique_positive, {r::subsuper, r::uniqueness, r::caseV_sign});
            if (!l1) return v(VK::unknown, {r::caseV_sign});
            if (lam == 0.0) return v(l1_lt_1 ? VK::unique_positive : VK::none, {r::caseV_sign});
            if (!l1_lt_1) return v(VK::none, {r::m1_existence, r::caseV_sign});
            if (lam > threshold_caseV(n, lambda1)) return v(VK::none, {r::caseV_fold});
            return v(VK::unknown, {r::caseV_fold});
        case Case::C6:
            if (tag.subcase == Subcase::n_equals_2) {
                if (!l1) return v(VK::unknown, {r::caseVI_quadratic});
                if (lam > -1.0) return v(l1_lt_1 ? VK::unique_positive : VK::none, {r::caseVI_quadratic});
                if (lam == -1.0) return v(l1_eq_1 ? VK::infinitely_many : VK::none, {r::caseVI_quadratic});
                if (p.dim < 6) return v(l1_gt_1 ? VK::at_least_one : VK::none, {r::caseVI_quadratic});
                return v(VK::unknown, {r::caseVI_quadratic});
            }
            if (!l1) return v(VK::unknown, {r::m1_existence});
            if (l1_lt_1) {
                if (lam >= 0.0)
                    return v(VK::unique_positive, {r::m1_existence, r::uniqueness, r::caseVI_small_eigenvalue});
                return v(VK::at_least_one, {r::m1_existence, r::caseVI_small_eigenvalue});
            }
            if (l1_eq_1) {
                if (lam < 0.0) return v(VK::at_least_one, {r::m1_existence, r::caseVI_small_eigenvalue});
                return v(VK::none, {r::m1_existence});
            }
            if (lam >= 0.0) return v(VK::none, {r::m1_existence});
            if (lam > threshold_caseVI(n, lambda1)) return v(VK::none, {r::caseVI_fold});
            return v(VK::unknown, {r::caseVI_fold});
        case Case::C7:
            if (!l1) return v(VK::unknown, {r::caseVII_uniqueness});
            if (l1_lt_1) {
                if (lam >= 0.0)
                    return v(VK::unique_positive, {r::m1_existence, r::uniqueness, r::caseVII_uniqueness});
                if (lam < threshold_caseVII(n, lambda1)) return v(VK::none, {r::caseVII_uniqueness});
                return v(VK::unknown, {r::caseVII_uniqueness});
            }
            if (lam >= 0.0) return v(VK::none, {r::m1_existence, r::caseVII_large_eigenvalue});
            if (n < crit - 1.0) return v(VK::at_least_one, {r::caseVII_large_eigenvalue});
            return v(VK::unknown, {r::caseVII_large_eigenvalue});
    }
    return {};
}

AbcRescale abc_rescale(const ProblemParams& p) {
    if (!near(p.n, p.m + 1.0)) throw std::invalid_argument("rescaling requires n = m+1");
    if (!(p.lambda < -1.0)) throw std::invalid_argument("rescaling requires lambda < -1");
    const double base = -p.lambda - 1.0;
    return {std::pow(base, (1.0 - p.m) / p.m), std::pow(base, 1.0 / p.m)};
}

}  // namespace autocat::model
