#pragma once

#include <optional>
#include <string>
#include <vector>

namespace autocat::model {

/// Exponents, reaction parameter and spatial dimension of
/// -Δu = (1-u)u^m - λu^n with zero Dirichlet data.
struct ProblemParams {
    double m = 0.5;
    double n = 0.25;
    double lambda = 0.0;
    int dim = 1;

    ProblemParams() = default;
    ProblemParams(double m, double n, double lambda, int dim = 1);

    /// 2N/(N-2) for N > 2, +infinity otherwise.
    double critical_exponent() const;
    ProblemParams with_lambda(double lam) const;
};

enum class Case { C1, C2, C3, C4, C5, C6, C7 };
enum class Subcase { none, n_equals_m, n_equals_m_plus_1, n_equals_2 };

struct CaseTag {
    Case tag;
    Subcase subcase = Subcase::none;
};

std::string to_string(Case c);
std::string to_string(Subcase s);
std::string to_string(const CaseTag& t);
Case parse_case(const std::string& s);

enum class VerdictKind {
    none,
    at_least_one,
    unique_positive,
    at_least_two,
    at_least_three,
    infinitely_many,
    unknown
};

std::string to_string(VerdictKind k);

struct ExistenceVerdict {
    VerdictKind kind = VerdictKind::unknown;
    std::vector<std::string> citations;
};

/// Identifiers of the results used by the decision table and the verify suites.
namespace result {
inline constexpr const char* positivity = "positivity-regimes";
inline constexpr const char* apriori = "apriori-bound";
inline constexpr const char* subsuper = "subsuper-existence";
inline constexpr const char* m1_existence = "m1-existence-and-sign";
inline constexpr const char* uniqueness = "brezis-oswald-uniqueness";
inline constexpr const char* palais_smale = "palais-smale-regime";
inline constexpr const char* caseI_fold = "caseI-fold-and-minimizer";
inline constexpr const char* caseI_mountain_pass = "caseI-mountain-pass";
inline constexpr const char* caseII_equal = "caseII-equal-exponents";
inline constexpr const char* caseII_monotone = "caseII-monotone-branch";
inline constexpr const char* caseIII_uniqueness = "caseIII-existence-uniqueness";
inline constexpr const char* caseIII_three = "caseIII-three-solutions";
inline constexpr const char* caseIV_critical = "caseIV-critical-exponent";
inline constexpr const char* caseIV_nonexistence = "caseIV-nonexistence-bound";
inline constexpr const char* caseIV_supercritical = "caseIV-superlinear-tail";
inline constexpr const char* caseV_sign = "caseV-sign-and-zero-parameter";
inline constexpr const char* caseV_fold = "caseV-fold-bound";
inline constexpr const char* caseV_logistic = "caseV-logistic";
inline constexpr const char* caseVI_small_eigenvalue = "caseVI-existence";
inline constexpr const char* caseVI_fold = "caseVI-fold-and-mountain-pass";
inline constexpr const char* caseVI_quadratic = "caseVI-quadratic";
inline constexpr const char* caseVII_uniqueness = "caseVII-uniqueness-and-bound";
inline constexpr const char* caseVII_large_eigenvalue = "caseVII-large-eigenvalue";
}  // namespace result

/// All result identifiers, in a fixed order.
const std::vector<std::string>& all_result_ids();

// nonlinearity -------------------------------------------------------------

/// f(s) = s^m - s^{m+1} - λ s^n, s >= 0.
double reaction(const ProblemParams& p, double s);
/// f'(s), s > 0.
double reaction_derivative(const ProblemParams& p, double s);
/// F(s) = s^{m+1}/(m+1) - s^{m+2}/(m+2) - λ s^{n+1}/(n+1), s >= 0.
double reaction_primitive(const ProblemParams& p, double s);

/// Positive root of F on (0, 1); absent when F has no positive zero.
std::optional<double> primitive_root(const ProblemParams& p);

// classification -----------------------------------------------------------

CaseTag classify(double m, double n);

/// Regimes where every solution is positive with negative normal derivative.
bool positivity_guaranteed(const ProblemParams& p);

/// Regimes in which the energy satisfies the Palais-Smale condition.
bool palais_smale_regime(const ProblemParams& p);

/// Coercivity of the energy on nonnegative states (independent of λ₁).
bool energy_coercive(const ProblemParams& p);

/// Hypotheses under which a constant supersolution exists.
bool constant_supersolution_exists(const ProblemParams& p);

enum class Provenance { analytic, numerical };

struct UniquenessCertificate {
    bool holds = false;
    Provenance provenance = Provenance::analytic;
    explicit operator bool() const { return holds; }
};

/// Decides (1-m)s^m + m s^{m+1} + λ(n-1)s^n > 0 on (0, s_max].
UniquenessCertificate uniqueness_certificate(const ProblemParams& p, double s_max);

/// The sufficient condition for uniqueness at λ < 0 when 1 < n < m+1,
/// evaluated at the tangency point s*.
bool caseIII_uniqueness_condition(const ProblemParams& p);

/// Sup-norm bound valid for every solution; absent when none applies or it
/// exceeds the double range.
std::optional<double> apriori_bound(const ProblemParams& p);

// thresholds ---------------------------------------------------------------

double lambda_c(double m, double n);
double threshold_fold_caseI(double m, double n);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty() const { return !(hi > lo); }
};

/// Exponents n admissible for the Case I mountain-pass result.
Interval caseIb_admissible(double m, int N);
double caseIb_bound(double m, int N);

double threshold_caseIV_nonexistence(double m, double lambda1);

struct CaseIIIWindow {
    double lambda_under = 0.0;
    double lambda_over = 0.0;
    double s_under = 0.0;      // s_λ at λ = lambda_under
    double s_hat_over = 0.0;   // ŝ_λ at λ = lambda_over
    bool lambda_ordered = false;
    bool radius_ordered = false;
};

CaseIIIWindow caseIII_window(double m, double n, double A1, double A2, double A3);
double caseIII_s(double m, double n, double lambda, double A2);
double caseIII_s_hat(double m, double n, double lambda, double A2, double A3);
double caseIII_C_tilde(double m, double n);

double unit_ball_volume(int N);
double omega_size_bound(double m, double n, int N, double A1_star, double A3_star);

double threshold_caseV(double n, double lambda1);
double threshold_caseVI(double n, double lambda1);
double threshold_caseVII(double n, double lambda1);

ExistenceVerdict existence_verdict(const ProblemParams& p, double lambda1);

struct AbcRescale {
    double mu = 0.0;
    double amplitude_scale = 0.0;
};

/// v = (-λ-1)^{1/m} u maps the n = m+1, λ < -1 problem to -Δv = μv^m + v^{m+1}.
AbcRescale abc_rescale(const ProblemParams& p);

}  // namespace autocat::model
