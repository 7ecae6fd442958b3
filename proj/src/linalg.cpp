#include "autocat/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace autocat::linalg {

std::vector<double> Tridiagonal::apply(const std::vector<double>& x) const {
    const std::size_t n = size();
    if (x.size() != n) throw std::invalid_argument("tridiagonal apply: size mismatch");
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = diag[i] * x[i];
        if (i > 0) s += lower[i - 1] * x[i - 1];
        if (i + 1 < n) s += upper[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

std::optional<std::vector<double>> solve(const Tridiagonal& A, const std::vector<double>& rhs) {
    const std::size_t n = A.size();
    if (rhs.size() != n) throw std::invalid_argument("tridiagonal solve: size mismatch");
    if (n == 0) return std::vector<double>{};
    std::vector<double> dl = A.lower, d = A.diag, du = A.upper, du2(n > 2 ? n - 2 : 0, 0.0);
    std::vector<double> b = rhs;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (d[i] == 0.0) return std::nullopt;
            const double fact = dl[i] / d[i];
            d[i + 1] -= fact * du[i];
            b[i + 1] -= fact * b[i];
        } else {
            const double fact = d[i] / dl[i];
            d[i] = dl[i];
            const double temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du2[i];
            }
            du[i] = temp;
            const double tb = b[i];
            b[i] = b[i + 1];
            b[i + 1] = tb - fact * b[i + 1];
        }
    }
    if (d[n - 1] == 0.0) return std::nullopt;

    std::vector<double> x(n);
    x[n - 1] = b[n - 1] / d[n - 1];
    if (n > 1) x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    for (std::size_t k = n - 2; k-- > 0;) x[k] = (b[k] - du[k] * x[k + 1] - du2[k] * x[k + 2]) / d[k];
    for (double v : x)
        if (!std::isfinite(v)) return std::nullopt;
    return x;
}

std::optional<BorderedSolution> solve_bordered(const Tridiagonal& A, const std::vector<double>& b,
                                               const std::vector<double>& c, double d,
                                               const std::vector<double>& f, double g) {
    auto xf = solve(A, f);
    auto xb = solve(A, b);
    if (!xf || !xb) return std::nullopt;
    double cf = 0.0, cb = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        cf += c[i] * (*xf)[i];
        cb += c[i] * (*xb)[i];
    }
    const double schur = d - cb;
    if (schur == 0.0 || !std::isfinite(schur)) return std::nullopt;
    BorderedSolution out;
    out.y = (g - cf) / schur;
    out.x.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out.x[i] = (*xf)[i] - (*xb)[i] * out.y;
    return out;
}

int sturm_count(const std::vector<double>& diag, const std::vector<double>& offdiag, double x) {
    const double tiny = std::numeric_limits<double>::min();
    int count = 0;
    double q = diag[0] - x;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < diag.size(); ++i) {
        if (q == 0.0) q = tiny;
        q = (diag[i] - x) - offdiag[i - 1] * offdiag[i - 1] / q;
        if (q < 0.0) ++count;
    }
    return count;
}

double smallest_eigenvalue(const std::vector<double>& diag, const std::vector<double>& offdiag,
                           double rel_tol) {
    const std::size_t n = diag.size();
    if (n == 0) throw std::invalid_argument("empty matrix");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(offdiag[i - 1]);
        if (i + 1 < n) r += std::abs(offdiag[i]);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw std::runtime_error("non-finite matrix entries");
    const double scale = std::max(std::abs(lo), std::abs(hi));
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(diag, offdiag, mid) >= 1)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= rel_tol * std::max(scale * 1e-3, std::abs(mid))) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace autocat::linalg
