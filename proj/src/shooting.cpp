#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "autocat/solvers.hpp"

namespace autocat::solvers {

namespace {

using State = std::array<double, 2>;

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

struct RadialField {
    const ProblemParams& p;
    double N;
    State operator()(double r, const State& y) const {
        const double fu = model::reaction(p, std::max(y[0], 0.0));
        if (r <= 0.0) return {y[1], -fu / N};
        return {y[1], -(N - 1.0) / r * y[1] - fu};
    }
};

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State out = y;
    for (const auto& [a, k] : terms) {
        out[0] += h * a * (*k)[0];
        out[1] += h * a * (*k)[1];
    }
    return out;
}

State eval_segment(const DenseSegment& s, double r) {
    const double th = s.h > 0.0 ? (r - s.r0) / s.h : 0.0;
    const double th1 = 1.0 - th;
    State y;
    for (int j = 0; j < 2; ++j)
        y[j] = s.c[0][j] + th * (s.c[1][j] + th1 * (s.c[2][j] + th * (s.c[3][j] + th1 * s.c[4][j])));
    return y;
}

}  // namespace

std::pair<double, double> ShootResult::evaluate(double r) const {
    if (segments.empty()) return {a, 0.0};
    if (r <= segments.front().r0) return {a, 0.0};
    auto it = std::upper_bound(segments.begin(), segments.end(), r,
                               [](double x, const DenseSegment& s) { return x < s.r0; });
    const DenseSegment& s = *std::prev(it);
    const State y = eval_segment(s, std::min(r, s.r0 + s.h));
    return {y[0], y[1]};
}

ShootResult radial_shoot(const ProblemParams& p, double a, const OdeConfig& cfg) {
    if (!(a > 0.0)) throw std::invalid_argument("shooting height must be positive");
    ShootResult res;
    res.a = a;
    res.profile.push_back({0.0, a, 0.0});
    if (model::reaction(p, a) <= 0.0) return res;  // u cannot leave a downward

    const RadialField F{p, static_cast<double>(p.dim)};
    double r = 0.0;
    State y{a, 0.0};
    State k1 = F(r, y);
    double h = std::min(cfg.max_step, 1e-6);
    long rejected = 0;

    while (r < cfg.r_max && res.steps < cfg.max_steps) {
        h = std::min({h, cfg.max_step, cfg.r_max - r});
        const State k2 = F(r + c2 * h, axpy(y, h, {{a21, &k1}}));
        const State k3 = F(r + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
        const State k4 = F(r + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State k5 = F(r + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State k6 = F(r + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const State y1 = axpy(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
        const State k7 = F(r + h, y1);

        double err = 0.0;
        for (int j = 0; j < 2; ++j) {
            const double e = h * (e1 * k1[j] + e3 * k3[j] + e4 * k4[j] + e5 * k5[j] + e6 * k6[j] + e7 * k7[j]);
            const double sc = cfg.atol + cfg.rtol * std::max(std::abs(y[j]), std::abs(y1[j]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / 2.0);
        if (!std::isfinite(err) || err > 1.0) {
            h *= std::clamp(0.9 * std::pow(std::isfinite(err) ? err : 1e10, -0.2), 0.1, 0.9);
            if (h < 1e-300 || ++rejected > cfg.max_steps) break;
            continue;
        }

        DenseSegment seg;
        seg.r0 = r;
        seg.h = h;
        for (int j = 0; j < 2; ++j) {
            const double ydiff = y1[j] - y[j];
            const double bspl = h * k1[j] - ydiff;
            seg.c[0][j] = y[j];
            seg.c[1][j] = ydiff;
            seg.c[2][j] = bspl;
            seg.c[3][j] = ydiff - h * k7[j] - bspl;
            seg.c[4][j] = h * (d1 * k1[j] + d3 * k3[j] + d4 * k4[j] + d5 * k5[j] + d6 * k6[j] + d7 * k7[j]);
        }
        res.segments.push_back(seg);
        ++res.steps;

        if (y1[0] <= 0.0) {
            double lo = r, hi = r + h;
            while (hi - lo > cfg.event_tol * std::max(1.0, hi)) {
                const double mid = 0.5 * (lo + hi);
                (eval_segment(seg, mid)[0] > 0.0 ? lo : hi) = mid;
            }
            const double R = 0.5 * (lo + hi);
            const State yR = eval_segment(seg, R);
            res.R = R;
            res.slope_at_zero = yR[1];
            res.segments.back().h = h;  // dense output stays valid on the full step
            res.profile.push_back({R, 0.0, yR[1]});
            return res;
        }
        if (y[1] < 0.0 && y1[1] >= 0.0) {
            double lo = r, hi = r + h;
            while (hi - lo > cfg.event_tol * std::max(1.0, hi)) {
                const double mid = 0.5 * (lo + hi);
                (eval_segment(seg, mid)[1] < 0.0 ? lo : hi) = mid;
            }
            res.turning_radius = 0.5 * (lo + hi);
            const State yt = eval_segment(seg, *res.turning_radius);
            res.profile.push_back({*res.turning_radius, yt[0], yt[1]});
            return res;
        }

        r += h;
        y = y1;
        k1 = k7;
        res.profile.push_back({r, y[0], y[1]});
        h *= std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
    }
    return res;
}

namespace {

/// Sign convention: absent zero (energy deficit) counts as positive.
int discriminant_sign(const ShootResult& s) {
    if (!s.R) return +1;
    return s.slope_at_zero < 0.0 ? -1 : +1;
}

}  // namespace

FlatProfileResult find_flat_profile(const ProblemParams& p, double a_lo, double a_hi, const OdeConfig& cfg,
                                    double slope_tol) {
    if (!(a_lo > 0.0 && a_hi > a_lo)) throw std::invalid_argument("flat-profile bracket must satisfy 0 < a_lo < a_hi");
    FlatProfileResult out;
    ShootResult lo = radial_shoot(p, a_lo, cfg);
    ShootResult hi = radial_shoot(p, a_hi, cfg);
    if (discriminant_sign(lo) == discriminant_sign(hi)) {
        out.message = "shooting discriminant does not change sign on the bracket";
        out.profile = hi;
        return out;
    }
    if (discriminant_sign(lo) < 0) std::swap(lo, hi);
    for (int it = 0; it < 200; ++it) {
        out.iterations = it + 1;
        if (hi.R && std::abs(hi.slope_at_zero) <= slope_tol) break;
        const double mid = 0.5 * (lo.a + hi.a);
        if (mid == lo.a || mid == hi.a) break;
        ShootResult s = radial_shoot(p, mid, cfg);
        if (s.R && std::abs(s.slope_at_zero) <= slope_tol) {
            hi = std::move(s);
            break;
        }
        (discriminant_sign(s) > 0 ? lo : hi) = std::move(s);
    }
    out.profile = std::move(hi);
    out.found = out.profile.R.has_value() && std::abs(out.profile.slope_at_zero) <= slope_tol;
    out.message = out.found ? "flat profile found" : "bisection exhausted before the slope tolerance";
    return out;
}

std::optional<std::pair<double, double>> flat_profile_bracket(const ProblemParams& p, double a_min, double a_max,
                                                              int samples, const OdeConfig& cfg) {
    if (!(a_min > 0.0 && a_max > a_min) || samples < 2) throw std::invalid_argument("invalid bracket scan");
    double prev_a = a_min;
    int prev_sign = discriminant_sign(radial_shoot(p, a_min, cfg));
    for (int i = 1; i < samples; ++i) {
        const double a = a_min * std::pow(a_max / a_min, double(i) / (samples - 1));
        const int s = discriminant_sign(radial_shoot(p, a, cfg));
        if (prev_sign > 0 && s < 0) return std::make_pair(prev_a, a);
        prev_a = a;
        prev_sign = s;
    }
    return std::nullopt;
}

ResampledProfile resample_on_support(const ShootResult& shot, int dim, int cells) {
    if (!shot.R) throw std::invalid_argument("profile has no first zero");
    const double R = *shot.R;
    const grid::Domain dom = dim == 1 ? grid::Domain::interval(-R, R) : grid::Domain::radial_ball(dim, R);
    ResampledProfile out{grid::build_mesh(dom, cells), {}};
    out.u = GridFunction(out.mesh.size());
    for (std::size_t i = 0; i < out.mesh.size(); ++i) {
        const double r = std::abs(out.mesh.nodes[i]);
        out.u[i] = r >= R ? 0.0 : std::max(shot.evaluate(r).first, 0.0);
    }
    return out;
}

}  // namespace autocat::solvers
