#include "autocat/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "autocat/io.hpp"

namespace autocat::grid {

Domain Domain::interval(double a, double b) {
    if (!(b > a) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("interval requires b > a");
    Domain d;
    d.kind = DomainKind::interval;
    d.a = a;
    d.b = b;
    d.dim = 1;
    return d;
}

Domain Domain::radial_ball(int N, double R) {
    if (N < 1) throw std::invalid_argument("ball dimension must be >= 1");
    if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("ball radius must be positive");
    Domain d;
    d.kind = DomainKind::radial_ball;
    d.dim = N;
    d.radius = R;
    return d;
}

double Domain::measure() const {
    if (kind == DomainKind::interval) return b - a;
    return model::unit_ball_volume(dim) * std::pow(radius, dim);
}

double Domain::length() const { return kind == DomainKind::interval ? b - a : radius; }

std::string Domain::describe() const {
    if (kind == DomainKind::interval) return "interval(" + io::num(a) + "," + io::num(b) + ")";
    return "ball(" + std::to_string(dim) + "," + io::num(radius) + ")";
}

GridFunction GridFunction::positive_part() const {
    GridFunction out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = std::max(values[i], 0.0);
    return out;
}

GridFunction GridFunction::negative_part() const {
    GridFunction out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = std::max(-values[i], 0.0);
    return out;
}

double GridFunction::sup_norm() const {
    double s = 0.0;
    for (double v : values) s = std::max(s, std::abs(v));
    return s;
}

bool GridFunction::is_zero() const {
    return std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
}

void Mesh::finalize() {
    const std::size_t n = nodes.size();
    stiffness_ = linalg::Tridiagonal(n);
    for (std::size_t i = 0; i < n; ++i) {
        stiffness_.diag[i] = conductance[i] + conductance[i + 1];
        if (i + 1 < n) {
            stiffness_.upper[i] = -conductance[i + 1];
            stiffness_.lower[i] = -conductance[i + 1];
        }
    }
}

Mesh build_mesh(const Domain& domain, int cells) {
    if (cells < 4) throw std::invalid_argument("mesh needs at least 4 cells");
    Mesh mesh;
    mesh.domain = domain;
    mesh.cells = cells;
    mesh.h = domain.length() / cells;
    const double h = mesh.h;
    if (domain.kind == DomainKind::interval) {
        for (int i = 1; i < cells; ++i) {
            mesh.nodes.push_back(domain.a + i * h);
            mesh.weights.push_back(h);
        }
        mesh.conductance.assign(cells, 1.0 / h);
    } else {
        const int N = domain.dim;
        const double vol = model::unit_ball_volume(N);
        const double area = N * vol;
        for (int i = 0; i < cells; ++i) {
            const double r = (i + 0.5) * h;
            mesh.nodes.push_back(r);
            mesh.weights.push_back(vol * (std::pow((i + 1) * h, N) - std::pow(i * h, N)));
        }
        mesh.conductance.resize(cells + 1);
        mesh.conductance[0] = 0.0;
        for (int k = 1; k < cells; ++k) mesh.conductance[k] = area * std::pow(k * h, N - 1) / h;
        mesh.conductance[cells] = area * std::pow(domain.radius, N - 1) / (0.5 * h);
    }
    mesh.finalize();
    return mesh;
}

namespace {
void check_size(const Mesh& mesh, const GridFunction& u) {
    if (u.size() != mesh.size()) throw std::invalid_argument("grid function does not match mesh");
}
}  // namespace

GridFunction laplacian_apply(const Mesh& mesh, const GridFunction& u, BoundaryValues bc) {
    check_size(mesh, u);
    GridFunction out(mesh.stiffness().apply(u.values));
    const std::size_t n = mesh.size();
    if (mesh.domain.kind == DomainKind::interval) out[0] -= mesh.conductance[0] * bc.left;
    out[n - 1] -= mesh.conductance[n] * bc.right;
    for (std::size_t i = 0; i < n; ++i) out[i] /= mesh.weights[i];
    return out;
}

EigenPair principal_eigenpair(const Mesh& mesh, double tol, int max_iter) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const std::size_t n = mesh.size();
    const auto& K = mesh.stiffness();
    EigenPair ep;
    GridFunction x(n);
    for (std::size_t i = 0; i < n; ++i) {
        // positive start concentrated like the principal mode
        const double t = mesh.domain.kind == DomainKind::interval
                             ? (mesh.nodes[i] - mesh.domain.a) / mesh.domain.length()
                             : 0.5 + 0.5 * mesh.nodes[i] / mesh.domain.radius;
        x[i] = std::sin(M_PI * t);
    }
    auto rayleigh = [&](const GridFunction& v) {
        return dirichlet_integral(mesh, v) / weighted_dot(mesh, v, v);
    };
    double lam = rayleigh(x);
    double shift = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        linalg::Tridiagonal A = K;
        for (std::size_t i = 0; i < n; ++i) A.diag[i] -= shift * mesh.weights[i];
        std::vector<double> rhs(n);
        for (std::size_t i = 0; i < n; ++i) rhs[i] = mesh.weights[i] * x[i];
        auto y = linalg::solve(A, rhs);
        if (!y) {
            shift *= 0.5;
            continue;
        }
        x.values = std::move(*y);
        double s = 0.0;
        for (double v : x.values) s = std::abs(v) > std::abs(s) ? v : s;
        for (double& v : x.values) v /= s;
        lam = rayleigh(x);
        GridFunction r = laplacian_apply(mesh, x);
        for (std::size_t i = 0; i < n; ++i) r[i] -= lam * x[i];
        ep.residual = l2_norm(mesh, r);
        ep.iterations = it;
        if (ep.residual <= tol) {
            ep.converged = true;
            break;
        }
        if (it >= 3) shift = 0.5 * lam;
    }
    ep.lambda1 = lam;
    ep.phi1 = x;
    return ep;
}

double weighted_dot(const Mesh& mesh, const GridFunction& u, const GridFunction& v) {
    check_size(mesh, u);
    check_size(mesh, v);
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += mesh.weights[i] * u[i] * v[i];
    return s;
}

double l2_norm(const Mesh& mesh, const GridFunction& u) { return std::sqrt(weighted_dot(mesh, u, u)); }

double dirichlet_integral(const Mesh& mesh, const GridFunction& u) {
    check_size(mesh, u);
    const std::size_t n = u.size();
    double s = mesh.conductance[0] * u[0] * u[0] + mesh.conductance[n] * u[n - 1] * u[n - 1];
    for (std::size_t k = 1; k < n; ++k) {
        const double d = u[k] - u[k - 1];
        s += mesh.conductance[k] * d * d;
    }
    return s;
}

double positive_power_integral(const Mesh& mesh, const GridFunction& u, double q) {
    check_size(mesh, u);
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] > 0.0) s += mesh.weights[i] * std::pow(u[i], q);
    return s;
}

double energy(const ProblemParams& p, const Mesh& mesh, const GridFunction& u) {
    double s = 0.5 * dirichlet_integral(mesh, u);
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] > 0.0) s -= mesh.weights[i] * model::reaction_primitive(p, u[i]);
    return s;
}

GridFunction energy_gradient(const ProblemParams& p, const Mesh& mesh, const GridFunction& u) {
    check_size(mesh, u);
    GridFunction g(mesh.stiffness().apply(u.values));
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] > 0.0) g[i] -= mesh.weights[i] * model::reaction(p, u[i]);
    return g;
}

GridFunction residual(const ProblemParams& p, const Mesh& mesh, const GridFunction& u) {
    GridFunction g = energy_gradient(p, mesh, u);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] /= mesh.weights[i];
    return g;
}

double residual_norm(const ProblemParams& p, const Mesh& mesh, const GridFunction& u) {
    return l2_norm(mesh, residual(p, mesh, u));
}

linalg::Tridiagonal jacobian(const ProblemParams& p, const Mesh& mesh, const GridFunction& u,
                             double eps_reg) {
    check_size(mesh, u);
    linalg::Tridiagonal J = mesh.stiffness();
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] > 0.0)
            J.diag[i] -= mesh.weights[i] * model::reaction_derivative(p, std::max(u[i], eps_reg));
    return J;
}

double lifting_exponent(const ProblemParams& p) {
    double q = std::max(1.0, 1.0 / p.m);
    if (p.lambda != 0.0) q = std::max(q, 1.0 / p.n);
    return q;
}

namespace {

double lifted_power(double v, double e) {
    if (std::abs(e) < 1e-12) return 1.0;
    return std::pow(v, e);
}

}  // namespace

linalg::Tridiagonal lifted_jacobian(const ProblemParams& p, const Mesh& mesh, const GridFunction& v, double q) {
    check_size(mesh, v);
    if (!(q >= 1.0)) throw std::invalid_argument("lifting exponent must be >= 1");
    const linalg::Tridiagonal& K = mesh.stiffness();
    const std::size_t n = v.size();
    std::vector<double> s(n), g(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::max(v[i], 0.0);
        s[i] = q == 1.0 ? 1.0 : q * lifted_power(x, q - 1.0);
        if (x > 0.0 || q > 1.0) {
            g[i] = q * (p.m * lifted_power(x, q * p.m - 1.0) - (p.m + 1.0) * lifted_power(x, q * (p.m + 1.0) - 1.0));
            if (p.lambda != 0.0) g[i] -= q * p.lambda * p.n * lifted_power(x, q * p.n - 1.0);
        }
    }
    linalg::Tridiagonal J(n);
    for (std::size_t i = 0; i < n; ++i) J.diag[i] = K.diag[i] * s[i] - mesh.weights[i] * g[i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        J.lower[i] = K.lower[i] * s[i];
        J.upper[i] = K.upper[i] * s[i + 1];
    }
    return J;
}

double fiber(const ProblemParams& p, const Mesh& mesh, const GridFunction& v, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("fiber requires t > 0");
    if (v.is_zero()) throw std::invalid_argument("fiber requires v != 0");
    const double m = p.m, n = p.n;
    return 0.5 * t * t * dirichlet_integral(mesh, v) -
           std::pow(t, m + 1.0) / (m + 1.0) * positive_power_integral(mesh, v, m + 1.0) +
           std::pow(t, m + 2.0) / (m + 2.0) * positive_power_integral(mesh, v, m + 2.0) +
           p.lambda * std::pow(t, n + 1.0) / (n + 1.0) * positive_power_integral(mesh, v, n + 1.0);
}

double fiber_derivative(const ProblemParams& p, const Mesh& mesh, const GridFunction& v, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("fiber requires t > 0");
    if (v.is_zero()) throw std::invalid_argument("fiber requires v != 0");
    const double m = p.m, n = p.n;
    return t * dirichlet_integral(mesh, v) -
           std::pow(t, m) * positive_power_integral(mesh, v, m + 1.0) +
           std::pow(t, m + 1.0) * positive_power_integral(mesh, v, m + 2.0) +
           p.lambda * std::pow(t, n) * positive_power_integral(mesh, v, n + 1.0);
}

GridFunction sample_profile(const Mesh& mesh, const std::vector<double>& r, const std::vector<double>& u) {
    if (r.size() != u.size() || r.size() < 2) throw std::invalid_argument("profile needs matching abscissae");
    GridFunction out(mesh.size());
    const double center = 0.5 * (mesh.domain.a + mesh.domain.b);
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        const double x = mesh.domain.kind == DomainKind::interval ? std::abs(mesh.nodes[i] - center)
                                                                  : mesh.nodes[i];
        if (x >= r.back()) continue;
        auto it = std::upper_bound(r.begin(), r.end(), x);
        const std::size_t k = std::max<std::size_t>(1, it - r.begin());
        const double t = (x - r[k - 1]) / (r[k] - r[k - 1]);
        out[i] = std::max(0.0, (1.0 - t) * u[k - 1] + t * u[k]);
    }
    return out;
}

void write_csv(std::ostream& os, const Mesh& mesh, const GridFunction& u) {
    check_size(mesh, u);
    os << (mesh.domain.kind == DomainKind::interval ? "x,u\n" : "r,u\n");
    for (std::size_t i = 0; i < u.size(); ++i) os << io::num(mesh.nodes[i]) << ',' << io::num(u[i]) << '\n';
}

void write_csv(const std::string& path, const Mesh& mesh, const GridFunction& u) {
    std::ostringstream ss;
    write_csv(ss, mesh, u);
    io::write_text(path, ss.str());
}

GridFunction read_csv(const std::string& path, const Mesh& mesh) {
    std::istringstream is(io::read_text(path));
    std::string line;
    std::getline(is, line);
    GridFunction u;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("malformed csv row in " + path);
        const double x = io::parse_double(line.substr(0, comma));
        const double v = io::parse_double(line.substr(comma + 1));
        const std::size_t i = u.size();
        if (i >= mesh.size() || std::abs(x - mesh.nodes[i]) > 1e-9 * std::max(1.0, std::abs(x)))
            throw std::runtime_error("csv coordinates do not match the mesh: " + path);
        u.values.push_back(v);
    }
    check_size(mesh, u);
    return u;
}

}  // namespace autocat::grid
