#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "autocat/linalg.hpp"
#include "autocat/model.hpp"

namespace autocat::grid {

using model::ProblemParams;

enum class DomainKind { interval, radial_ball };

struct Domain {
    DomainKind kind = DomainKind::interval;
    double a = 0.0;       // interval endpoints
    double b = 1.0;
    int dim = 1;          // ball dimension
    double radius = 1.0;  // ball radius

    static Domain interval(double a, double b);
    static Domain radial_ball(int N, double R);

    /// Lebesgue measure of the domain (|B_R| for balls).
    double measure() const;
    double length() const;  // b - a, or R
    std::string describe() const;
};

class GridFunction {
public:
    std::vector<double> values;

    GridFunction() = default;
    explicit GridFunction(std::size_t n, double v = 0.0) : values(n, v) {}
    explicit GridFunction(std::vector<double> v) : values(std::move(v)) {}

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }

    GridFunction positive_part() const;
    GridFunction negative_part() const;
    double sup_norm() const;
    bool is_zero() const;
};

/// Uniform grid on an interval (vertex nodes) or a ball (staggered radial nodes).
///
/// The discrete operator is -Δ_h = W^{-1} K with K symmetric tridiagonal built
/// from edge conductances; edge k sits between node k-1 and node k, edge 0 and
/// the last edge touch the boundary (or the origin for balls).
class Mesh {
public:
    Domain domain;
    int cells = 0;
    double h = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> conductance;  // size nodes + 1

    std::size_t size() const { return nodes.size(); }
    const linalg::Tridiagonal& stiffness() const { return stiffness_; }
    void finalize();

private:
    linalg::Tridiagonal stiffness_;
};

Mesh build_mesh(const Domain& domain, int cells);

struct BoundaryValues {
    double left = 0.0;   // ignored for balls
    double right = 0.0;  // outer boundary
};

/// -Δ_h u with Dirichlet data (zero by default).
GridFunction laplacian_apply(const Mesh& mesh, const GridFunction& u, BoundaryValues bc = {});

struct EigenPair {
    double lambda1 = 0.0;
    GridFunction phi1;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

EigenPair principal_eigenpair(const Mesh& mesh, double tol = 1e-9, int max_iter = 2000);

// integrals ------------------------------------------------------------------

double weighted_dot(const Mesh& mesh, const GridFunction& u, const GridFunction& v);
double l2_norm(const Mesh& mesh, const GridFunction& u);
/// ∫|∇u|² from first differences over every edge.
double dirichlet_integral(const Mesh& mesh, const GridFunction& u);
/// ∫ (u⁺)^q.
double positive_power_integral(const Mesh& mesh, const GridFunction& u, double q);

double energy(const ProblemParams& p, const Mesh& mesh, const GridFunction& u);
/// K u - W f(u⁺): the exact gradient of the discrete energy.
GridFunction energy_gradient(const ProblemParams& p, const Mesh& mesh, const GridFunction& u);
/// Strong residual -Δ_h u - f(u⁺).
GridFunction residual(const ProblemParams& p, const Mesh& mesh, const GridFunction& u);
/// Discrete L² norm of the strong residual.
double residual_norm(const ProblemParams& p, const Mesh& mesh, const GridFunction& u);

/// K - W diag(f'(u)) with f' taken at max(u, eps) on u > 0 and 0 elsewhere.
linalg::Tridiagonal jacobian(const ProblemParams& p, const Mesh& mesh, const GridFunction& u,
                             double eps_reg);

/// Smallest q >= 1 with q·m >= 1 and q·n >= 1 (when λ != 0), so that
/// v ↦ f(v^q) is Lipschitz at v = 0.
double lifting_exponent(const ProblemParams& p);

/// Jacobian of K v^q - W f(v^q) with respect to v >= 0.
linalg::Tridiagonal lifted_jacobian(const ProblemParams& p, const Mesh& mesh, const GridFunction& v, double q);

double fiber(const ProblemParams& p, const Mesh& mesh, const GridFunction& v, double t);
double fiber_derivative(const ProblemParams& p, const Mesh& mesh, const GridFunction& v, double t);

/// Piecewise-linear interpolation of a radial profile given at increasing r.
/// Interval nodes use their distance to the midpoint as r; zero beyond r.back().
GridFunction sample_profile(const Mesh& mesh, const std::vector<double>& r,
                            const std::vector<double>& u);

// serialization --------------------------------------------------------------

void write_csv(std::ostream& os, const Mesh& mesh, const GridFunction& u);
void write_csv(const std::string& path, const Mesh& mesh, const GridFunction& u);
/// Reads (coordinate, value) rows; the coordinates must match the mesh nodes.
GridFunction read_csv(const std::string& path, const Mesh& mesh);

}  // namespace autocat::grid
