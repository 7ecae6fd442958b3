#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "autocat/linalg.hpp"

using namespace autocat::linalg;
using doctest::Approx;

namespace {

Eigen::MatrixXd dense(const Tridiagonal& A) {
    const auto n = static_cast<Eigen::Index>(A.size());
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        M(i, i) = A.diag[i];
        if (i + 1 < n) {
            M(i, i + 1) = A.upper[i];
            M(i + 1, i) = A.lower[i];
        }
    }
    return M;
}

Tridiagonal random_tridiagonal(std::mt19937_64& rng, std::size_t n, bool symmetric) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Tridiagonal A(n);
    for (std::size_t i = 0; i < n; ++i) A.diag[i] = u(rng);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        A.upper[i] = u(rng);
        A.lower[i] = symmetric ? A.upper[i] : u(rng);
    }
    return A;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("tridiagonal apply and solve against a dense oracle") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + trial * 3;
        const Tridiagonal A = random_tridiagonal(rng, n, false);
        std::vector<double> b(n);
        for (double& v : b) v = u(rng);
        const Eigen::MatrixXd M = dense(A);
        const Eigen::VectorXd eb = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(n));
        const std::vector<double> Ab = A.apply(b);
        const Eigen::VectorXd Mb = M * eb;
        for (std::size_t i = 0; i < n; ++i) CHECK(Ab[i] == Approx(Mb[static_cast<Eigen::Index>(i)]));
        const auto x = solve(A, b);
        REQUIRE(x.has_value());
        const Eigen::VectorXd ex = M.fullPivLu().solve(eb);
        const double scale = ex.cwiseAbs().maxCoeff();
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs((*x)[i] - ex[static_cast<Eigen::Index>(i)]) <= 1e-9 * (1.0 + scale));
    }
}

TEST_CASE("singular tridiagonal systems are reported") {
    Tridiagonal A(3);
    A.diag = {1.0, 1.0, 0.0};
    A.upper = {1.0, 0.0};
    A.lower = {1.0, 0.0};
    CHECK_FALSE(solve(A, {1.0, 1.0, 1.0}).has_value());
}

TEST_CASE("bordered solve against a dense oracle") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 5 + trial;
        Tridiagonal A = random_tridiagonal(rng, n, false);
        for (double& d : A.diag) d += 3.0;
        std::vector<double> b(n), c(n), f(n);
        for (std::size_t i = 0; i < n; ++i) {
            b[i] = u(rng);
            c[i] = u(rng);
            f[i] = u(rng);
        }
        const double d = 2.0 + u(rng), g = u(rng);
        const auto s = solve_bordered(A, b, c, d, f, g);
        REQUIRE(s.has_value());
        const auto N = static_cast<Eigen::Index>(n);
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N + 1, N + 1);
        M.topLeftCorner(N, N) = dense(A);
        Eigen::VectorXd rhs(N + 1);
        for (Eigen::Index i = 0; i < N; ++i) {
            M(i, N) = b[i];
            M(N, i) = c[i];
            rhs[i] = f[i];
        }
        M(N, N) = d;
        rhs[N] = g;
        const Eigen::VectorXd x = M.fullPivLu().solve(rhs);
        for (Eigen::Index i = 0; i < N; ++i) CHECK(s->x[i] == Approx(x[i]).epsilon(1e-9));
        CHECK(s->y == Approx(x[N]).epsilon(1e-9));
    }
}

TEST_CASE("smallest eigenvalue and Sturm counts against a dense oracle") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3 + trial * 4;
        const Tridiagonal A = random_tridiagonal(rng, n, true);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(A));
        const Eigen::VectorXd ev = es.eigenvalues();
        CHECK(smallest_eigenvalue(A.diag, A.upper) == Approx(ev[0]).epsilon(1e-10).scale(1.0));
        const double x = 0.5 * (ev[0] + ev[static_cast<Eigen::Index>(n) - 1]) + 1e-3;
        int below = 0;
        for (Eigen::Index i = 0; i < ev.size(); ++i) below += ev[i] < x;
        CHECK(sturm_count(A.diag, A.upper, x) == below);
    }
}

}  // TEST_SUITE
