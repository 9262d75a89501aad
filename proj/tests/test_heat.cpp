#include <doctest.h>

#include <cmath>

#include "prandtl/critical_path.hpp"
#include "prandtl/error.hpp"
#include "prandtl/heat.hpp"

using namespace prandtl;

namespace {

// Shape whose heat flow is known: an error-function ramp already diffused for time s.
ProfileShape shifted_ramp(double U0, double s) {
    ProfileShape p;
    p.family = "shifted-ramp";
    p.U0 = U0;
    p.derivs = [=](double y) { return erf_ramp(U0, s, y); };
    return p;
}

// Crank-Nicolson on [0, Y] with Dirichlet data, Thomas algorithm.
std::vector<double> cn_heat(const ProfileShape& s, double Y, int N, double T, int steps) {
    const double h = Y / N, dt = T / steps, r = dt / (2 * h * h);
    std::vector<double> u(N + 1);
    for (int i = 0; i <= N; ++i) u[i] = s.value(i * h);
    const double right = u[N];
    std::vector<double> a(N + 1, -r), b(N + 1, 1 + 2 * r), c(N + 1, -r), d(N + 1);
    for (int n = 0; n < steps; ++n) {
        for (int i = 1; i < N; ++i) d[i] = r * u[i - 1] + (1 - 2 * r) * u[i] + r * u[i + 1];
        d[1] += r * 0.0;
        d[N - 1] += r * right;
        std::vector<double> cp(N + 1), dp(N + 1);
        cp[1] = c[1] / b[1];
        dp[1] = d[1] / b[1];
        for (int i = 2; i < N; ++i) {
            const double m = b[i] - a[i] * cp[i - 1];
            cp[i] = c[i] / m;
            dp[i] = (d[i] - a[i] * dp[i - 1]) / m;
        }
        u[N - 1] = dp[N - 1];
        for (int i = N - 2; i >= 1; --i) u[i] = dp[i] - cp[i] * u[i + 1];
        u[0] = 0.0;
        u[N] = right;
    }
    return u;
}

}  // namespace

TEST_CASE("error-function ramp is reproduced") {
    auto s = shifted_ramp(1.3, 0.5);
    HeatSolution hs(s);
    double worst = 0;
    for (double t : {0.01, 0.1, 0.4})
        for (double y : {0.05, 0.4, 1.0, 2.5, 5.0, 9.0}) {
            auto d = hs.derivs(t, y), e = erf_ramp(1.3, 0.5 + t, y);
            for (int j = 0; j < 5; ++j) worst = std::max(worst, std::abs(d[j] - e[j]));
        }
    CHECK(worst < 1e-8);
    auto m = make_shape("monotone", {{"U0", 2.0}});
    HeatSolution hm(m);
    auto d = hm.derivs(0.3, 1.7), e = erf_ramp(2.0, 0.3, 1.7);
    for (int j = 0; j < 5; ++j) CHECK(std::abs(d[j] - e[j]) < 1e-12);
}

TEST_CASE("kernel solution agrees with a Crank-Nicolson finite-difference solve") {
    auto s = make_shape("gaussian-bump", {});
    HeatSolution hs(s);
    const double Y = 20, T = 0.05;
    const int N = 2000;
    auto u = cn_heat(s, Y, N, T, 500);
    double worst = 0;
    for (int i = 0; i <= N / 2; i += 5) worst = std::max(worst, std::abs(u[i] - hs.derivs(T, i * Y / N)[0]));
    CHECK(worst < 5e-5);
}

TEST_CASE("field invariants") {
    auto s = make_shape("gaussian-bump", {});
    auto f = solve_heat(s, UniformGrid(0, 10, 400), UniformGrid(0, 0.1, 10));
    auto c = check_heat_field(f, 5);
    CHECK(c.pde_residual < 1e-6);
    CHECK(c.wall_value < 1e-14);
    CHECK(c.max_principle < 1e-12);
    // tabulated slices equal direct evaluation
    auto sl = f.slice_at(0.05);
    CHECK(std::abs(sl.d[2][123] - f.solution->derivs(0.05, f.y_grid[123])[2]) < 1e-14);
}

TEST_CASE("critical path matches per-slice root finding") {
    auto p = make_profile("gaussian-bump", {});
    auto f = solve_heat(p.shape, UniformGrid(0, 10, 200), UniformGrid(0, 0.1, 20));
    auto path = track_critical_point(f, p.a0);
    double worst = 0;
    for (const auto& pt : path.points) {
        double a = pt.a;
        for (int it = 0; it < 20; ++it) {
            auto d = f.solution->derivs(pt.t, a);
            a -= d[1] / d[2];
        }
        worst = std::max(worst, std::abs(a - pt.a));
        CHECK(pt.lambda < 0);
    }
    CHECK(worst < 1e-8);
    // off-node evaluation also sits on the root
    auto mid = path.state_at(0.0333);
    CHECK(std::abs(mid.slope) < 1e-8);
}

TEST_CASE("curvature floor ends the horizon") {
    auto p = make_profile("gaussian-bump", {});
    auto f = solve_heat(p.shape, UniformGrid(0, 10, 100), UniformGrid(0, 0.5, 10));
    try {
        track_critical_point(f, p.a0);
        FAIL("expected CurvatureVanished");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CurvatureVanished);
    }
    PathOptions o;
    o.truncate = true;
    auto path = track_critical_point(f, p.a0, o);
    CHECK(path.horizon > 0.1);
    CHECK(path.horizon < 0.25);
}

TEST_CASE("frozen background keeps the critical point fixed") {
    auto p = make_profile("algebraic-bump", {});
    auto f = frozen_field(p.shape, UniformGrid(0, 30, 300), 1.0);
    auto path = track_critical_point(f, p.a0);
    auto s = path.at(0.7);
    CHECK(s.a == doctest::Approx(p.a0).epsilon(1e-14));
    CHECK(s.int_u == doctest::Approx(0.7 * p.shape.value(p.a0)).epsilon(1e-12));
}
