#include <doctest.h>

#include <cmath>

#include "prandtl/error.hpp"
#include "prandtl/evolve.hpp"
#include "prandtl/profiles.hpp"

using namespace prandtl;

namespace {

struct Samples {
    std::vector<double> y, u, uy;
};

Samples sample(const ShearProfile& p, double Y, std::size_t n) {
    Samples s;
    s.y = UniformGrid(0, Y, n).points();
    for (double y : s.y) {
        auto d = p.derivs(y);
        s.u.push_back(d[0]);
        s.uy.push_back(d[1]);
    }
    return s;
}

std::vector<cplx> on(const std::vector<double>& y, const std::function<cplx(double)>& f) {
    std::vector<cplx> v;
    for (double x : y) v.push_back(f(x));
    return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double e = 0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
    return e;
}

// -1 when nothing was thrown
int code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return static_cast<int>(e.code());
    }
    return -1;
}

int as_int(ErrorCode c) { return static_cast<int>(c); }

}  // namespace

TEST_CASE("k = 0 reduces to the half-line heat equation") {
    // odd extension of y e^{-y^2} diffuses in closed form
    auto exact = [](double t, double y) { return y * std::pow(1 + 4 * t, -1.5) * std::exp(-y * y / (1 + 4 * t)); };
    const double T = 0.5;
    double prev = 0;
    for (int N : {200, 400, 800}) {
        auto y = UniformGrid(0, 8, N).points();
        FrozenBackground bg(y, std::vector<double>(y.size(), 0.0), std::vector<double>(y.size(), 0.0));
        SolverConfig cfg;
        cfg.dt = 0.01 * 200.0 / N;
        auto tr = evolve(make_state(0, y, on(y, [&](double x) { return cplx(exact(0, x)); })), bg, cfg, T, false);
        const double e = max_diff(tr.final_state.u_hat, on(y, [&](double x) { return cplx(exact(T, x)); }));
        if (prev > 0) CHECK(std::log2(prev / e) > 1.9);
        prev = e;
    }
    CHECK(prev < 1e-5);
}

TEST_CASE("zero data stays zero") {
    auto prof = make_profile("gaussian-bump", {});
    auto s = sample(prof, 10, 400);
    FrozenBackground bg(s.y, s.u, s.uy);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    auto st = make_state(16, s.y, std::vector<cplx>(s.y.size(), 0.0));
    for (int i = 0; i < 20; ++i) ModeStepper(bg, cfg, 16).step(st);
    CHECK(max_diff(st.u_hat, std::vector<cplx>(s.y.size(), 0.0)) == 0.0);
}

TEST_CASE("inviscid solver converges to the closed form at second order") {
    auto prof = make_profile("gaussian-bump", {});
    auto u0 = [](double y) { return cplx(y * std::exp(-(y - 2) * (y - 2)), 0); };
    auto U = [&](double y) {
        auto d = prof.derivs(y);
        return std::array<double, 2>{d[0], d[1]};
    };
    const int k = 8;
    const double T = 0.5;
    std::vector<double> err;
    for (int N : {400, 800, 1600}) {
        auto s = sample(prof, 10, N);
        FrozenBackground bg(s.y, s.u, s.uy, 1e9, 0.5);
        SolverConfig cfg;
        cfg.scheme = Scheme::Inviscid;
        cfg.dt = 0.02 * 400.0 / N;
        cfg.c_cfl = 10;
        auto tr = evolve(make_state(k, s.y, on(s.y, u0)), bg, cfg, T, false);
        err.push_back(max_diff(tr.final_state.u_hat, inviscid_exact(u0, U, k, T, s.y).u_hat));
    }
    const double p1 = std::log2(err[0] / err[1]), p2 = std::log2(err[1] / err[2]);
    MESSAGE("inviscid orders " << p1 << " " << p2);
    CHECK(p1 >= 1.9);
    CHECK(p2 >= 1.9);
}

TEST_CASE("constant shear is a pure phase rotation") {
    const double c = 0.7, T = 0.3;
    const int k = 12;
    auto u0 = [](double y) { return cplx(std::exp(-(y - 3) * (y - 3)), y * std::exp(-y)); };
    auto y = UniformGrid(0, 10, 500).points();
    auto expect = on(y, [&](double x) { return std::exp(cplx(0, -k * c * T)) * u0(x); });

    auto ex = inviscid_exact(u0, [&](double) { return std::array<double, 2>{c, 0.0}; }, k, T, y);
    CHECK(max_diff(ex.u_hat, expect) < 1e-10);

    FrozenBackground bg(y, std::vector<double>(y.size(), c), std::vector<double>(y.size(), 0.0), 1e9, c);
    SolverConfig cfg;
    cfg.scheme = Scheme::Inviscid;
    cfg.dt = 0.01;
    auto tr = evolve(make_state(k, y, on(y, u0)), bg, cfg, T, false);
    CHECK(max_diff(tr.final_state.u_hat, expect) < 1e-10);
}

TEST_CASE("the step is linear") {
    auto prof = make_profile("algebraic-bump", {});
    auto s = sample(prof, 20, 800);
    FrozenBackground bg(s.y, s.u, s.uy, 1e9, prof.derivs(prof.a0)[0]);
    SolverConfig cfg;
    cfg.dt = 2e-3;
    auto a = on(s.y, [](double y) { return cplx(std::exp(-y * y), 0); });
    auto b = on(s.y, [](double y) { return cplx(0, y * y * std::exp(-y)); });
    std::vector<cplx> ab(a.size());
    const cplx ca(0.3, -1.2), cb(2.0, 0.5);
    for (std::size_t i = 0; i < a.size(); ++i) ab[i] = ca * a[i] + cb * b[i];
    auto ea = evolve(make_state(20, s.y, a), bg, cfg, 0.05, false).final_state.u_hat;
    auto eb = evolve(make_state(20, s.y, b), bg, cfg, 0.05, false).final_state.u_hat;
    auto eab = evolve(make_state(20, s.y, ab), bg, cfg, 0.05, false).final_state.u_hat;
    std::vector<cplx> sum(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) sum[i] = ca * ea[i] + cb * eb[i];
    CHECK(max_diff(eab, sum) < 1e-12 * std::max(1.0, max_diff(sum, std::vector<cplx>(a.size(), 0.0))));
}

TEST_CASE("renormalization leaves the log-norm unchanged") {
    auto prof = make_profile("gaussian-bump", {});
    auto s = sample(prof, 10, 800);
    FrozenBackground bg(s.y, s.u, s.uy, 1e9, prof.derivs(prof.a0)[0]);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    auto u0 = on(s.y, [](double y) { return cplx(y * std::exp(-(y - 1.5) * (y - 1.5) * 4), 0); });
    auto raw = evolve(make_state(64, s.y, u0), bg, cfg, 0.1, false);
    auto ren = evolve(make_state(64, s.y, u0), bg, cfg, 0.1, true);
    REQUIRE(raw.log_norm.size() == ren.log_norm.size());
    double worst = 0;
    for (std::size_t i = 0; i < raw.log_norm.size(); ++i) worst = std::max(worst, std::abs(raw.log_norm[i] - ren.log_norm[i]));
    CHECK(worst < 1e-8);
}

TEST_CASE("step guards") {
    auto prof = make_profile("gaussian-bump", {});
    auto s = sample(prof, 10, 200);
    auto u0 = on(s.y, [](double y) { return cplx(y * std::exp(-y * y), 0); });
    SolverConfig cfg;
    cfg.dt = 0.1;
    FrozenBackground open(s.y, s.u, s.uy);
    CHECK(code_of([&] {
              auto st = make_state(64, s.y, u0);
              ModeStepper(open, cfg, 64).step(st);
          }) == as_int(ErrorCode::CflViolation));
    FrozenBackground short_lived(s.y, s.u, s.uy, 0.05);
    cfg.dt = 1e-3;
    CHECK(code_of([&] { evolve(make_state(4, s.y, u0), short_lived, cfg, 0.1, false); }) ==
          as_int(ErrorCode::HorizonExceeded));
    CHECK(code_of([] { parse_scheme("leapfrog"); }) == as_int(ErrorCode::ConfigError));
    CHECK(parse_scheme("imex-cn") == Scheme::CrankNicolson);
}
