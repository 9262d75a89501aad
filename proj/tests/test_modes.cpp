#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "prandtl/dispersion.hpp"
#include "prandtl/error.hpp"
#include "prandtl/modes.hpp"
#include "prandtl/norms.hpp"

using namespace prandtl;

namespace {

struct Fixture {
    ShearProfile prof = make_profile("gaussian-bump", {});
    Eigenpair pair = find_tau(DispersionProblem{});
    HeatFlowField field = solve_heat(prof.shape, UniformGrid(0, 10, 1000), UniformGrid(0, 0.1, 10));
    CriticalPath path = track_critical_point(field, prof.a0);
    ScaledEigendata scaled = scale_eigendata(pair, path);
};

const Fixture& fx() {
    static const Fixture f;
    return f;
}

}  // namespace

TEST_CASE("cutoff derivatives agree with differences") {
    Cutoff c{0.5, 1.0};
    const double h = 1e-5;
    for (double x : {-0.9, -0.6, 0.55, 0.75, 0.95}) {
        auto p = c(x + h), m = c(x - h), v = c(x);
        for (int j = 1; j <= 3; ++j) CHECK(std::abs((p[j - 1] - m[j - 1]) / (2 * h) - v[j]) < 1e-5);
    }
    CHECK(c(0.2)[0] == 1.0);
    CHECK(c(1.2)[0] == 0.0);
}

TEST_CASE("corrector against an adaptive-quadrature antiderivative") {
    auto seed = polynomial_bump(1.0, 2.0);
    CorrectorProfile cp(seed);
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    auto f = [&](double y) { return seed.f(y)[0]; };
    const double mass = GK::integrate(f, 1.0, 2.0, 20, 1e-14);
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
        const double y = 0.9 + 1.2 * i / 49.0;
        const double ref = y <= 1.0 ? 0.0 : GK::integrate(f, 1.0, std::min(y, 2.0), 20, 1e-14) / mass;
        worst = std::max(worst, std::abs(cp(y)[0] - ref));
    }
    CHECK(worst < 1e-10);
    CHECK(cp(0.5)[0] == 0.0);
    CHECK(cp(2.5)[0] == 1.0);
    for (int i = 1; i < 100; ++i) CHECK(cp(1.0 + i / 100.0)[1] >= 0.0);
}

TEST_CASE("zero-mass seed is rejected") {
    try {
        CorrectorProfile cp(odd_bump(1.0, 2.0));
        FAIL("expected ZeroMass");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroMass);
    }
}

TEST_CASE("initial data is the scaled corrector") {
    const auto& f = fx();
    auto prm = ModeParams::defaults(f.prof, 128);
    auto m = assemble_mode(prm, f.field, f.path, f.scaled, 0.0);
    CorrectorProfile cp(prm.f);
    double worst = 0;
    for (std::size_t i = 0; i < m.y.size(); ++i) worst = std::max(worst, std::abs(m.U[i] - prm.eps() * cp(m.y[i])[1]));
    CHECK(worst < 1e-15);
    CHECK(m.U.front() == cplx(0.0));
    CHECK(m.V.front() == cplx(0.0));
}

TEST_CASE("residual agrees with the operator applied by finite differences") {
    const auto& f = fx();
    auto prm = ModeParams::defaults(f.prof, 64);
    const double t = 0.05, h = 1e-4, eps = prm.eps();
    auto m = assemble_mode(prm, f.field, f.path, f.scaled, t);
    auto p1 = assemble_mode(prm, f.field, f.path, f.scaled, t + h), m1 = assemble_mode(prm, f.field, f.path, f.scaled, t - h);
    auto p2 = assemble_mode(prm, f.field, f.path, f.scaled, t + 2 * h), m2 = assemble_mode(prm, f.field, f.path, f.scaled, t - 2 * h);
    auto r = residual(prm, f.field, f.path, f.scaled, m, t);
    auto sl = f.field.slice_at(t);
    double worst = 0, scale = 0;
    for (std::size_t i = 0; i < m.y.size(); ++i) {
        const cplx Ut = (-p2.U[i] + 8.0 * p1.U[i] - 8.0 * m1.U[i] + m2.U[i]) / (12 * h);
        const cplx R = Ut + cplx(0, 1 / eps) * sl.d[0][i] * m.U[i] + m.V[i] * sl.d[1][i] - m.Uyy[i];
        worst = std::max(worst, std::abs(R - r.R[i]));
        scale = std::max(scale, std::abs(r.R[i]));
    }
    CHECK(worst < 1e-6 * scale);
    // U_yy against centred differences of U_y away from the critical point
    // U_yy has kinks where the cutoff and the corrector seed switch on
    const double dy = f.field.y_grid.step(), a = m.state.path.a;
    const double kinks[] = {a, a - prm.phi.delta1, a + prm.phi.delta1, a - prm.phi.delta2, a + prm.phi.delta2,
                            prm.f.lo, prm.f.hi};
    double dworst = 0, dscale = 0;
    for (std::size_t i = 2; i + 2 < m.y.size(); ++i) {
        bool straddles = false;
        for (double b : kinks) straddles = straddles || std::abs(m.y[i] - b) < 2.5 * dy;
        if (straddles) continue;
        const cplx fd = (-m.Uy[i + 2] + 8.0 * m.Uy[i + 1] - 8.0 * m.Uy[i - 1] + m.Uy[i - 2]) / (12 * dy);
        dworst = std::max(dworst, std::abs(fd - m.Uyy[i]));
        dscale = std::max(dscale, std::abs(m.Uyy[i]));
    }
    CHECK(dworst < 1e-3 * dscale);
    // split identity
    double split = 0;
    for (std::size_t i = 0; i < r.R.size(); ++i) split = std::max(split, std::abs(r.R[i] - r.R_bar[i] - t * r.R_tilde[i]));
    CHECK(split < 1e-14 * scale);
}

TEST_CASE("far-field residual vanishes beyond the corrector and cutoff") {
    const auto& f = fx();
    auto prm = ModeParams::defaults(f.prof, 64);
    auto m = assemble_mode(prm, f.field, f.path, f.scaled, 0.08);
    auto r = residual(prm, f.field, f.path, f.scaled, m, 0.08);
    const double edge = std::max(prm.f.hi, m.state.path.a + prm.phi.delta2);
    for (std::size_t i = 0; i < r.y.size(); ++i)
        if (r.y[i] > edge) CHECK(r.R_bar[i] == cplx(0.0));
}

TEST_CASE("normal velocity is continuous across the critical point") {
    const auto& f = fx();
    auto prm = ModeParams::defaults(f.prof, 256);
    ModeInputs in{&f.field, &f.path, &f.scaled};
    for (double t : {0.0, 0.03, 0.09}) {
        auto mt = mode_time(prm, in, t);
        auto lo = mode_normal_jet(prm, in, mt, mt.path.a, false);
        auto hi = mode_normal_jet(prm, in, mt, mt.path.a, true);
        auto vlo = normal_jet(prm, in, mt, mt.path.a, false);
        auto vhi = normal_jet(prm, in, mt, mt.path.a, true);
        for (int d = 0; d < 3; ++d) {
            CHECK(std::abs(hi[d] - lo[d]) < 1e-8 * std::max(1.0, std::abs(hi[d])));
            CHECK(std::abs(vhi[d] - vlo[d]) < 1e-8 * std::max(1.0, std::abs(vhi[d])));
        }
    }
}

TEST_CASE("divergence identity holds to second order") {
    const auto& f = fx();
    auto prm = ModeParams::defaults(f.prof, 64);
    auto m = assemble_mode(prm, f.field, f.path, f.scaled, 0.06);
    const double h = f.field.y_grid.step(), eps = prm.eps();
    double e1 = 0, e2 = 0, exact = 0;
    for (std::size_t i = 2; i + 2 < m.y.size(); ++i) {
        const cplx target = cplx(0, -1) * m.U[i] / eps;
        e1 = std::max(e1, std::abs((m.V[i + 1] - m.V[i - 1]) / (2 * h) - target));
        e2 = std::max(e2, std::abs((m.V[i + 2] - m.V[i - 2]) / (4 * h) - target));
        exact = std::max(exact, std::abs(m.Vy[i] - target));
    }
    CHECK(e2 / e1 > 3.5);
    CHECK(exact < 1e-12 * weighted_sup(m.y, m.U, 0.0) / eps);
}

TEST_CASE("frozen old ansatz inherits the shear tail, the corrected one does not") {
    auto prof = make_profile("algebraic-bump", {});
    Eigenpair pair = find_tau(DispersionProblem{});
    auto fz = frozen_setup(prof, pair, UniformGrid(0, 60, 3000), 1.0);
    auto prm = ModeParams::defaults(prof, 64);
    auto old = prm;
    old.ansatz = Ansatz::Original;
    auto mo = assemble_frozen(old, fz, 0.0);
    auto mn = assemble_frozen(prm, fz, 0.0);
    // ratio to U_s' settles to a constant in the far field
    std::vector<double> ratio;
    for (std::size_t i = mo.y.size() / 2; i < mo.y.size(); i += 100)
        ratio.push_back(std::abs(mo.U[i]) / std::abs(prof.derivs(mo.y[i])[1]));
    for (double r : ratio) CHECK(r == doctest::Approx(ratio.front()).epsilon(1e-8));
    CHECK(tail_class(mn.y, mn.U).kind == TailKind::Faster);
}
