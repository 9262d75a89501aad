#include <doctest.h>

#include <cmath>

#include "prandtl/dispersion.hpp"
#include "prandtl/error.hpp"
#include "oracles.hpp"

using namespace prandtl;

namespace {

const Eigenpair& shared_pair() {
    static const Eigenpair p = find_tau(DispersionProblem{});
    return p;
}

}  // namespace

TEST_CASE("unstable eigenvalue and residuals") {
    const auto& p = shared_pair();
    CHECK(p.tau.imag() < 0);
    CHECK(p.ode_residual < 1e-8);
    CHECK(p.residual_norm < 1e-8);
    CHECK(std::abs(p.jumps[0] + p.tau) < 1e-8);
    CHECK(std::abs(p.jumps[1]) < 1e-8);
    CHECK(std::abs(p.jumps[2] - 2.0) < 1e-8);  // -2s with s = -1
    CHECK(p.boundary_left < 1e-10);
    CHECK(p.boundary_right < 1e-10);
}

TEST_CASE("matrix eigenproblem oracle agrees with shooting") {
    const auto& p = shared_pair();
    auto ev = oracle::matrix_eigenvalues(160, 10.0, -1);
    double best = 1e300;
    for (auto e : ev) best = std::min(best, std::abs(e - p.tau));
    MESSAGE("matrix oracle distance " << best << " among " << ev.size() << " eigenvalues");
    CHECK(best < 1e-4);
}

TEST_CASE("coarse scan finds a single lower-half-plane root") {
    // independent sampling of |F| on a fine lattice: the minimum sits at the returned root
    DispersionProblem pb;
    double best = 1e300;
    cplx arg{};
    for (int i = 0; i <= 40; ++i)
        for (int j = 0; j <= 30; ++j) {
            cplx t(-2.0 + 4.0 * i / 40, -2.0 + 1.9 * j / 30);
            double f = std::abs(matching_defect(t, pb));
            if (f < best) best = f, arg = t;
        }
    CHECK(std::abs(arg - shared_pair().tau) < 0.1);
    CHECK(shared_pair().roots.size() == 1);
}

TEST_CASE("grid refinement drift") {
    DispersionProblem pb;
    pb.dz = 5e-4;
    CHECK(std::abs(newton_tau(shared_pair().tau, pb) - shared_pair().tau) < 1e-6);
    DispersionProblem half;
    half.Z = 6.0;
    CHECK(std::abs(newton_tau(shared_pair().tau, half) - shared_pair().tau) < 1e-6);
}

TEST_CASE("conjugate is not an eigenvalue; reflection symmetry holds instead") {
    const auto& p = shared_pair();
    DispersionProblem pb;
    CHECK(std::abs(matching_defect(std::conj(p.tau), pb)) > 1e-2);
    // W(z) + W(-z) = 1 at the same tau
    const std::size_t n = p.z.size();
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(p.W[i] + p.W[n - 1 - i] - 1.0));
    CHECK(worst < 1e-8);
}

TEST_CASE("upper half-plane rectangle has no admissible root") {
    DispersionProblem pb;
    pb.im_lo = 0.05;
    pb.im_hi = 5.0;
    try {
        find_tau(pb);
        FAIL("expected NoRootFound");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoRootFound);
    }
}

TEST_CASE("real tau is rejected by the shooter") {
    CHECK_THROWS_AS(shoot_tails(cplx(0.3, 0.0), DispersionProblem{}), Error);
}

TEST_CASE("layer profile interpolates the jets") {
    const auto& p = shared_pair();
    ShearLayerProfile L(p);
    const std::size_t n = p.z.size(), i = n / 2 + 700;  // z = 0.7
    auto v = L(p.z[i]);
    CHECK(std::abs(v[0] - p.V[i]) < 1e-12);
    // off-node value against a cubic through neighbouring samples is accurate to dz^4
    auto w = L(0.5 * (p.z[i] + p.z[i + 1]));
    cplx cubic = (-p.V[i - 1] + 9.0 * p.V[i] + 9.0 * p.V[i + 1] - p.V[i + 2]) / 16.0;
    CHECK(std::abs(w[0] - cubic) < 1e-10);
    // one-sided limits at the origin carry the jump
    auto r = L.one_sided(0.0, true), l = L.one_sided(0.0, false);
    CHECK(std::abs(r[0] - l[0] + p.tau) < 1e-8);
}
