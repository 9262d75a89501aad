#include <doctest.h>

#include <cmath>

#include <boost/math/tools/roots.hpp>

#include "prandtl/error.hpp"
#include "prandtl/profiles.hpp"

using namespace prandtl;

TEST_CASE("derivatives agree with centred differences") {
    for (const char* fam : {"gaussian-bump", "algebraic-bump", "monotone"}) {
        auto s = make_shape(fam, {});
        const double h = 1e-4;
        for (double y : {0.3, 1.1, 2.7, 6.0}) {
            auto p = s.derivs(y + h), m = s.derivs(y - h), c = s.derivs(y);
            for (int j = 1; j <= 4; ++j) {
                const double fd = (p[j - 1] - m[j - 1]) / (2 * h);
                CHECK(std::abs(fd - c[j]) < 1e-6 * std::max(1.0, std::abs(c[j])));
            }
        }
        CHECK(std::abs(s.value(0.0)) < 1e-15);
    }
}

TEST_CASE("gaussian-bump critical point matches an independent root find") {
    // U' = e^{-y} + (2y - 2y^3) e^{-y^2} written out by hand
    auto up = [](double y) { return std::exp(-y) + (2 * y - 2 * y * y * y) * std::exp(-y * y); };
    std::uintmax_t it = 100;
    auto r = boost::math::tools::toms748_solve(up, 1.0, 1.5, boost::math::tools::eps_tolerance<double>(50), it);
    auto p = make_profile("gaussian-bump", {});
    CHECK(p.a0 == doctest::Approx(0.5 * (r.first + r.second)).epsilon(1e-13));
    CHECK(p.curvature < 0);
}

TEST_CASE("algebraic-bump critical point is 1 + sqrt 2") {
    auto p = make_profile("algebraic-bump", {});
    CHECK(p.a0 == doctest::Approx(1 + std::sqrt(2.0)).epsilon(1e-13));
    CHECK(p.curvature < 0);
    auto c = check_profile(p, 30.0);
    CHECK(c.slope_at_a0 < 1e-12);
    CHECK(c.tail_lower > 0);
}

TEST_CASE("monotone profile has no critical point") {
    CHECK_THROWS_WITH_AS(make_profile("monotone", {}), doctest::Contains("no interior critical point"), Error);
    try {
        make_profile("monotone", {});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoCriticalPoint);
    }
}

TEST_CASE("degenerate maximum is rejected") {
    // U = -(y-1)^4 e^{-y}: triple root of U' at y = 1, so U''(1) = 0
    ProfileShape s;
    s.family = "custom";
    s.derivs = [](double y) {
        // coefficients of p with U = p(y) e^{-y}; each derivative maps p -> p' - p
        double c[5] = {-1, 4, -6, 4, -1};  // -(y-1)^4 = -1 + 4y - 6y^2 + 4y^3 - y^4
        Derivs5 d{};
        for (int j = 0; j < 5; ++j) {
            double v = 0, yp = 1;
            for (int i = 0; i < 5; ++i, yp *= y) v += c[i] * yp;
            d[j] = v * std::exp(-y);
            double n[5] = {};
            for (int i = 0; i < 5; ++i) n[i] = (i < 4 ? (i + 1) * c[i + 1] : 0.0) - c[i];
            for (int i = 0; i < 5; ++i) c[i] = n[i];
        }
        return d;
    };
    try {
        locate_critical_point(s);
        FAIL("expected DegenerateCritical");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateCritical);
    }
}

TEST_CASE("unknown family is a config error") {
    try {
        make_shape("blasius", {});
        FAIL("expected ConfigError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ConfigError);
    }
}

TEST_CASE("Hermite polynomials") {
    auto H = hermite_polys(4, 0.7);
    CHECK(H[2] == doctest::Approx(4 * 0.49 - 2));
    CHECK(H[4] == doctest::Approx(16 * std::pow(0.7, 4) - 48 * 0.49 + 12));
}
