#include <doctest.h>

#include <cmath>
#include <random>

#include "prandtl/error.hpp"
#include "prandtl/norms.hpp"

using namespace prandtl;

namespace {
std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> y(n + 1);
    for (int i = 0; i <= n; ++i) y[i] = lo + (hi - lo) * i / n;
    return y;
}
}  // namespace

TEST_CASE("weighted sup of a decaying exponential") {
    auto y = grid(0, 10, 1000);
    std::vector<double> f(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) f[i] = std::exp(-2 * y[i]);
    CHECK(weighted_sup(y, f, 0.0) == doctest::Approx(1.0));
    CHECK(weighted_sup(y, f, 2.0) == doctest::Approx(1.0));
    CHECK(weighted_sup(y, f, 3.0) == doctest::Approx(std::exp(10.0)));
}

TEST_CASE("weighted Sobolev norm matches closed form") {
    // f = y e^{-y}: with alpha = 1, e^y f = y, derivatives 1 and 0
    auto y = grid(0, 5, 500);
    std::vector<cplx> f(y.size()), f1(y.size()), f2(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double e = std::exp(-y[i]);
        f[i] = y[i] * e;
        f1[i] = (1 - y[i]) * e;
        f2[i] = (y[i] - 2) * e;
    }
    CHECK(weighted_sobolev(y, {f, f1, f2}, 1.0) == doctest::Approx(5.0 + 1.0 + 0.0).epsilon(1e-12));
    CHECK(weighted_sobolev(y, {f}, 1.0) == doctest::Approx(5.0));
    CHECK(mode_sobolev(y, f, 3.0, 2.0, 0.0) == doctest::Approx(10.0 * std::exp(-1.0)));
}

TEST_CASE("rate fit on exact exponential data") {
    std::vector<double> t, l;
    for (int i = 0; i <= 50; ++i) {
        t.push_back(0.02 * i);
        l.push_back(3.0 * t.back() + 0.5);
    }
    auto f = fit_rate(t, l, 0.2, 0.9);
    CHECK(f.sigma == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(f.residual < 1e-13);
    CHECK_THROWS_AS(fit_rate(t, l, 0.2, 0.25), Error);
}

TEST_CASE("power-law fit with seeded noise") {
    std::mt19937 gen(12345);
    std::normal_distribution<double> noise(0.0, 0.01);
    std::vector<double> k{32, 64, 128, 256, 512}, s;
    for (double v : k) s.push_back(2.0 * std::pow(v, 0.5) * std::exp(noise(gen)));
    auto p = fit_power_law(k, s);
    CHECK(std::abs(p.p - 0.5) < 0.02);
    CHECK(p.p_stderr > 0);
    CHECK_THROWS_AS(fit_power_law({32, 64, 128}, {1, 2, 3}), Error);
    CHECK_THROWS_AS(fit_power_law({32, 32, 64, 64}, {1, 2, 3, 4}), Error);
}

TEST_CASE("single-k growth report records InsufficientData") {
    GrowthReport r;
    r.rows.push_back({32, 1.0, 0, 1, 0});
    finish_growth_report(r);
    CHECK_FALSE(r.power_law.has_value());
    CHECK(r.power_law_status == "InsufficientData");
}

TEST_CASE("tail classification") {
    auto y = grid(0, 40, 4000);
    std::vector<double> ex(y.size()), al(y.size()), gs(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        ex[i] = 3 * std::exp(-0.7 * y[i]);
        al[i] = 1.0 / std::pow(1 + y[i], 2.0);
        gs[i] = std::exp(-y[i] * y[i]);
    }
    auto a = tail_class(y, ex);
    CHECK(a.kind == TailKind::Exponential);
    CHECK(a.parameter == doctest::Approx(0.7).epsilon(1e-6));
    auto b = tail_class(y, al);
    CHECK(b.kind == TailKind::Algebraic);
    CHECK(std::abs(b.parameter - 2.0) < 0.1);
    CHECK(tail_class(y, gs).kind == TailKind::Faster);
}

TEST_CASE("norm parameters are validated") {
    NormSpec s;
    s.mu = 0.5;
    CHECK_THROWS_AS(s.validate(), Error);
    s.mu = 0.25;
    s.alpha = -1;
    CHECK_THROWS_AS(s.validate(), Error);
}
