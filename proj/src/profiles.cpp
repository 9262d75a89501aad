#include "prandtl/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <boost/math/tools/roots.hpp>

#include "prandtl/error.hpp"

namespace prandtl {

namespace {

double param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

// y^2 e^{-y^2} and its derivatives via Leibniz with Hermite polynomials.
Derivs5 y2_gauss(double y) {
    auto H = hermite_polys(4, y);
    double g = std::exp(-y * y);
    double gd[5];
    for (int n = 0; n <= 4; ++n) gd[n] = ((n % 2) ? -1.0 : 1.0) * H[n] * g;
    double p[3] = {y * y, 2 * y, 2.0};
    Derivs5 out{};
    const int binom[5][5] = {{1}, {1, 1}, {1, 2, 1}, {1, 3, 3, 1}, {1, 4, 6, 4, 1}};
    for (int n = 0; n <= 4; ++n)
        for (int j = 0; j <= std::min(n, 2); ++j) out[n] += binom[n][j] * p[j] * gd[n - j];
    return out;
}

// Real and imaginary parts of d^n/dy^n (y - i)^{-1}: y/(1+y^2) and 1/(1+y^2).
void rational_derivs(double y, Derivs5& re, Derivs5& im) {
    std::complex<double> w(y, -1.0);
    double fact = 1.0;
    for (int n = 0; n <= 4; ++n) {
        if (n > 0) fact *= n;
        std::complex<double> d = ((n % 2) ? -1.0 : 1.0) * fact / std::pow(w, n + 1);
        re[n] = d.real();
        im[n] = d.imag();
    }
}

}  // namespace

const char* decay_kind_name(DecayKind kind) {
    switch (kind) {
    case DecayKind::Exponential: return "exponential";
    case DecayKind::Algebraic: return "algebraic";
    case DecayKind::Gaussian: return "gaussian";
    }
    return "unknown";
}

std::vector<double> hermite_polys(int n, double x) {
    std::vector<double> H(n + 1);
    H[0] = 1.0;
    if (n >= 1) H[1] = 2 * x;
    for (int m = 1; m < n; ++m) H[m + 1] = 2 * x * H[m] - 2 * m * H[m - 1];
    return H;
}

ProfileShape make_shape(const std::string& family, const std::map<std::string, double>& params) {
    ProfileShape s;
    s.family = family;
    s.params = params;
    const double U0 = param(params, "U0", 1.0);
    const double A = param(params, "A", 1.0);
    if (!(U0 > 0)) fail(ErrorCode::InvalidArgument, "free-stream speed U0 must be positive");
    s.U0 = U0;
    if (family == "gaussian-bump") {
        s.params = {{"U0", U0}, {"A", A}};
        s.decay = {DecayKind::Exponential, 1.0};
        s.derivs = [U0, A](double y) {
            double e = std::exp(-y);
            Derivs5 b = y2_gauss(y);
            Derivs5 d{};
            d[0] = U0 * (1 - e) + A * b[0];
            for (int n = 1; n <= 4; ++n) d[n] = U0 * ((n % 2) ? e : -e) + A * b[n];
            return d;
        };
    } else if (family == "algebraic-bump") {
        s.params = {{"U0", U0}, {"A", A}};
        s.decay = {DecayKind::Algebraic, 2.0};
        s.derivs = [U0, A](double y) {
            Derivs5 re, im;
            rational_derivs(y, re, im);
            Derivs5 d{};
            // U0 y^2/(1+y^2) = U0 - U0/(1+y^2)
            d[0] = U0 - U0 * im[0] + A * re[0];
            for (int n = 1; n <= 4; ++n) d[n] = -U0 * im[n] + A * re[n];
            return d;
        };
    } else if (family == "monotone") {
        s.params = {{"U0", U0}};
        s.decay = {DecayKind::Gaussian, 0.25};
        s.derivs = [U0](double y) {
            Derivs5 d{};
            d[0] = U0 * std::erf(0.5 * y);
            auto H = hermite_polys(3, 0.5 * y);
            double g = U0 * std::exp(-0.25 * y * y) / std::sqrt(M_PI);
            double c = 1.0;
            for (int n = 1; n <= 4; ++n) {
                d[n] = c * H[n - 1] * g;
                c *= -0.5;
            }
            return d;
        };
    } else {
        fail(ErrorCode::ConfigError, "unknown profile family '" + family + "'");
    }
    return s;
}

std::vector<CriticalPoint> scan_critical_points(const ProfileShape& shape, const ScanOptions& opt) {
    std::vector<CriticalPoint> out;
    const double h = opt.y_max / static_cast<double>(opt.samples);
    auto slope = [&](double y) { return shape.derivs(y)[1]; };
    double y_prev = h, s_prev = slope(h);
    for (std::size_t i = 2; i <= opt.samples; ++i) {
        double y = h * static_cast<double>(i);
        double s = slope(y);
        if (s_prev == 0.0 || (s_prev < 0) != (s < 0)) {
            double a = y_prev;
            if (s_prev != 0.0) {
                boost::uintmax_t iters = 200;
                auto tol = boost::math::tools::eps_tolerance<double>(52);
                auto r = boost::math::tools::toms748_solve(slope, y_prev, y, s_prev, s, tol, iters);
                a = 0.5 * (r.first + r.second);
            }
            out.push_back({a, shape.derivs(a)[2]});
        }
        y_prev = y;
        s_prev = s;
    }
    return out;
}

ShearProfile locate_critical_point(ProfileShape shape, const ScanOptions& opt) {
    auto pts = scan_critical_points(shape, opt);
    if (pts.empty())
        fail(ErrorCode::NoCriticalPoint, "profile '" + shape.family + "' has no interior critical point");
    double curv_scale = 0.0;
    const double h = opt.y_max / static_cast<double>(opt.samples);
    for (std::size_t i = 0; i <= opt.samples; ++i)
        curv_scale = std::max(curv_scale, std::abs(shape.derivs(h * static_cast<double>(i))[2]));
    // maxima carry the sign convention U_s''(a) < 0; fall back to the first minimum
    const CriticalPoint* pick = nullptr;
    for (const auto& p : pts) {
        double left = shape.derivs(p.a - 1e-3 * h)[1];
        if (left > 0 || p.curvature < 0) {
            pick = &p;
            break;
        }
    }
    if (!pick) pick = &pts.front();
    if (std::abs(pick->curvature) <= opt.degenerate_tol * curv_scale)
        fail(ErrorCode::DegenerateCritical, "critical point at y=" + std::to_string(pick->a) +
                                                " has vanishing curvature");
    ShearProfile p;
    p.a0 = pick->a;
    p.curvature = pick->curvature;
    p.shape = std::move(shape);
    return p;
}

ShearProfile make_profile(const std::string& family, const std::map<std::string, double>& params,
                          const ScanOptions& opt) {
    return locate_critical_point(make_shape(family, params), opt);
}

ProfileCheck check_profile(const ShearProfile& p, double y_max, std::size_t samples) {
    ProfileCheck c;
    c.wall_value = std::abs(p.derivs(0.0)[0]);
    c.far_defect = std::abs(p.derivs(y_max)[0] - p.U0());
    c.slope_at_a0 = std::abs(p.derivs(p.a0)[1]);
    c.tail_lower = INFINITY;
    c.tail_upper = 0.0;
    const double power = p.shape.decay.parameter;
    for (std::size_t i = 0; i <= samples; ++i) {
        double y = y_max * static_cast<double>(i) / static_cast<double>(samples);
        auto d = p.derivs(y);
        d[0] -= p.U0();
        for (double v : d) c.max_derivative = std::max(c.max_derivative, std::abs(v));
        if (y >= 0.5 * y_max && y > 0) {
            double w = std::abs(d[1]) * std::pow(y, power);
            c.tail_lower = std::min(c.tail_lower, w);
            c.tail_upper = std::max(c.tail_upper, w);
        }
    }
    return c;
}

}  // namespace prandtl
