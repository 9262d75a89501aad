#include "prandtl/norms.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "prandtl/error.hpp"

namespace prandtl {

namespace {

struct LineFit {
    double slope, intercept, rms, slope_stderr;
};

LineFit line_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f{};
    f.slope = sxx > 0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - (f.intercept + f.slope * x[i]);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    f.slope_stderr = (n > 2 && sxx > 0) ? std::sqrt(ss / (n - 2) / sxx) : 0.0;
    return f;
}

}  // namespace

void NormSpec::validate() const {
    if (!(alpha >= 0)) fail(ErrorCode::InvalidArgument, "norm weight alpha must be >= 0");
    if (!(m >= 0)) fail(ErrorCode::InvalidArgument, "Sobolev index m must be >= 0");
    if (!(mu >= 0 && mu < 0.5)) fail(ErrorCode::InvalidArgument, "loss index mu must lie in [0, 1/2)");
}

double weighted_sup(const std::vector<double>& y, const std::vector<cplx>& f, double alpha) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s = std::max(s, std::exp(alpha * y[i]) * std::abs(f[i]));
    return s;
}

double weighted_sup(const std::vector<double>& y, const std::vector<double>& f, double alpha) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s = std::max(s, std::exp(alpha * y[i]) * std::abs(f[i]));
    return s;
}

double weighted_sobolev(const std::vector<double>& y, const std::vector<std::vector<cplx>>& d,
                        double alpha) {
    if (d.empty() || d.size() > 3) fail(ErrorCode::InvalidArgument, "weighted_sobolev supports m <= 2");
    double total = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            // derivatives of e^{alpha y} f by Leibniz
            cplx g = d[0][i];
            if (j == 1) g = alpha * d[0][i] + d[1][i];
            if (j == 2) g = alpha * alpha * d[0][i] + 2.0 * alpha * d[1][i] + d[2][i];
            s = std::max(s, std::exp(alpha * y[i]) * std::abs(g));
        }
        total += s;
    }
    return total;
}

double mode_sobolev_factor(double k, double m) { return std::pow(1.0 + k * k, 0.5 * m); }

double mode_sobolev(const std::vector<double>& y, const std::vector<cplx>& f, double k, double m,
                    double alpha) {
    return mode_sobolev_factor(k, m) * weighted_sup(y, f, alpha);
}

RateFit fit_rate(const std::vector<double>& t, const std::vector<double>& log_norm, double t_lo,
                 double t_hi) {
    std::vector<double> x, v;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] >= t_lo && t[i] <= t_hi) {
            x.push_back(t[i]);
            v.push_back(log_norm[i]);
        }
    }
    if (x.size() < 8) fail(ErrorCode::WindowTooShort, "fit window holds fewer than 8 samples");
    auto f = line_fit(x, v);
    return RateFit{f.slope, f.intercept, f.rms, x.size(), t_lo, t_hi};
}

PowerFit fit_power_law(const std::vector<double>& k, const std::vector<double>& sigma) {
    std::set<double> distinct(k.begin(), k.end());
    if (k.size() != sigma.size() || distinct.size() < 4)
        fail(ErrorCode::InsufficientData, "power-law fit needs at least 4 distinct k");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (!(k[i] > 0 && sigma[i] > 0))
            fail(ErrorCode::InsufficientData, "power-law fit needs positive k and rates");
        lx.push_back(std::log(k[i]));
        ly.push_back(std::log(sigma[i]));
    }
    auto f = line_fit(lx, ly);
    return PowerFit{f.slope, f.intercept, f.rms, f.slope_stderr};
}

const char* tail_kind_name(TailKind kind) {
    switch (kind) {
    case TailKind::Exponential: return "exponential";
    case TailKind::Algebraic: return "algebraic";
    case TailKind::Faster: return "faster";
    }
    return "unknown";
}

TailClass tail_class(const std::vector<double>& y, const std::vector<double>& abs_f, double floor) {
    const double y_mid = 0.5 * (y.front() + y.back());
    std::vector<double> yy, ly, lf;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] < y_mid || y[i] <= 0) continue;
        if (!(std::abs(abs_f[i]) > floor)) continue;
        yy.push_back(y[i]);
        ly.push_back(std::log(y[i]));
        lf.push_back(std::log(std::abs(abs_f[i])));
    }
    TailClass c;
    if (yy.size() < 8) return c;  // below the floor far out: decays faster than anything we can fit
    auto e = line_fit(yy, lf);
    auto a = line_fit(ly, lf);
    c.residual_exponential = e.rms;
    c.residual_algebraic = a.rms;
    if (e.rms <= a.rms) {
        c.kind = TailKind::Exponential;
        c.parameter = -e.slope;
    } else {
        c.kind = TailKind::Algebraic;
        c.parameter = -a.slope;
    }
    return c;
}

TailClass tail_class(const std::vector<double>& y, const std::vector<cplx>& f, double floor) {
    std::vector<double> a(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) a[i] = std::abs(f[i]);
    return tail_class(y, a, floor);
}

void finish_growth_report(GrowthReport& report) {
    std::vector<double> k, s;
    for (const auto& r : report.rows) {
        k.push_back(r.k);
        s.push_back(r.sigma);
    }
    try {
        report.power_law = fit_power_law(k, s);
        report.power_law_status = "ok";
    } catch (const Error& e) {
        report.power_law.reset();
        report.power_law_status = error_name(e.code());
    }
}

}  // namespace prandtl
