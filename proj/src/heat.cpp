#include "prandtl/heat.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "prandtl/error.hpp"

namespace prandtl {

namespace {

struct KronrodTable {
    double x[15];
    double wk[15];
    double wg[15];  // zero on Kronrod-only nodes
};

const KronrodTable& kronrod15() {
    static const KronrodTable table = [] {
        using K = boost::math::quadrature::gauss_kronrod<double, 15>;
        using G = boost::math::quadrature::gauss<double, 7>;
        KronrodTable t{};
        const auto& ax = K::abscissa();
        const auto& aw = K::weights();
        const auto& gw = G::weights();
        int n = 0;
        for (int i = 0; i < 8; ++i) {
            double g = (i % 2 == 0) ? gw[i / 2] : 0.0;
            t.x[n] = ax[i];
            t.wk[n] = aw[i];
            t.wg[n] = g;
            ++n;
            if (i > 0) {
                t.x[n] = -ax[i];
                t.wk[n] = aw[i];
                t.wg[n] = g;
                ++n;
            }
        }
        return t;
    }();
    return table;
}

}  // namespace

Derivs5 erf_ramp(double U0, double t, double y) {
    const double s = std::sqrt(1.0 + t);
    const double x = y / (2.0 * s);
    Derivs5 d{};
    d[0] = U0 * std::erf(x);
    auto H = hermite_polys(3, x);
    const double g = U0 * std::exp(-x * x) / std::sqrt(M_PI) / s;
    double c = 1.0;
    for (int n = 1; n <= 4; ++n) {
        d[n] = c * H[n - 1] * g;
        c *= -0.5 / s;
    }
    return d;
}

HeatSolution::HeatSolution(ProfileShape shape, HeatOptions opt, bool frozen)
    : shape_(std::move(shape)), opt_(opt), frozen_(frozen) {}

std::array<double, 3> HeatSolution::time_derivs(const Derivs5& d) const {
    if (frozen_) return {0.0, 0.0, 0.0};
    return {d[2], d[3], d[4]};
}

std::array<double, 3> HeatSolution::time_derivs(double t, double y) const {
    return time_derivs(derivs(t, y));
}

Derivs5 HeatSolution::derivs(double t, double y) const {
    if (t < 0) fail(ErrorCode::InvalidArgument, "heat flow evaluated at negative time");
    if (frozen_ || t == 0.0) return shape_.derivs(y);
    const double U0 = shape_.U0;
    Derivs5 out = erf_ramp(U0, t, y);

    // remainder r = U_s - U0 erf(y/2), r(0) = 0; odd extension carries the Dirichlet condition
    auto remainder = [&](double xi) {
        Derivs5 a = shape_.derivs(xi);
        Derivs5 b = erf_ramp(U0, 0.0, xi);
        for (int n = 0; n < 5; ++n) a[n] -= b[n];
        return a;
    };
    const double sig = std::sqrt(2.0 * t);
    const double W = opt_.window_sigmas * sig;
    const double lo = std::max(0.0, y - W);
    const double hi = y + W;
    const double pw = std::min(opt_.panel_sigmas * sig, opt_.max_panel);
    const auto npan = static_cast<std::size_t>(std::ceil((hi - lo) / pw));
    const double h = (hi - lo) / static_cast<double>(npan);
    const double norm = 1.0 / std::sqrt(4.0 * M_PI * t);
    const double q = 1.0 / (4.0 * t);
    const auto& K = kronrod15();

    double acc_k[5] = {0, 0, 0, 0, 0}, err[5] = {0, 0, 0, 0, 0}, mag[5] = {0, 0, 0, 0, 0};
    for (std::size_t p = 0; p < npan; ++p) {
        const double c = lo + (static_cast<double>(p) + 0.5) * h;
        const double r = 0.5 * h;
        double pk[5] = {0, 0, 0, 0, 0}, pg[5] = {0, 0, 0, 0, 0};
        for (int i = 0; i < 15; ++i) {
            const double xi = c + r * K.x[i];
            const double km = norm * std::exp(-(y - xi) * (y - xi) * q);
            const double kp = norm * std::exp(-(y + xi) * (y + xi) * q);
            const Derivs5 g = remainder(xi);
            for (int n = 0; n < 5; ++n) {
                // even derivative orders see the odd extension, odd orders the even one
                const double v = (n % 2 == 0 ? km - kp : km + kp) * g[n];
                pk[n] += K.wk[i] * v;
                pg[n] += K.wg[i] * v;
                mag[n] += r * K.wk[i] * std::abs(v);
            }
        }
        for (int n = 0; n < 5; ++n) {
            acc_k[n] += r * pk[n];
            err[n] += r * std::abs(pk[n] - pg[n]);
        }
    }
    for (int n = 0; n < 5; ++n) {
        if (err[n] > opt_.tol * std::max(U0, mag[n]))
            fail(ErrorCode::QuadratureFailure, "kernel quadrature did not converge at t=" + std::to_string(t) +
                                                   ", y=" + std::to_string(y));
        out[n] += acc_k[n];
    }
    // jump of the odd extension's second derivative at the wall
    const double r2 = remainder(0.0)[2];
    const double G0 = norm * std::exp(-y * y * q);
    out[3] += 2.0 * r2 * G0;
    out[4] += 2.0 * r2 * (-y / (2.0 * t)) * G0;
    return out;
}

HeatSlice HeatFlowField::slice_at(double t) const {
    if (t > horizon() * (1 + 1e-12)) fail(ErrorCode::HorizonExceeded, "time beyond the heat field horizon");
    if (frozen()) return slices.front();
    std::size_t j = t_grid.node_index(t);
    if (j < t_grid.size()) return slices[j];
    HeatSlice s;
    s.t = t;
    const std::size_t n = y_grid.size();
    for (auto& v : s.d) v.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto d = solution->derivs(t, y_grid[i]);
        for (int k = 0; k < 5; ++k) s.d[k][i] = d[k];
    }
    return s;
}

void HeatFlowField::sample(double t, std::vector<double>& u, std::vector<double>& uy) const {
    const std::size_t n = y_grid.size();
    u.resize(n);
    uy.resize(n);
    if (frozen() || slices.size() == 1) {
        u = slices.front().d[0];
        uy = slices.front().d[1];
        return;
    }
    if (t > horizon() * (1 + 1e-12) || t < 0) fail(ErrorCode::HorizonExceeded, "time outside the heat field");
    const std::size_t j = t_grid.cell(t);
    const double dt = t_grid.step();
    const double s = std::clamp((t - t_grid[j]) / dt, 0.0, 1.0);
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    const auto& A = slices[j].d;
    const auto& B = slices[j + 1].d;
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = h00 * A[0][i] + h10 * dt * A[2][i] + h01 * B[0][i] + h11 * dt * B[2][i];
        uy[i] = h00 * A[1][i] + h10 * dt * A[3][i] + h01 * B[1][i] + h11 * dt * B[3][i];
    }
}

HeatFlowField solve_heat(const ProfileShape& profile, const UniformGrid& y_grid, const UniformGrid& t_grid,
                         const HeatOptions& opt) {
    if (t_grid.lo != 0.0) fail(ErrorCode::InvalidArgument, "time grid must start at t=0");
    HeatFlowField f;
    f.y_grid = y_grid;
    f.t_grid = t_grid;
    f.solution = std::make_shared<const HeatSolution>(profile, opt, false);
    f.slices.resize(t_grid.size());
    const std::size_t ny = y_grid.size();
    auto work = [&](std::size_t j) {
        HeatSlice& s = f.slices[j];
        s.t = t_grid[j];
        for (auto& v : s.d) v.resize(ny);
        for (std::size_t i = 0; i < ny; ++i) {
            auto d = f.solution->derivs(s.t, y_grid[i]);
            for (int k = 0; k < 5; ++k) s.d[k][i] = d[k];
        }
    };
    const unsigned nt = std::max(1u, opt.threads);
    if (nt == 1) {
        for (std::size_t j = 0; j < f.slices.size(); ++j) work(j);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr first;
        std::mutex m;
        for (unsigned w = 0; w < nt; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t j = w; j < f.slices.size(); j += nt) work(j);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(m);
                    if (!first) first = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (first) std::rethrow_exception(first);
    }
    return f;
}

HeatFlowField frozen_field(const ProfileShape& profile, const UniformGrid& y_grid, double horizon) {
    HeatFlowField f;
    f.y_grid = y_grid;
    f.t_grid = UniformGrid(0.0, horizon, 1);
    f.solution = std::make_shared<const HeatSolution>(profile, HeatOptions{}, true);
    HeatSlice s;
    for (auto& v : s.d) v.resize(y_grid.size());
    for (std::size_t i = 0; i < y_grid.size(); ++i) {
        auto d = profile.derivs(y_grid[i]);
        for (int k = 0; k < 5; ++k) s.d[k][i] = d[k];
    }
    f.slices = {s, s};
    f.slices[1].t = horizon;
    return f;
}

HeatCheck check_heat_field(const HeatFlowField& field, std::size_t stride) {
    HeatCheck c;
    const auto& shape = field.shape();
    double lo = 0.0, hi = shape.U0;
    for (std::size_t i = 0; i < field.y_grid.size(); ++i) {
        double v = field.slices.front().d[0][i];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double slack = 1e-12 * std::max(1.0, shape.U0);
    for (const auto& s : field.slices) {
        c.wall_value = std::max(c.wall_value, std::abs(s.d[0].front()));
        c.far_defect = std::max(c.far_defect, std::abs(s.d[0].back() - shape.U0));
        for (double v : s.d[0]) c.max_principle = std::max({c.max_principle, lo - slack - v, v - hi - slack});
        if (s.t <= 0.0 || field.frozen()) continue;
        const double d = std::min(1e-3, s.t / 16.0);
        for (std::size_t i = stride; i + 1 < field.y_grid.size(); i += stride) {
            const double y = field.y_grid[i];
            auto u = [&](double t) { return field.solution->derivs(t, y)[0]; };
            double ut = (u(s.t + 3 * d) - 9 * u(s.t + 2 * d) + 45 * u(s.t + d) - 45 * u(s.t - d) +
                         9 * u(s.t - 2 * d) - u(s.t - 3 * d)) / (60 * d);
            c.pde_residual = std::max(c.pde_residual, std::abs(ut - s.d[2][i]));
        }
    }
    return c;
}

}  // namespace prandtl
