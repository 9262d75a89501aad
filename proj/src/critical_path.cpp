#include "prandtl/critical_path.hpp"

#include <algorithm>
#include <cmath>

#include "prandtl/error.hpp"

namespace prandtl {

namespace {

double slope_rhs(const HeatSolution& sol, double t, double a) {
    auto d = sol.derivs(t, a);
    auto td = sol.time_derivs(d);
    if (d[2] == 0.0) fail(ErrorCode::CurvatureVanished, "curvature vanished on the critical path");
    return -td[1] / d[2];
}

double rk4(const HeatSolution& sol, double t, double a, double h) {
    double k1 = slope_rhs(sol, t, a);
    double k2 = slope_rhs(sol, t + 0.5 * h, a + 0.5 * h * k1);
    double k3 = slope_rhs(sol, t + 0.5 * h, a + 0.5 * h * k2);
    double k4 = slope_rhs(sol, t + h, a + h * k3);
    return a + h * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0;
}

}  // namespace

PathPoint CriticalPath::evaluate(double t, double a) const {
    auto d = solution->derivs(t, a);
    auto td = solution->time_derivs(d);
    PathPoint p;
    p.t = t;
    p.a = a;
    p.lambda = d[2];
    p.slope = d[1];
    p.u_at_a = d[0];
    p.a_dot = -td[1] / d[2];
    p.lambda_dot = td[2] + d[3] * p.a_dot;
    return p;
}

PathPoint CriticalPath::state_at(double t) const {
    if (t < 0 || t > horizon * (1 + 1e-12) + 1e-300)
        fail(ErrorCode::HorizonExceeded, "time " + std::to_string(t) + " beyond the critical-path horizon");
    std::size_t j = std::min(points.size() - 1, static_cast<std::size_t>(std::floor(t / t_step * (1 + 1e-14))));
    const PathPoint& base = points[j];
    double span = t - base.t;
    if (std::abs(span) <= 1e-14 * std::max(1.0, t)) return base;
    auto n = static_cast<std::size_t>(std::ceil(substeps * std::abs(span) / t_step - 1e-9));
    n = std::max<std::size_t>(n, 1);
    double h = span / static_cast<double>(n), a = base.a, s = base.t;
    for (std::size_t i = 0; i < n; ++i, s += h) a = rk4(*solution, s, a, h);
    return evaluate(t, a);
}

PathPoint CriticalPath::at(double t) const {
    PathPoint p = state_at(t);
    std::size_t j = std::min(points.size() - 1, static_cast<std::size_t>(std::floor(t / t_step * (1 + 1e-14))));
    const PathPoint& base = points[j];
    p.int_u = base.int_u;
    p.int_mu = base.int_mu;
    if (t > base.t) {
        auto g = gauss_legendre8(base.t, t);
        for (int i = 0; i < 8; ++i) {
            PathPoint q = state_at(g.nodes[i]);
            p.int_u += g.weights[i] * q.u_at_a;
            p.int_mu += g.weights[i] * std::sqrt(0.5 * std::abs(q.lambda));
        }
    }
    return p;
}

CriticalPath track_critical_point(const HeatFlowField& field, double a0, const PathOptions& opt) {
    CriticalPath path;
    path.solution = field.solution;
    path.substeps = std::max(1u, opt.substeps);
    path.t_step = field.frozen() ? field.horizon() : field.t_grid.step();
    path.horizon = field.horizon();

    PathPoint p0 = path.evaluate(0.0, a0);
    if (!(p0.lambda < 0))
        fail(ErrorCode::InvalidArgument, "critical path needs u_yy(0, a0) < 0");
    const double floor = opt.floor_fraction * std::abs(p0.lambda);
    path.points.push_back(p0);

    const std::size_t nodes = field.frozen() ? 2 : field.t_grid.size();
    for (std::size_t j = 1; j < nodes; ++j) {
        const PathPoint& prev = path.points.back();
        double t1 = field.frozen() ? field.horizon() : field.t_grid[j];
        double h = (t1 - prev.t) / path.substeps;
        double a = prev.a, s = prev.t;
        bool vanished = false;
        for (unsigned i = 0; i < path.substeps; ++i, s += h) {
            try {
                a = rk4(*path.solution, s, a, h);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::CurvatureVanished) throw;
                vanished = true;
                break;
            }
            if (!std::isfinite(a) || std::abs(path.evaluate(s + h, a).lambda) < floor) {
                vanished = true;
                break;
            }
        }
        if (vanished) {
            // bisect the floor crossing inside the last interval
            double lo = prev.t, hi = t1;
            path.horizon = prev.t;
            for (int it = 0; it < 40; ++it) {
                double mid = 0.5 * (lo + hi);
                bool ok = true;
                try {
                    path.horizon = mid;
                    ok = std::abs(path.state_at(mid).lambda) >= floor;
                } catch (const Error&) {
                    ok = false;
                }
                (ok ? lo : hi) = mid;
            }
            path.horizon = lo;
            if (!opt.truncate)
                fail(ErrorCode::CurvatureVanished,
                     "curvature fell below the floor at t=" + std::to_string(lo) + " before the requested horizon");
            break;
        }
        PathPoint p = path.evaluate(t1, a);
        auto g = gauss_legendre8(prev.t, t1);
        p.int_u = prev.int_u;
        p.int_mu = prev.int_mu;
        path.points.push_back(p);
        // running integrals need the node in place for state_at
        double iu = 0, im = 0;
        for (int i = 0; i < 8; ++i) {
            PathPoint q = path.state_at(g.nodes[i]);
            iu += g.weights[i] * q.u_at_a;
            im += g.weights[i] * std::sqrt(0.5 * std::abs(q.lambda));
        }
        path.points.back().int_u += iu;
        path.points.back().int_mu += im;
    }
    return path;
}

}  // namespace prandtl
