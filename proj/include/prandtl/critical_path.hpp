#pragma once

#include <memory>
#include <vector>

#include "prandtl/heat.hpp"

namespace prandtl {

struct PathOptions {
    double floor_fraction = 0.1;  // horizon ends where |lambda| < floor_fraction |lambda(0)|
    bool truncate = false;        // false: hitting the floor raises CurvatureVanished
    unsigned substeps = 8;        // RK4 steps per t_grid interval
};

/// State of the critical point at one time.
struct PathPoint {
    double t = 0.0;
    double a = 0.0;
    double lambda = 0.0;      // u_yy(t, a(t))
    double a_dot = 0.0;
    double lambda_dot = 0.0;
    double u_at_a = 0.0;      // u_s(t, a(t))
    double slope = 0.0;       // u_y(t, a(t)), zero up to integration error
    double int_u = 0.0;       // int_0^t u_s(s, a(s)) ds
    double int_mu = 0.0;      // int_0^t |lambda(s)/2|^{1/2} ds
};

/// Critical point a(t) of u_s(t,.) following a' = -d_t d_y u_s / d_y^2 u_s.
class CriticalPath {
public:
    std::vector<PathPoint> points;  // on the field's t_grid, up to the horizon
    double horizon = 0.0;
    double t_step = 0.0;
    unsigned substeps = 8;
    std::shared_ptr<const HeatSolution> solution;

    /// Path state at any t in [0, horizon], integrated from the preceding node.
    PathPoint at(double t) const;
    /// Same without the running integrals (cheaper).
    PathPoint state_at(double t) const;

    PathPoint evaluate(double t, double a) const;
};

CriticalPath track_critical_point(const HeatFlowField& field, double a0, const PathOptions& opt = {});

}  // namespace prandtl
