#pragma once

#include <array>
#include <memory>
#include <vector>

#include "prandtl/grid.hpp"
#include "prandtl/profiles.hpp"

namespace prandtl {

struct HeatOptions {
    double tol = 1e-10;          // kernel quadrature tolerance, relative to U0
    double window_sigmas = 10.0; // kernel truncation in units of sqrt(2t)
    double panel_sigmas = 1.25;  // panel width in units of sqrt(2t)
    double max_panel = 0.25;     // panel width cap (profile feature scale)
    unsigned threads = 1;
};

/// Pointwise evaluator of the half-line heat flow started from a profile:
/// closed-form error-function ramp plus odd-extension Gaussian-kernel quadrature
/// of the remainder. A frozen evaluator returns the initial profile for every t.
class HeatSolution {
public:
    HeatSolution(ProfileShape shape, HeatOptions opt = {}, bool frozen = false);

    /// u, u_y, ..., u_yyyy at (t, y).
    Derivs5 derivs(double t, double y) const;
    /// time derivatives of (u, u_y, u_yy): (u_yy, u_yyy, u_yyyy), or zeros when frozen.
    std::array<double, 3> time_derivs(double t, double y) const;
    std::array<double, 3> time_derivs(const Derivs5& d) const;

    const ProfileShape& shape() const { return shape_; }
    const HeatOptions& options() const { return opt_; }
    bool frozen() const { return frozen_; }

private:
    ProfileShape shape_;
    HeatOptions opt_;
    bool frozen_;
};

/// Derivatives of U0 erf(y / (2 sqrt(1+t))), the exact ramp solution.
Derivs5 erf_ramp(double U0, double t, double y);

struct HeatSlice {
    double t = 0.0;
    std::array<std::vector<double>, 5> d;  // u, u_y, u_yy, u_yyy, u_yyyy on y_grid
};

/// Background flow u_s(t,y) and four y-derivatives on a space-time grid.
/// The time derivative is u_yy by construction (d[2] of each slice).
class HeatFlowField {
public:
    UniformGrid y_grid;
    UniformGrid t_grid;
    std::vector<HeatSlice> slices;
    std::shared_ptr<const HeatSolution> solution;

    bool frozen() const { return solution->frozen(); }
    double horizon() const { return t_grid.hi; }
    const ProfileShape& shape() const { return solution->shape(); }

    /// Exact slice at any t <= horizon (tabulated when t is a grid time).
    HeatSlice slice_at(double t) const;
    /// u and u_y at time t by cubic Hermite interpolation in t (d_t u = u_yy, d_t u_y = u_yyy).
    void sample(double t, std::vector<double>& u, std::vector<double>& uy) const;
};

HeatFlowField solve_heat(const ProfileShape& profile, const UniformGrid& y_grid, const UniformGrid& t_grid,
                         const HeatOptions& opt = {});

/// Background frozen at the initial profile on [0, horizon].
HeatFlowField frozen_field(const ProfileShape& profile, const UniformGrid& y_grid, double horizon);

struct HeatCheck {
    double pde_residual = 0.0;      // max |d_t u - u_yy|, d_t by a 6th-order difference of the evaluator
    double wall_value = 0.0;        // max_t |u(t,0)|
    double far_defect = 0.0;        // max_t |u(t,Y) - U0|
    double max_principle = 0.0;     // largest excursion outside [min(0,inf U), max(U0,sup U)]
};

/// Samples the field invariants (every stride-th interior point, t > 0 slices).
HeatCheck check_heat_field(const HeatFlowField& field, std::size_t stride = 10);

}  // namespace prandtl
