#pragma once

#include <array>
#include <memory>
#include <vector>

#include "prandtl/critical_path.hpp"
#include "prandtl/grid.hpp"

namespace prandtl {

/// Boundary-value problem for W with Q(z) = tau + s z^2:
///   Q^2 W' + i (Q W)''' = 0,  W(-inf) = 0,  W(+inf) = 1.
/// It is solved through V = Q W - 1_{z>=0} Q, which satisfies i V''' + Q V' - Q' V = 0
/// on each side, decays at both ends, and jumps by -Q, -Q', -Q'' at z = 0.
struct DispersionProblem {
    int sign_curvature = -1;
    double Z = 12.0;
    double dz = 1e-3;
    double z_match = 0.0;
    double rtol = 1e-10;
    double atol = 1e-13;
    double tol_match = 1e-10;
    double blowup_guard = 1e8;
    // coarse seeding rectangle [re_lo, re_hi] x [im_lo, im_hi]
    double re_lo = -5.0, re_hi = 5.0, im_lo = -5.0, im_hi = -0.05;
    int grid_re = 21, grid_im = 20;
    int newton_max = 50;

    void validate() const;
    std::size_t half_intervals() const;
};

enum class Branch { Decaying, Growing };

/// (V, V', V'') of one tail solution.
using Jet3 = std::array<cplx, 3>;

struct TailSolution {
    double z_start = 0.0;
    Jet3 at_match{};               // state at z_m, normalised to unit seed
    std::vector<Jet3> samples;     // on the half grid, ordered from z_m outward (dense runs only)
    double log_growth = 0.0;       // log |state(z_m)| / |state(seed)|
};

struct TailPair {
    TailSolution left, right;
};

/// Integrates from -Z and +Z toward z_m on the selected large-|z| branch.
TailPair shoot_tails(cplx tau, const DispersionProblem& problem, Branch branch = Branch::Decaying,
                     bool dense = false);

/// Remaining curvature-jump mismatch after the two free tail constants absorb [V] = -Q(0), [V'] = -Q'(0).
/// Vanishes exactly when tau is an eigenvalue. Its real 2-vector form is (Re, Im).
cplx matching_defect(cplx tau, const DispersionProblem& problem);
std::array<double, 2> matching_defect_vector(cplx tau, const DispersionProblem& problem);

struct Eigenpair {
    cplx tau{};
    int sign_curvature = -1;
    std::vector<double> z;                 // symmetric grid on [-Z, Z]
    std::vector<cplx> W, W1, W2;           // W, W', W''
    std::vector<cplx> V, V1, V2;           // V and derivatives, right-continuous at 0
    std::vector<Jet3> left, right;         // one-sided jets: left on [-Z, 0], right on [0, Z]
    Jet3 jumps{};                          // [V], [V'], [V''] at 0
    cplx defect{};
    double ode_residual = 0.0;
    double residual_norm = 0.0;
    double boundary_left = 0.0;            // |W(-Z)|
    double boundary_right = 0.0;           // |W(Z) - 1|
    double tail_rate_left = 0.0;           // fitted c in |V| <= C e^{-c|z|}, outer thirds
    double tail_rate_right = 0.0;
    std::vector<cplx> roots;               // every root found in the rectangle, any sign of Im
    int newton_iterations = 0;
};

/// Builds W, V and the jump data at a known eigenvalue.
Eigenpair assemble_eigenpair(cplx tau, const DispersionProblem& problem);

/// Grid search plus complex Newton over the rectangle; returns the root with most negative Im.
Eigenpair find_tau(const DispersionProblem& problem);

/// Newton polish from one seed; throws NoRootFound on divergence.
cplx newton_tau(cplx seed, const DispersionProblem& problem, int* iterations = nullptr);

/// Evaluates V and three derivatives anywhere by quintic Hermite interpolation of the jets;
/// V''' comes from the ODE. z >= 0 uses the right branch.
class ShearLayerProfile {
public:
    ShearLayerProfile() = default;
    explicit ShearLayerProfile(const Eigenpair& pair);

    std::array<cplx, 4> operator()(double z) const;
    std::array<cplx, 4> one_sided(double z, bool right_side) const;
    cplx tau() const { return tau_; }

private:
    cplx tau_{};
    int s_ = -1;
    double dz_ = 1e-3;
    double Z_ = 12.0;
    std::vector<Jet3> left_, right_;
};

struct ScaledSample {
    double t = 0.0;
    double mu = 0.0;   // |lambda/2|^{1/2}
    cplx tau_phys{};
    double ell = 0.0;  // |lambda/2|^{-1/4}
};

/// Eigenvalue rescaled along the critical path.
struct ScaledEigendata {
    cplx tau{};
    std::vector<ScaledSample> samples;
    std::shared_ptr<const ShearLayerProfile> layer;

    static double mu_of(double lambda) { return std::sqrt(0.5 * std::abs(lambda)); }
    cplx tau_phys(double lambda) const { return mu_of(lambda) * tau; }
    static double ell_of(double lambda) { return std::pow(0.5 * std::abs(lambda), -0.25); }
};

ScaledEigendata scale_eigendata(const Eigenpair& pair, const CriticalPath& path);

}  // namespace prandtl
