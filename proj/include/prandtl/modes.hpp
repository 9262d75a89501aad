#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "prandtl/critical_path.hpp"
#include "prandtl/dispersion.hpp"
#include "prandtl/heat.hpp"
#include "prandtl/profiles.hpp"

namespace prandtl {

/// phi(x) = 1 on |x| <= delta1, 0 on |x| >= delta2, quintic smoothstep in between.
struct Cutoff {
    double delta1 = 0.5;
    double delta2 = 1.0;

    /// phi, phi', phi'', phi'''
    std::array<double, 4> operator()(double x) const;
};

/// Compactly supported seed f of the corrector with its first two derivatives.
struct CorrectorSeed {
    std::string name;
    double lo = 1.0, hi = 2.0;  // support
    std::function<std::array<double, 3>(double)> f;
};

/// f proportional to s^3 (1-s)^3 on [lo, hi], unit mass.
CorrectorSeed polynomial_bump(double lo, double hi);
/// Antisymmetric bump with zero mass (violates the corrector hypothesis).
CorrectorSeed odd_bump(double lo, double hi);

/// v~(y) = int_0^y f / int_0^inf f and three derivatives.
class CorrectorProfile {
public:
    explicit CorrectorProfile(CorrectorSeed seed);
    std::array<double, 4> operator()(double y) const;
    double mass() const { return mass_; }
    const CorrectorSeed& seed() const { return seed_; }

private:
    double integral(double a, double b) const;
    CorrectorSeed seed_;
    double mass_ = 0.0;
};

struct CorrectorSamples {
    std::vector<double> y;
    std::array<std::vector<double>, 4> v;  // v~, v~', v~'', v~'''
    double mass = 0.0;
};

CorrectorSamples corrector(const CorrectorSeed& f, const std::vector<double>& y_grid);

enum class Ansatz { Corrected, Original };

struct ModeParams {
    int n = 64;  // eps = 1/n
    Cutoff phi;
    CorrectorSeed f;
    bool frozen = false;
    Ansatz ansatz = Ansatz::Corrected;

    double eps() const { return 1.0 / static_cast<double>(n); }
    void validate(double y_max) const;

    /// Cutoff widths (0.5, 1.0) min(a0, 1) and a unit-mass bump on [a0+delta2+0.5, a0+delta2+1.5].
    static ModeParams defaults(const ShearProfile& profile, int n);
};

/// Everything the assembly needs at one time.
struct ModeTime {
    double t = 0.0;
    PathPoint path;
    double mu = 0.0, mu_dot = 0.0;
    double ks = 0.0, ks_dot = 0.0;  // inner scale mu^{1/2} eps^{-1/4}
    cplx w{};
    cplx phase{};
};

struct ModeField {
    double t = 0.0;
    double eps = 0.0;
    std::vector<double> y;
    std::vector<cplx> U, Uy, Uyy;   // tangential profile and y-derivatives
    std::vector<cplx> V, Vy;        // normal profile
    std::vector<cplx> U_corrector, U_regular, U_layer;  // U = sum of the three
    ModeTime state;
};

struct ResidualField {
    double t = 0.0;
    std::vector<double> y;
    std::vector<cplx> R, R_bar, R_tilde;  // R = R_bar + t R_tilde
};

/// Inputs shared by assembly and residual.
struct ModeInputs {
    const HeatFlowField* field = nullptr;
    const CriticalPath* path = nullptr;
    const ScaledEigendata* scaled = nullptr;
};

ModeTime mode_time(const ModeParams& params, const ModeInputs& in, double t);

ModeField assemble_mode(const ModeParams& params, const HeatFlowField& field, const CriticalPath& path,
                        const ScaledEigendata& scaled, double t);

ResidualField residual(const ModeParams& params, const HeatFlowField& field, const CriticalPath& path,
                       const ScaledEigendata& scaled, const ModeField& mode, double t);

/// Frozen-coefficient assembly at the initial profile (builds its own frozen background).
struct FrozenSetup {
    HeatFlowField field;
    CriticalPath path;
    ScaledEigendata scaled;
};
FrozenSetup frozen_setup(const ShearProfile& profile, const Eigenpair& pair, const UniformGrid& y_grid,
                         double horizon);
ModeField assemble_frozen(const ModeParams& params, const FrozenSetup& setup, double t);

/// Pointwise values at y (one-sided at y = a(t)): v, v_y, v_yy of the full normal profile v = v_reg + v_sl.
std::array<cplx, 3> normal_jet(const ModeParams& params, const ModeInputs& in, const ModeTime& mt, double y,
                               bool right_side);
/// Same for V_eps = P[-i v~ + t v / eps] and its first two y-derivatives.
std::array<cplx, 3> mode_normal_jet(const ModeParams& params, const ModeInputs& in, const ModeTime& mt,
                                    double y, bool right_side);

}  // namespace prandtl
