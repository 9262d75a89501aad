#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "prandtl/critical_path.hpp"
#include "prandtl/grid.hpp"
#include "prandtl/heat.hpp"
#include "prandtl/norms.hpp"

namespace prandtl {

/// One x-Fourier mode e^{ikx} (u_hat, v_hat)(t, y). The physical amplitude is e^{log_scale} u_hat.
struct FourierModeState {
    int k = 0;
    double t = 0.0;
    std::vector<double> y;
    std::vector<cplx> u_hat;
    std::vector<cplx> v_hat;  // -ik int_0^y u_hat, trapezoid rule
    double log_scale = 0.0;

    void update_v();
    void validate() const;
};

FourierModeState make_state(int k, const std::vector<double>& y, std::vector<cplx> u_hat, double t = 0.0);

enum class Scheme { CrankNicolson, Inviscid };

const char* scheme_name(Scheme s);
Scheme parse_scheme(const std::string& s);

struct SolverConfig {
    double dt = 1e-3;
    Scheme scheme = Scheme::CrankNicolson;
    double c_cfl = 0.5;  // dt <= c_cfl / (k sup|u_s|)
};

/// Coefficients u_s, d_y u_s of the linearized operator on a fixed y grid.
class Background {
public:
    virtual ~Background() = default;
    virtual const std::vector<double>& y() const = 0;
    virtual double horizon() const = 0;
    virtual bool frozen() const = 0;
    virtual void coefficients(double t, std::vector<double>& u, std::vector<double>& uy) const = 0;
    /// Speed of the co-moving frame at time t.
    virtual double reference_speed(double t) const;
    /// sup_y |u_s(t, y)| over the stored times.
    virtual double sup_speed() const = 0;
};

/// Heat-flow background; the frame follows u_s(t, a(t)) when a path is given, else the midrange of u_s.
class FieldBackground : public Background {
public:
    explicit FieldBackground(const HeatFlowField& field, const CriticalPath* path = nullptr);
    const std::vector<double>& y() const override { return y_; }
    double horizon() const override { return field_->horizon(); }
    bool frozen() const override { return field_->frozen(); }
    void coefficients(double t, std::vector<double>& u, std::vector<double>& uy) const override;
    double reference_speed(double t) const override;
    double sup_speed() const override { return sup_; }

private:
    const HeatFlowField* field_;
    const CriticalPath* path_;
    std::vector<double> y_;
    double sup_ = 0.0;
};

/// Time-independent coefficients given by samples.
class FrozenBackground : public Background {
public:
    FrozenBackground(std::vector<double> y, std::vector<double> u, std::vector<double> uy,
                     double horizon = 1e300, double speed = 0.0);
    const std::vector<double>& y() const override { return y_; }
    double horizon() const override { return horizon_; }
    bool frozen() const override { return true; }
    void coefficients(double, std::vector<double>& u, std::vector<double>& uy) const override;
    double reference_speed(double) const override { return speed_; }
    double sup_speed() const override { return sup_; }

private:
    std::vector<double> y_, u_, uy_;
    double horizon_, speed_, sup_ = 0.0;
};

/// Trapezoidal integrator of d_t u = -ik u_s u - v d_y u_s + d_y^2 u (diffusion dropped for Inviscid).
/// Unknowns are u_hat and its running integral, solved together as one banded system per step.
class ModeStepper {
public:
    ModeStepper(const Background& bg, SolverConfig cfg, int k);
    /// Advances by dt (cfg.dt when dt <= 0); throws CflViolation, HorizonExceeded, NonFiniteState.
    void step(FourierModeState& s, double dt = 0.0);

private:
    void factor(double t1, double c, double dt);
    const Background& bg_;
    SolverConfig cfg_;
    int k_;
    std::size_t n_;
    double h_;
    std::vector<double> u_, uy_;
    std::vector<cplx> lu_;
    std::vector<int> piv_;
    bool factored_ = false;
    double lu_dt_ = 0.0, lu_c_ = 0.0;
};

FourierModeState step(const FourierModeState& state, const Background& bg, const SolverConfig& cfg);
FourierModeState step(const FourierModeState& state, const HeatFlowField& field, const SolverConfig& cfg);

struct Trajectory {
    std::vector<double> t;
    std::vector<double> log_norm;  // log sup|u_hat| including the accumulated scale
    FourierModeState final_state;
};

/// Repeated steps up to t_final (the last step is shortened to land on it).
/// With renormalize, u_hat is rescaled to unit sup-norm every step.
Trajectory evolve(FourierModeState state0, const Background& bg, const SolverConfig& cfg, double t_final,
                  bool renormalize);

/// Closed-form inviscid solution for the frozen shear U:
///   u = e^{-ikUt} u0 + t U' ik I1,  v = -ik I1 + k^2 t (U I1 - I2),
///   I1 = int_0^y e^{-ikUt} u0,  I2 = int_0^y U e^{-ikUt} u0, by adaptive quadrature per grid cell.
FourierModeState inviscid_exact(const std::function<cplx(double)>& u0,
                                const std::function<std::array<double, 2>(double)>& U, int k, double t,
                                const std::vector<double>& y, double tol = 1e-12);

struct GrowthRun {
    int k = 0;
    RateFit fit;
    Trajectory trajectory;
};

/// Evolves u0 (sampled on bg.y()) at wavenumber k and fits the log-norm slope over [w_lo, w_hi] t_final.
GrowthRun measure_growth(const Background& bg, const SolverConfig& cfg, int k, const std::vector<cplx>& u0,
                         double t_final, double w_lo = 0.2, double w_hi = 0.9);

struct ProbeSetting {
    double m = 0.0;
    double alpha = 0.0;
    double sigma = 0.0;
    double mu = 0.0;  // reports k^mu rho as well
};

struct ProbeRow {
    int k = 0;
    double t = 0.0;
    double m = 0.0, alpha = 0.0, sigma = 0.0, mu = 0.0;
    double log_growth = 0.0;   // log ||u(t)||_{W_0} - log ||u(0)||_{W_alpha}
    double log_rho = 0.0;      // log of e^{-sigma sqrt(k) t} ||u(t)||_{W_0} / ((1+k^2)^{m/2} ||u(0)||_{W_alpha})
    double log_rho_mu = 0.0;   // log_rho + mu log k
};

/// Evolves the initial data of every k to time t once and evaluates rho for every setting.
/// initial(k) returns u_hat(0) on bg.y(); dt_of(k) the step used for that k.
std::vector<ProbeRow> operator_growth_probe(const Background& bg, SolverConfig cfg, const std::vector<int>& ks,
                                            double t, const std::vector<ProbeSetting>& settings,
                                            const std::function<std::vector<cplx>(int)>& initial,
                                            const std::function<double(int)>& dt_of, unsigned threads = 1,
                                            std::vector<Trajectory>* trajectories = nullptr);

}  // namespace prandtl
