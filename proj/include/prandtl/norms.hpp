#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prandtl/grid.hpp"

namespace prandtl {

enum class NormFlavor { WeightedSup, ModeHm };

/// Parameters of W_alpha^{m,inf} / single-mode H_alpha^m norms.
struct NormSpec {
    double alpha = 0.0;
    double m = 0.0;
    double mu = 0.0;
    NormFlavor flavor = NormFlavor::WeightedSup;

    void validate() const;
};

/// max_i e^{alpha y_i} |f_i|
double weighted_sup(const std::vector<double>& y, const std::vector<cplx>& f, double alpha);
double weighted_sup(const std::vector<double>& y, const std::vector<double>& f, double alpha);

/// sum_{j<=m} sup |d^j (e^{alpha y} f)| from samples of f, f', ..., f^(m), m <= 2.
double weighted_sobolev(const std::vector<double>& y, const std::vector<std::vector<cplx>>& derivs,
                        double alpha);

/// (1+k^2)^{m/2} weighted_sup(f, alpha): the norm of e^{ikx} f(y) in H_alpha^m.
double mode_sobolev(const std::vector<double>& y, const std::vector<cplx>& f, double k, double m,
                    double alpha);
double mode_sobolev_factor(double k, double m);

struct RateFit {
    double sigma = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // rms of the linear fit
    std::size_t samples = 0;
    double t_lo = 0.0;
    double t_hi = 0.0;
};

/// Least-squares slope of log-norm against t over [t_lo, t_hi]; needs 8 samples.
RateFit fit_rate(const std::vector<double>& t, const std::vector<double>& log_norm, double t_lo,
                 double t_hi);

struct PowerFit {
    double p = 0.0;
    double log_c = 0.0;
    double residual = 0.0;
    double p_stderr = 0.0;
};

/// log-log least squares sigma = c k^p; needs 4 distinct k.
PowerFit fit_power_law(const std::vector<double>& k, const std::vector<double>& sigma);

enum class TailKind { Exponential, Algebraic, Faster };

struct TailClass {
    TailKind kind = TailKind::Faster;
    double parameter = 0.0;  // rate for exponential, power for algebraic
    double residual_exponential = 0.0;
    double residual_algebraic = 0.0;
};

const char* tail_kind_name(TailKind kind);

/// Classifies the decay of |f| on the far half of the grid.
TailClass tail_class(const std::vector<double>& y, const std::vector<double>& abs_f,
                     double floor = 1e-14);
TailClass tail_class(const std::vector<double>& y, const std::vector<cplx>& f, double floor = 1e-14);

struct GrowthRow {
    double k = 0.0;
    double sigma = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;
    double residual = 0.0;
};

struct GrowthReport {
    std::vector<GrowthRow> rows;
    std::optional<PowerFit> power_law;
    std::string power_law_status;  // "ok" or an error name
    double sigma0 = 0.0;
    double target_rate = 0.0;      // |Im tau_phys(0)|
    std::vector<double> plateau;   // C0/C1-like regression values
};

/// Fills the power-law block of a report, recording InsufficientData instead of throwing.
void finish_growth_report(GrowthReport& report);

}  // namespace prandtl
