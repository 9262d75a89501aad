#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "prandtl/config.hpp"
#include "prandtl/dispersion.hpp"
#include "prandtl/evolve.hpp"
#include "prandtl/modes.hpp"
#include "prandtl/norms.hpp"
#include "prandtl/profiles.hpp"

namespace prandtl {

/// Background pieces shared by the mode-level commands.
struct Setup {
    ShearProfile profile;
    Eigenpair pair;
    HeatFlowField field;
    CriticalPath path;
    ScaledEigendata scaled;

    double rate0() const;  // |Im tau_phys(0)|
};

ShearProfile profile_from(const RunConfig& cfg);
Setup build_setup(const RunConfig& cfg, const Eigenpair& pair, unsigned threads);
ModeParams mode_params(const RunConfig& cfg, const ShearProfile& profile, int n);

/// Result of one command: machine-readable summary plus an optional PASS verdict.
struct CommandResult {
    std::string command;
    nlohmann::json summary;
    bool has_verdict = false;
    bool pass = true;
};

struct EigenRefinement {
    double dz_half_drift = 0.0;  // |tau(dz/2) - tau(dz)|
    double z_half_drift = 0.0;   // |tau(Z/2) - tau(Z)|
};
EigenRefinement refine_eigen(const DispersionProblem& pb, cplx tau);

/// sup over snapshots of ||R_eps(t)||_{W_alpha} e^{-sigma0 t / sqrt(eps)} for every (alpha, n).
struct ResidualScan {
    double sigma0 = 0.0;
    std::vector<double> alphas;
    std::vector<int> n;
    std::vector<std::vector<double>> plateau;  // [alpha][n]
    std::vector<double> spread;                // max |value/mean - 1| per alpha
};
ResidualScan residual_scan(const RunConfig& cfg, const Setup& s);

/// Per-k growth fit on the configured background.
GrowthReport growth_scan(const RunConfig& cfg, const Setup& s, std::vector<GrowthRun>* runs = nullptr);

struct ProbeResult {
    double rate = 0.0;  // mean sigma(k)/sqrt(k) over the probe runs
    std::vector<ProbeRow> rows;
    std::vector<GrowthRun> runs;
};
ProbeResult illposedness_probe(const RunConfig& cfg, const Setup& s, unsigned threads);

/// Strict increase with total log gain >= required, and non-increase, on rows of one setting.
bool strictly_increasing_with_gain(const std::vector<ProbeRow>& rows, double required_gain);
bool non_increasing(const std::vector<ProbeRow>& rows);

CommandResult cmd_eigen(const RunConfig& cfg, const std::filesystem::path& out);
CommandResult cmd_heat(const RunConfig& cfg, const std::filesystem::path& out, unsigned threads);
CommandResult cmd_mode(const RunConfig& cfg, const std::filesystem::path& out, unsigned threads);
CommandResult cmd_residual_scan(const RunConfig& cfg, const std::filesystem::path& out, unsigned threads);
CommandResult cmd_growth_scan(const RunConfig& cfg, const std::filesystem::path& out, unsigned threads);
CommandResult cmd_illposedness_probe(const RunConfig& cfg, const std::filesystem::path& out, unsigned threads);

}  // namespace prandtl
