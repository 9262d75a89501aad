#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "prandtl/dispersion.hpp"
#include "prandtl/evolve.hpp"
#include "prandtl/heat.hpp"
#include "prandtl/critical_path.hpp"

namespace prandtl {

struct GridConfig {
    double y_max = 10.0;
    std::size_t ny = 2000;
    double t0 = 0.1;
    std::size_t nt = 20;
};

struct ModeConfig {
    std::vector<int> n{64, 128, 256, 512};
    std::optional<std::array<double, 2>> delta;      // cutoff widths; default (0.5, 1.0) min(a0, 1)
    std::optional<std::array<double, 2>> f_support;  // default [a0+delta2+0.5, a0+delta2+1.5]
    std::vector<double> alphas{0.0, 1.0, 2.0};
    std::size_t snapshots = 21;                      // times in [0, t0] for residual sweeps
    double sigma0_factor = 1.1;                      // sigma0 = factor * |Im tau_phys(0)|
};

struct GrowthConfig {
    std::vector<int> k{32, 64, 128, 256};
    double efolds = 40.0;   // t_final = efolds / (|Im tau_phys(0)| sqrt(k)), capped by t0
    std::size_t steps = 800;
    std::array<double, 2> window{0.2, 0.9};
    Scheme scheme = Scheme::CrankNicolson;
    double c_cfl = 0.5;
};

struct ProbeRowConfig {
    double m = 2.0;
    double alpha = 1.0;
    double sigma_factor = 0.5;  // sigma = factor * measured rate
    double mu = 0.0;
};

struct ProbeConfig {
    std::vector<int> k{32, 64, 128, 256, 512};
    double t = 0.1;
    std::size_t steps = 2400;
    std::vector<ProbeRowConfig> rows{{2.0, 1.0, 0.5, 0.0}, {2.0, 1.0, 2.0, 0.0}, {0.0, 0.0, 0.0, 0.0}};
    double gain_fraction = 0.25;  // required log gain: fraction * rate * (sqrt(k_max) - sqrt(k_min)) * t
};

struct RunConfig {
    std::string family = "gaussian-bump";
    std::map<std::string, double> params;
    GridConfig grid;
    HeatOptions heat;
    PathOptions path;
    DispersionProblem eigen;
    ModeConfig mode;
    GrowthConfig growth;
    ProbeConfig probe;
    std::string output = "out";
    std::string source_text;  // canonical dump used for the config hash

    void validate() const;
};

/// Parses and validates; throws Error(ConfigError) on any problem.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& c);

}  // namespace prandtl
