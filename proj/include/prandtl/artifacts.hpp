#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace prandtl {

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t v);

/// Module name -> version string recorded in every manifest.
nlohmann::json module_versions();

void write_json(const std::filesystem::path& file, const nlohmann::json& j);

/// Columns of equal length, written with 17 significant digits.
void write_csv(const std::filesystem::path& file, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

struct SvgSeries {
    std::string label;
    std::vector<double> x, y;
};

/// Plain line chart with linear axes.
void write_svg(const std::filesystem::path& file, const std::string& title, const std::string& x_label,
               const std::string& y_label, const std::vector<SvgSeries>& series);

/// manifest.json: command, config hash, module versions, tolerances, artifact list.
void write_manifest(const std::filesystem::path& dir, const std::string& command, const std::string& config_text,
                    const nlohmann::json& tolerances, const std::vector<std::string>& artifacts);

}  // namespace prandtl
