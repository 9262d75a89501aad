#include "prandtl/artifacts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "prandtl/error.hpp"

namespace prandtl {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

nlohmann::json module_versions() {
    return {{"profiles", "1.0"}, {"eigen", "1.0"}, {"modes", "1.0"},
            {"evolve", "1.0"},   {"norms", "1.0"}, {"cli", "1.0"}};
}

namespace {

std::ofstream open_out(const fs::path& file) {
    if (file.has_parent_path()) fs::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary);
    if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + file.string());
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string esc(const std::string& s) {
    std::string o;
    for (char c : s) {
        if (c == '<') o += "&lt;";
        else if (c == '>') o += "&gt;";
        else if (c == '&') o += "&amp;";
        else o += c;
    }
    return o;
}

}  // namespace

void write_json(const fs::path& file, const nlohmann::json& j) {
    auto out = open_out(file);
    out << j.dump(2) << '\n';
}

void write_csv(const fs::path& file, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    if (header.size() != columns.size()) fail(ErrorCode::InvalidArgument, "csv header/column mismatch");
    std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& c : columns)
        if (c.size() != rows) fail(ErrorCode::InvalidArgument, "csv columns differ in length");
    auto out = open_out(file);
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << num(columns[i][r]);
        out << '\n';
    }
}

void write_svg(const fs::path& file, const std::string& title, const std::string& x_label,
               const std::string& y_label, const std::vector<SvgSeries>& series) {
    const double W = 640, H = 420, L = 70, R = 150, T = 40, B = 50;
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    if (!(x1 > x0)) x1 = x0 + 1, x0 -= 1;
    if (!(y1 > y0)) y1 = y0 + 1, y0 -= 1;
    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};
    auto out = open_out(file);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" font-family=\"sans-serif\" "
                  "font-size=\"12\">\n",
                  W, H);
    out << buf;
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf, "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"black\"/>\n",
                  L, T, W - L - R, H - T - B);
    out << buf;
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << esc(title) << "</text>\n";
    out << "<text x=\"" << L + (W - L - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << esc(x_label)
        << "</text>\n";
    out << "<text x=\"16\" y=\"" << T + (H - T - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << T + (H - T - B) / 2 << ")\">" << esc(y_label) << "</text>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
        std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">%.3g</text>\n", px(xv),
                      H - B + 16, xv);
        out << buf;
        std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\">%.3g</text>\n", L - 6,
                      py(yv) + 4, yv);
        out << buf;
    }
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* col = colors[s % 7];
        out << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series[s].x.size(); ++i) {
            if (!std::isfinite(series[s].x[i]) || !std::isfinite(series[s].y[i])) continue;
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(series[s].x[i]), py(series[s].y[i]));
            out << buf;
        }
        out << "\"/>\n";
        std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" fill=\"%s\">", W - R + 10, T + 16.0 * (s + 1), col);
        out << buf << esc(series[s].label) << "</text>\n";
    }
    out << "</svg>\n";
}

void write_manifest(const fs::path& dir, const std::string& command, const std::string& config_text,
                    const nlohmann::json& tolerances, const std::vector<std::string>& artifacts) {
    nlohmann::json m;
    m["command"] = command;
    m["config_hash"] = "fnv1a64:" + hex64(fnv1a64(config_text));
    m["modules"] = module_versions();
    m["tolerances"] = tolerances;
    auto sorted = artifacts;
    std::sort(sorted.begin(), sorted.end());
    m["artifacts"] = sorted;
    write_json(dir / "manifest.json", m);
}

}  // namespace prandtl
