#include "prandtl/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

#include "prandtl/error.hpp"

namespace prandtl {

using nlohmann::json;

namespace {

template <class T>
void take(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    // json converts -4 to a huge size_t without complaint
    if constexpr (std::is_unsigned_v<T> && !std::is_same_v<T, bool>)
        if (!j.at(key).is_number_unsigned())
            fail(ErrorCode::ConfigError, std::string("'") + key + "' must be a non-negative integer");
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        fail(ErrorCode::ConfigError, std::string("bad value for '") + key + "': " + e.what());
    }
}

void check_keys(const json& j, const std::string& where, std::set<std::string> allowed) {
    if (!j.is_object()) fail(ErrorCode::ConfigError, where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) fail(ErrorCode::ConfigError, "unknown key '" + it.key() + "' in " + where);
}

}  // namespace

void RunConfig::validate() const {
    static const std::set<std::string> families{"gaussian-bump", "algebraic-bump", "monotone"};
    if (!families.count(family)) fail(ErrorCode::ConfigError, "unknown profile family '" + family + "'");
    if (!(grid.y_max > 0) || grid.ny < 8 || !(grid.t0 > 0) || grid.nt < 1)
        fail(ErrorCode::ConfigError, "grid needs y_max > 0, ny >= 8, t0 > 0, nt >= 1");
    for (int n : mode.n)
        if (n < 1) fail(ErrorCode::ConfigError, "mode n values must be positive integers");
    for (int k : growth.k)
        if (k < 1) fail(ErrorCode::ConfigError, "growth k values must be positive integers");
    for (int k : probe.k)
        if (k < 1) fail(ErrorCode::ConfigError, "probe k values must be positive integers");
    if (mode.delta && !((*mode.delta)[0] > 0 && (*mode.delta)[1] > (*mode.delta)[0]))
        fail(ErrorCode::ConfigError, "mode.delta must satisfy 0 < d1 < d2");
    if (mode.f_support && !((*mode.f_support)[0] > 0 && (*mode.f_support)[1] > (*mode.f_support)[0] &&
                            (*mode.f_support)[1] < grid.y_max))
        fail(ErrorCode::ConfigError, "mode.f_support must lie inside (0, y_max)");
    if (mode.snapshots < 2) fail(ErrorCode::ConfigError, "mode.snapshots must be >= 2");
    if (growth.steps < 10 || probe.steps < 10) fail(ErrorCode::ConfigError, "steps must be >= 10");
    if (!(growth.window[0] >= 0 && growth.window[1] > growth.window[0] && growth.window[1] <= 1))
        fail(ErrorCode::ConfigError, "growth.window must satisfy 0 <= lo < hi <= 1");
    if (!(probe.t > 0)) fail(ErrorCode::ConfigError, "probe.t must be positive");
    if (!(heat.tol > 0)) fail(ErrorCode::ConfigError, "heat.tol must be positive");
    try {
        eigen.validate();
    } catch (const Error& e) {
        fail(ErrorCode::ConfigError, std::string("eigen: ") + e.what());
    }
}

RunConfig parse_config(const json& j) {
    RunConfig c;
    check_keys(j, "config", {"profile", "grid", "heat", "path", "eigen", "mode", "growth", "probe", "output"});
    if (j.contains("profile")) {
        const auto& p = j["profile"];
        check_keys(p, "profile", {"family", "params"});
        take(p, "family", c.family);
        take(p, "params", c.params);
    }
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        check_keys(g, "grid", {"y_max", "ny", "t0", "nt"});
        take(g, "y_max", c.grid.y_max);
        take(g, "ny", c.grid.ny);
        take(g, "t0", c.grid.t0);
        take(g, "nt", c.grid.nt);
    }
    if (j.contains("heat")) {
        const auto& h = j["heat"];
        check_keys(h, "heat", {"tol", "window_sigmas", "panel_sigmas", "max_panel"});
        take(h, "tol", c.heat.tol);
        take(h, "window_sigmas", c.heat.window_sigmas);
        take(h, "panel_sigmas", c.heat.panel_sigmas);
        take(h, "max_panel", c.heat.max_panel);
    }
    if (j.contains("path")) {
        const auto& p = j["path"];
        check_keys(p, "path", {"floor_fraction", "truncate", "substeps"});
        take(p, "floor_fraction", c.path.floor_fraction);
        take(p, "truncate", c.path.truncate);
        take(p, "substeps", c.path.substeps);
    }
    if (j.contains("eigen")) {
        const auto& e = j["eigen"];
        check_keys(e, "eigen", {"Z", "dz", "rtol", "atol", "tol_match", "blowup_guard", "rect", "grid", "newton_max"});
        auto& p = c.eigen;
        take(e, "Z", p.Z);
        take(e, "dz", p.dz);
        take(e, "rtol", p.rtol);
        take(e, "atol", p.atol);
        take(e, "tol_match", p.tol_match);
        take(e, "blowup_guard", p.blowup_guard);
        take(e, "newton_max", p.newton_max);
        if (e.contains("rect")) {
            std::array<double, 4> r{};
            take(e, "rect", r);
            p.re_lo = r[0];
            p.re_hi = r[1];
            p.im_lo = r[2];
            p.im_hi = r[3];
        }
        if (e.contains("grid")) {
            std::array<int, 2> g{};
            take(e, "grid", g);
            p.grid_re = g[0];
            p.grid_im = g[1];
        }
    }
    if (j.contains("mode")) {
        const auto& m = j["mode"];
        check_keys(m, "mode", {"n", "delta", "f_support", "alphas", "snapshots", "sigma0_factor"});
        take(m, "n", c.mode.n);
        if (m.contains("delta") && !m["delta"].is_null()) {
            std::array<double, 2> d{};
            take(m, "delta", d);
            c.mode.delta = d;
        }
        if (m.contains("f_support") && !m["f_support"].is_null()) {
            std::array<double, 2> d{};
            take(m, "f_support", d);
            c.mode.f_support = d;
        }
        take(m, "alphas", c.mode.alphas);
        take(m, "snapshots", c.mode.snapshots);
        take(m, "sigma0_factor", c.mode.sigma0_factor);
    }
    if (j.contains("growth")) {
        const auto& g = j["growth"];
        check_keys(g, "growth", {"k", "efolds", "steps", "window", "scheme", "c_cfl"});
        take(g, "k", c.growth.k);
        take(g, "efolds", c.growth.efolds);
        take(g, "steps", c.growth.steps);
        take(g, "window", c.growth.window);
        take(g, "c_cfl", c.growth.c_cfl);
        if (g.contains("scheme")) {
            std::string s;
            take(g, "scheme", s);
            c.growth.scheme = parse_scheme(s);
        }
    }
    if (j.contains("probe")) {
        const auto& p = j["probe"];
        check_keys(p, "probe", {"k", "t", "steps", "rows", "gain_fraction"});
        take(p, "k", c.probe.k);
        take(p, "t", c.probe.t);
        take(p, "steps", c.probe.steps);
        take(p, "gain_fraction", c.probe.gain_fraction);
        if (p.contains("rows")) {
            c.probe.rows.clear();
            for (const auto& r : p["rows"]) {
                check_keys(r, "probe.rows[]", {"m", "alpha", "sigma_factor", "mu"});
                ProbeRowConfig row;
                take(r, "m", row.m);
                take(r, "alpha", row.alpha);
                take(r, "sigma_factor", row.sigma_factor);
                take(r, "mu", row.mu);
                c.probe.rows.push_back(row);
            }
        }
    }
    take(j, "output", c.output);
    c.validate();
    c.source_text = to_json(c).dump();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ConfigError, "cannot open config '" + path + "'");
    json j;
    try {
        j = json::parse(in, nullptr, true, true);
    } catch (const json::exception& e) {
        fail(ErrorCode::ConfigError, std::string("config parse error: ") + e.what());
    }
    return parse_config(j);
}

json to_json(const RunConfig& c) {
    json j;
    j["profile"] = {{"family", c.family}, {"params", c.params}};
    j["grid"] = {{"y_max", c.grid.y_max}, {"ny", c.grid.ny}, {"t0", c.grid.t0}, {"nt", c.grid.nt}};
    j["heat"] = {{"tol", c.heat.tol},
                 {"window_sigmas", c.heat.window_sigmas},
                 {"panel_sigmas", c.heat.panel_sigmas},
                 {"max_panel", c.heat.max_panel}};
    j["path"] = {{"floor_fraction", c.path.floor_fraction}, {"truncate", c.path.truncate}, {"substeps", c.path.substeps}};
    const auto& e = c.eigen;
    j["eigen"] = {{"Z", e.Z},
                  {"dz", e.dz},
                  {"rtol", e.rtol},
                  {"atol", e.atol},
                  {"tol_match", e.tol_match},
                  {"blowup_guard", e.blowup_guard},
                  {"rect", {e.re_lo, e.re_hi, e.im_lo, e.im_hi}},
                  {"grid", {e.grid_re, e.grid_im}},
                  {"newton_max", e.newton_max}};
    j["mode"] = {{"n", c.mode.n},
                 {"delta", c.mode.delta ? json(*c.mode.delta) : json(nullptr)},
                 {"f_support", c.mode.f_support ? json(*c.mode.f_support) : json(nullptr)},
                 {"alphas", c.mode.alphas},
                 {"snapshots", c.mode.snapshots},
                 {"sigma0_factor", c.mode.sigma0_factor}};
    j["growth"] = {{"k", c.growth.k},
                   {"efolds", c.growth.efolds},
                   {"steps", c.growth.steps},
                   {"window", c.growth.window},
                   {"scheme", scheme_name(c.growth.scheme)},
                   {"c_cfl", c.growth.c_cfl}};
    json rows = json::array();
    for (const auto& r : c.probe.rows)
        rows.push_back({{"m", r.m}, {"alpha", r.alpha}, {"sigma_factor", r.sigma_factor}, {"mu", r.mu}});
    j["probe"] = {{"k", c.probe.k},
                  {"t", c.probe.t},
                  {"steps", c.probe.steps},
                  {"rows", rows},
                  {"gain_fraction", c.probe.gain_fraction}};
    j["output"] = c.output;
    return j;
}

}  // namespace prandtl
