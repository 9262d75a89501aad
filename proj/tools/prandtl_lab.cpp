#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "prandtl/artifacts.hpp"
#include "prandtl/config.hpp"
#include "prandtl/error.hpp"
#include "prandtl/pipeline.hpp"

using namespace prandtl;
namespace fs = std::filesystem;

namespace {

enum Exit { Ok = 0, ConfigFail = 2, NumericFail = 3, AcceptFail = 4 };

int report_error(const fs::path& out, const std::string& command, const std::string& code, const std::string& msg,
                 int exit_code) {
    nlohmann::json j{{"command", command}, {"error", code}, {"message", msg}, {"exit_code", exit_code}};
    try {
        write_json(out / "error.json", j);
    } catch (...) {
    }
    std::cerr << j.dump() << '\n';
    return exit_code;
}

CommandResult dispatch(const std::string& cmd, const RunConfig& cfg, const fs::path& out, unsigned threads) {
    if (cmd == "eigen") return cmd_eigen(cfg, out);
    if (cmd == "heat") return cmd_heat(cfg, out, threads);
    if (cmd == "mode") return cmd_mode(cfg, out, threads);
    if (cmd == "residual-scan") return cmd_residual_scan(cfg, out, threads);
    if (cmd == "growth-scan") return cmd_growth_scan(cfg, out, threads);
    return cmd_illposedness_probe(cfg, out, threads);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linearized Prandtl ill-posedness lab"};
    app.require_subcommand(1, 1);
    std::string config_path, out_dir;
    unsigned threads = 1;
    long long seed = 0;
    app.add_option("--config", config_path, "JSON run configuration (defaults apply when omitted)");
    app.add_option("--out", out_dir, "artifact directory (overrides the config's output)");
    app.add_option("--threads", threads, "worker threads for heat slices and probe sweeps")->check(CLI::Range(1u, 256u));
    app.add_option("--seed", seed, "seed for synthetic-noise checks; recorded only");
    const char* names[] = {"eigen", "heat", "mode", "residual-scan", "growth-scan", "illposedness-probe", "all"};
    for (const char* n : names) app.add_subcommand(n, std::string("run ") + n)->fallthrough();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? Ok : ConfigFail;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();

    RunConfig cfg;
    try {
        cfg = config_path.empty() ? parse_config(nlohmann::json::object()) : load_config(config_path);
    } catch (const Error& e) {
        return report_error(out_dir.empty() ? fs::path("out") : fs::path(out_dir), cmd, error_name(e.code()),
                            e.what(), ConfigFail);
    }
    const fs::path out = out_dir.empty() ? fs::path(cfg.output) : fs::path(out_dir);

    std::vector<std::string> cmds;
    if (cmd == "all")
        cmds = {"eigen", "heat", "mode", "residual-scan", "growth-scan", "illposedness-probe"};
    else
        cmds = {cmd};

    int rc = Ok;
    nlohmann::json summary = nlohmann::json::array();
    for (const auto& c : cmds) {
        try {
            CommandResult r = dispatch(c, cfg, out, threads);
            const bool ok = !r.has_verdict || r.pass;
            std::printf("%-20s %s\n", c.c_str(), ok ? "PASS" : "FAIL");
            summary.push_back({{"command", c}, {"pass", ok}, {"summary", r.summary}});
            if (!ok && rc == Ok) rc = AcceptFail;
        } catch (const Error& e) {
            const int code = e.code() == ErrorCode::ConfigError ? ConfigFail : NumericFail;
            report_error(out / c, c, error_name(e.code()), e.what(), code);
            std::printf("%-20s ERROR %s\n", c.c_str(), error_name(e.code()));
            if (cmd != "all") return code;
            rc = std::max(rc, code == ConfigFail ? int(ConfigFail) : int(NumericFail));
        }
    }
    if (cmd == "all") write_json(out / "summary.json", {{"seed", seed}, {"results", summary}});
    return rc;
}
