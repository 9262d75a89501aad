#include "prandtl/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "prandtl/artifacts.hpp"
#include "prandtl/error.hpp"

namespace prandtl {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<double> re(const std::vector<cplx>& v) {
    std::vector<double> o(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) o[i] = v[i].real();
    return o;
}
std::vector<double> im(const std::vector<cplx>& v) {
    std::vector<double> o(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) o[i] = v[i].imag();
    return o;
}

std::string fmt_name(const char* pat, int a, int b = -1) {
    char buf[96];
    if (b < 0)
        std::snprintf(buf, sizeof buf, pat, a);
    else
        std::snprintf(buf, sizeof buf, pat, a, b);
    return buf;
}

json growth_rows_json(const GrowthReport& g) {
    json rows = json::array();
    for (const auto& r : g.rows)
        rows.push_back({{"k", r.k}, {"sigma", r.sigma}, {"t_lo", r.t_lo}, {"t_hi", r.t_hi}, {"residual", r.residual}});
    return rows;
}

json tolerances(const RunConfig& cfg) {
    return {{"heat_quadrature", cfg.heat.tol},
            {"ode_rtol", cfg.eigen.rtol},
            {"ode_atol", cfg.eigen.atol},
            {"tol_match", cfg.eigen.tol_match},
            {"tol_ode", 1e-8},
            {"tol_pde", 1e-6},
            {"tol_jump", 1e-8}};
}

// root of u_y(t, .) by Newton from the tracked position
double slice_root(const HeatSolution& sol, double t, double a) {
    for (int it = 0; it < 30; ++it) {
        auto d = sol.derivs(t, a);
        const double step = d[1] / d[2];
        a -= step;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(a))) break;
    }
    return a;
}

}  // namespace

double Setup::rate0() const { return std::abs((ScaledEigendata::mu_of(profile.curvature) * pair.tau).imag()); }

ShearProfile profile_from(const RunConfig& cfg) {
    ScanOptions so;
    so.y_max = cfg.grid.y_max;
    return make_profile(cfg.family, cfg.params, so);
}

Setup build_setup(const RunConfig& cfg, const Eigenpair& pair, unsigned threads) {
    ShearProfile profile = profile_from(cfg);
    UniformGrid yg(0.0, cfg.grid.y_max, cfg.grid.ny), tg(0.0, cfg.grid.t0, cfg.grid.nt);
    HeatOptions ho = cfg.heat;
    ho.threads = std::max(1u, threads);
    HeatFlowField field = solve_heat(profile.shape, yg, tg, ho);
    CriticalPath path = track_critical_point(field, profile.a0, cfg.path);
    ScaledEigendata scaled = scale_eigendata(pair, path);
    return Setup{std::move(profile), pair, std::move(field), std::move(path), std::move(scaled)};
}

ModeParams mode_params(const RunConfig& cfg, const ShearProfile& profile, int n) {
    ModeParams p = ModeParams::defaults(profile, n);
    if (cfg.mode.delta) p.phi = {(*cfg.mode.delta)[0], (*cfg.mode.delta)[1]};
    if (cfg.mode.f_support) p.f = polynomial_bump((*cfg.mode.f_support)[0], (*cfg.mode.f_support)[1]);
    p.validate(cfg.grid.y_max);
    return p;
}

EigenRefinement refine_eigen(const DispersionProblem& pb, cplx tau) {
    EigenRefinement r;
    DispersionProblem fine = pb;
    fine.dz = 0.5 * pb.dz;
    r.dz_half_drift = std::abs(newton_tau(tau, fine) - tau);
    DispersionProblem shortz = pb;
    shortz.Z = 0.5 * pb.Z;
    r.z_half_drift = std::abs(newton_tau(tau, shortz) - tau);
    return r;
}

ResidualScan residual_scan(const RunConfig& cfg, const Setup& s) {
    ResidualScan r;
    double sup_rate = 0.0;
    for (const auto& smp : s.scaled.samples) sup_rate = std::max(sup_rate, std::abs(smp.tau_phys.imag()));
    r.sigma0 = cfg.mode.sigma0_factor * sup_rate;
    r.alphas = cfg.mode.alphas;
    r.n = cfg.mode.n;
    r.plateau.assign(r.alphas.size(), std::vector<double>(r.n.size(), 0.0));
    const double t_end = std::min(cfg.grid.t0, s.path.horizon);
    for (std::size_t in = 0; in < r.n.size(); ++in) {
        const ModeParams prm = mode_params(cfg, s.profile, r.n[in]);
        for (std::size_t i = 0; i < cfg.mode.snapshots; ++i) {
            const double t = t_end * static_cast<double>(i) / static_cast<double>(cfg.mode.snapshots - 1);
            auto m = assemble_mode(prm, s.field, s.path, s.scaled, t);
            auto res = residual(prm, s.field, s.path, s.scaled, m, t);
            const double damp = std::exp(-r.sigma0 * t / std::sqrt(prm.eps()));
            for (std::size_t ia = 0; ia < r.alphas.size(); ++ia)
                r.plateau[ia][in] = std::max(r.plateau[ia][in], weighted_sup(res.y, res.R, r.alphas[ia]) * damp);
        }
    }
    for (const auto& row : r.plateau) {
        double mean = 0.0;
        for (double v : row) mean += v / static_cast<double>(row.size());
        double spread = 0.0;
        for (double v : row) spread = std::max(spread, std::abs(v / mean - 1.0));
        r.spread.push_back(spread);
    }
    return r;
}

GrowthReport growth_scan(const RunConfig& cfg, const Setup& s, std::vector<GrowthRun>* runs) {
    GrowthReport rep;
    rep.target_rate = s.rate0();
    FieldBackground bg(s.field, &s.path);
    double mean = 0.0;
    for (int k : cfg.growth.k) {
        const double t_final = std::min(cfg.growth.efolds / (rep.target_rate * std::sqrt(double(k))), s.path.horizon);
        SolverConfig sc{t_final / static_cast<double>(cfg.growth.steps), cfg.growth.scheme, cfg.growth.c_cfl};
        const ModeParams prm = mode_params(cfg, s.profile, k);
        auto u0 = assemble_mode(prm, s.field, s.path, s.scaled, 0.0).U;
        GrowthRun run = measure_growth(bg, sc, k, u0, t_final, cfg.growth.window[0], cfg.growth.window[1]);
        rep.rows.push_back({double(k), run.fit.sigma, run.fit.t_lo, run.fit.t_hi, run.fit.residual});
        rep.plateau.push_back(run.fit.sigma / (std::sqrt(double(k)) * rep.target_rate));
        mean += run.fit.sigma / std::sqrt(double(k)) / static_cast<double>(cfg.growth.k.size());
        if (runs) runs->push_back(std::move(run));
    }
    rep.sigma0 = mean;
    finish_growth_report(rep);
    return rep;
}

ProbeResult illposedness_probe(const RunConfig& cfg, const Setup& s, unsigned threads) {
    ProbeResult out;
    FieldBackground bg(s.field, &s.path);
    const double t = cfg.probe.t;
    std::vector<ProbeSetting> settings;
    for (const auto& r : cfg.probe.rows) settings.push_back({r.m, r.alpha, 0.0, r.mu});
    auto initial = [&](int k) { return assemble_mode(mode_params(cfg, s.profile, k), s.field, s.path, s.scaled, 0.0).U; };
    auto dt_of = [&](int) { return t / static_cast<double>(cfg.probe.steps); };
    SolverConfig sc{t / static_cast<double>(cfg.probe.steps), cfg.growth.scheme, cfg.growth.c_cfl};
    std::vector<Trajectory> trs;
    auto rows = operator_growth_probe(bg, sc, cfg.probe.k, t, settings, initial, dt_of, threads, &trs);
    for (std::size_t i = 0; i < trs.size(); ++i) {
        GrowthRun run;
        run.k = cfg.probe.k[i];
        run.fit = fit_rate(trs[i].t, trs[i].log_norm, cfg.growth.window[0] * t, cfg.growth.window[1] * t);
        run.trajectory = std::move(trs[i]);
        out.rate += run.fit.sigma / std::sqrt(double(run.k)) / static_cast<double>(trs.size());
        out.runs.push_back(std::move(run));
    }
    // rho for sigma > 0 is the sigma = 0 value times e^{-sigma sqrt(k) t}
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto& r = rows[i];
        r.sigma = cfg.probe.rows[i % cfg.probe.rows.size()].sigma_factor * out.rate;
        const double shift = r.sigma * std::sqrt(double(r.k)) * t;
        r.log_rho -= shift;
        r.log_rho_mu -= shift;
    }
    out.rows = std::move(rows);
    return out;
}

bool strictly_increasing_with_gain(const std::vector<ProbeRow>& rows, double required_gain) {
    if (rows.size() < 2) return false;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].log_rho > rows[i - 1].log_rho)) return false;
    return rows.back().log_rho - rows.front().log_rho >= required_gain;
}

bool non_increasing(const std::vector<ProbeRow>& rows) {
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].log_rho > rows[i - 1].log_rho) return false;
    return true;
}

CommandResult cmd_eigen(const RunConfig& cfg, const fs::path& out) {
    const fs::path dir = out / "eigen";
    Eigenpair p = find_tau(cfg.eigen);
    EigenRefinement ref = refine_eigen(cfg.eigen, p.tau);
    json roots = json::array();
    for (auto r : p.roots) roots.push_back({r.real(), r.imag()});
    json j;
    j["tau_re"] = p.tau.real();
    j["tau_im"] = p.tau.imag();
    j["residual_norm"] = p.residual_norm;
    j["ode_residual"] = p.ode_residual;
    j["defect"] = std::abs(p.defect);
    j["jumps"] = {{"V", {p.jumps[0].real(), p.jumps[0].imag()}},
                  {"V1", {p.jumps[1].real(), p.jumps[1].imag()}},
                  {"V2", {p.jumps[2].real(), p.jumps[2].imag()}}};
    j["boundary"] = {{"left", p.boundary_left}, {"right", p.boundary_right}};
    j["tail_rate"] = {{"left", p.tail_rate_left}, {"right", p.tail_rate_right}};
    j["roots"] = roots;
    j["refinement"] = {{"dz_half_drift", ref.dz_half_drift}, {"z_half_drift", ref.z_half_drift}};
    j["z_grid"] = p.z;
    j["W_re"] = re(p.W);
    j["W_im"] = im(p.W);
    j["V_re"] = re(p.V);
    j["V_im"] = im(p.V);
    write_json(dir / "eigenpair.json", j);
    write_csv(dir / "V.csv", {"z", "V_re", "V_im", "W_re", "W_im"}, {p.z, re(p.V), im(p.V), re(p.W), im(p.W)});
    write_svg(dir / "W.svg", "shear-layer profile W(z)", "z", "W",
              {{"Re W", p.z, re(p.W)}, {"Im W", p.z, im(p.W)}});
    write_manifest(dir, "eigen", cfg.source_text, tolerances(cfg), {"eigenpair.json", "V.csv", "W.svg"});

    CommandResult r{"eigen", {}, true, false};
    r.pass = p.tau.imag() < 0 && p.residual_norm < 1e-8 && ref.dz_half_drift < 1e-6;
    r.summary = {{"tau", {p.tau.real(), p.tau.imag()}},
                 {"residual_norm", p.residual_norm},
                 {"dz_half_drift", ref.dz_half_drift},
                 {"z_half_drift", ref.z_half_drift}};
    return r;
}

CommandResult cmd_heat(const RunConfig& cfg, const fs::path& out, unsigned threads) {
    const fs::path dir = out / "heat";
    ShearProfile profile = profile_from(cfg);
    UniformGrid yg(0.0, cfg.grid.y_max, cfg.grid.ny), tg(0.0, cfg.grid.t0, cfg.grid.nt);
    HeatOptions ho = cfg.heat;
    ho.threads = std::max(1u, threads);
    HeatFlowField field = solve_heat(profile.shape, yg, tg, ho);
    HeatCheck hc = check_heat_field(field);
    CriticalPath path = track_critical_point(field, profile.a0, cfg.path);

    double root_defect = 0.0;
    std::vector<double> t, a, lam, adot, ua, iu, imu;
    for (const auto& p : path.points) {
        root_defect = std::max(root_defect, std::abs(slice_root(*field.solution, p.t, p.a) - p.a));
        t.push_back(p.t);
        a.push_back(p.a);
        lam.push_back(p.lambda);
        adot.push_back(p.a_dot);
        ua.push_back(p.u_at_a);
        iu.push_back(p.int_u);
        imu.push_back(p.int_mu);
    }
    double erf_defect = -1.0;
    if (cfg.family == "monotone") {
        erf_defect = 0.0;
        for (const auto& s : field.slices)
            for (std::size_t i = 0; i < yg.size(); ++i) {
                auto e = erf_ramp(profile.U0(), s.t, yg[i]);
                for (int d = 0; d < 5; ++d) erf_defect = std::max(erf_defect, std::abs(s.d[d][i] - e[d]));
            }
    }
    json j;
    j["profile"] = {{"family", cfg.family}, {"a0", profile.a0}, {"curvature", profile.curvature}};
    j["check"] = {{"pde_residual", hc.pde_residual},
                  {"wall_value", hc.wall_value},
                  {"far_defect", hc.far_defect},
                  {"max_principle", hc.max_principle}};
    j["path_root_defect"] = root_defect;
    if (erf_defect >= 0) j["erf_defect"] = erf_defect;
    j["horizon"] = path.horizon;
    write_json(dir / "heat.json", j);
    write_csv(dir / "critical_path.csv", {"t", "a", "lambda", "a_dot", "u_at_a", "int_u", "int_mu"},
              {t, a, lam, adot, ua, iu, imu});
    const auto y = yg.points();
    write_csv(dir / "slices.csv", {"y", "u_t0", "u_mid", "u_end"},
              {y, field.slices.front().d[0], field.slices[field.slices.size() / 2].d[0], field.slices.back().d[0]});
    write_svg(dir / "critical_path.svg", "critical point a(t)", "t", "a", {{"a(t)", t, a}});
    write_manifest(dir, "heat", cfg.source_text, tolerances(cfg),
                   {"heat.json", "critical_path.csv", "slices.csv", "critical_path.svg"});

    CommandResult r{"heat", j, true, false};
    r.pass = hc.pde_residual < 1e-6 && root_defect < 1e-8 && (erf_defect < 0 || erf_defect <= 1e-8);
    return r;
}

CommandResult cmd_mode(const RunConfig& cfg, const fs::path& out, unsigned threads) {
    const fs::path dir = out / "mode";
    Setup s = build_setup(cfg, find_tau(cfg.eigen), threads);
    const double t_end = std::min(cfg.grid.t0, s.path.horizon);
    json rows = json::array();
    std::vector<std::string> files;
    std::vector<double> init_ratio;
    double worst_jump = 0.0;
    ModeInputs in{&s.field, &s.path, &s.scaled};
    for (int n : cfg.mode.n) {
        const ModeParams prm = mode_params(cfg, s.profile, n);
        const double eps = prm.eps();
        const double times[3] = {0.0, 0.5 * t_end, t_end};
        for (int i = 0; i < 3; ++i) {
            const double t = times[i];
            auto m = assemble_mode(prm, s.field, s.path, s.scaled, t);
            auto lo = mode_normal_jet(prm, in, m.state, m.state.path.a, false);
            auto hi = mode_normal_jet(prm, in, m.state, m.state.path.a, true);
            double jump = 0.0, scale = 0.0;
            for (int d = 0; d < 3; ++d) {
                jump = std::max(jump, std::abs(hi[d] - lo[d]));
                scale = std::max(scale, std::abs(hi[d]));
            }
            const double rel_jump = jump / std::max(scale, 1e-300);
            worst_jump = std::max(worst_jump, rel_jump);
            // discrete divergence check: centred difference of V against -i U / eps
            const double h = s.field.y_grid.step();
            double div = 0.0, uscale = 0.0;
            for (std::size_t k = 1; k + 1 < m.y.size(); ++k) {
                const cplx dV = (m.V[k + 1] - m.V[k - 1]) / (2 * h);
                div = std::max(div, std::abs(dV + cplx(0, 1) * m.U[k] / eps));
                uscale = std::max(uscale, std::abs(m.U[k]) / eps);
            }
            json row = {{"n", n}, {"t", t}, {"jump_rel", rel_jump}, {"divergence_rel", div / std::max(uscale, 1e-300)}};
            std::vector<json> norms;
            for (double al : cfg.mode.alphas) {
                const double w = weighted_sobolev(m.y, {m.U, m.Uy, m.Uyy}, al);
                norms.push_back({{"alpha", al}, {"W2", w}, {"W2_over_eps", w / eps}});
                if (i == 0) init_ratio.push_back(w / eps);
            }
            row["norms"] = norms;
            rows.push_back(row);
            const std::string name = fmt_name("mode_n%d_t%d.csv", n, i);
            files.push_back(name);
            write_csv(dir / name, {"y", "U_re", "U_im", "V_re", "V_im", "Ucorr_re", "Ureg_re", "Ulayer_re"},
                      {m.y, re(m.U), im(m.U), re(m.V), im(m.V), re(m.U_corrector), re(m.U_regular), re(m.U_layer)});
        }
    }
    // initial smallness ratios per alpha across n
    double smallness = 0.0;
    const std::size_t na = cfg.mode.alphas.size();
    for (std::size_t i = na; i < init_ratio.size(); ++i)
        smallness = std::max(smallness, std::abs(init_ratio[i] / init_ratio[i % na] - 1.0));
    json j{{"rows", rows}, {"initial_ratio_spread", smallness}, {"worst_jump_rel", worst_jump}};
    write_json(dir / "mode.json", j);
    files.push_back("mode.json");
    write_manifest(dir, "mode", cfg.source_text, tolerances(cfg), files);
    CommandResult r{"mode", {{"initial_ratio_spread", smallness}, {"worst_jump_rel", worst_jump}}, true, false};
    r.pass = smallness < 1e-12 && worst_jump < 1e-8;
    return r;
}

CommandResult cmd_residual_scan(const RunConfig& cfg, const fs::path& out, unsigned threads) {
    const fs::path dir = out / "residual-scan";
    Setup s = build_setup(cfg, find_tau(cfg.eigen), threads);
    ResidualScan rs = residual_scan(cfg, s);
    json table = json::array();
    std::vector<SvgSeries> series;
    bool pass = true;
    for (std::size_t ia = 0; ia < rs.alphas.size(); ++ia) {
        table.push_back({{"alpha", rs.alphas[ia]}, {"n", rs.n}, {"value", rs.plateau[ia]}, {"spread", rs.spread[ia]}});
        SvgSeries sv;
        sv.label = "alpha=" + std::to_string(static_cast<int>(rs.alphas[ia]));
        for (std::size_t in = 0; in < rs.n.size(); ++in) {
            sv.x.push_back(std::log2(double(rs.n[in])));
            sv.y.push_back(std::log10(rs.plateau[ia][in]));
        }
        series.push_back(sv);
        pass = pass && rs.spread[ia] < 0.2;
    }
    // frozen old ansatz on the same profile: weighted initial norm on [0, Y/2] vs [0, Y]
    json old_block = json::array();
    {
        FrozenSetup fz = frozen_setup(s.profile, s.pair, s.field.y_grid, cfg.grid.t0);
        ModeParams prm = mode_params(cfg, s.profile, cfg.mode.n.front());
        ModeParams old = prm;
        old.ansatz = Ansatz::Original;
        auto mo = assemble_frozen(old, fz, 0.0);
        auto mn = assemble_frozen(prm, fz, 0.0);
        const std::size_t half = mo.y.size() / 2;
        for (double al : rs.alphas) {
            std::vector<double> yh(mo.y.begin(), mo.y.begin() + half + 1);
            std::vector<cplx> oh(mo.U.begin(), mo.U.begin() + half + 1);
            old_block.push_back({{"alpha", al},
                                 {"old_half", weighted_sup(yh, oh, al)},
                                 {"old_full", weighted_sup(mo.y, mo.U, al)},
                                 {"new_full", weighted_sup(mn.y, mn.U, al)}});
        }
    }
    json j{{"sigma0", rs.sigma0}, {"table", table}, {"old_ansatz", old_block}, {"pass", pass}};
    write_json(dir / "residual_scan.json", j);
    write_svg(dir / "residual_scan.svg", "sup_t ||R|| e^{-sigma0 t/sqrt(eps)}", "log2 n", "log10 value", series);
    write_manifest(dir, "residual-scan", cfg.source_text, tolerances(cfg), {"residual_scan.json", "residual_scan.svg"});
    CommandResult r{"residual-scan", j, true, pass};
    return r;
}

CommandResult cmd_growth_scan(const RunConfig& cfg, const fs::path& out, unsigned threads) {
    const fs::path dir = out / "growth-scan";
    Setup s = build_setup(cfg, find_tau(cfg.eigen), threads);
    std::vector<GrowthRun> runs;
    GrowthReport g = growth_scan(cfg, s, &runs);
    std::vector<SvgSeries> series;
    std::vector<std::string> files{"growth.json", "growth.svg"};
    for (const auto& run : runs) {
        const std::string name = fmt_name("trajectory_k%d.csv", run.k);
        std::vector<double> slope(run.trajectory.t.size(), 0.0);
        for (std::size_t i = 1; i < slope.size(); ++i)
            slope[i] = (run.trajectory.log_norm[i] - run.trajectory.log_norm[i - 1]) /
                       (run.trajectory.t[i] - run.trajectory.t[i - 1]);
        write_csv(dir / name, {"t", "log_norm", "slope"}, {run.trajectory.t, run.trajectory.log_norm, slope});
        files.push_back(name);
        SvgSeries sv{"k=" + std::to_string(run.k), {}, run.trajectory.log_norm};
        for (double t : run.trajectory.t) sv.x.push_back(t * std::sqrt(double(run.k)));
        series.push_back(sv);
    }
    bool pass = g.power_law.has_value() && g.power_law->p >= 0.45 && g.power_law->p <= 0.55;
    for (double q : g.plateau) pass = pass && std::abs(q - 1.0) <= 0.15;
    json j{{"rows", growth_rows_json(g)},
           {"power_law_status", g.power_law_status},
           {"target_rate", g.target_rate},
           {"measured_rate", g.sigma0},
           {"rate_ratio", g.plateau},
           {"pass", pass}};
    if (g.power_law) j["power_law"] = {{"p", g.power_law->p}, {"p_stderr", g.power_law->p_stderr},
                                       {"log_c", g.power_law->log_c}, {"residual", g.power_law->residual}};
    write_json(dir / "growth.json", j);
    write_svg(dir / "growth.svg", "log-norm of the evolved mode", "sqrt(k) t", "log ||u||", series);
    write_manifest(dir, "growth-scan", cfg.source_text, tolerances(cfg), files);
    return {"growth-scan", j, true, pass};
}

CommandResult cmd_illposedness_probe(const RunConfig& cfg, const fs::path& out, unsigned threads) {
    const fs::path dir = out / "illposedness-probe";
    Setup s = build_setup(cfg, find_tau(cfg.eigen), threads);
    ProbeResult pr = illposedness_probe(cfg, s, threads);
    const std::size_t nr = cfg.probe.rows.size();
    json rows = json::array();
    std::vector<SvgSeries> series(nr);
    bool pass = true;
    const double kmin = *std::min_element(cfg.probe.k.begin(), cfg.probe.k.end());
    const double kmax = *std::max_element(cfg.probe.k.begin(), cfg.probe.k.end());
    const double required = cfg.probe.gain_fraction * pr.rate * (std::sqrt(kmax) - std::sqrt(kmin)) * cfg.probe.t;
    json verdicts = json::array();
    for (std::size_t ir = 0; ir < nr; ++ir) {
        std::vector<ProbeRow> sel;
        for (std::size_t i = ir; i < pr.rows.size(); i += nr) sel.push_back(pr.rows[i]);
        std::sort(sel.begin(), sel.end(), [](const ProbeRow& a, const ProbeRow& b) { return a.k < b.k; });
        const auto& rc = cfg.probe.rows[ir];
        char label[96];
        std::snprintf(label, sizeof label, "m=%g a=%g s=%gr", rc.m, rc.alpha, rc.sigma_factor);
        series[ir].label = label;
        for (const auto& r : sel) {
            series[ir].x.push_back(std::sqrt(double(r.k)));
            series[ir].y.push_back(r.log_rho);
            rows.push_back({{"k", r.k}, {"t", r.t}, {"m", r.m}, {"alpha", r.alpha}, {"sigma", r.sigma},
                            {"mu", r.mu}, {"log_rho", r.log_rho}, {"log_rho_mu", r.log_rho_mu},
                            {"log_growth", r.log_growth}});
        }
        if (rc.sigma_factor > 0 && rc.sigma_factor < 1) {
            const bool ok = strictly_increasing_with_gain(sel, required);
            verdicts.push_back({{"sigma_factor", rc.sigma_factor}, {"check", "strictly increasing with gain"}, {"pass", ok}});
            pass = pass && ok;
        } else if (rc.sigma_factor > 1) {
            const bool ok = non_increasing(sel);
            verdicts.push_back({{"sigma_factor", rc.sigma_factor}, {"check", "non-increasing"}, {"pass", ok}});
            pass = pass && ok;
        }
    }
    json fits = json::array();
    for (const auto& run : pr.runs)
        fits.push_back({{"k", run.k}, {"sigma", run.fit.sigma}, {"residual", run.fit.residual}});
    json j{{"measured_rate", pr.rate}, {"required_log_gain", required}, {"fits", fits},
           {"rows", rows}, {"verdicts", verdicts}, {"pass", pass}};
    write_json(dir / "probe.json", j);
    write_svg(dir / "probe.svg", "log rho(k, t)", "sqrt(k)", "log rho", series);
    write_manifest(dir, "illposedness-probe", cfg.source_text, tolerances(cfg), {"probe.json", "probe.svg"});
    return {"illposedness-probe", j, true, pass};
}

}  // namespace prandtl
