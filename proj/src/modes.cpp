#include "prandtl/modes.hpp"

#include <algorithm>
#include <cmath>

#include "prandtl/error.hpp"

namespace prandtl {

namespace {

const cplx I(0.0, 1.0);

struct PointEval {
    cplx U, Uy, Uyy, V, Vy;
    cplx Ucorr, Ureg, Usl;
    cplx Rbar, Rtilde;
    std::array<cplx, 3> v;  // v, v_y, v_yy
};

PointEval eval_point(const ModeParams& prm, const ModeInputs& in, const ModeTime& mt, const CorrectorProfile& corr,
                     const Derivs5& d, const std::array<double, 3>& td, double y, bool right, bool want_residual) {
    const double eps = prm.eps(), se = std::sqrt(eps);
    const double t = mt.t;
    const double a = mt.path.a, lam = mt.path.lambda, adot = mt.path.a_dot;
    const double mu = mt.mu, k = mt.ks;
    const cplx tau = in.scaled->tau;
    const double x = y - a;
    const double H = right ? 1.0 : 0.0;

    // regular part H(y-a)[u - u(a) + eps^{1/2} mu tau]
    const cplx g = d[0] - mt.path.u_at_a + se * mu * tau;
    const cplx vr[4] = {H * g, H * d[1], H * d[2], H * d[3]};

    // shear-layer part eps^{1/2} mu phi(x) V(k x)
    const auto ph = prm.phi(x);
    std::array<cplx, 4> Vz{};
    const double z = k * x;
    if (ph[0] != 0.0 || ph[1] != 0.0 || ph[2] != 0.0 || ph[3] != 0.0) Vz = in.scaled->layer->one_sided(z, right);
    const double c = se * mu;
    const cplx vs[4] = {
        c * ph[0] * Vz[0],
        c * (ph[1] * Vz[0] + k * ph[0] * Vz[1]),
        c * (ph[2] * Vz[0] + 2 * k * ph[1] * Vz[1] + k * k * ph[0] * Vz[2]),
        c * (ph[3] * Vz[0] + 3 * k * ph[2] * Vz[1] + 3 * k * k * ph[1] * Vz[2] + k * k * k * ph[0] * Vz[3])};

    const auto vt = corr(y);
    const cplx P = mt.phase;
    PointEval p{};
    cplx v[4];
    for (int j = 0; j < 4; ++j) v[j] = vr[j] + vs[j];
    p.v = {v[0], v[1], v[2]};
    if (prm.ansatz == Ansatz::Original) {
        p.U = P * I * v[1];
        p.Uy = P * I * v[2];
        p.Uyy = P * I * v[3];
        p.V = P * v[0] / eps;
        p.Vy = P * v[1] / eps;
        p.Ureg = P * I * vr[1];
        p.Usl = P * I * vs[1];
        p.Ucorr = 0.0;
    } else {
        p.Ucorr = P * eps * vt[1];
        p.Ureg = P * I * t * vr[1];
        p.Usl = P * I * t * vs[1];
        p.U = P * (eps * vt[1] + I * t * v[1]);
        p.Uy = P * (eps * vt[2] + I * t * v[2]);
        p.Uyy = P * (eps * vt[3] + I * t * v[3]);
        p.V = P * (-I * vt[0] + t / eps * v[0]);
        p.Vy = P * (-I * vt[1] + t / eps * v[1]);
    }
    if (!want_residual) return p;

    const cplx w = mt.w;
    p.Rbar = P * (I * (w + d[0]) * vt[1] - I * d[1] * vt[0] - eps * vt[3] + I * v[1]);

    // Taylor defects of u_s about the critical point
    const double D0 = d[0] - mt.path.u_at_a - 0.5 * lam * x * x;
    const double D1 = d[1] - lam * x;
    const cplx Q = tau - z * z;
    // d_t of d_y v_sl through mu(t), k(t), a(t)
    const double zdot = mt.ks_dot * x - k * adot;
    const cplx dt_vsl_y =
        se * (mt.mu_dot * (ph[1] * Vz[0] + k * ph[0] * Vz[1]) +
              mu * (-adot * ph[2] * Vz[0] + ph[1] * Vz[1] * zdot + mt.ks_dot * ph[0] * Vz[1] -
                    adot * k * ph[1] * Vz[1] + k * ph[0] * Vz[2] * zdot));
    // terms left over by the cutoff once the profile equation has removed the rest
    const cplx cut = -mu * mu * Q * ph[1] * Vz[0] -
                     I * c * (ph[3] * Vz[0] + 3 * k * ph[2] * Vz[1] + 3 * k * k * ph[1] * Vz[2]);
    // regular part: vanishes for the heat flow, -i H U''' for a frozen background
    const cplx reg = I * H * (td[1] - d[3]);
    p.Rtilde = P * (-D0 * vs[1] / eps + D1 * vs[0] / eps + I * dt_vsl_y + cut + reg);
    return p;
}

}  // namespace

std::array<double, 4> Cutoff::operator()(double x) const {
    const double ax = std::abs(x);
    if (ax <= delta1) return {1.0, 0.0, 0.0, 0.0};
    if (ax >= delta2) return {0.0, 0.0, 0.0, 0.0};
    const double L = delta2 - delta1, s = (ax - delta1) / L, sg = x < 0 ? -1.0 : 1.0;
    const double S = s * s * s * (10 - 15 * s + 6 * s * s);
    const double S1 = 30 * s * s * (1 - s) * (1 - s);
    const double S2 = 60 * s * (1 - s) * (1 - 2 * s);
    const double S3 = 60 * (1 - 6 * s + 6 * s * s);
    return {1 - S, -sg * S1 / L, -S2 / (L * L), -sg * S3 / (L * L * L)};
}

CorrectorSeed polynomial_bump(double lo, double hi) {
    if (!(hi > lo && lo >= 0)) fail(ErrorCode::InvalidArgument, "bump support must satisfy 0 <= lo < hi");
    const double L = hi - lo;
    const double c = 140.0 / L;  // unit mass
    CorrectorSeed s;
    s.name = "polynomial-bump";
    s.lo = lo;
    s.hi = hi;
    s.f = [=](double y) -> std::array<double, 3> {
        if (y <= lo || y >= hi) return {0.0, 0.0, 0.0};
        const double u = (y - lo) / L, p = u * (1 - u);
        const double p1 = 1 - 2 * u;
        // (p^3)' = 3 p^2 p', (p^3)'' = 6 p p'^2 + 3 p^2 p'', p'' = -2
        return {c * p * p * p, c * 3 * p * p * p1 / L, c * (6 * p * p1 * p1 - 6 * p * p) / (L * L)};
    };
    return s;
}

CorrectorSeed odd_bump(double lo, double hi) {
    CorrectorSeed base = polynomial_bump(lo, hi);
    const double mid = 0.5 * (lo + hi);
    CorrectorSeed s;
    s.name = "odd-bump";
    s.lo = lo;
    s.hi = hi;
    auto f = base.f;
    s.f = [=](double y) -> std::array<double, 3> {
        auto v = f(y);
        const double sg = y < mid ? -1.0 : 1.0;
        return {sg * v[0], sg * v[1], sg * v[2]};
    };
    return s;
}

CorrectorProfile::CorrectorProfile(CorrectorSeed seed) : seed_(std::move(seed)) {
    mass_ = integral(seed_.lo, seed_.hi);
    double total = 0.0;
    const double h = (seed_.hi - seed_.lo) / 64.0;
    for (int p = 0; p < 64; ++p) {
        auto g = gauss_legendre8(seed_.lo + p * h, seed_.lo + (p + 1) * h);
        for (int i = 0; i < 8; ++i) total += g.weights[i] * std::abs(seed_.f(g.nodes[i])[0]);
    }
    if (!(std::abs(mass_) > 1e-12 * total))
        fail(ErrorCode::ZeroMass, "corrector seed has zero mass");
}

double CorrectorProfile::integral(double a, double b) const {
    // composite Gauss-Legendre, exact for polynomial pieces
    double sum = 0.0;
    const int panels = 16;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        auto g = gauss_legendre8(a + p * h, a + (p + 1) * h);
        for (int i = 0; i < 8; ++i) sum += g.weights[i] * seed_.f(g.nodes[i])[0];
    }
    return sum;
}

std::array<double, 4> CorrectorProfile::operator()(double y) const {
    if (y <= seed_.lo) return {0.0, 0.0, 0.0, 0.0};
    if (y >= seed_.hi) return {1.0, 0.0, 0.0, 0.0};
    auto f = seed_.f(y);
    return {integral(seed_.lo, y) / mass_, f[0] / mass_, f[1] / mass_, f[2] / mass_};
}

CorrectorSamples corrector(const CorrectorSeed& f, const std::vector<double>& y_grid) {
    CorrectorProfile p(f);
    CorrectorSamples s;
    s.y = y_grid;
    s.mass = p.mass();
    for (auto& v : s.v) v.resize(y_grid.size());
    for (std::size_t i = 0; i < y_grid.size(); ++i) {
        auto v = p(y_grid[i]);
        for (int k = 0; k < 4; ++k) s.v[k][i] = v[k];
    }
    return s;
}

void ModeParams::validate(double y_max) const {
    if (n < 1) fail(ErrorCode::InvalidArgument, "wavenumber n must be a positive integer");
    if (!(phi.delta1 > 0 && phi.delta2 > phi.delta1)) fail(ErrorCode::InvalidArgument, "cutoff needs 0 < delta1 < delta2");
    if (ansatz == Ansatz::Corrected) {
        if (!f.f) fail(ErrorCode::InvalidArgument, "corrector seed missing");
        if (!(f.lo > 0 && f.hi < y_max)) fail(ErrorCode::InvalidArgument, "corrector support must lie inside (0, Y_max)");
        CorrectorProfile check(f);
        if (!(check.mass() > 0)) fail(ErrorCode::InvalidArgument, "corrector seed must have positive mass");
    }
}

ModeParams ModeParams::defaults(const ShearProfile& profile, int n) {
    ModeParams p;
    p.n = n;
    const double s = std::min(profile.a0, 1.0);
    p.phi = {0.5 * s, 1.0 * s};
    p.f = polynomial_bump(profile.a0 + p.phi.delta2 + 0.5, profile.a0 + p.phi.delta2 + 1.5);
    return p;
}

ModeTime mode_time(const ModeParams& params, const ModeInputs& in, double t) {
    if (t > in.path->horizon * (1 + 1e-12)) fail(ErrorCode::HorizonExceeded, "mode time beyond the path horizon");
    ModeTime m;
    m.t = t;
    m.path = in.path->at(t);
    const double eps = params.eps(), se = std::sqrt(eps);
    m.mu = ScaledEigendata::mu_of(m.path.lambda);
    m.mu_dot = -m.path.lambda_dot / (4.0 * m.mu);
    m.ks = std::sqrt(m.mu) * std::pow(eps, -0.25);
    m.ks_dot = 0.5 * m.mu_dot / std::sqrt(m.mu) * std::pow(eps, -0.25);
    const cplx tau = in.scaled->tau;
    m.w = -m.path.u_at_a + se * m.mu * tau;
    m.phase = std::exp(I / eps * (-m.path.int_u + se * tau * m.path.int_mu));
    return m;
}

ModeField assemble_mode(const ModeParams& params, const HeatFlowField& field, const CriticalPath& path,
                        const ScaledEigendata& scaled, double t) {
    params.validate(field.y_grid.hi);
    ModeInputs in{&field, &path, &scaled};
    ModeField m;
    m.t = t;
    m.eps = params.eps();
    m.state = mode_time(params, in, t);
    m.y = field.y_grid.points();
    const HeatSlice slice = field.slice_at(field.frozen() ? 0.0 : t);
    const CorrectorProfile corr(params.ansatz == Ansatz::Corrected ? params.f : polynomial_bump(0.5, 1.0));
    const std::size_t n = m.y.size();
    for (auto* v : {&m.U, &m.Uy, &m.Uyy, &m.V, &m.Vy, &m.U_corrector, &m.U_regular, &m.U_layer}) v->resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Derivs5 d{slice.d[0][i], slice.d[1][i], slice.d[2][i], slice.d[3][i], slice.d[4][i]};
        const double y = m.y[i];
        auto p = eval_point(params, in, m.state, corr, d, {}, y, y >= m.state.path.a, false);
        m.U[i] = p.U;
        m.Uy[i] = p.Uy;
        m.Uyy[i] = p.Uyy;
        m.V[i] = p.V;
        m.Vy[i] = p.Vy;
        m.U_corrector[i] = p.Ucorr;
        m.U_regular[i] = p.Ureg;
        m.U_layer[i] = p.Usl;
    }
    if (params.ansatz == Ansatz::Original) {
        for (auto& v : m.U_corrector) v = 0.0;
    }
    return m;
}

ResidualField residual(const ModeParams& params, const HeatFlowField& field, const CriticalPath& path,
                       const ScaledEigendata& scaled, const ModeField& mode, double t) {
    if (params.ansatz != Ansatz::Corrected)
        fail(ErrorCode::InvalidArgument, "residual is defined for the corrected ansatz");
    ModeInputs in{&field, &path, &scaled};
    const ModeTime mt = (mode.t == t) ? mode.state : mode_time(params, in, t);
    ResidualField r;
    r.t = t;
    r.y = field.y_grid.points();
    const HeatSlice slice = field.slice_at(field.frozen() ? 0.0 : t);
    const CorrectorProfile corr(params.f);
    const std::size_t n = r.y.size();
    r.R.resize(n);
    r.R_bar.resize(n);
    r.R_tilde.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Derivs5 d{slice.d[0][i], slice.d[1][i], slice.d[2][i], slice.d[3][i], slice.d[4][i]};
        auto td = field.solution->time_derivs(d);
        const double y = r.y[i];
        auto p = eval_point(params, in, mt, corr, d, td, y, y >= mt.path.a, true);
        r.R_bar[i] = p.Rbar;
        r.R_tilde[i] = p.Rtilde;
        r.R[i] = p.Rbar + t * p.Rtilde;
    }
    return r;
}

FrozenSetup frozen_setup(const ShearProfile& profile, const Eigenpair& pair, const UniformGrid& y_grid,
                         double horizon) {
    FrozenSetup s{frozen_field(profile.shape, y_grid, horizon), {}, {}};
    s.path = track_critical_point(s.field, profile.a0);
    s.scaled = scale_eigendata(pair, s.path);
    return s;
}

ModeField assemble_frozen(const ModeParams& params, const FrozenSetup& setup, double t) {
    ModeParams p = params;
    p.frozen = true;
    return assemble_mode(p, setup.field, setup.path, setup.scaled, t);
}

std::array<cplx, 3> normal_jet(const ModeParams& params, const ModeInputs& in, const ModeTime& mt, double y,
                               bool right_side) {
    const CorrectorProfile corr(params.ansatz == Ansatz::Corrected ? params.f : polynomial_bump(0.5, 1.0));
    auto d = in.field->solution->derivs(in.field->frozen() ? 0.0 : mt.t, y);
    return eval_point(params, in, mt, corr, d, {}, y, right_side, false).v;
}

std::array<cplx, 3> mode_normal_jet(const ModeParams& params, const ModeInputs& in, const ModeTime& mt, double y,
                                    bool right_side) {
    auto v = normal_jet(params, in, mt, y, right_side);
    const CorrectorProfile corr(params.ansatz == Ansatz::Corrected ? params.f : polynomial_bump(0.5, 1.0));
    auto vt = corr(y);
    const double eps = params.eps(), t = mt.t;
    std::array<cplx, 3> out;
    for (int j = 0; j < 3; ++j) {
        cplx base = params.ansatz == Ansatz::Corrected ? -I * vt[j] + t / eps * v[j] : v[j] / eps;
        out[j] = mt.phase * base;
    }
    return out;
}

}  // namespace prandtl
