#include "prandtl/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "prandtl/error.hpp"

namespace prandtl {

namespace {

const cplx I(0.0, 1.0);
constexpr int KL = 3, KU = 2, LDAB = 2 * KL + KU + 1;

double sup_abs(const std::vector<cplx>& f) {
    double m = 0.0;
    for (const auto& v : f) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

void FourierModeState::update_v() {
    v_hat.assign(u_hat.size(), cplx(0.0));
    for (std::size_t j = 1; j < u_hat.size(); ++j)
        v_hat[j] = v_hat[j - 1] - I * static_cast<double>(k) * 0.5 * (y[j] - y[j - 1]) * (u_hat[j] + u_hat[j - 1]);
}

void FourierModeState::validate() const {
    if (y.size() < 3 || u_hat.size() != y.size()) fail(ErrorCode::InvalidArgument, "mode state needs matching y and u_hat");
    if (k < 0) fail(ErrorCode::InvalidArgument, "wavenumber must be non-negative");
}

FourierModeState make_state(int k, const std::vector<double>& y, std::vector<cplx> u_hat, double t) {
    FourierModeState s;
    s.k = k;
    s.t = t;
    s.y = y;
    s.u_hat = std::move(u_hat);
    s.validate();
    s.update_v();
    return s;
}

const char* scheme_name(Scheme s) { return s == Scheme::Inviscid ? "inviscid" : "crank-nicolson"; }

Scheme parse_scheme(const std::string& s) {
    if (s == "crank-nicolson" || s == "imex-cn") return Scheme::CrankNicolson;
    if (s == "inviscid") return Scheme::Inviscid;
    fail(ErrorCode::ConfigError, "unknown scheme '" + s + "'");
}

double Background::reference_speed(double) const { return 0.0; }

FieldBackground::FieldBackground(const HeatFlowField& field, const CriticalPath* path)
    : field_(&field), path_(path), y_(field.y_grid.points()) {
    for (const auto& s : field.slices)
        for (double v : s.d[0]) sup_ = std::max(sup_, std::abs(v));
}

void FieldBackground::coefficients(double t, std::vector<double>& u, std::vector<double>& uy) const {
    if (field_->frozen()) {
        u = field_->slices.front().d[0];
        uy = field_->slices.front().d[1];
        return;
    }
    field_->sample(t, u, uy);
}

double FieldBackground::reference_speed(double t) const {
    if (path_) return path_->state_at(std::min(t, path_->horizon)).u_at_a;
    std::vector<double> u, uy;
    coefficients(t, u, uy);
    auto [lo, hi] = std::minmax_element(u.begin(), u.end());
    return 0.5 * (*lo + *hi);
}

FrozenBackground::FrozenBackground(std::vector<double> y, std::vector<double> u, std::vector<double> uy,
                                   double horizon, double speed)
    : y_(std::move(y)), u_(std::move(u)), uy_(std::move(uy)), horizon_(horizon), speed_(speed) {
    if (u_.size() != y_.size() || uy_.size() != y_.size())
        fail(ErrorCode::InvalidArgument, "frozen background arrays must match the grid");
    for (double v : u_) sup_ = std::max(sup_, std::abs(v));
}

void FrozenBackground::coefficients(double, std::vector<double>& u, std::vector<double>& uy) const {
    u = u_;
    uy = uy_;
}

ModeStepper::ModeStepper(const Background& bg, SolverConfig cfg, int k) : bg_(bg), cfg_(cfg), k_(k) {
    const auto& y = bg.y();
    if (y.size() < 3) fail(ErrorCode::InvalidArgument, "grid too small");
    n_ = y.size();
    h_ = (y.back() - y.front()) / static_cast<double>(n_ - 1);
    if (!(cfg.dt > 0)) fail(ErrorCode::InvalidArgument, "dt must be positive");
}

// Band of I - dt/2 A(t1) in LAPACK general-band layout, unknowns interleaved as (u_0, s_0, u_1, s_1, ...)
// with s_j = int_0^{y_j} u.
void ModeStepper::factor(double t1, double c, double dt) {
    const std::size_t N = n_ - 1, n = 2 * n_;
    bg_.coefficients(t1, u_, uy_);
    lu_.assign(LDAB * n, cplx(0.0));
    auto at = [&](std::size_t i, std::size_t j) -> cplx& { return lu_[j * LDAB + KL + KU + i - j]; };
    const double nu = cfg_.scheme == Scheme::CrankNicolson ? 1.0 : 0.0;
    const double kk = static_cast<double>(k_), d2 = nu / (h_ * h_), half = 0.5 * dt;
    for (std::size_t j = 0; j <= N; ++j) {
        const std::size_t X = 2 * j, S = X + 1;
        if (nu > 0 && (j == 0 || j == N)) {
            at(X, X) = 1.0;
        } else {
            at(X, X) = 1.0 - half * (-I * kk * (u_[j] - c) - 2.0 * d2);
            if (j > 0) at(X, X - 2) = -half * d2;
            if (j < N) at(X, X + 2) = -half * d2;
            at(X, S) = -half * I * kk * uy_[j];
        }
        at(S, S) = 1.0;
        if (j > 0) {
            at(S, S - 2) = -1.0;
            at(S, X) = -0.5 * h_;
            at(S, X - 2) = -0.5 * h_;
        }
    }
    piv_.resize(n);
    int info = LAPACKE_zgbtrf(LAPACK_COL_MAJOR, static_cast<int>(n), static_cast<int>(n), KL, KU, lu_.data(), LDAB,
                              piv_.data());
    if (info != 0) fail(ErrorCode::NonFiniteState, "singular step matrix");
    factored_ = true;
    lu_dt_ = dt;
    lu_c_ = c;
}

void ModeStepper::step(FourierModeState& s, double dt) {
    if (dt <= 0) dt = cfg_.dt;
    if (s.u_hat.size() != n_) fail(ErrorCode::InvalidArgument, "state does not match the background grid");
    if (s.t + dt > bg_.horizon() * (1 + 1e-12) + 1e-300)
        fail(ErrorCode::HorizonExceeded, "step beyond the background horizon");
    if (k_ > 0 && dt > cfg_.c_cfl / (k_ * std::max(bg_.sup_speed(), 1e-300)) * (1 + 1e-12))
        fail(ErrorCode::CflViolation, "dt exceeds c_cfl / (k sup|u_s|)");
    const std::size_t N = n_ - 1;
    const double c = bg_.reference_speed(s.t + 0.5 * dt);
    const double kk = static_cast<double>(k_), half = 0.5 * dt;
    const double nu = cfg_.scheme == Scheme::CrankNicolson ? 1.0 : 0.0, d2 = nu / (h_ * h_);

    // right-hand side (I + dt/2 A(t)) at the old time
    std::vector<double> u0, uy0;
    bg_.coefficients(s.t, u0, uy0);
    std::vector<cplx> rhs(2 * n_, cplx(0.0));
    cplx sj = 0.0;
    for (std::size_t j = 0; j <= N; ++j) {
        if (j > 0) sj += 0.5 * h_ * (s.u_hat[j] + s.u_hat[j - 1]);
        if (nu > 0 && (j == 0 || j == N)) continue;
        cplx Ax = -I * kk * (u0[j] - c) * s.u_hat[j] + I * kk * uy0[j] * sj;
        if (nu > 0) Ax += d2 * (s.u_hat[j + 1] - 2.0 * s.u_hat[j] + s.u_hat[j - 1]);
        rhs[2 * j] = s.u_hat[j] + half * Ax;
    }

    if (!(bg_.frozen() && factored_ && lu_dt_ == dt && lu_c_ == c)) factor(s.t + dt, c, dt);
    int info = LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', static_cast<int>(2 * n_), KL, KU, 1, lu_.data(), LDAB,
                              piv_.data(), rhs.data(), static_cast<int>(2 * n_));
    if (info != 0) fail(ErrorCode::NonFiniteState, "banded solve failed");

    const cplx rot = std::exp(-I * kk * c * dt);
    for (std::size_t j = 0; j <= N; ++j) {
        const cplx v = rhs[2 * j] * rot;
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            fail(ErrorCode::NonFiniteState, "non-finite mode amplitude; renormalize");
        s.u_hat[j] = v;
    }
    s.t += dt;
    s.update_v();
}

FourierModeState step(const FourierModeState& state, const Background& bg, const SolverConfig& cfg) {
    FourierModeState s = state;
    ModeStepper(bg, cfg, s.k).step(s);
    return s;
}

FourierModeState step(const FourierModeState& state, const HeatFlowField& field, const SolverConfig& cfg) {
    FieldBackground bg(field);
    return step(state, bg, cfg);
}

Trajectory evolve(FourierModeState state, const Background& bg, const SolverConfig& cfg, double t_final,
                  bool renormalize) {
    state.validate();
    if (t_final > bg.horizon() * (1 + 1e-12)) fail(ErrorCode::HorizonExceeded, "t_final beyond the background horizon");
    ModeStepper st(bg, cfg, state.k);
    Trajectory tr;
    auto record = [&] {
        const double n = sup_abs(state.u_hat);
        tr.t.push_back(state.t);
        tr.log_norm.push_back(std::log(n) + state.log_scale);
    };
    auto rescale = [&] {
        const double n = sup_abs(state.u_hat);
        if (!(n > 0) || !std::isfinite(n)) return;
        for (auto& v : state.u_hat) v /= n;
        for (auto& v : state.v_hat) v /= n;
        state.log_scale += std::log(n);
    };
    if (renormalize) rescale();
    record();
    const double tol = 1e-12 * std::max(1.0, std::abs(t_final));
    while (state.t < t_final - tol) {
        double dt = cfg.dt;
        if (state.t + dt > t_final - tol) dt = t_final - state.t;
        st.step(state, dt);
        if (renormalize) rescale();
        record();
    }
    tr.final_state = std::move(state);
    return tr;
}

FourierModeState inviscid_exact(const std::function<cplx(double)>& u0,
                                const std::function<std::array<double, 2>(double)>& U, int k, double t,
                                const std::vector<double>& y, double tol) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    const double kk = static_cast<double>(k);
    auto e1 = [&](double z) { return std::exp(-I * kk * U(z)[0] * t) * u0(z); };
    auto e2 = [&](double z) { return U(z)[0] * e1(z); };
    // Bisect until the Kronrod error estimate is small against the mass accumulated so far;
    // a relative test per cell never settles once the integrand has underflowed.
    using Fn = std::function<cplx(double)>;
    std::function<cplx(const Fn&, double, double, double&, int)> integ =
        [&](const Fn& f, double a, double b, double& mass, int depth) -> cplx {
        double er = 0, ei = 0, lr = 0, li = 0;
        const double re = GK::integrate([&](double z) { return f(z).real(); }, a, b, 0, 0.0, &er, &lr);
        const double im = GK::integrate([&](double z) { return f(z).imag(); }, a, b, 0, 0.0, &ei, &li);
        if (depth < 30 && std::max(er, ei) > tol * std::max(mass, lr + li)) {
            const double m = 0.5 * (a + b);
            return integ(f, a, m, mass, depth + 1) + integ(f, m, b, mass, depth + 1);
        }
        mass += lr + li;
        return cplx(re, im);
    };
    const Fn f1 = e1, f2 = e2;
    double mass1 = 0.0, mass2 = 0.0;
    FourierModeState s;
    s.k = k;
    s.t = t;
    s.y = y;
    s.u_hat.resize(y.size());
    s.v_hat.resize(y.size());
    cplx I1 = 0.0, I2 = 0.0;
    double prev = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
        if (y[j] > prev) {
            I1 += integ(f1, prev, y[j], mass1, 0);
            I2 += integ(f2, prev, y[j], mass2, 0);
            prev = y[j];
        }
        const auto Uy = U(y[j]);
        s.u_hat[j] = e1(y[j]) + t * Uy[1] * I * kk * I1;
        s.v_hat[j] = -I * kk * I1 + kk * kk * t * (Uy[0] * I1 - I2);
    }
    return s;
}

GrowthRun measure_growth(const Background& bg, const SolverConfig& cfg, int k, const std::vector<cplx>& u0,
                         double t_final, double w_lo, double w_hi) {
    GrowthRun r;
    r.k = k;
    r.trajectory = evolve(make_state(k, bg.y(), u0), bg, cfg, t_final, true);
    r.fit = fit_rate(r.trajectory.t, r.trajectory.log_norm, w_lo * t_final, w_hi * t_final);
    return r;
}

std::vector<ProbeRow> operator_growth_probe(const Background& bg, SolverConfig cfg, const std::vector<int>& ks,
                                            double t, const std::vector<ProbeSetting>& settings,
                                            const std::function<std::vector<cplx>(int)>& initial,
                                            const std::function<double(int)>& dt_of, unsigned threads,
                                            std::vector<Trajectory>* trajectories) {
    std::vector<std::vector<ProbeRow>> per_k(ks.size());
    if (trajectories) trajectories->assign(ks.size(), Trajectory{});
    auto run = [&](std::size_t i) {
        const int k = ks[i];
        SolverConfig c = cfg;
        c.dt = dt_of(k);
        auto u0 = initial(k);
        auto tr = evolve(make_state(k, bg.y(), u0), bg, c, t, true);
        const double logn = tr.log_norm.back();
        if (trajectories) {
            tr.final_state.y.clear();
            (*trajectories)[i] = std::move(tr);
        }
        for (const auto& st : settings) {
            ProbeRow r;
            r.k = k;
            r.t = t;
            r.m = st.m;
            r.alpha = st.alpha;
            r.sigma = st.sigma;
            r.mu = st.mu;
            const double kk = static_cast<double>(k);
            r.log_growth = logn - std::log(weighted_sup(bg.y(), u0, st.alpha));
            r.log_rho = -st.sigma * std::sqrt(kk) * t + logn - std::log(mode_sobolev(bg.y(), u0, kk, st.m, st.alpha));
            r.log_rho_mu = r.log_rho + st.mu * std::log(kk);
            per_k[i].push_back(r);
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(ks.size())));
    if (threads == 1) {
        for (std::size_t i = 0; i < ks.size(); ++i) run(i);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errs(threads);
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < ks.size(); i += threads) run(i);
                } catch (...) {
                    errs[w] = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        for (auto& e : errs)
            if (e) std::rethrow_exception(e);
    }
    std::vector<ProbeRow> rows;
    for (auto& v : per_k) rows.insert(rows.end(), v.begin(), v.end());
    return rows;
}

}  // namespace prandtl
