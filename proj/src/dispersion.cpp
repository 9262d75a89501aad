#include "prandtl/dispersion.hpp"

#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "prandtl/error.hpp"

namespace prandtl {

namespace odeint = boost::numeric::odeint;

namespace {

const cplx I(0.0, 1.0);
using State = std::array<double, 6>;

State pack(const Jet3& j) {
    return {j[0].real(), j[0].imag(), j[1].real(), j[1].imag(), j[2].real(), j[2].imag()};
}

Jet3 unpack(const State& x) { return {cplx(x[0], x[1]), cplx(x[2], x[3]), cplx(x[4], x[5])}; }

double jet_norm(const Jet3& j) { return std::max({std::abs(j[0]), std::abs(j[1]), std::abs(j[2])}); }

struct VRhs {
    cplx tau;
    int s;
    void operator()(const State& x, State& dx, double z) const {
        const cplx V(x[0], x[1]), V1(x[2], x[3]);
        const cplx Q = tau + static_cast<double>(s) * z * z;
        const double Qp = 2.0 * s * z;
        const cplx V3 = I * (Q * V1 - Qp * V);
        dx = {x[2], x[3], x[4], x[5], V3.real(), V3.imag()};
    }
};

cplx branch_kappa(int s, Branch b) {
    // kappa^2 = i s, Re kappa > 0 selects the decaying branch
    cplx k = std::sqrt(cplx(0.0, static_cast<double>(s)));
    if (k.real() < 0) k = -k;
    return b == Branch::Decaying ? k : -k;
}

// Two-term asymptotic jet z^beta e^{-kappa z^2/2}(1 + c1/z^2) at z > 0, divided by its envelope.
Jet3 series_jet(cplx tau, int s, cplx kappa, double z) {
    const cplx beta = -(5.0 + static_cast<double>(s) * kappa * tau) / 2.0;
    const cplx c1 = -static_cast<double>(s) * beta * (tau - 3.0 * I * kappa * beta) / 4.0;
    const cplx g = 1.0 + c1 / (z * z);
    const cplx g1 = -2.0 * c1 / (z * z * z);
    const cplx g2 = 6.0 * c1 / (z * z * z * z);
    const cplx L = beta / z - kappa * z;
    const cplx L1 = -beta / (z * z) - kappa;
    return {g, L * g + g1, (L1 + L * L) * g + 2.0 * L * g1 + g2};
}

cplx series_beta(cplx tau, int s, cplx kappa) { return -(5.0 + static_cast<double>(s) * kappa * tau) / 2.0; }

struct Collector {
    std::vector<Jet3>* out;
    void operator()(const State& x, double) const { out->push_back(unpack(x)); }
};

// Integrates one tail from z0 = +-Z to 0. The left tail is seeded by reflection:
// the ODE is invariant under z -> -z, so V_left(z) = D(-z) for the right-type seed D.
TailSolution integrate_tail(cplx tau, const DispersionProblem& pb, Branch branch, bool right, bool dense) {
    const int s = pb.sign_curvature;
    const cplx kappa = branch_kappa(s, branch);
    Jet3 seed = series_jet(tau, s, kappa, pb.Z);
    const double scale = jet_norm(seed);
    for (auto& v : seed) v /= scale;
    if (!right) seed[1] = -seed[1];
    State x = pack(seed);

    TailSolution sol;
    sol.z_start = right ? pb.Z : -pb.Z;
    VRhs rhs{tau, s};
    auto stepper = odeint::make_controlled(pb.atol, pb.rtol, odeint::runge_kutta_fehlberg78<State>());
    const double dir = right ? -1.0 : 1.0;
    try {
        if (dense) {
            const std::size_t n = pb.half_intervals();
            std::vector<double> times(n + 1);
            for (std::size_t i = 0; i <= n; ++i) times[i] = sol.z_start + dir * pb.dz * static_cast<double>(i);
            times[n] = 0.0;
            std::vector<Jet3> outward;
            outward.reserve(n + 1);
            odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), dir * pb.dz, Collector{&outward});
            std::reverse(outward.begin(), outward.end());
            sol.samples = std::move(outward);
            x = pack(sol.samples.front());
        } else {
            odeint::integrate_adaptive(stepper, rhs, x, sol.z_start, 0.0, dir * 0.01);
        }
    } catch (const odeint::step_adjustment_error&) {
        fail(ErrorCode::TailBlowup, "tail integration step size collapsed");
    }
    sol.at_match = unpack(x);
    for (double v : x)
        if (!std::isfinite(v)) fail(ErrorCode::TailBlowup, "tail solution overflowed");
    // compare the growth toward the matching point with the selected branch envelope
    sol.log_growth = std::log(jet_norm(sol.at_match));
    const double expected = kappa.real() * pb.Z * pb.Z / 2.0;
    const double algebraic = std::abs(series_beta(tau, s, kappa).real()) * std::log(pb.Z) + 2.0 * std::log(pb.Z);
    if (sol.log_growth - expected > std::log(pb.blowup_guard) + algebraic)
        fail(ErrorCode::TailBlowup, "tail solution grew beyond the envelope of the selected branch");
    return sol;
}

// c_L, c_R from [V] = -Q(0), [V'] = -Q'(0) = 0
std::pair<cplx, cplx> tail_constants(cplx tau, const Jet3& L, const Jet3& R) {
    // c_R R0 - c_L L0 = -tau ; c_R R1 - c_L L1 = 0
    const cplx det = -R[0] * L[1] + R[1] * L[0];
    if (std::abs(det) == 0.0) fail(ErrorCode::NoRootFound, "singular tail matching system");
    const cplx cR = (-tau * -L[1]) / det;
    const cplx cL = (R[0] * 0.0 - R[1] * -tau) / det;
    return {cL, cR};
}

}  // namespace

void DispersionProblem::validate() const {
    if (sign_curvature != 1 && sign_curvature != -1)
        fail(ErrorCode::InvalidArgument, "sign_curvature must be +1 or -1");
    if (!(Z > 2 && dz > 0 && dz < Z)) fail(ErrorCode::InvalidArgument, "invalid truncation Z or step dz");
    if (z_match != 0.0) fail(ErrorCode::InvalidArgument, "only the matching point z_m = 0 is supported");
    if (!(re_lo < re_hi && im_lo < im_hi) || grid_re < 2 || grid_im < 2)
        fail(ErrorCode::InvalidArgument, "invalid seeding rectangle");
}

std::size_t DispersionProblem::half_intervals() const {
    return static_cast<std::size_t>(std::llround(Z / dz));
}

TailPair shoot_tails(cplx tau, const DispersionProblem& problem, Branch branch, bool dense) {
    problem.validate();
    if (tau.imag() == 0.0)
        fail(ErrorCode::InvalidArgument, "tau on the real axis: Q vanishes on the real line");
    TailPair p;
    p.left = integrate_tail(tau, problem, branch, false, dense);
    p.right = integrate_tail(tau, problem, branch, true, dense);
    return p;
}

cplx matching_defect(cplx tau, const DispersionProblem& problem) {
    auto tails = shoot_tails(tau, problem);
    const Jet3& L = tails.left.at_match;
    const Jet3& R = tails.right.at_match;
    auto [cL, cR] = tail_constants(tau, L, R);
    // required curvature jump [V''] = -Q''(0) = -2 s
    return cR * R[2] - cL * L[2] + 2.0 * problem.sign_curvature;
}

std::array<double, 2> matching_defect_vector(cplx tau, const DispersionProblem& problem) {
    cplx d = matching_defect(tau, problem);
    return {d.real(), d.imag()};
}

cplx newton_tau(cplx seed, const DispersionProblem& pb, int* iterations) {
    cplx tau = seed;
    for (int it = 0; it < pb.newton_max; ++it) {
        const cplx F = matching_defect(tau, pb);
        const double h = 1e-6 * std::max(1.0, std::abs(tau));
        const cplx dF = (matching_defect(tau + h, pb) - matching_defect(tau - h, pb)) / (2.0 * h);
        if (!std::isfinite(std::abs(dF)) || std::abs(dF) == 0.0) break;
        cplx step = F / dF;
        if (std::abs(step) > 0.5) step *= 0.5 / std::abs(step);
        tau -= step;
        if (tau.imag() == 0.0) tau += cplx(0, 1e-8);
        if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(tau))) {
            if (iterations) *iterations = it + 1;
            if (std::abs(matching_defect(tau, pb)) < pb.tol_match) return tau;
            break;
        }
    }
    if (std::abs(matching_defect(tau, pb)) < pb.tol_match) {
        if (iterations) *iterations = pb.newton_max;
        return tau;
    }
    fail(ErrorCode::NoRootFound, "Newton iteration did not converge");
}

Eigenpair assemble_eigenpair(cplx tau, const DispersionProblem& pb) {
    auto tails = shoot_tails(tau, pb, Branch::Decaying, true);
    const Jet3& L0 = tails.left.at_match;
    const Jet3& R0 = tails.right.at_match;
    auto [cL, cR] = tail_constants(tau, L0, R0);
    const int s = pb.sign_curvature;
    const std::size_t n = pb.half_intervals();

    Eigenpair e;
    e.tau = tau;
    e.sign_curvature = s;
    // left samples run from 0 outward to -Z; store them from -Z up to 0
    e.left.resize(n + 1);
    e.right.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        for (int k = 0; k < 3; ++k) {
            e.left[n - i][k] = cL * tails.left.samples[i][k];
            e.right[i][k] = cR * tails.right.samples[i][k];
        }
    }
    for (int k = 0; k < 3; ++k) e.jumps[k] = e.right[0][k] - e.left[n][k];
    e.defect = e.jumps[2] + 2.0 * s;

    e.z.resize(2 * n + 1);
    for (auto* v : {&e.W, &e.W1, &e.W2, &e.V, &e.V1, &e.V2}) v->resize(2 * n + 1);
    double res = 0.0;
    for (std::size_t i = 0; i <= 2 * n; ++i) {
        const bool right = i >= n;
        const double z = right ? pb.dz * static_cast<double>(i - n) : -pb.dz * static_cast<double>(n - i);
        const Jet3& J = right ? e.right[i - n] : e.left[i];
        e.z[i] = (i == 2 * n) ? pb.Z : (i == 0 ? -pb.Z : z);
        const cplx Q = tau + static_cast<double>(s) * z * z;
        const double Q1 = 2.0 * s * z, Q2 = 2.0 * s;
        const cplx V3 = I * (Q * J[1] - Q1 * J[0]);
        // W = V/Q (+1 on the right), derivatives by the Leibniz rule for V * (1/Q)
        const cplx P = 1.0 / Q;
        const cplx P1 = -Q1 * P * P;
        const cplx P2 = -Q2 * P * P + 2.0 * Q1 * Q1 * P * P * P;
        const cplx P3 = 6.0 * Q1 * Q2 * P * P * P - 6.0 * Q1 * Q1 * Q1 * P * P * P * P;
        const cplx W = J[0] * P + (right ? 1.0 : 0.0);
        const cplx W1 = J[1] * P + J[0] * P1;
        const cplx W2 = J[2] * P + 2.0 * J[1] * P1 + J[0] * P2;
        const cplx W3 = V3 * P + 3.0 * J[2] * P1 + 3.0 * J[1] * P2 + J[0] * P3;
        e.W[i] = W;
        e.W1[i] = W1;
        e.W2[i] = W2;
        e.V[i] = J[0];
        e.V1[i] = J[1];
        e.V2[i] = J[2];
        const cplx r = Q * Q * W1 + I * (Q * W3 + 3.0 * Q1 * W2 + 3.0 * Q2 * W1);
        res = std::max(res, std::abs(r));
        if (i == n) {
            // the same identity from the left jet at z = 0
            const Jet3& Jl = e.left[n];
            const cplx V3l = I * (Q * Jl[1] - Q1 * Jl[0]);
            const cplx W1l = Jl[1] * P + Jl[0] * P1;
            const cplx W2l = Jl[2] * P + 2.0 * Jl[1] * P1 + Jl[0] * P2;
            const cplx W3l = V3l * P + 3.0 * Jl[2] * P1 + 3.0 * Jl[1] * P2 + Jl[0] * P3;
            res = std::max(res, std::abs(Q * Q * W1l + I * (Q * W3l + 3.0 * Q1 * W2l + 3.0 * Q2 * W1l)));
        }
    }
    e.ode_residual = res;
    e.residual_norm = std::max(res, std::abs(e.defect));
    e.boundary_left = std::abs(e.W.front());
    e.boundary_right = std::abs(e.W.back() - 1.0);

    // exponential envelope of V on the outer thirds
    auto fit = [&](bool right) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0, m = 0;
        for (std::size_t i = 0; i <= 2 * n; ++i) {
            double z = e.z[i];
            if ((right && z < 2.0 * pb.Z / 3.0) || (!right && z > -2.0 * pb.Z / 3.0)) continue;
            double a = std::abs(e.V[i]);
            if (!(a > 0)) continue;
            double x = std::abs(z), y = std::log(a);
            sx += x; sy += y; sxx += x * x; sxy += x * y; m += 1;
        }
        double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        return -slope;
    };
    e.tail_rate_left = fit(false);
    e.tail_rate_right = fit(true);
    return e;
}

Eigenpair find_tau(const DispersionProblem& pb) {
    pb.validate();
    const int nr = pb.grid_re, ni = pb.grid_im;
    std::vector<double> mag(static_cast<std::size_t>(nr * ni), INFINITY);
    auto at = [&](int i, int j) -> double& { return mag[static_cast<std::size_t>(j * nr + i)]; };
    auto node = [&](int i, int j) {
        return cplx(pb.re_lo + (pb.re_hi - pb.re_lo) * i / (nr - 1), pb.im_lo + (pb.im_hi - pb.im_lo) * j / (ni - 1));
    };
    for (int j = 0; j < ni; ++j)
        for (int i = 0; i < nr; ++i) {
            cplx t = node(i, j);
            if (t.imag() == 0.0) continue;
            try {
                at(i, j) = std::abs(matching_defect(t, pb));
            } catch (const Error&) {
            }
        }
    std::vector<cplx> seeds;
    for (int j = 0; j < ni; ++j)
        for (int i = 0; i < nr; ++i) {
            double v = at(i, j);
            if (!std::isfinite(v)) continue;
            bool minimum = true;
            for (int dj = -1; dj <= 1 && minimum; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    int a = i + di, b = j + dj;
                    if ((di || dj) && a >= 0 && a < nr && b >= 0 && b < ni && at(a, b) < v) {
                        minimum = false;
                        break;
                    }
                }
            if (minimum) seeds.push_back(node(i, j));
        }
    std::vector<cplx> roots;
    int iterations = 0;
    const double margin = 1e-9;
    for (cplx sd : seeds) {
        try {
            int its = 0;
            cplx r = newton_tau(sd, pb, &its);
            bool inside = r.real() >= pb.re_lo - margin && r.real() <= pb.re_hi + margin &&
                          r.imag() >= pb.im_lo - margin && r.imag() <= pb.im_hi + margin;
            if (!inside) continue;
            bool dup = false;
            for (cplx q : roots) dup = dup || std::abs(q - r) < 1e-7;
            if (!dup) {
                roots.push_back(r);
                iterations = std::max(iterations, its);
            }
        } catch (const Error&) {
        }
    }
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
    });
    std::vector<cplx> unstable;
    for (cplx r : roots)
        if (r.imag() < 0) unstable.push_back(r);
    if (unstable.empty()) fail(ErrorCode::NoRootFound, "no eigenvalue with Im tau < 0 in the search rectangle");
    Eigenpair e = assemble_eigenpair(unstable.front(), pb);
    e.roots = roots;
    e.newton_iterations = iterations;
    return e;
}

ShearLayerProfile::ShearLayerProfile(const Eigenpair& pair)
    : tau_(pair.tau), s_(pair.sign_curvature), left_(pair.left), right_(pair.right) {
    const std::size_t n = right_.size() - 1;
    Z_ = pair.z.back();
    dz_ = Z_ / static_cast<double>(n);
}

std::array<cplx, 4> ShearLayerProfile::operator()(double z) const { return one_sided(z, z >= 0.0); }

std::array<cplx, 4> ShearLayerProfile::one_sided(double z, bool right_side) const {
    std::array<cplx, 4> out{};
    if (std::abs(z) > Z_) return out;
    const auto& J = right_side ? right_ : left_;
    const std::size_t n = J.size() - 1;
    // both tables are indexed by increasing z from their own origin
    const double x = right_side ? z : z + Z_;
    const double u = std::clamp(x / dz_, 0.0, static_cast<double>(n));
    std::size_t i = std::min(static_cast<std::size_t>(u), n - 1);
    const double s = u - static_cast<double>(i), h = dz_;
    const Jet3& A = J[i];
    const Jet3& B = J[i + 1];
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    // quintic Hermite basis and its first two derivatives in s
    const double H[6] = {1 - 10 * s3 + 15 * s4 - 6 * s5, s - 6 * s3 + 8 * s4 - 3 * s5,
                         0.5 * (s2 - 3 * s3 + 3 * s4 - s5), 10 * s3 - 15 * s4 + 6 * s5,
                         -4 * s3 + 7 * s4 - 3 * s5, 0.5 * (s3 - 2 * s4 + s5)};
    const double D[6] = {-30 * s2 + 60 * s3 - 30 * s4, 1 - 18 * s2 + 32 * s3 - 15 * s4,
                         0.5 * (2 * s - 9 * s2 + 12 * s3 - 5 * s4), 30 * s2 - 60 * s3 + 30 * s4,
                         -12 * s2 + 28 * s3 - 15 * s4, 0.5 * (3 * s2 - 8 * s3 + 5 * s4)};
    const double E[6] = {-60 * s + 180 * s2 - 120 * s3, -36 * s + 96 * s2 - 60 * s3,
                         0.5 * (2 - 18 * s + 36 * s2 - 20 * s3), 60 * s - 180 * s2 + 120 * s3,
                         -24 * s + 84 * s2 - 60 * s3, 0.5 * (6 * s - 24 * s2 + 20 * s3)};
    const cplx c[6] = {A[0], h * A[1], h * h * A[2], B[0], h * B[1], h * h * B[2]};
    cplx v = 0, v1 = 0, v2 = 0;
    for (int k = 0; k < 6; ++k) {
        v += H[k] * c[k];
        v1 += D[k] * c[k];
        v2 += E[k] * c[k];
    }
    v1 /= h;
    v2 /= h * h;
    const cplx Q = tau_ + static_cast<double>(s_) * z * z;
    out = {v, v1, v2, I * (Q * v1 - 2.0 * s_ * z * v)};
    return out;
}

ScaledEigendata scale_eigendata(const Eigenpair& pair, const CriticalPath& path) {
    ScaledEigendata d;
    d.tau = pair.tau;
    d.layer = std::make_shared<const ShearLayerProfile>(pair);
    for (const auto& p : path.points) {
        if (!(p.lambda < 0)) fail(ErrorCode::InvalidArgument, "scale_eigendata needs lambda(t) < 0");
        ScaledSample s;
        s.t = p.t;
        s.mu = ScaledEigendata::mu_of(p.lambda);
        s.tau_phys = s.mu * pair.tau;
        s.ell = ScaledEigendata::ell_of(p.lambda);
        d.samples.push_back(s);
    }
    return d;
}

}  // namespace prandtl
