#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace prandtl {

/// U and its first four derivatives at one point.
using Derivs5 = std::array<double, 5>;

enum class DecayKind { Exponential, Algebraic, Gaussian };

struct DecayClass {
    DecayKind kind = DecayKind::Exponential;
    double parameter = 0.0;  // rate or power of |U_s'|
};

const char* decay_kind_name(DecayKind kind);

/// Closed-form shear layer U_s(y) without any claim about critical points.
struct ProfileShape {
    std::string family;
    std::map<std::string, double> params;
    double U0 = 1.0;
    DecayClass decay;
    std::function<Derivs5(double)> derivs;

    double value(double y) const { return derivs(y)[0]; }
};

/// Initial shear layer with a located non-degenerate critical point a0.
struct ShearProfile {
    ProfileShape shape;
    double a0 = 0.0;
    double curvature = 0.0;  // U_s''(a0)

    double U0() const { return shape.U0; }
    Derivs5 derivs(double y) const { return shape.derivs(y); }
};

struct CriticalPoint {
    double a = 0.0;
    double curvature = 0.0;
};

struct ScanOptions {
    double y_max = 20.0;
    std::size_t samples = 8000;
    double degenerate_tol = 1e-6;  // relative to max |U_s''| on the scan
};

/// Built-in families: "gaussian-bump", "algebraic-bump", "monotone".
ProfileShape make_shape(const std::string& family, const std::map<std::string, double>& params);

/// All sign changes of U_s' on (0, y_max], polished to machine precision.
std::vector<CriticalPoint> scan_critical_points(const ProfileShape& shape, const ScanOptions& opt = {});

/// Locates the critical point nearest the wall among interior maxima (minima if none).
ShearProfile locate_critical_point(ProfileShape shape, const ScanOptions& opt = {});

ShearProfile make_profile(const std::string& family, const std::map<std::string, double>& params,
                          const ScanOptions& opt = {});

struct ProfileCheck {
    double wall_value = 0.0;       // |U_s(0)|
    double far_defect = 0.0;       // |U_s(y_max) - U0|
    double slope_at_a0 = 0.0;      // |U_s'(a0)|
    double max_derivative = 0.0;   // max_j sup |(U_s - U0)^(j)| sampled, j <= 4
    double tail_lower = 0.0;       // min |U_s'| y^p over the far half (algebraic class)
    double tail_upper = 0.0;       // max |U_s'| y^p over the far half
};

/// Samples the type invariants of a profile on [0, y_max].
ProfileCheck check_profile(const ShearProfile& p, double y_max, std::size_t samples = 3000);

/// Physicists' Hermite polynomials H_0..H_n at x.
std::vector<double> hermite_polys(int n, double x);

}  // namespace prandtl
