#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace prandtl {

using cplx = std::complex<double>;

/// Uniform grid lo = x_0 < ... < x_n = hi (n intervals, n+1 points).
struct UniformGrid {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t intervals = 1;

    UniformGrid() = default;
    UniformGrid(double lo_, double hi_, std::size_t n);

    std::size_t size() const { return intervals + 1; }
    double step() const { return (hi - lo) / static_cast<double>(intervals); }
    double operator[](std::size_t i) const;
    std::vector<double> points() const;
    /// Index of the cell [x_i, x_{i+1}] containing x (clamped).
    std::size_t cell(double x) const;
    /// Index of the grid point equal to x up to rounding, or size() if none.
    std::size_t node_index(double x, double rel_tol = 1e-12) const;
};

/// Cumulative trapezoid rule, F(x_0) = 0.
std::vector<cplx> cumulative_trapezoid(const std::vector<cplx>& f, double h);

/// Gauss-Legendre rule of order 8 on [a, b], nodes and weights.
struct Panel8 {
    double nodes[8];
    double weights[8];
};
Panel8 gauss_legendre8(double a, double b);

}  // namespace prandtl
