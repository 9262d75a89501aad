#include "prandtl/grid.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "prandtl/error.hpp"

namespace prandtl {

UniformGrid::UniformGrid(double lo_, double hi_, std::size_t n) : lo(lo_), hi(hi_), intervals(n) {
    if (n == 0 || !(hi_ > lo_)) fail(ErrorCode::InvalidArgument, "grid needs hi > lo and at least one interval");
}

double UniformGrid::operator[](std::size_t i) const {
    if (i == intervals) return hi;
    return lo + step() * static_cast<double>(i);
}

std::vector<double> UniformGrid::points() const {
    std::vector<double> x(size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (*this)[i];
    return x;
}

std::size_t UniformGrid::cell(double x) const {
    double s = (x - lo) / step();
    if (s <= 0) return 0;
    auto i = static_cast<std::size_t>(std::floor(s));
    return std::min(i, intervals - 1);
}

std::size_t UniformGrid::node_index(double x, double rel_tol) const {
    double s = (x - lo) / step();
    double r = std::round(s);
    if (r < 0 || r > static_cast<double>(intervals)) return size();
    if (std::abs(s - r) > rel_tol * std::max(1.0, std::abs(s))) return size();
    return static_cast<std::size_t>(r);
}

std::vector<cplx> cumulative_trapezoid(const std::vector<cplx>& f, double h) {
    std::vector<cplx> out(f.size());
    if (f.empty()) return out;
    out[0] = 0.0;
    for (std::size_t i = 1; i < f.size(); ++i) out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    return out;
}

Panel8 gauss_legendre8(double a, double b) {
    using rule = boost::math::quadrature::gauss<double, 8>;
    const auto& x = rule::abscissa();
    const auto& w = rule::weights();
    Panel8 p{};
    double c = 0.5 * (a + b), r = 0.5 * (b - a);
    for (std::size_t i = 0; i < 4; ++i) {
        p.nodes[2 * i] = c - r * x[i];
        p.nodes[2 * i + 1] = c + r * x[i];
        p.weights[2 * i] = r * w[i];
        p.weights[2 * i + 1] = r * w[i];
    }
    return p;
}

}  // namespace prandtl
