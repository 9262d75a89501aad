#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "prandtl/grid.hpp"

namespace oracle {

using prandtl::cplx;

// Chebyshev collocation of G = W' on [-L, L] with G = 0 at both ends:
//   tau^2 G + tau (2 s z^2 G + i G'') + (z^4 G + i s z^2 G'' + 6 i s z G' + 6 i s G) = 0,
// linearised to a companion matrix. Returns every eigenvalue whose eigenvector has nonzero mass.
inline std::vector<cplx> matrix_eigenvalues(int N, double L, int s) {
    using Mat = Eigen::MatrixXcd;
    const int n = N + 1;
    Eigen::VectorXd x(n);
    for (int j = 0; j < n; ++j) x(j) = std::cos(M_PI * j / N);
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double ci = (i == 0 || i == N) ? 2 : 1, cj = (j == 0 || j == N) ? 2 : 1;
            if (i != j) D(i, j) = ci / cj * ((i + j) % 2 ? -1.0 : 1.0) / (x(i) - x(j));
        }
    for (int i = 0; i < n; ++i) D(i, i) = -D.row(i).sum();
    D /= L;  // z = L x
    Eigen::MatrixXd D2 = D * D;
    const int m = N - 1;  // interior unknowns
    Mat A0(m, m), A1(m, m);
    const cplx I(0, 1);
    for (int i = 0; i < m; ++i) {
        const double z = L * x(i + 1);
        for (int j = 0; j < m; ++j) {
            const double d1 = D(i + 1, j + 1), d2 = D2(i + 1, j + 1), id = (i == j) ? 1.0 : 0.0;
            A1(i, j) = 2.0 * s * z * z * id + I * d2;
            A0(i, j) = z * z * z * z * id + I * double(s) * z * z * d2 + 6.0 * I * double(s) * z * d1 + 6.0 * I * double(s) * id;
        }
    }
    Mat C = Mat::Zero(2 * m, 2 * m);
    C.topRightCorner(m, m) = Mat::Identity(m, m);
    C.bottomLeftCorner(m, m) = -A0;
    C.bottomRightCorner(m, m) = -A1;
    Eigen::ComplexEigenSolver<Mat> es(C);
    // Clenshaw-Curtis-free mass check: trapezoid on the Chebyshev nodes is enough to tell zero from nonzero
    std::vector<cplx> out;
    for (int k = 0; k < 2 * m; ++k) {
        Eigen::VectorXcd g = es.eigenvectors().col(k).head(m);
        cplx mass = 0.0;
        double scale = 0.0;
        for (int i = 0; i + 1 < m; ++i) {
            const double dz = L * (x(i + 1) - x(i + 2));
            mass += 0.5 * (g(i) + g(i + 1)) * dz;
            scale += 0.5 * (std::abs(g(i)) + std::abs(g(i + 1))) * dz;
        }
        if (std::abs(mass) > 1e-3 * scale) out.push_back(es.eigenvalues()(k));
    }
    return out;
}

}  // namespace oracle
