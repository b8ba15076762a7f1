#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace majorana {

using complexd = std::complex<double>;
using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::Vector3d;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double pi = std::numbers::pi;
inline constexpr complexd im{0.0, 1.0};

/// Pauli matrices; index 0 is the identity.
inline Matrix2cd pauli(int i) {
    Matrix2cd m;
    switch (i) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, -im, im, 0; break;
        case 3: m << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("pauli index must be 0..3");
    }
    return m;
}

inline Matrix4cd kron2(const Matrix2cd& a, const Matrix2cd& b) {
    Matrix4cd m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return m;
}

/// Momentum grid k_n = -pi + 2*pi*n/m, n = 0..m-1.
inline std::vector<double> momentum_grid(int m) {
    if (m < 2) throw std::invalid_argument("momentum grid needs at least 2 points");
    std::vector<double> ks(m);
    for (int n = 0; n < m; ++n) ks[n] = -pi + 2.0 * pi * n / m;
    return ks;
}

/// SU(2) rotor a*I - i b.tau with unit norm; closed under multiplication.
struct Su2 {
    double a = 1.0;
    Vector3d b = Vector3d::Zero();

    static Su2 exp_pauli(const Vector3d& d, double t) {
        const double dn = d.norm();
        if (dn == 0.0) return {std::cos(0.0), Vector3d::Zero()};
        return {std::cos(dn * t), std::sin(dn * t) / dn * d};
    }

    Su2 operator*(const Su2& o) const {
        return {a * o.a - b.dot(o.b), a * o.b + o.a * b + b.cross(o.b)};
    }

    Matrix2cd matrix() const {
        Matrix2cd m = a * pauli(0);
        for (int i = 0; i < 3; ++i) m -= im * b(i) * pauli(i + 1);
        return m;
    }
};

/// Signed phase winding of a closed complex curve sampled on a loop, in
/// units of 2*pi. Throws std::domain_error when the sampling cannot be
/// trusted: the curve comes within 1e-12 of zero relative to its largest
/// excursion, or a single increment exceeds pi/2. A curve sliding through
/// the origin produces near-pi increments, so the pi/2 guard forces the
/// caller to refine until either the winding resolves or the zero is hit.
inline double phase_winding(const std::vector<complexd>& z) {
    const auto n = z.size();
    if (n < 3) throw std::invalid_argument("phase winding needs at least 3 samples");
    double zmax = 0.0;
    for (const auto& v : z) zmax = std::max(zmax, std::abs(v));
    if (zmax == 0.0) throw std::domain_error("phase winding undefined: curve touches zero");
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const complexd num = z[(i + 1) % n];
        const complexd den = z[i];
        if (std::abs(num) < 1e-12 * zmax || std::abs(den) < 1e-12 * zmax)
            throw std::domain_error("phase winding undefined: curve touches zero");
        const double d = std::arg(num / den);
        if (std::abs(d) >= pi / 2.0)
            throw std::domain_error("phase winding increment too large: grid too coarse");
        total += d;
    }
    return total / (2.0 * pi);
}

}  // namespace majorana
