#include "majorana/model.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace majorana::model {

void ChainSpec::validate() const {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("site count must be even and >= 4");
    if (!std::isfinite(j1) || !std::isfinite(j2) || !std::isfinite(b))
        throw std::invalid_argument("couplings must be finite");
}

Matrix4cd bloch_bdg_matrix(double j1, double j2, double zfield, double pair_scale, double k) {
    const Matrix2cd a = zfield * pauli(0) + (j1 + j2 * std::cos(k)) * pauli(1) +
                        j2 * std::sin(k) * pauli(2);
    const Matrix2cd c =
        pair_scale * (j2 * std::sin(k) * pauli(1) + (j1 - j2 * std::cos(k)) * pauli(2));
    return kron2(a, pauli(3)) - kron2(c, pauli(2));
}

BdgOperator bloch_bdg(const ChainSpec& spec, double k) {
    spec.validate();
    return {bloch_bdg_matrix(spec.j1, spec.j2, 2.0 * spec.b, 1.0, k), BasisTag::bloch4, k};
}

Vector3d bloch_uniform_dvec(double j, double b, double k) {
    return {0.0, -2.0 * j * std::sin(k), 2.0 * j * std::cos(k) - 2.0 * b};
}

BdgOperator bloch_uniform(double j, double b, double k) {
    const Vector3d d = bloch_uniform_dvec(j, b, k);
    Matrix2cd m = Matrix2cd::Zero();
    for (int i = 0; i < 3; ++i) m += d(i) * pauli(i + 1);
    return {m, BasisTag::bloch2, k};
}

MatrixXcd real_space_bdg_matrix(int n, double j1, double j2, double zfield,
                                double pair_scale, Boundary bc) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("site count must be even and >= 2");
    MatrixXd xi = MatrixXd::Zero(n, n);
    MatrixXd pr = MatrixXd::Zero(n, n);
    for (int s = 0; s < n - 1; ++s) {
        const double j = (s % 2 == 0) ? j1 : j2;
        xi(s, s + 1) = xi(s + 1, s) = j;
        pr(s, s + 1) = pair_scale * j;
        pr(s + 1, s) = -pair_scale * j;
    }
    if (bc == Boundary::periodic) {
        xi(n - 1, 0) += j2;
        xi(0, n - 1) += j2;
        pr(n - 1, 0) += pair_scale * j2;
        pr(0, n - 1) += -pair_scale * j2;
    }
    xi.diagonal().setConstant(-zfield);
    MatrixXcd h(2 * n, 2 * n);
    h.topLeftCorner(n, n) = xi;
    h.topRightCorner(n, n) = pr;
    h.bottomLeftCorner(n, n) = -pr;
    h.bottomRightCorner(n, n) = -xi;
    return h;
}

BdgOperator real_space_bdg(const ChainSpec& spec) {
    spec.validate();
    return {real_space_bdg_matrix(spec.n, spec.j1, spec.j2, 2.0 * spec.b, 1.0, spec.boundary),
            BasisTag::nambu, std::nullopt};
}

Matrix2cd antidiagonal_d_matrix(double j1, double j2, double zfield, double pair_scale,
                                double k) {
    const complexd ax = 2.0 * (pair_scale * j2 * std::sin(k) + im * (j1 - j2 * std::cos(k)));
    const complexd ay = -2.0 * (im * pair_scale * j2 * std::sin(k) + (j1 + j2 * std::cos(k)));
    const complexd az = 2.0 * im * zfield;
    return ax * pauli(1) + ay * pauli(2) + az * pauli(3);
}

complexd antidiagonal_det(double j1, double j2, double zfield, double pair_scale, double k) {
    return antidiagonal_d_matrix(j1, j2, zfield, pair_scale, k).determinant();
}

namespace {

// Constant chiral-basis unitary: columns -i|a,->, i|b,->, |a,+>, |b,+>
// with |j,+-> = (|j,particle> +- |j,hole>)/sqrt(2).
Matrix4cd chiral_basis_unitary() {
    Matrix4cd v = Matrix4cd::Zero();
    const double r = 1.0 / std::sqrt(2.0);
    v(0, 0) = -im * r; v(1, 0) = im * r;
    v(2, 1) = im * r;  v(3, 1) = -im * r;
    v(0, 2) = r;       v(1, 2) = r;
    v(2, 3) = r;       v(3, 3) = r;
    return v;
}

}  // namespace

AntidiagonalBlock antidiagonal_block(const ChainSpec& spec, double k) {
    spec.validate();
    const Matrix2cd d = antidiagonal_d_matrix(spec.j1, spec.j2, 2.0 * spec.b, 1.0, k);
    const Matrix4cd v = chiral_basis_unitary();
    const Matrix4cd h = bloch_bdg_matrix(spec.j1, spec.j2, 2.0 * spec.b, 1.0, k);
    Matrix4cd block = Matrix4cd::Zero();
    block.topRightCorner<2, 2>() = 0.5 * d;
    block.bottomLeftCorner<2, 2>() = 0.5 * d.adjoint();
    const double residual = (v.adjoint() * h * v - block).norm();
    if (residual > 1e-10)
        throw std::runtime_error("antidiagonalization residual exceeds tolerance");
    return {d, v, residual};
}

SymmetryReport check_symmetries_general(double j1, double j2, double zfield, double pair_scale,
                                        std::span<const double> kgrid) {
    const Matrix4cd c = kron2(pauli(0), pauli(1));   // also the chiral operator
    SymmetryReport rep;
    for (const double k : kgrid) {
        const Matrix4cd h = bloch_bdg_matrix(j1, j2, zfield, pair_scale, k);
        const Matrix4cd hm = bloch_bdg_matrix(j1, j2, zfield, pair_scale, -k);
        rep.particle_hole = std::max(rep.particle_hole, (c * h.conjugate() * c + hm).norm());
        rep.time_reversal = std::max(rep.time_reversal, (h.conjugate() - hm).norm());
        rep.chiral = std::max(rep.chiral, (c * h * c + h).norm());
    }
    return rep;
}

SymmetryReport check_symmetries(const ChainSpec& spec, std::span<const double> kgrid) {
    spec.validate();
    return check_symmetries_general(spec.j1, spec.j2, 2.0 * spec.b, 1.0, kgrid);
}

ChainSpec chain_spec_from_json_text(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    ChainSpec s;
    s.n = j.at("n").get<int>();
    s.j1 = j.at("j1").get<double>();
    s.j2 = j.at("j2").get<double>();
    s.b = j.at("b").get<double>();
    const auto bc = j.value("boundary", std::string("open"));
    if (bc == "open") s.boundary = Boundary::open;
    else if (bc == "periodic") s.boundary = Boundary::periodic;
    else throw std::invalid_argument("boundary must be 'open' or 'periodic'");
    s.validate();
    return s;
}

}  // namespace majorana::model
