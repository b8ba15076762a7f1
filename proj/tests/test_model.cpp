#include "majorana/model.hpp"

#include "majorana/spectra.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace majorana;
using namespace majorana::model;

namespace {

std::mt19937 rng(2024);

ChainSpec random_spec(int n = 8) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    ChainSpec s;
    s.n = n;
    s.j1 = u(rng);
    s.j2 = u(rng);
    s.b = u(rng);
    return s;
}

VectorXd sorted_eigs(const MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

}  // namespace

TEST_CASE("bloch block at the zone center, uniform, zero field") {
    ChainSpec s{4, 1.0, 1.0, 0.0, Boundary::periodic};
    const auto op = bloch_bdg(s, 0.0);
    const Matrix4cd expect = 2.0 * kron2(pauli(1), pauli(3));
    CHECK((op.matrix - expect).norm() < 1e-15);
}

TEST_CASE("bloch block is Hermitian and anticommutes with the chiral operator") {
    const Matrix4cd chiral = kron2(pauli(0), pauli(1));
    std::uniform_real_distribution<double> uk(-pi, pi);
    for (int t = 0; t < 25; ++t) {
        const auto s = random_spec();
        const double k = uk(rng);
        const Matrix4cd h = bloch_bdg(s, k).matrix;
        CHECK((h - h.adjoint()).norm() < 1e-14);
        CHECK((chiral * h * chiral + h).norm() < 1e-14);
    }
}

TEST_CASE("middle gap closes on the analytic boundary") {
    // zero-gap closing at the zone center when b^2 = j1 j2
    const double j1 = 5.0 / 6.0, j2 = 5.0 / 4.0;
    const double b = std::sqrt(j1 * j2);
    ChainSpec s{8, j1, j2, b, Boundary::periodic};
    const auto ks = momentum_grid(2048);   // even grid holds k = 0
    const auto g = spectra::min_gap(s, spectra::GapSelector::zero, ks);
    CHECK(g.value < 1e-8);
}

TEST_CASE("uniform two-band block") {
    const auto at0 = bloch_uniform(1.3, 0.4, 0.0);
    CHECK((at0.matrix - (2.0 * 1.3 - 2.0 * 0.4) * pauli(3)).norm() < 1e-15);

    const auto at_half = bloch_uniform(1.0, 0.0, pi / 2.0);
    CHECK((at_half.matrix + 2.0 * pauli(2)).norm() < 1e-14);
    CHECK(sorted_eigs(at_half.matrix)(1) == doctest::Approx(2.0));

    // closed-form dispersion on a grid
    const double j = 0.9, b = 0.55;
    for (const double k : momentum_grid(100)) {
        const VectorXd e = sorted_eigs(bloch_uniform(j, b, k).matrix);
        const double expect = 2.0 * std::sqrt(j * j - 2.0 * j * b * std::cos(k) + b * b);
        CHECK(e(1) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(e(0) == doctest::Approx(-expect).epsilon(1e-12));
    }
}

TEST_CASE("real-space matrix equals the hand expansion at n = 4") {
    const double j1 = 0.7, j2 = 1.2, b = 0.3;
    ChainSpec s{4, j1, j2, b, Boundary::open};
    MatrixXd xi(4, 4), pr(4, 4);
    xi << -2 * b, j1, 0, 0,
          j1, -2 * b, j2, 0,
          0, j2, -2 * b, j1,
          0, 0, j1, -2 * b;
    pr << 0, j1, 0, 0,
          -j1, 0, j2, 0,
          0, -j2, 0, j1,
          0, 0, -j1, 0;
    MatrixXcd expect(8, 8);
    expect.topLeftCorner(4, 4) = xi;
    expect.topRightCorner(4, 4) = pr;
    expect.bottomLeftCorner(4, 4) = -pr;
    expect.bottomRightCorner(4, 4) = -xi;
    CHECK((real_space_bdg(s).matrix - expect).norm() == 0.0);
}

TEST_CASE("periodic spectrum equals the union of Bloch spectra") {
    for (int trial = 0; trial < 4; ++trial) {
        auto s = random_spec(12);
        s.boundary = Boundary::periodic;
        std::vector<double> bloch;
        const int cells = s.n / 2;
        for (int m = 0; m < cells; ++m) {
            double k = 2.0 * pi * m / cells;
            if (k > pi) k -= 2.0 * pi;
            const VectorXd e = sorted_eigs(bloch_bdg(s, k).matrix);
            for (int i = 0; i < 4; ++i) bloch.push_back(e(i));
        }
        std::sort(bloch.begin(), bloch.end());
        const VectorXd real = sorted_eigs(real_space_bdg(s).matrix);
        REQUIRE(real.size() == static_cast<Eigen::Index>(bloch.size()));
        for (Eigen::Index i = 0; i < real.size(); ++i)
            CHECK(std::abs(real(i) - bloch[i]) < 1e-9);
    }
}

TEST_CASE("real-space spectrum is particle-hole symmetric") {
    for (int trial = 0; trial < 5; ++trial) {
        auto s = random_spec(10);
        s.boundary = (trial % 2 == 0) ? Boundary::open : Boundary::periodic;
        const VectorXd e = sorted_eigs(real_space_bdg(s).matrix);
        for (Eigen::Index i = 0; i < e.size(); ++i)
            CHECK(std::abs(e(i) + e(e.size() - 1 - i)) < 1e-10);
    }
}

TEST_CASE("flat bands at j2 = 0: the Bloch block loses all k dependence") {
    ChainSpec s{6, 0.9, 0.0, 0.4, Boundary::periodic};
    const Matrix4cd ref = bloch_bdg(s, 0.3).matrix;
    for (const double k : momentum_grid(17))
        CHECK((bloch_bdg(s, k).matrix - ref).norm() == 0.0);
}

TEST_CASE("antidiagonal block: determinant against the symbolic expansion") {
    // det D = -16 (j1 j2 e^{ik} - b^2), from expanding the tau components
    for (int trial = 0; trial < 25; ++trial) {
        const auto s = random_spec();
        std::uniform_real_distribution<double> uk(-pi, pi);
        const double k = uk(rng);
        const complexd det = antidiagonal_det(s.j1, s.j2, 2.0 * s.b, 1.0, k);
        const complexd expect =
            -16.0 * (s.j1 * s.j2 * std::exp(im * k) - s.b * s.b);
        CHECK(std::abs(det - expect) < 1e-12 * (1.0 + std::abs(expect)));
    }
}

TEST_CASE("antidiagonal block: uniform case collapses onto raising/lowering form") {
    // at j1 = j2 = j the block becomes 4i (j tau_+ - j e^{ik} tau_- + b tau_z)
    const double j = 1.1, b = 0.6, k = 0.83;
    ChainSpec s{4, j, j, b, Boundary::periodic};
    const auto block = antidiagonal_block(s, k);
    Matrix2cd expect;
    expect << b, j, -j * std::exp(im * k), -b;
    expect *= 4.0 * im;
    CHECK((block.d - expect).norm() < 1e-13);
}

TEST_CASE("antidiagonal block: conjugation residual and spectra") {
    std::uniform_real_distribution<double> uk(-pi, pi);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = random_spec();
        const double k = uk(rng);
        const auto block = antidiagonal_block(s, k);
        CHECK(block.residual < 1e-10);
        CHECK((block.unitary.adjoint() * block.unitary - Matrix4cd::Identity()).norm() < 1e-14);

        // eigenvalues of [[0, D/2], [D^dag/2, 0]] equal the Bloch spectrum
        Matrix4cd assembled = Matrix4cd::Zero();
        assembled.topRightCorner<2, 2>() = 0.5 * block.d;
        assembled.bottomLeftCorner<2, 2>() = 0.5 * block.d.adjoint();
        const VectorXd ea = sorted_eigs(assembled);
        const VectorXd eh = sorted_eigs(bloch_bdg(s, k).matrix);
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs(ea(i) - eh(i)) < 1e-10);
    }
}

TEST_CASE("BDI symmetries hold on a grid") {
    const auto ks = momentum_grid(101);
    for (int trial = 0; trial < 8; ++trial) {
        const auto rep = check_symmetries(random_spec(), ks);
        CHECK(rep.particle_hole < 1e-12);
        CHECK(rep.time_reversal < 1e-12);
        CHECK(rep.chiral < 1e-12);
        CHECK(rep.ok());
    }
}

TEST_CASE("an identity shift breaks particle-hole and chiral symmetry, not time reversal") {
    const auto s = random_spec();
    const auto ks = momentum_grid(31);
    const double delta = 0.37;
    const Matrix4cd c = kron2(pauli(0), pauli(1));
    double ph = 0, tr = 0, ch = 0;
    for (const double k : ks) {
        const Matrix4cd h = bloch_bdg(s, k).matrix + delta * Matrix4cd::Identity();
        const Matrix4cd hm = bloch_bdg(s, -k).matrix + delta * Matrix4cd::Identity();
        ph = std::max(ph, (c * h.conjugate() * c + hm).norm());
        tr = std::max(tr, (h.conjugate() - hm).norm());
        ch = std::max(ch, (c * h * c + h).norm());
    }
    CHECK(tr < 1e-12);
    CHECK(ph == doctest::Approx(2.0 * delta * 2.0).epsilon(1e-10));   // |2 delta I|_F
    CHECK(ch == doctest::Approx(2.0 * delta * 2.0).epsilon(1e-10));
}

TEST_CASE("anti-Hermitian perturbations are rejected upstream") {
    const auto s = random_spec();
    auto op = bloch_bdg(s, 0.7);
    op.matrix += im * 0.01 * kron2(pauli(0), pauli(3));
    CHECK_THROWS(spectra::diagonalize(op));
}

TEST_CASE("chain spec validation and json") {
    ChainSpec bad{3, 1, 1, 0, Boundary::open};
    CHECK_THROWS(bad.validate());
    const auto s = chain_spec_from_json_text(
        R"({"n": 8, "j1": 0.5, "j2": 1.5, "b": 0.2, "boundary": "periodic"})");
    CHECK(s.n == 8);
    CHECK(s.boundary == Boundary::periodic);
    CHECK_THROWS(chain_spec_from_json_text(R"({"n": 8, "j1": 0.5, "j2": 1.5, "b": 0.2,
                                              "boundary": "twisted"})"));
}
