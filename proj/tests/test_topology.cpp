#include "majorana/topology.hpp"

#include "majorana/numerics.hpp"
#include "majorana/spectra.hpp"

#include <doctest.h>

using namespace majorana;
using namespace majorana::model;
using namespace majorana::topology;

TEST_CASE("winding of the uniform chain") {
    CHECK(winding_number({8, 1.0, 1.0, 0.5, Boundary::periodic}).value == 1);
    CHECK(winding_number({8, 1.0, 1.0, 1.5, Boundary::periodic}).value == 0);
    CHECK(winding_number({8, -1.0, -1.0, 0.5, Boundary::periodic}).value == 1);
}

TEST_CASE("winding of the dimerized chain") {
    const double j1 = 5.0 / 6.0, j2 = 5.0 / 4.0;
    const double bc = std::sqrt(j1 * j2);
    CHECK(winding_number({8, j1, j2, 0.8 * bc, Boundary::periodic}).value == 1);
    CHECK(winding_number({8, j1, j2, 1.2 * bc, Boundary::periodic}).value == 0);
}

TEST_CASE("winding vanishes identically at j2 = 0") {
    for (const double b : {0.2, 0.9, 2.5}) {
        const auto w = winding_number({8, 1.0, 0.0, b, Boundary::periodic});
        CHECK(w.value == 0);
        CHECK(w.residual < 1e-12);
    }
}

TEST_CASE("winding is stable under grid refinement") {
    for (const double b : {0.3, 0.9, 1.7}) {
        const auto coarse = winding_number({8, 0.9, 1.4, b, Boundary::periodic}, 1001);
        const auto fine = winding_number({8, 0.9, 1.4, b, Boundary::periodic}, 4001);
        CHECK(coarse.value == fine.value);
        CHECK(coarse.residual < 1e-6);
        CHECK(fine.residual < 1e-6);
    }
}

TEST_CASE("winding throws on the gap-closing locus") {
    CHECK_THROWS_AS((void)winding_number({8, 1.0, 1.0, 1.0, Boundary::periodic}),
                    std::domain_error);
}

TEST_CASE("dipole moment: calibration point and its mirror") {
    // P = 1/2 on the |j1| < |j2| side; fixed by direct computation here
    const auto p = dipole_moment({40, 0.1, 0.5, 1.0, Boundary::periodic});
    CHECK(p.value == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(p.occupied == 20);

    const auto q = dipole_moment({40, 0.5, 0.1, 1.0, Boundary::periodic});
    CHECK(q.residual < 1e-10);
    CHECK(std::min(q.value, std::abs(q.value - 1.0)) < 1e-10);
}

TEST_CASE("dipole moment quantizes along a j1 sweep and switches once") {
    int switches = 0;
    int prev = -1;
    for (int i = 0; i < 40; ++i) {
        const double j1 = 0.02 + i * (1.6 - 0.02) / 39.0;
        if (std::abs(j1 - 0.5) < 0.03) continue;   // boundary neighborhood
        const auto p = dipole_moment({40, j1, 0.5, 1.0, Boundary::periodic});
        CHECK(p.residual < 1e-3);
        const int cls = (std::abs(p.value - 0.5) < 0.25) ? 1 : 0;
        if (prev >= 0 && cls != prev) ++switches;
        prev = cls;
    }
    CHECK(switches == 1);
}

TEST_CASE("dipole moment ignores the unit-cell origin") {
    for (const int shift : {1, 7}) {
        const auto a = dipole_moment_general(40, 0.1, 0.5, 2.0, 1.0, {}, 0);
        const auto b = dipole_moment_general(40, 0.1, 0.5, 2.0, 1.0, {}, shift);
        CHECK(std::abs(a.value - b.value) < 1e-6);
    }
}

TEST_CASE("dipole moment rejects a degenerate occupied boundary") {
    // |j1| = |j2| closes the band gap that defines the occupied set
    CHECK_THROWS_AS((void)dipole_moment({40, 0.5, 0.5, 1.0, Boundary::periodic}),
                    std::domain_error);
    CHECK_THROWS((void)dipole_moment({40, 0.1, 0.5, 1.0, Boundary::open}));
}

TEST_CASE("static boundary roots") {
    // uniform: single root at |j|
    const auto uni = static_boundary(0.8, 0.8);
    REQUIRE(uni.size() == 1);
    CHECK(uni[0] == doctest::Approx(0.8).epsilon(1e-7));

    // one vanished coupling: only b = 0 remains, a quartic tangency that
    // the minimizer can localize only to the fourth root of fp noise
    const auto zero = static_boundary(0.0, 1.3);
    REQUIRE(zero.size() == 1);
    CHECK(std::abs(zero[0]) < 2e-3);

    // dimerized root agrees with the closed form sqrt(j1 j2)
    const auto dim = static_boundary(5.0 / 6.0, 5.0 / 4.0);
    REQUIRE(dim.size() == 1);
    CHECK(dim[0] == doctest::Approx(std::sqrt(25.0 / 24.0)).epsilon(1e-7));

    // opposite-sign couplings never close the zero gap at positive b
    CHECK(static_boundary(1.0, -1.0).empty());
}

TEST_CASE("winding is constant between boundaries") {
    const double j1 = 0.9, j2 = 1.6;
    const auto roots = static_boundary(j1, j2);
    REQUIRE(roots.size() == 1);
    const double bc = roots[0];
    for (int i = 1; i <= 10; ++i) {
        const double inside = bc * i / 11.0;
        const double outside = bc + (2.5 - bc) * i / 11.0;
        CHECK(winding_number({8, j1, j2, inside, Boundary::periodic}).value == 1);
        CHECK(winding_number({8, j1, j2, outside, Boundary::periodic}).value == 0);
    }
}

TEST_CASE("phase diagram of the uniform chain in the (j, b) plane") {
    AxisSpec jb{"j", 0.05, 2.0, 21};
    AxisSpec bb{"b", 0.05, 2.0, 21};
    const auto cell = [](double j, double b) {
        return static_cast<double>(
            winding_number({8, j, j, b, Boundary::periodic}, 501).value);
    };
    const BoundarySampler boundary = [](int, double v) { return std::vector<double>{v}; };
    const auto grid = phase_diagram(jb, bb, cell, boundary, 2);
    for (int i = 0; i < jb.steps; ++i)
        for (int k = 0; k < bb.steps; ++k) {
            if (grid.is_flagged(i, k)) continue;
            REQUIRE(grid.errors[i * bb.steps + k].empty());
            const int expect = std::abs(jb.value(i)) > std::abs(bb.value(k)) ? 1 : 0;
            CHECK(grid.at(i, k) == doctest::Approx(expect));
        }
    // the diagonal itself must be flagged
    for (int i = 1; i < jb.steps; ++i)
        CHECK(grid.is_flagged(i, i));
}

TEST_CASE("phase diagram records per-cell failures without aborting") {
    AxisSpec a{"j", 1.0, 1.0, 1};
    AxisSpec b{"b", 0.5, 1.5, 3};   // middle point sits on the closing
    const auto cell = [](double j, double bv) {
        return static_cast<double>(
            winding_number({8, j, j, bv, Boundary::periodic}, 501).value);
    };
    const auto grid = phase_diagram(a, b, cell, {}, 1);
    CHECK(grid.errors[0].empty());
    CHECK(!grid.errors[1].empty());
    CHECK(grid.errors[2].empty());
    CHECK(grid.at(0, 0) == doctest::Approx(1.0));
    CHECK(grid.at(0, 2) == doctest::Approx(0.0));
}

TEST_CASE("bulk-boundary correspondence at sampled points") {
    struct Point {
        double j1, j2, b;
    };
    for (const auto& p :
         {Point{1.1, 0.9, 0.4}, Point{0.7, 1.2, 1.3}, Point{5.0 / 6.0, 5.0 / 4.0, 0.9}}) {
        const auto w = winding_number({200, p.j1, p.j2, p.b, Boundary::periodic});
        const auto spec =
            spectra::diagonalize(real_space_bdg({200, p.j1, p.j2, p.b, Boundary::open}));
        const auto rep = spectra::edge_modes(spec, 0.0);
        CHECK(rep.count == 2 * std::abs(w.value));
    }
}
