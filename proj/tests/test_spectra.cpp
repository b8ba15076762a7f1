#include "majorana/spectra.hpp"

#include "majorana/topology.hpp"

#include <doctest.h>

using namespace majorana;
using namespace majorana::model;
using namespace majorana::spectra;

TEST_CASE("diagonalize a Pauli matrix") {
    BdgOperator op{pauli(3), BasisTag::bloch2, 0.0};
    const auto res = diagonalize(op);
    CHECK(res.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(res.eigenvalues(1) == doctest::Approx(1.0));
    // phase fixing: the dominant component of each eigenvector is real positive
    CHECK(res.eigenvectors(1, 0).real() == doctest::Approx(1.0));
    CHECK(res.eigenvectors(0, 1).real() == doctest::Approx(1.0));
}

TEST_CASE("uniform open chain: zero modes inside, gap outside") {
    ChainSpec topo{200, 1.0, 1.0, 0.5, Boundary::open};
    const auto spec = diagonalize(real_space_bdg(topo));
    int tiny = 0;
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i)
        if (std::abs(spec.eigenvalues(i)) < 1e-8) ++tiny;
    CHECK(tiny == 2);

    ChainSpec trivial{200, 1.0, 1.0, 1.5, Boundary::open};
    const auto spec2 = diagonalize(real_space_bdg(trivial));
    double closest = 1e9;
    for (Eigen::Index i = 0; i < spec2.eigenvalues.size(); ++i)
        closest = std::min(closest, std::abs(spec2.eigenvalues(i)));
    CHECK(closest > 0.1);
}

TEST_CASE("minimum gaps track the analytic closings") {
    const auto even_grid = momentum_grid(2048);   // includes k = 0 and -pi

    ChainSpec crit{8, 1.0, 1.0, 1.0, Boundary::periodic};
    CHECK(min_gap(crit, GapSelector::zero, even_grid).value < 1e-8);

    ChainSpec open_gap{8, 1.0, 1.0, 0.8, Boundary::periodic};
    CHECK(min_gap(open_gap, GapSelector::zero, even_grid).value > 0.1);

    // |j1| = |j2| closes the nonzero gap at any field
    for (const double b : {0.0, 0.7, 1.9}) {
        ChainSpec s{8, 1.3, 1.3, b, Boundary::periodic};
        CHECK(min_gap(s, GapSelector::nonzero, even_grid).value < 1e-8);
    }

    // dimerized zero-gap closing on the root of the boundary condition
    const double j1 = 5.0 / 6.0, j2 = 5.0 / 4.0;
    const auto roots = topology::static_boundary(j1, j2);
    REQUIRE(roots.size() == 1);
    ChainSpec dim{8, j1, j2, roots[0], Boundary::periodic};
    CHECK(min_gap(dim, GapSelector::zero, even_grid).value < 1e-6);
}

TEST_CASE("edge modes of the uniform chain") {
    ChainSpec topo{200, 1.0, 1.0, 0.5, Boundary::open};
    const auto spec = diagonalize(real_space_bdg(topo));
    const auto rep = edge_modes(spec, 0.0);
    CHECK(rep.count == 2);
    CHECK(rep.localized_count() == 2);
    for (const auto& prof : rep.profiles)
        CHECK(prof.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.energies[0] == doctest::Approx(-rep.energies[1]).epsilon(1e-6));

    ChainSpec trivial{200, 1.0, 1.0, 1.5, Boundary::open};
    const auto rep2 = edge_modes(diagonalize(real_space_bdg(trivial)), 0.0);
    CHECK(rep2.count == 0);
}

TEST_CASE("edge-localized doublets split into one mode per end") {
    ChainSpec topo{200, 1.0, 1.0, 0.6, Boundary::open};
    const auto spec = diagonalize(real_space_bdg(topo));
    const auto rep = edge_modes(spec, 0.0, 1e-4, 0.9, true);
    REQUIRE(rep.count == 2);
    const int n = spec.sites();
    const int w = n / 10;
    // after the pair rotation each profile should concentrate on one end
    for (const auto& prof : rep.profiles) {
        const double left = prof.head(w).sum();
        const double right = prof.tail(w).sum();
        CHECK(std::max(left, right) > 0.9);
        CHECK(std::min(left, right) < 0.1);
    }
}

TEST_CASE("dimerized chain hosts zero modes inside the winding window") {
    ChainSpec s{200, 5.0 / 6.0, 5.0 / 4.0, 0.5, Boundary::open};
    const auto rep = edge_modes(diagonalize(real_space_bdg(s)), 0.0);
    CHECK(rep.count == 2);
    CHECK(rep.localized_count() == 2);
}

TEST_CASE("nonzero-energy edge modes live in the upper bulk gap for |j1| < |j2|") {
    const auto ks = momentum_grid(2001);
    const double b = 1.0;

    for (const bool topological : {true, false}) {
        const double j1 = topological ? 5.0 / 6.0 : 5.0 / 4.0;
        const double j2 = topological ? 5.0 / 4.0 : 5.0 / 6.0;
        const auto win = nonzero_gap_window(j1, j2, 2.0 * b, 1.0, ks);
        REQUIRE(win.width() > 0.1);
        ChainSpec s{200, j1, j2, b, Boundary::open};
        const auto rep =
            in_gap_edge_modes(diagonalize(real_space_bdg(s)), win.lower, win.upper, 0.9);
        if (topological) {
            CHECK(rep.count == 4);
            CHECK(rep.localized_count() == 4);
            for (const double e : rep.energies) {
                CHECK(std::abs(e) > win.lower + 1e-9);
                CHECK(std::abs(e) < win.upper - 1e-9);
            }
        } else {
            CHECK(rep.count == 0);
        }
    }
}

TEST_CASE("zero-mode splitting shrinks with system size") {
    const auto smallest = [](int n) {
        ChainSpec s{n, 1.0, 1.0, 0.9, Boundary::open};
        const auto spec = diagonalize(real_space_bdg(s));
        double best = 1e9;
        for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i)
            best = std::min(best, std::abs(spec.eigenvalues(i)));
        return best;
    };
    CHECK(smallest(400) < smallest(100));
}

TEST_CASE("zero-mode count equals twice the winding number") {
    struct Point {
        double j1, j2, b;
    };
    for (const auto& p : {Point{1.0, 1.0, 0.5}, Point{1.0, 1.0, 1.4},
                          Point{5.0 / 6.0, 5.0 / 4.0, 0.7}, Point{0.4, 0.3, 1.1}}) {
        ChainSpec s{200, p.j1, p.j2, p.b, Boundary::open};
        const auto w = topology::winding_number({200, p.j1, p.j2, p.b, Boundary::periodic});
        const auto rep = edge_modes(diagonalize(real_space_bdg(s)), 0.0);
        CHECK(rep.count == 2 * std::abs(w.value));
    }
}

TEST_CASE("sloppy tolerance near bulk states is flagged") {
    ChainSpec trivial{60, 1.0, 1.0, 1.5, Boundary::open};
    const auto spec = diagonalize(real_space_bdg(trivial));
    CHECK_THROWS(edge_modes(spec, 0.0, 1.2));
}
