#include "majorana/topology.hpp"

#include "majorana/numerics.hpp"
#include "majorana/spectra.hpp"

#include <Eigen/LU>

#include <atomic>
#include <cmath>
#include <thread>

namespace majorana::topology {

WindingResult winding_number_general(double j1, double j2, double zfield, double pair_scale,
                                     int kgrid) {
    int m = kgrid;
    const int cap = kgrid * 64;
    while (true) {
        std::vector<complexd> dets;
        dets.reserve(m);
        for (const double k : momentum_grid(m))
            dets.push_back(model::antidiagonal_det(j1, j2, zfield, pair_scale, k));
        try {
            const double raw = phase_winding(dets);
            const int w = static_cast<int>(std::lround(raw));
            const double residual = std::abs(raw - w);
            if (residual > 1e-6) throw std::domain_error("winding failed to quantize");
            return {w, residual, m};
        } catch (const std::domain_error&) {
            if (m >= cap) throw std::domain_error("winding undefined: zero-energy gap closed");
            m *= 4;
        }
    }
}

WindingResult winding_number(const model::ChainSpec& spec, int kgrid) {
    spec.validate();
    return winding_number_general(spec.j1, spec.j2, 2.0 * spec.b, 1.0, kgrid);
}

DipoleResult dipole_moment_general(int n, double j1, double j2, double zfield,
                                   double pair_scale, std::optional<int> occupied,
                                   int cell_origin) {
    const MatrixXcd h = model::real_space_bdg_matrix(n, j1, j2, zfield, pair_scale,
                                                     model::Boundary::periodic);
    const auto spec = spectra::diagonalize({h, model::BasisTag::nambu, std::nullopt});
    const int occ = occupied.value_or(n / 2);
    if (occ < 1 || occ >= 2 * n) throw std::invalid_argument("occupied count out of range");
    if (spec.eigenvalues(occ) - spec.eigenvalues(occ - 1) < 1e-8)
        throw std::domain_error("dipole ill-defined: occupied boundary nearly degenerate");

    const int cells = n / 2;
    VectorXcd phase(2 * n);
    for (int s = 0; s < n; ++s) {
        const int cell = (s / 2 + cell_origin) % cells + 1;
        const complexd u = std::exp(im * (2.0 * pi * cell / cells));
        phase(s) = u;
        phase(n + s) = u;
    }
    const MatrixXcd occ_states = spec.eigenvectors.leftCols(occ);
    const MatrixXcd f = occ_states.adjoint() * phase.asDiagonal() * occ_states;
    const complexd det = Eigen::PartialPivLU<MatrixXcd>(f).determinant();
    if (std::abs(det) < 1e-300) throw std::domain_error("dipole ill-defined: det F underflow");

    const double corr = 0.5 * (cells + 1);   // sum_{j in {a,b}, l=1..L} l / (2L)
    DipoleResult res;
    res.value = mod1(std::arg(det) / (2.0 * pi) - corr);
    res.occupied = occ;
    res.residual = std::min({std::abs(res.value), std::abs(res.value - 0.5),
                             std::abs(res.value - 1.0)});
    return res;
}

DipoleResult dipole_moment(const model::ChainSpec& spec, std::optional<int> occupied) {
    spec.validate();
    if (spec.boundary != model::Boundary::periodic)
        throw std::invalid_argument("dipole moment needs periodic boundaries");
    return dipole_moment_general(spec.n, spec.j1, spec.j2, 2.0 * spec.b, 1.0, occupied);
}

std::vector<double> static_boundary(double j1, double j2) {
    if (!std::isfinite(j1) || !std::isfinite(j2))
        throw std::invalid_argument("couplings must be finite");
    const double bmax = 2.0 * (std::abs(j1) + std::abs(j2));
    if (bmax == 0.0) return {0.0};
    const auto g = [&](double b) {
        const double lhs = 2.0 * b * b + j1 * j1 + j2 * j2;
        const double rhs = std::sqrt(4.0 * b * b * (j1 + j2) * (j1 + j2) +
                                     (j1 * j1 - j2 * j2) * (j1 * j1 - j2 * j2));
        return lhs - rhs;
    };
    const double scale = 2.0 * bmax * bmax + j1 * j1 + j2 * j2;
    std::vector<double> roots;
    for (const double b : bracketed_minima(g, 0.0, bmax, 400, 1e-13 * bmax)) {
        if (g(b) > 1e-10 * scale) continue;
        if (!roots.empty() && std::abs(roots.back() - b) < 1e-8 * bmax) continue;
        roots.push_back(b);
    }
    return roots;
}

PhaseDiagramGrid phase_diagram(const AxisSpec& ax1, const AxisSpec& ax2,
                               const std::function<double(double, double)>& cell,
                               const BoundarySampler& boundary, int threads) {
    PhaseDiagramGrid grid;
    grid.ax1 = ax1;
    grid.ax2 = ax2;
    const std::size_t total = static_cast<std::size_t>(ax1.steps) * ax2.steps;
    grid.values.assign(total, std::numeric_limits<double>::quiet_NaN());
    grid.flagged.assign(total, 0);
    grid.errors.assign(total, "");

    // Sample the analytic boundary at four times the grid resolution
    // along both axes, then flag cells within one grid step of a sample.
    if (boundary) {
        const auto sample_along = [&](int axis) {
            const AxisSpec& a = (axis == 0) ? ax1 : ax2;
            const int fine = std::max(2, 4 * a.steps);
            for (int i = 0; i < fine; ++i) {
                const double x = a.lo + (a.hi - a.lo) * i / (fine - 1);
                for (const double y : boundary(axis, x)) {
                    if (axis == 0) grid.boundary.push_back({x, y});
                    else grid.boundary.push_back({y, x});
                }
            }
        };
        sample_along(0);
        sample_along(1);

        const double s1 = ax1.step() > 0 ? ax1.step() : 1.0;
        const double s2 = ax2.step() > 0 ? ax2.step() : 1.0;
        for (const auto& pt : grid.boundary) {
            const int c1 = static_cast<int>(std::lround((pt[0] - ax1.lo) / s1));
            const int c2 = static_cast<int>(std::lround((pt[1] - ax2.lo) / s2));
            for (int i1 = c1 - 1; i1 <= c1 + 1; ++i1)
                for (int i2 = c2 - 1; i2 <= c2 + 1; ++i2) {
                    if (i1 < 0 || i1 >= ax1.steps || i2 < 0 || i2 >= ax2.steps) continue;
                    if (std::abs(ax1.value(i1) - pt[0]) <= s1 &&
                        std::abs(ax2.value(i2) - pt[1]) <= s2)
                        grid.flagged[i1 * ax2.steps + i2] = 1;
                }
        }
    }

    const int nthreads = threads > 0 ? threads
                                     : std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        while (true) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= total) return;
            if (grid.flagged[idx]) continue;
            const int i1 = static_cast<int>(idx) / ax2.steps;
            const int i2 = static_cast<int>(idx) % ax2.steps;
            try {
                grid.values[idx] = cell(ax1.value(i1), ax2.value(i2));
            } catch (const std::exception& e) {
                grid.errors[idx] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return grid;
}

}  // namespace majorana::topology
