#include "majorana/spectra.hpp"

#include <algorithm>
#include <cmath>

namespace majorana::spectra {

namespace {

void fix_phases(MatrixXcd& vectors) {
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        Eigen::Index imax = 0;
        double best = -1.0;
        for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
            const double a = std::abs(vectors(r, c));
            if (a > best + 1e-15) {
                best = a;
                imax = r;
            }
        }
        const complexd z = vectors(imax, c);
        if (std::abs(z) > 0.0) vectors.col(c) *= std::conj(z) / std::abs(z);
    }
}

}  // namespace

SpectrumResult diagonalize(const model::BdgOperator& op) {
    const auto& h = op.matrix;
    if (h.rows() != h.cols()) throw std::invalid_argument("operator must be square");
    const double scale = std::max(1.0, h.norm());
    if ((h - h.adjoint()).norm() > 1e-12 * scale)
        throw std::invalid_argument("operator is not Hermitian");

    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");

    SpectrumResult res;
    res.eigenvalues = solver.eigenvalues();
    res.eigenvectors = solver.eigenvectors();
    res.basis = op.basis;
    fix_phases(res.eigenvectors);

    const double ortho =
        (res.eigenvectors.adjoint() * res.eigenvectors - MatrixXcd::Identity(h.rows(), h.cols()))
            .norm();
    if (ortho > 1e-10) throw std::runtime_error("eigenvector orthonormality lost");
    const double resid =
        (h * res.eigenvectors - res.eigenvectors * res.eigenvalues.asDiagonal()).norm();
    if (resid > 1e-9 * scale) throw std::runtime_error("eigen residual exceeds tolerance");
    return res;
}

MinGap min_gap_general(double j1, double j2, double zfield, double pair_scale, GapSelector sel,
                       std::span<const double> kgrid) {
    MinGap best{std::numeric_limits<double>::infinity(), 0.0};
    Eigen::SelfAdjointEigenSolver<Matrix4cd> solver;
    for (const double k : kgrid) {
        solver.compute(model::bloch_bdg_matrix(j1, j2, zfield, pair_scale, k),
                       Eigen::EigenvaluesOnly);
        const auto& e = solver.eigenvalues();
        const double gap = (sel == GapSelector::zero) ? e(2) - e(1) : e(3) - e(2);
        if (gap < best.value) best = {gap, k};
    }
    return best;
}

MinGap min_gap(const model::ChainSpec& spec, GapSelector sel, std::span<const double> kgrid) {
    spec.validate();
    return min_gap_general(spec.j1, spec.j2, 2.0 * spec.b, 1.0, sel, kgrid);
}

namespace {

VectorXd site_profile(const VectorXcd& state, int n) {
    VectorXd p(n);
    for (int s = 0; s < n; ++s)
        p(s) = std::norm(state(s)) + std::norm(state(n + s));
    return p;
}

double edge_fraction(const VectorXd& profile) {
    const int n = static_cast<int>(profile.size());
    const int w = std::max(1, n / 10);
    return profile.head(w).sum() + profile.tail(w).sum();
}

}  // namespace

namespace {

// Rotate the two states of a +-E doublet inside their span so each
// concentrates on one end: eigenvectors of the left-window overlap.
void split_pair(VectorXcd& a, VectorXcd& b, int n) {
    const int w = std::max(1, n / 10);
    Eigen::Matrix2cd gram = Eigen::Matrix2cd::Zero();
    const auto window_dot = [&](const VectorXcd& x, const VectorXcd& y) {
        complexd acc{0, 0};
        for (int s = 0; s < w; ++s)
            acc += std::conj(x(s)) * y(s) + std::conj(x(n + s)) * y(n + s);
        return acc;
    };
    gram(0, 0) = window_dot(a, a);
    gram(0, 1) = window_dot(a, b);
    gram(1, 0) = std::conj(gram(0, 1));
    gram(1, 1) = window_dot(b, b);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(gram);
    const VectorXcd left = es.eigenvectors()(0, 1) * a + es.eigenvectors()(1, 1) * b;
    const VectorXcd right = es.eigenvectors()(0, 0) * a + es.eigenvectors()(1, 0) * b;
    a = left;
    b = right;
}

EdgeModeReport build_report(const SpectrumResult& spectrum, double target,
                            std::vector<int> indices, double pair_tol,
                            double edge_threshold, bool localize_pairs) {
    const int n = spectrum.sites();
    EdgeModeReport rep;
    rep.target = target;
    rep.indices = std::move(indices);
    rep.count = static_cast<int>(rep.indices.size());
    if (rep.count % 2 != 0)
        throw std::runtime_error("edge-mode count is odd: particle-hole pairing broken");

    std::vector<VectorXcd> states;
    states.reserve(rep.indices.size());
    for (const int i : rep.indices) states.push_back(spectrum.eigenvectors.col(i));

    if (localize_pairs) {
        std::vector<bool> used(states.size(), false);
        for (std::size_t a = 0; a < states.size(); ++a) {
            if (used[a]) continue;
            const double ea = spectrum.eigenvalues(rep.indices[a]);
            for (std::size_t b = a + 1; b < states.size(); ++b) {
                if (used[b]) continue;
                if (std::abs(ea + spectrum.eigenvalues(rep.indices[b])) < 2.0 * pair_tol) {
                    split_pair(states[a], states[b], n);
                    used[a] = used[b] = true;
                    break;
                }
            }
        }
    }

    for (std::size_t s = 0; s < states.size(); ++s) {
        VectorXd prof = site_profile(states[s], n);
        const double norm = prof.sum();
        if (norm > 0.0) prof /= norm;
        const double frac = edge_fraction(prof);
        rep.energies.push_back(spectrum.eigenvalues(rep.indices[s]));
        rep.profiles.push_back(std::move(prof));
        rep.edge_fractions.push_back(frac);
        rep.edge_localized.push_back(frac > edge_threshold);
    }
    return rep;
}

}  // namespace

EdgeModeReport edge_modes(const SpectrumResult& spectrum, double target, double tol,
                          double edge_threshold, bool localize_pairs) {
    if (spectrum.basis != model::BasisTag::nambu)
        throw std::invalid_argument("edge modes need a real-space spectrum");
    const int n = spectrum.sites();
    const auto dist = [&](double e) {
        return std::min(std::abs(e - target), std::abs(e + target));
    };
    std::vector<int> indices;
    for (int i = 0; i < 2 * n; ++i) {
        const double d = dist(spectrum.eigenvalues(i));
        if (d < tol) {
            indices.push_back(i);
        } else if (d < 2.0 * tol) {
            throw std::runtime_error(
                "ambiguous edge-mode match: states within twice the tolerance; reduce tol");
        }
    }
    return build_report(spectrum, target, std::move(indices), tol, edge_threshold,
                        localize_pairs);
}

EdgeModeReport in_gap_edge_modes(const SpectrumResult& spectrum, double lower, double upper,
                                 double edge_threshold, bool localize_pairs) {
    if (spectrum.basis != model::BasisTag::nambu)
        throw std::invalid_argument("edge modes need a real-space spectrum");
    if (!(upper > lower) || lower < 0.0)
        throw std::invalid_argument("need an open gap window 0 <= lower < upper");
    const int n = spectrum.sites();
    std::vector<int> indices;
    for (int i = 0; i < 2 * n; ++i) {
        const double a = std::abs(spectrum.eigenvalues(i));
        if (a > lower && a < upper) indices.push_back(i);
    }
    return build_report(spectrum, 0.5 * (lower + upper), std::move(indices),
                        0.5 * (upper - lower), edge_threshold, localize_pairs);
}

BulkGapWindow nonzero_gap_window(double j1, double j2, double zfield, double pair_scale,
                                 std::span<const double> kgrid) {
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    Eigen::SelfAdjointEigenSolver<Matrix4cd> solver;
    for (const double k : kgrid) {
        solver.compute(model::bloch_bdg_matrix(j1, j2, zfield, pair_scale, k),
                       Eigen::EigenvaluesOnly);
        lower = std::max(lower, solver.eigenvalues()(2));
        upper = std::min(upper, solver.eigenvalues()(3));
    }
    return {lower, upper};
}

}  // namespace majorana::spectra
