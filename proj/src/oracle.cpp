#include "majorana/oracle.hpp"

#include "majorana/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace majorana::oracle {

void SpinChainSpec::validate() const {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("spin count must be even");
    if (n > 14) throw std::invalid_argument("spin chain too large: n capped at 14");
    if (!std::isfinite(j1) || !std::isfinite(j2) || !std::isfinite(b))
        throw std::invalid_argument("couplings must be finite");
}

namespace {

// Basis state s: bit j set means sigma^z_j = +1.
MatrixXd spin_hamiltonian(const SpinChainSpec& spec) {
    const int n = spec.n;
    const std::size_t dim = std::size_t{1} << n;
    MatrixXd h = MatrixXd::Zero(dim, dim);
    for (std::size_t s = 0; s < dim; ++s) {
        double diag = 0.0;
        for (int j = 0; j < n; ++j)
            diag += spec.b * (((s >> j) & 1u) ? 1.0 : -1.0);
        h(s, s) = diag;
        for (int j = 0; j + 1 < n; ++j) {
            const double coupling = (j % 2 == 0) ? spec.j1 : spec.j2;
            const std::size_t flipped = s ^ (std::size_t{1} << j) ^ (std::size_t{1} << (j + 1));
            h(flipped, s) += coupling;
        }
    }
    return h;
}

}  // namespace

SpinEdResult spin_ed(const SpinChainSpec& spec) {
    spec.validate();
    const MatrixXd h = spin_hamiltonian(spec);
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) throw std::runtime_error("spin eigensolver failed");
    SpinEdResult out;
    out.spectrum.energies.assign(solver.eigenvalues().data(),
                                 solver.eigenvalues().data() + solver.eigenvalues().size());
    out.spectrum.provenance = "spin-ed";
    out.ground_state = solver.eigenvectors().col(0);
    return out;
}

ManyBodySpectrum fermion_spectrum_reconstruction(const SpinChainSpec& spec) {
    spec.validate();
    const MatrixXcd h = model::real_space_bdg_matrix(spec.n, spec.j1, spec.j2, 2.0 * spec.b,
                                                     1.0, model::Boundary::open);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) throw std::runtime_error("BdG eigensolver failed");

    // Quasiparticle energies: the upper half of the BdG spectrum.
    std::vector<double> eps(spec.n);
    for (int p = 0; p < spec.n; ++p) eps[p] = solver.eigenvalues()(spec.n + p);

    ManyBodySpectrum out;
    out.provenance = "fermion-reconstructed";
    out.zero_mode_note =
        std::any_of(eps.begin(), eps.end(), [](double e) { return std::abs(e) < 1e-12; });

    const double ground = -0.5 * std::accumulate(eps.begin(), eps.end(), 0.0);
    out.energies = {ground};
    out.energies.reserve(std::size_t{1} << spec.n);
    for (const double e : eps) {
        const std::size_t sz = out.energies.size();
        for (std::size_t i = 0; i < sz; ++i) out.energies.push_back(out.energies[i] + e);
    }
    std::sort(out.energies.begin(), out.energies.end());
    return out;
}

MagnetizationProbes magnetization_probes(const SpinChainSpec& spec) {
    const SpinEdResult ed = spin_ed(spec);
    const VectorXd& psi = ed.ground_state;
    const int n = spec.n;
    const std::size_t dim = std::size_t{1} << n;

    VectorXd mx_psi = VectorXd::Zero(dim);
    for (int j = 0; j < n; ++j)
        for (std::size_t s = 0; s < dim; ++s)
            mx_psi(s ^ (std::size_t{1} << j)) += psi(s);

    double end_to_end = 0.0;
    const std::size_t mask = 1u | (std::size_t{1} << (n - 1));
    for (std::size_t s = 0; s < dim; ++s) end_to_end += psi(s) * psi(s ^ mask);

    return {mx_psi.squaredNorm() / (static_cast<double>(n) * n), end_to_end};
}

}  // namespace majorana::oracle
