#pragma once

#include "majorana/common.hpp"

#include <string>

namespace majorana::oracle {

/// Open dimerized transverse-field Ising chain, sigma^x sigma^x bonds
/// alternating (j1, j2) plus a uniform sigma^z field.
struct SpinChainSpec {
    int n = 8;          // even, at most 14 (2^n states)
    double j1 = 1.0;
    double j2 = 1.0;
    double b = 0.0;

    void validate() const;
};

struct ManyBodySpectrum {
    std::vector<double> energies;   // ascending, length 2^n
    std::string provenance;         // "spin-ed" or "fermion-reconstructed"
    bool zero_mode_note = false;    // a quasiparticle energy below 1e-12
};

struct SpinEdResult {
    ManyBodySpectrum spectrum;
    VectorXd ground_state;   // real amplitudes in the sigma^z product basis
};

/// Dense diagonalization of the 2^n x 2^n spin Hamiltonian.
SpinEdResult spin_ed(const SpinChainSpec& spec);

/// Many-body spectrum rebuilt from the single-quasiparticle energies of
/// the open-chain BdG problem: all subset sums on top of the ground
/// state energy -(1/2) sum_p eps_p, which already accounts for the
/// constant B*n separating the spin and fermion Hamiltonians.
ManyBodySpectrum fermion_spectrum_reconstruction(const SpinChainSpec& spec);

struct MagnetizationProbes {
    double squared_moment;   // <(sum_i sigma^x_i)^2> / n^2
    double end_to_end;       // <sigma^x_1 sigma^x_n>
};

/// Spin-side observables on the exact ground state.
MagnetizationProbes magnetization_probes(const SpinChainSpec& spec);

}  // namespace majorana::oracle
