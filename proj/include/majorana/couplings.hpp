#pragma once

#include "majorana/common.hpp"

#include <string>

namespace majorana::couplings {

/// Ion geometry for the power-law coupling approximation
/// J_{ij} = J0 / |z_i - z_j|^beta.
struct GeometricCoupling {
    double j0 = 1.0;
    double beta = 3.0;               // in (0, 3]
    std::vector<double> positions;   // strictly increasing ion coordinates

    /// Alternating spacings delta1, delta2 starting from z = 0.
    static GeometricCoupling dimerized(double j0, double beta, double delta1,
                                       double delta2, int n);
    void validate() const;
};

struct PhononMode {
    double freq = 0.0;   // normal-mode frequency omega_m
    VectorXd b;          // length-N column of the mode matrix
};

/// Phonon-mediated coupling data. The prefactor constant c reflects the
/// two stated normalizations Omega^2 dk^2 / (2M) and / (4M); both are kept
/// selectable and the choice is carried into run metadata.
struct PhononSpec {
    double omega = 0.0;     // Rabi frequency
    double delta_k = 0.0;   // wave-vector difference
    double mass = 1.0;
    double mu = 0.0;        // beatnote detuning
    std::vector<PhononMode> modes;
    int prefactor_c = 4;    // in {2, 4}

    int sites() const { return modes.empty() ? 0 : static_cast<int>(modes.front().b.size()); }
    /// eta_{j,m} = delta_k * b_{j,m} / sqrt(2 M omega_m)
    double eta(int j, int m) const;
    void validate() const;

    static PhononSpec from_json_text(const std::string& text);
};

/// J_{ij} = J0 / |z_i - z_j|^beta, symmetric, zero diagonal.
MatrixXd power_law_couplings(const GeometricCoupling& g);

/// J_{ij} = Omega^2 dk^2 / (c M) * sum_m b_{i,m} b_{j,m} / (mu^2 - omega_m^2).
MatrixXd phonon_couplings(const PhononSpec& p);

/// Spin-dependent displacement amplitude g_{j,m}(t) of mode m.
complexd displacement_amplitude(const PhononSpec& p, int j, int m, double t);

struct AccumulatedPhase {
    complexd chi;           // full four-term phase
    double secular_slope;   // d Im(chi)/dt of the linear-in-t part
};

/// Two-ion accumulated phase chi_{ij}(t) plus the secular slope of its
/// linear-in-t term. The slope equals minus the phonon coupling J_{ij}
/// in the c = 4 normalization.
AccumulatedPhase accumulated_phase(const PhononSpec& p, int i, int j, double t);

}  // namespace majorana::couplings
