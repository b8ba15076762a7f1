#pragma once

#include "majorana/common.hpp"
#include "majorana/model.hpp"
#include "majorana/spectra.hpp"

#include <functional>
#include <string>

namespace majorana::floquet {

/// Two-step hopping drive: J(t) = u1 on [nT, nT+t1), u2 on [nT+t1, (n+1)T).
struct StepDrive {
    double u1 = 1.0;
    double u2 = 1.0;
    double t1 = 1.0;
    double t2 = 1.0;

    double period() const { return t1 + t2; }
    void validate() const {
        if (!(t1 > 0.0) || !(t2 > 0.0)) throw std::invalid_argument("durations must be positive");
    }
};

/// Sinusoidal field drive B(t) = b0 sin^2(omega t), period pi/omega.
struct SineDrive {
    double b0 = 0.0;
    double omega = 1.0;

    double f() const { return 1.0 - b0 * b0 / (omega * omega); }
    double period() const { return pi / omega; }
    void validate() const {
        if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    }
};

/// One-period Bloch evolution exp(-i H2 T2) exp(-i H1 T1) as an exact
/// SU(2) rotor; H_j is the uniform two-band block with J = u_j.
Su2 step_monodromy_rotor(double b, const StepDrive& drive, double k);
Matrix2cd step_monodromy_bloch(double b, const StepDrive& drive, double k);

/// Real-space monodromy on an open chain of n sites.
MatrixXcd step_monodromy_real_space(double b, const StepDrive& drive, int n);

/// Closed-form decomposition U_T = eps I - i r.tau.
struct EpsilonR {
    double eps;
    Vector3d r;
};
EpsilonR epsilon_r(double b, const StepDrive& drive, double k);

/// Quasienergies eps_n = -arg(lambda_n)/T in (-pi/T, pi/T], ascending,
/// with the orthonormal Schur eigenbasis of the unitary.
struct QuasienergySpectrum {
    VectorXd quasienergies;
    MatrixXcd vectors;
    double period = 1.0;
    std::vector<int> branch_flags;   // indices with eigenphase at the pi cut
};

struct EffectiveResult {
    MatrixXcd h_eff;
    QuasienergySpectrum spectrum;
    double unitarity_residual;
    double log_residual;   // |exp(-i h_eff T) - U|
};

EffectiveResult effective_hamiltonian(const MatrixXcd& u, double period);

/// Chiral-frame winding numbers of the step-driven uniform chain.
/// Frame l symmetrizes the monodromy around H_l; both frame Hamiltonians
/// anticommute with tau_x and carry one winding number each.
struct FloquetInvariants {
    int w1 = 0, w2 = 0;
    int w0 = 0, wpi = 0;
    double residual = 0.0;          // worst distance of a raw winding from integer
    double gap0 = 0.0, gappi = 0.0; // quasienergy gaps at 0 and pi/T
    double chiral_residual = 0.0;   // max |tau_x H~ tau_x + H~| over k, both frames
    int grid_size = 0;
};

FloquetInvariants chiral_frame_windings(double b, const StepDrive& drive, int kgrid = 1001);

/// Quasienergy gaps at 0 and pi/T minimized over k.
struct QuasiGaps {
    double gap0;
    double gappi;
};
QuasiGaps quasienergy_gaps(double b, const StepDrive& drive, int kgrid = 1001);

enum class GapLabel { zero, pi };

/// One critical field of the step drive, labeled by its analytic family:
/// "eq6" carries the simultaneous-resonance pair (n1, n2) closing at
/// interior momentum k; "eq7" carries (gamma, sign, n) closing at the
/// zone center or edge.
struct BoundaryPoint {
    double b = 0.0;
    GapLabel gap = GapLabel::zero;
    std::string family;
    int n1 = 0, n2 = 0;     // eq6
    double gamma = 0.0;     // eq7
    int sign = +1;          // eq7
    int n = 0;              // eq7
    double k = 0.0;         // momentum of the closing
};

/// All genuine gap closings of the step drive for b in [b_lo, b_hi].
std::vector<BoundaryPoint> step_boundaries(const StepDrive& drive, double b_lo, double b_hi);

/// Second-order high-frequency effective Bloch Hamiltonian of the
/// sine drive: the static four-band block with zfield = b0 and the
/// pairing part scaled by f = 1 - b0^2/omega^2.
Matrix4cd sine_effective(double j1, double j2, const SineDrive& drive, double k);

/// Squared lower singular value of the chiral block of the sine-drive
/// effective model; vanishing marks the zero-gap phase boundary.
double sine_sigma1_sq(double j1, double j2, double b0, double omega, double k);

struct SineBoundaryRoot {
    double b0;
    double k;              // momentum of the closing
    std::string family;    // "k0", "kpi" or "f0"
};

/// Zero-gap critical fields of the sine drive on [b0_lo, b0_hi]. The
/// boundary condition is a perfect square, so zone-center/edge roots are
/// tangential minima; the f = 0 line closes at interior momentum.
std::vector<SineBoundaryRoot> sine_boundary(double j1, double j2, double omega, double b0_lo,
                                            double b0_hi);

/// Midpoint-sliced propagator over one period with slice doubling until
/// the eigenphases move less than 1e-8; throws when the cap is reached.
MatrixXcd sliced_propagator(const std::function<MatrixXcd(double)>& h_of_t, double period,
                            int min_slices = 128);
MatrixXcd sliced_monodromy_bloch(double j1, double j2, const SineDrive& drive, double k,
                                 int min_slices = 128);
MatrixXcd sliced_monodromy_real_space(double j1, double j2, const SineDrive& drive, int n,
                                      int min_slices = 128);

/// Open-boundary quasienergy spectrum of the step drive plus edge-mode
/// reports at both gaps; +pi/T and -pi/T count as one target.
struct FloquetEdgeModes {
    QuasienergySpectrum spectrum;
    spectra::EdgeModeReport zero;
    spectra::EdgeModeReport pi_mode;
};

FloquetEdgeModes step_edge_modes(double b, const StepDrive& drive, int n, double tol = 1e-3,
                                 double edge_threshold = 0.9);

}  // namespace majorana::floquet
