#pragma once

#include "majorana/common.hpp"

#include <optional>
#include <span>
#include <string>

namespace majorana::model {

enum class Boundary { open, periodic };

/// Dimerized chain parameters in units of J0.
struct ChainSpec {
    int n = 4;          // even site count
    double j1 = 1.0;    // intra-cell coupling
    double j2 = 1.0;    // inter-cell coupling
    double b = 0.0;     // transverse field
    Boundary boundary = Boundary::open;

    void validate() const;
    int cells() const { return n / 2; }
};

enum class BasisTag { bloch4, bloch2, nambu };

/// Hermitian Bogoliubov-de Gennes operator with a declared basis layout.
/// bloch4: (a-particle, a-hole, b-particle, b-hole) at fixed k.
/// bloch2: (particle, hole) of the uniform chain at fixed k.
/// nambu:  (c_1..c_N, c^dag_1..c^dag_N) real space.
struct BdgOperator {
    MatrixXcd matrix;
    BasisTag basis = BasisTag::nambu;
    std::optional<double> k;
};

/// Generalized Bloch block [zfield t0 + (j1+j2 cos k) tx + j2 sin k ty] sz
/// - pair_scale [j2 sin k tx + (j1-j2 cos k) ty] sy. The static chain has
/// zfield = 2B and pair_scale = 1; the sine-driven effective model reuses
/// it with zfield = B0 and pair_scale = 1 - B0^2/omega^2.
Matrix4cd bloch_bdg_matrix(double j1, double j2, double zfield, double pair_scale, double k);

BdgOperator bloch_bdg(const ChainSpec& spec, double k);

/// Uniform two-band block (2J cos k - 2B) tz - 2J sin k ty.
BdgOperator bloch_uniform(double j, double b, double k);
Vector3d bloch_uniform_dvec(double j, double b, double k);

/// Real-space Nambu matrix with hopping j_l, onsite -zfield, pairing
/// pair_scale * j_l; the periodic chain closes the last inter-cell bond
/// with no extra phase.
MatrixXcd real_space_bdg_matrix(int n, double j1, double j2, double zfield,
                                double pair_scale, Boundary bc);

BdgOperator real_space_bdg(const ChainSpec& spec);

/// Chiral off-diagonal block D(k) of the four-band model,
///   D = 2[j2 sin k + i(j1 - j2 cos k)] tx - 2[i j2 sin k + (j1 + j2 cos k)] ty
///       + 2 i zfield tz,
/// together with the constant unitary v with v^dag H(k) v = [[0, D/2],
/// [D^dag/2, 0]]. D carries twice the scale of the unitary block; the
/// winding of det D is unaffected.
struct AntidiagonalBlock {
    Matrix2cd d;
    Matrix4cd unitary;
    double residual;   // Frobenius norm of the conjugation mismatch
};

AntidiagonalBlock antidiagonal_block(const ChainSpec& spec, double k);
Matrix2cd antidiagonal_d_matrix(double j1, double j2, double zfield, double pair_scale, double k);
complexd antidiagonal_det(double j1, double j2, double zfield, double pair_scale, double k);

/// Residual norms of the BDI symmetries C = t0 sx K, T = K, S = t0 sx,
/// maximized over a momentum grid.
struct SymmetryReport {
    double particle_hole = 0.0;
    double time_reversal = 0.0;
    double chiral = 0.0;
    bool ok(double tol = 1e-10) const {
        return particle_hole < tol && time_reversal < tol && chiral < tol;
    }
};

SymmetryReport check_symmetries(const ChainSpec& spec, std::span<const double> kgrid);
SymmetryReport check_symmetries_general(double j1, double j2, double zfield, double pair_scale,
                                        std::span<const double> kgrid);

ChainSpec chain_spec_from_json_text(const std::string& text);

}  // namespace majorana::model
