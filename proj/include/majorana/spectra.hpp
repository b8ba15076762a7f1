#pragma once

#include "majorana/common.hpp"
#include "majorana/model.hpp"

#include <span>

namespace majorana::spectra {

/// Full eigensystem of a Hermitian BdG operator, eigenvalues ascending,
/// each eigenvector's largest-magnitude component made real positive.
struct SpectrumResult {
    VectorXd eigenvalues;
    MatrixXcd eigenvectors;
    model::BasisTag basis = model::BasisTag::nambu;

    int sites() const { return static_cast<int>(eigenvalues.size()) / 2; }
};

SpectrumResult diagonalize(const model::BdgOperator& op);

enum class GapSelector { zero, nonzero };

struct MinGap {
    double value;
    double k;   // argmin momentum
};

/// Minimum separation over the grid between the 2nd/3rd (zero) or the
/// 3rd/4th (nonzero) ascending Bloch bands.
MinGap min_gap(const model::ChainSpec& spec, GapSelector sel, std::span<const double> kgrid);
MinGap min_gap_general(double j1, double j2, double zfield, double pair_scale, GapSelector sel,
                       std::span<const double> kgrid);

/// Modes within tol of +-target in an open-boundary spectrum, with
/// per-site probability profiles |u_i|^2 + |v_i|^2 and the weight carried
/// by the outer n/10 sites on both ends.
struct EdgeModeReport {
    double target = 0.0;
    std::vector<int> indices;
    std::vector<double> energies;
    std::vector<VectorXd> profiles;        // normalized per mode
    std::vector<double> edge_fractions;
    std::vector<bool> edge_localized;
    int count = 0;

    int localized_count() const {
        int c = 0;
        for (const bool l : edge_localized) c += l ? 1 : 0;
        return c;
    }
};

/// When localize_pairs is set, each +-E doublet is rotated inside its
/// two-dimensional span so the profiles concentrate on one edge each.
EdgeModeReport edge_modes(const SpectrumResult& spectrum, double target, double tol = 1e-4,
                          double edge_threshold = 0.9, bool localize_pairs = false);

/// States whose |E| falls strictly inside (lower, upper) -- the nonzero-
/// energy mode detector; the reported target is the window center.
EdgeModeReport in_gap_edge_modes(const SpectrumResult& spectrum, double lower, double upper,
                                 double edge_threshold = 0.9, bool localize_pairs = false);

/// Center of the gap between the 3rd and 4th periodic bulk bands,
/// the target used for nonzero-energy edge-mode detection.
struct BulkGapWindow {
    double lower;    // max over k of band 3
    double upper;    // min over k of band 4
    double center() const { return 0.5 * (lower + upper); }
    double width() const { return upper - lower; }
};

BulkGapWindow nonzero_gap_window(double j1, double j2, double zfield, double pair_scale,
                                 std::span<const double> kgrid);

}  // namespace majorana::spectra
