#pragma once

#include "majorana/common.hpp"
#include "majorana/model.hpp"

#include <functional>
#include <optional>
#include <string>

namespace majorana::topology {

/// Winding number of det D(k) by discrete phase unwrapping. The raw
/// integral is rounded to the nearest integer; residual records the gap.
struct WindingResult {
    int value = 0;
    double residual = 0.0;
    int grid_size = 0;
};

WindingResult winding_number(const model::ChainSpec& spec, int kgrid = 1001);
WindingResult winding_number_general(double j1, double j2, double zfield, double pair_scale,
                                     int kgrid = 1001);

/// Many-body dipole moment from the lowest occupied band of the
/// periodic real-space BdG problem.
///
/// Frozen convention, selected once by the quantization requirement
/// P in {0, 1/2}: the exponent uses the unit-cell count L = n/2,
/// F_pp' = <psi_p| exp(i 2 pi cell/L) |psi_p'>, and the background term
/// sums the cell index over the two sublattices, sum_{j,l} l / (2L)
/// = (L+1)/2. With these choices P = 1/2 exactly for |J1| < |J2|.
struct DipoleResult {
    double value = 0.0;      // in [0, 1)
    int occupied = 0;
    double residual = 0.0;   // min(|P|, |P-1/2|, |P-1|)
};

DipoleResult dipole_moment(const model::ChainSpec& spec, std::optional<int> occupied = {});
DipoleResult dipole_moment_general(int n, double j1, double j2, double zfield,
                                   double pair_scale, std::optional<int> occupied = {},
                                   int cell_origin = 0);

/// Nonnegative critical fields of the zero-energy band-touching
/// condition 2B^2 + J1^2 + J2^2 = sqrt(4B^2(J1+J2)^2 + (J1^2-J2^2)^2).
/// The left-minus-right residual is a perfect square, so roots are
/// located as tangential minima over 400 brackets on [0, 2(|J1|+|J2|)].
std::vector<double> static_boundary(double j1, double j2);

struct AxisSpec {
    std::string name;
    double lo = 0.0;
    double hi = 1.0;
    int steps = 1;

    double value(int i) const { return steps < 2 ? lo : lo + (hi - lo) * i / (steps - 1); }
    double step() const { return steps < 2 ? 0.0 : (hi - lo) / (steps - 1); }
};

/// Samples the analytic boundary: given an axis index (0 or 1) and a
/// value on that axis, returns the boundary locations on the other axis.
using BoundarySampler = std::function<std::vector<double>(int axis, double value)>;

struct PhaseDiagramGrid {
    AxisSpec ax1, ax2;
    std::vector<double> values;            // row-major [i1 * ax2.steps + i2]
    std::vector<uint8_t> flagged;          // within one grid step of a boundary
    std::vector<std::string> errors;       // empty string when the cell evaluated
    std::vector<std::array<double, 2>> boundary;   // overlay polyline points

    double at(int i1, int i2) const { return values[i1 * ax2.steps + i2]; }
    bool is_flagged(int i1, int i2) const { return flagged[i1 * ax2.steps + i2] != 0; }
};

/// Evaluates cell(x1, x2) over the grid, skipping cells within one grid
/// step of the sampled analytic boundary. Cells evaluate concurrently.
PhaseDiagramGrid phase_diagram(const AxisSpec& ax1, const AxisSpec& ax2,
                               const std::function<double(double, double)>& cell,
                               const BoundarySampler& boundary, int threads = 0);

}  // namespace majorana::topology
