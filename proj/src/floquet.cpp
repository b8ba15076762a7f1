#include "majorana/floquet.hpp"

#include "majorana/numerics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace majorana::floquet {

Su2 step_monodromy_rotor(double b, const StepDrive& drive, double k) {
    drive.validate();
    const Vector3d d1 = model::bloch_uniform_dvec(drive.u1, b, k);
    const Vector3d d2 = model::bloch_uniform_dvec(drive.u2, b, k);
    return Su2::exp_pauli(d2, drive.t2) * Su2::exp_pauli(d1, drive.t1);
}

Matrix2cd step_monodromy_bloch(double b, const StepDrive& drive, double k) {
    return step_monodromy_rotor(b, drive, k).matrix();
}

namespace {

MatrixXcd hermitian_exp(const MatrixXcd& h, double t) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
    const VectorXcd phases =
        (-im * t * es.eigenvalues().cast<complexd>().array()).exp().matrix();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

MatrixXcd step_monodromy_real_space(double b, const StepDrive& drive, int n) {
    drive.validate();
    const MatrixXcd h1 =
        model::real_space_bdg_matrix(n, drive.u1, drive.u1, 2.0 * b, 1.0, model::Boundary::open);
    const MatrixXcd h2 =
        model::real_space_bdg_matrix(n, drive.u2, drive.u2, 2.0 * b, 1.0, model::Boundary::open);
    return hermitian_exp(h2, drive.t2) * hermitian_exp(h1, drive.t1);
}

EpsilonR epsilon_r(double b, const StepDrive& drive, double k) {
    drive.validate();
    const Vector3d d1 = model::bloch_uniform_dvec(drive.u1, b, k);
    const Vector3d d2 = model::bloch_uniform_dvec(drive.u2, b, k);
    const double n1 = d1.norm(), n2 = d2.norm();
    const Vector3d u1 = n1 > 0 ? Vector3d(d1 / n1) : Vector3d::Zero();
    const Vector3d u2 = n2 > 0 ? Vector3d(d2 / n2) : Vector3d::Zero();
    const double c1 = std::cos(n1 * drive.t1), s1 = std::sin(n1 * drive.t1);
    const double c2 = std::cos(n2 * drive.t2), s2 = std::sin(n2 * drive.t2);
    EpsilonR out;
    out.eps = c1 * c2 - s1 * s2 * u1.dot(u2);
    out.r = u1 * s1 * c2 + u2 * c1 * s2 - s1 * s2 * u1.cross(u2);
    return out;
}

EffectiveResult effective_hamiltonian(const MatrixXcd& u, double period) {
    const auto n = u.rows();
    if (n != u.cols()) throw std::invalid_argument("monodromy must be square");
    EffectiveResult out;
    out.unitarity_residual = (u.adjoint() * u - MatrixXcd::Identity(n, n)).norm();
    if (out.unitarity_residual > 1e-10 * std::sqrt(static_cast<double>(n)))
        throw std::invalid_argument("monodromy is not unitary");

    Eigen::ComplexSchur<MatrixXcd> schur(u, true);
    if (schur.info() != Eigen::Success) throw std::runtime_error("Schur decomposition failed");
    // U is normal, so T is diagonal up to roundoff and the Schur basis is
    // an orthonormal eigenbasis, jointly orthonormal inside degenerate
    // eigenphase clusters.
    const MatrixXcd q = schur.matrixU();
    VectorXd eps(n);
    std::vector<int> flags;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double phase = std::arg(schur.matrixT()(i, i));
        if (std::abs(pi - std::abs(phase)) < 1e-12) flags.push_back(static_cast<int>(i));
        double e = -phase / period;
        if (e <= -pi / period) e += 2.0 * pi / period;
        eps(i) = e;
    }

    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index c) { return eps(a) < eps(c); });
    QuasienergySpectrum spec;
    spec.period = period;
    spec.quasienergies.resize(n);
    spec.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        spec.quasienergies(i) = eps(order[i]);
        spec.vectors.col(i) = q.col(order[i]);
    }
    for (const int f : flags)
        spec.branch_flags.push_back(static_cast<int>(
            std::find(order.begin(), order.end(), f) - order.begin()));

    out.h_eff = spec.vectors * spec.quasienergies.asDiagonal() * spec.vectors.adjoint();
    const MatrixXcd rebuilt =
        spec.vectors *
        (-im * period * spec.quasienergies.cast<complexd>().array()).exp().matrix().asDiagonal() *
        spec.vectors.adjoint();
    out.log_residual = (rebuilt - u).norm();
    if (out.log_residual > 1e-9 * std::sqrt(static_cast<double>(n)))
        throw std::runtime_error("effective Hamiltonian failed to reproduce the monodromy");
    out.spectrum = std::move(spec);
    return out;
}

QuasiGaps quasienergy_gaps(double b, const StepDrive& drive, int kgrid) {
    const double t = drive.period();
    double g0 = std::numeric_limits<double>::infinity();
    double gp = std::numeric_limits<double>::infinity();
    for (const double k : momentum_grid(kgrid)) {
        const double eps = std::clamp(step_monodromy_rotor(b, drive, k).a, -1.0, 1.0);
        const double theta = std::acos(eps);
        g0 = std::min(g0, theta / t);
        gp = std::min(gp, (pi - theta) / t);
    }
    return {g0, gp};
}

namespace {

struct FrameSample {
    complexd d1;   // chiral off-diagonal scalar r_z - i r_y, frame 1
    complexd d2;   // frame 2
    double chiral_residual;
    double theta;  // acos(eps) of the monodromy
};

FrameSample frame_sample(double b, const StepDrive& drive, double k) {
    const Vector3d dv1 = model::bloch_uniform_dvec(drive.u1, b, k);
    const Vector3d dv2 = model::bloch_uniform_dvec(drive.u2, b, k);
    const Su2 e1 = Su2::exp_pauli(dv1, drive.t1);
    const Su2 e2 = Su2::exp_pauli(dv2, drive.t2);
    const Su2 h1 = Su2::exp_pauli(dv1, drive.t1 / 2.0);
    const Su2 h2 = Su2::exp_pauli(dv2, drive.t2 / 2.0);
    const Su2 f1 = h1 * e2 * h1;   // e^{-iH1T1/2} e^{-iH2T2} e^{-iH1T1/2}
    const Su2 f2 = h2 * e1 * h2;   // e^{-iH2T2/2} e^{-iH1T1} e^{-iH2T2/2}

    FrameSample s;
    s.theta = std::acos(std::clamp((e2 * e1).a, -1.0, 1.0));
    s.d1 = complexd{f1.b(2), -f1.b(1)};
    s.d2 = complexd{f2.b(2), -f2.b(1)};
    const double t = drive.period();
    double worst = 0.0;
    for (const Su2& f : {f1, f2}) {
        const double rn = f.b.norm();
        if (rn > 0.0) {
            const double hx = std::acos(std::clamp(f.a, -1.0, 1.0)) / t * (f.b(0) / rn);
            worst = std::max(worst, 2.0 * std::sqrt(2.0) * std::abs(hx));
        }
    }
    s.chiral_residual = worst;
    return s;
}

}  // namespace

FloquetInvariants chiral_frame_windings(double b, const StepDrive& drive, int kgrid) {
    drive.validate();
    const double t = drive.period();
    int m = kgrid;
    const int cap = kgrid * 64;
    while (true) {
        std::vector<complexd> z1, z2;
        z1.reserve(m);
        z2.reserve(m);
        double g0 = std::numeric_limits<double>::infinity();
        double gp = std::numeric_limits<double>::infinity();
        double chiral = 0.0;
        for (const double k : momentum_grid(m)) {
            const FrameSample s = frame_sample(b, drive, k);
            z1.push_back(s.d1);
            z2.push_back(s.d2);
            g0 = std::min(g0, s.theta / t);
            gp = std::min(gp, (pi - s.theta) / t);
            chiral = std::max(chiral, s.chiral_residual);
        }
        if (g0 < 1e-6 / t || gp < 1e-6 / t)
            throw std::domain_error("floquet invariants undefined: quasienergy gap closed");
        if (chiral > 1e-6)
            throw std::runtime_error("chiral frame construction failed");
        try {
            const double raw1 = phase_winding(z1);
            const double raw2 = phase_winding(z2);
            const int w1 = static_cast<int>(std::lround(raw1));
            const int w2 = static_cast<int>(std::lround(raw2));
            const double residual = std::max(std::abs(raw1 - w1), std::abs(raw2 - w2));
            if (residual > 1e-6) throw std::domain_error("frame winding failed to quantize");
            if ((w1 + w2) % 2 != 0)
                throw std::runtime_error("frame windings have mixed parity");
            FloquetInvariants inv;
            inv.w1 = w1;
            inv.w2 = w2;
            inv.w0 = (w1 + w2) / 2;
            inv.wpi = (w1 - w2) / 2;
            inv.residual = residual;
            inv.gap0 = g0;
            inv.gappi = gp;
            inv.chiral_residual = chiral;
            inv.grid_size = m;
            return inv;
        } catch (const std::domain_error&) {
            if (m >= cap)
                throw std::domain_error("floquet invariants undefined: winding not resolved");
            m *= 4;
        }
    }
}

namespace {

// Solve |u1 + b e^{i gamma}| t1 + sign |u2 + b e^{i gamma}| t2 = n pi/2
// on [lo, hi]; the left side is piecewise linear with kinks where an
// argument changes sign. A solution is a genuine closing only when the
// two Bloch vectors at the matching momentum are aligned (sign = +1)
// or anti-aligned (sign = -1).
void eq7_points(const StepDrive& d, double lo, double hi, std::vector<BoundaryPoint>& out) {
    for (const double gamma : {0.0, pi}) {
        const double e = std::cos(gamma);   // +1 or -1
        for (const int sign : {+1, -1}) {
            const auto h = [&](double b) {
                return std::abs(d.u1 + b * e) * d.t1 + sign * std::abs(d.u2 + b * e) * d.t2;
            };
            std::vector<double> knots{lo, hi};
            for (const double u : {d.u1, d.u2}) {
                const double kink = -u / e;
                if (kink > lo && kink < hi) knots.push_back(kink);
            }
            std::sort(knots.begin(), knots.end());
            for (std::size_t s = 0; s + 1 < knots.size(); ++s) {
                const double a = knots[s], c = knots[s + 1];
                const double ha = h(a), hc = h(c);
                const double vmin = std::min(ha, hc), vmax = std::max(ha, hc);
                const int nmin = static_cast<int>(std::ceil(vmin / (pi / 2.0) - 1e-12));
                const int nmax = static_cast<int>(std::floor(vmax / (pi / 2.0) + 1e-12));
                for (int n = nmin; n <= nmax; ++n) {
                    if (hc == ha) continue;
                    const double b = a + (n * pi / 2.0 - ha) * (c - a) / (hc - ha);
                    if (b < lo - 1e-12 || b > hi + 1e-12) continue;
                    const double align = (d.u1 + b * e) * (d.u2 + b * e);
                    if (sign * align <= 0.0) continue;   // inactive branch
                    BoundaryPoint pt;
                    pt.b = b;
                    pt.family = "eq7";
                    pt.gamma = gamma;
                    pt.sign = sign;
                    pt.n = n;
                    pt.gap = (((n % 2) + 2) % 2 == 0) ? GapLabel::zero : GapLabel::pi;
                    pt.k = (gamma == 0.0) ? pi : 0.0;
                    out.push_back(pt);
                }
            }
        }
    }
}

// Simultaneous resonances d_j(k) T_j = n_j pi at a common interior
// momentum: cos k from each condition must agree.
void eq6_points(const StepDrive& d, double lo, double hi, std::vector<BoundaryPoint>& out) {
    const double bmax = std::max(std::abs(lo), std::abs(hi));
    const auto dmax = [&](double u) { return 2.0 * (std::abs(u) + bmax); };
    const int n1max = static_cast<int>(std::floor(dmax(d.u1) * d.t1 / pi));
    const int n2max = static_cast<int>(std::floor(dmax(d.u2) * d.t2 / pi));
    const auto cosk = [&](double u, double t, int n, double b) {
        return (4.0 * u * u + 4.0 * b * b - (n * pi / t) * (n * pi / t)) / (8.0 * u * b);
    };
    if (d.u1 == 0.0 || d.u2 == 0.0) {
        // A vanished hopping makes that step's band flat, d_j = 2B; its
        // resonance pins B and the other condition fixes the momentum.
        if (d.u1 == 0.0 && d.u2 == 0.0) return;
        const bool first_flat = (d.u1 == 0.0);
        const double tf = first_flat ? d.t1 : d.t2;
        const double uo = first_flat ? d.u2 : d.u1;
        const double to = first_flat ? d.t2 : d.t1;
        const int nfmax = first_flat ? n1max : n2max;
        const int nomax = first_flat ? n2max : n1max;
        for (int nf = 1; nf <= nfmax; ++nf) {
            const double b = nf * pi / (2.0 * tf);
            if (b < lo || b > hi || b == 0.0) continue;
            for (int no = 1; no <= nomax; ++no) {
                const double ck = cosk(uo, to, no, b);
                if (std::abs(ck) > 1.0 + 1e-9) continue;
                BoundaryPoint pt;
                pt.b = b;
                pt.family = "eq6";
                pt.n1 = first_flat ? nf : no;
                pt.n2 = first_flat ? no : nf;
                pt.gap = ((nf + no) % 2 == 0) ? GapLabel::zero : GapLabel::pi;
                pt.k = std::acos(std::clamp(ck, -1.0, 1.0));
                out.push_back(pt);
            }
        }
        return;
    }
    const double blo = std::max(lo, 1e-9);
    for (int n1 = 1; n1 <= n1max; ++n1)
        for (int n2 = 1; n2 <= n2max; ++n2) {
            const auto f = [&](double b) {
                return cosk(d.u1, d.t1, n1, b) - cosk(d.u2, d.t2, n2, b);
            };
            const int segments = 400;
            for (int s = 0; s < segments; ++s) {
                const double a = blo + (hi - blo) * s / segments;
                const double c = blo + (hi - blo) * (s + 1) / segments;
                if (f(a) * f(c) > 0.0) continue;
                const double b = bisect_root(f, a, c);
                if (std::isnan(b)) continue;
                const double ck = cosk(d.u1, d.t1, n1, b);
                if (std::abs(ck) > 1.0 + 1e-9) continue;
                BoundaryPoint pt;
                pt.b = b;
                pt.family = "eq6";
                pt.n1 = n1;
                pt.n2 = n2;
                pt.gap = ((n1 + n2) % 2 == 0) ? GapLabel::zero : GapLabel::pi;
                pt.k = std::acos(std::clamp(ck, -1.0, 1.0));
                out.push_back(pt);
            }
        }
}

}  // namespace

std::vector<BoundaryPoint> step_boundaries(const StepDrive& drive, double b_lo, double b_hi) {
    drive.validate();
    if (!(b_hi > b_lo)) throw std::invalid_argument("empty field range");
    std::vector<BoundaryPoint> out;
    eq7_points(drive, b_lo, b_hi, out);
    eq6_points(drive, b_lo, b_hi, out);
    std::sort(out.begin(), out.end(),
              [](const BoundaryPoint& a, const BoundaryPoint& b) { return a.b < b.b; });
    return out;
}

Matrix4cd sine_effective(double j1, double j2, const SineDrive& drive, double k) {
    drive.validate();
    return model::bloch_bdg_matrix(j1, j2, drive.b0, drive.f(), k);
}

double sine_sigma1_sq(double j1, double j2, double b0, double omega, double k) {
    const double f = 1.0 - b0 * b0 / (omega * omega);
    const double jj = j1 * j1 + j2 * j2;
    const double lhs = b0 * b0 + (1.0 + f * f) * jj + 2.0 * (1.0 - f * f) * j1 * j2 * std::cos(k);
    const double rad = b0 * b0 * (j1 * j1 + 2.0 * j1 * j2 * std::cos(k) + j2 * j2) +
                       f * f * (j1 * j1 - j2 * j2) * (j1 * j1 - j2 * j2);
    return lhs - 2.0 * std::sqrt(rad);
}

std::vector<SineBoundaryRoot> sine_boundary(double j1, double j2, double omega, double b0_lo,
                                            double b0_hi) {
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    if (!(b0_hi > b0_lo)) throw std::invalid_argument("empty field range");
    std::vector<SineBoundaryRoot> roots;
    for (const double k : {0.0, pi}) {
        const auto g = [&](double b0) { return sine_sigma1_sq(j1, j2, b0, omega, k); };
        for (const double b0 : bracketed_minima(g, b0_lo, b0_hi, 400, 1e-13 * (b0_hi - b0_lo))) {
            const double scale = 1.0 + b0 * b0 + 2.0 * (j1 * j1 + j2 * j2);
            if (std::abs(g(b0)) > 1e-12 * scale * scale) continue;
            const bool dup = std::any_of(roots.begin(), roots.end(), [&](const auto& r) {
                return std::abs(r.b0 - b0) < 1e-8 && r.k == k;
            });
            if (!dup) roots.push_back({b0, k, k == 0.0 ? "k0" : "kpi"});
        }
    }
    // f = 0 turns off the pairing block entirely; the hopping bands then
    // cross zero at interior momentum whenever |cos k*| <= 1.
    if (omega >= b0_lo && omega <= b0_hi && j1 * j2 != 0.0) {
        const double ck = (omega * omega - j1 * j1 - j2 * j2) / (2.0 * j1 * j2);
        if (std::abs(ck) <= 1.0) roots.push_back({omega, std::acos(ck), "f0"});
    }
    std::sort(roots.begin(), roots.end(),
              [](const SineBoundaryRoot& a, const SineBoundaryRoot& b) { return a.b0 < b.b0; });
    return roots;
}

MatrixXcd sliced_propagator(const std::function<MatrixXcd(double)>& h_of_t, double period,
                            int min_slices) {
    if (min_slices < 100) min_slices = 100;
    const auto build = [&](int m) {
        const double dt = period / m;
        MatrixXcd u;
        for (int s = 0; s < m; ++s) {
            const MatrixXcd step = hermitian_exp(h_of_t((s + 0.5) * dt), dt);
            u = (s == 0) ? step : MatrixXcd(step * u);
        }
        return u;
    };
    const auto phases = [](const MatrixXcd& u) {
        Eigen::ComplexSchur<MatrixXcd> schur(u, false);
        VectorXd ph(u.rows());
        for (Eigen::Index i = 0; i < u.rows(); ++i) ph(i) = std::arg(schur.matrixT()(i, i));
        std::sort(ph.data(), ph.data() + ph.size());
        return ph;
    };
    MatrixXcd u = build(min_slices);
    VectorXd ph = phases(u);
    for (int m = 2 * min_slices; m <= (1 << 20); m *= 2) {
        const MatrixXcd u2 = build(m);
        const VectorXd ph2 = phases(u2);
        const double shift = (ph2 - ph).cwiseAbs().maxCoeff();
        u = u2;
        ph = ph2;
        if (shift < 1e-8) return u;
    }
    throw std::runtime_error("sliced propagator did not converge under slice doubling");
}

MatrixXcd sliced_monodromy_bloch(double j1, double j2, const SineDrive& drive, double k,
                                 int min_slices) {
    drive.validate();
    return sliced_propagator(
        [&](double t) {
            const double b = drive.b0 * std::pow(std::sin(drive.omega * t), 2);
            return MatrixXcd(model::bloch_bdg_matrix(j1, j2, 2.0 * b, 1.0, k));
        },
        drive.period(), min_slices);
}

MatrixXcd sliced_monodromy_real_space(double j1, double j2, const SineDrive& drive, int n,
                                      int min_slices) {
    drive.validate();
    return sliced_propagator(
        [&](double t) {
            const double b = drive.b0 * std::pow(std::sin(drive.omega * t), 2);
            return model::real_space_bdg_matrix(n, j1, j2, 2.0 * b, 1.0, model::Boundary::open);
        },
        drive.period(), min_slices);
}

FloquetEdgeModes step_edge_modes(double b, const StepDrive& drive, int n, double tol,
                                 double edge_threshold) {
    const MatrixXcd ut = step_monodromy_real_space(b, drive, n);
    EffectiveResult eff = effective_hamiltonian(ut, drive.period());
    const double t = drive.period();

    spectra::SpectrumResult as_spectrum;
    as_spectrum.eigenvalues = eff.spectrum.quasienergies;
    as_spectrum.eigenvectors = eff.spectrum.vectors;
    as_spectrum.basis = model::BasisTag::nambu;

    FloquetEdgeModes out;
    out.zero = spectra::edge_modes(as_spectrum, 0.0, tol / t, edge_threshold);
    out.pi_mode = spectra::edge_modes(as_spectrum, pi / t, tol / t, edge_threshold);
    out.spectrum = std::move(eff.spectrum);
    return out;
}

}  // namespace majorana::floquet
