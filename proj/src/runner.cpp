#include "majorana/runner.hpp"

#include "majorana/couplings.hpp"
#include "majorana/csvio.hpp"
#include "majorana/numerics.hpp"
#include "majorana/oracle.hpp"
#include "majorana/scan.hpp"
#include "majorana/spectra.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

namespace majorana::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using io::num;

namespace {

struct TaskContext {
    const RunConfig& cfg;
    fs::path out;
    std::size_t budget = static_cast<std::size_t>(-1);
    std::vector<std::string> files;
    json constants = json::object();
    bool complete = true;

    std::string path(const std::string& name) {
        files.push_back(name);
        return (out / name).string();
    }

    std::string partial(const std::string& name) const { return (out / (name + ".partial")).string(); }
};

model::ChainSpec require_chain(const RunConfig& cfg) {
    if (!cfg.chain) throw config_error("task '" + cfg.task + "' needs a \"model\" block");
    return *cfg.chain;
}

floquet::StepDrive require_step(const RunConfig& cfg) {
    if (cfg.drive.type != DriveConfig::Type::step)
        throw config_error("task '" + cfg.task + "' needs a step drive");
    return cfg.drive.step;
}

// Applies one scan-axis value onto the mutable parameter set.
void apply_axis(const std::string& name, double v, model::ChainSpec& chain,
                DriveConfig& drive) {
    if (name == "b") chain.b = v;
    else if (name == "j1") chain.j1 = v;
    else if (name == "j2") chain.j2 = v;
    else if (name == "j") chain.j1 = chain.j2 = v;
    else if (name == "u1") drive.step.u1 = v;
    else if (name == "u2") drive.step.u2 = v;
    else if (name == "t1") drive.step.t1 = v;
    else if (name == "t2") drive.step.t2 = v;
    else if (name == "b0") drive.sine.b0 = v;
    else if (name == "omega") drive.sine.omega = v;
    else throw config_error("unknown scan axis: " + name);
}

void check_axes(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
    for (const auto& ax : cfg.axes) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || ax.name == a;
        if (!ok) throw config_error("axis '" + ax.name + "' is not scannable for " + cfg.task);
    }
}

spectra::EdgeModeReport resolve_edge_report(const json& options,
                                            const model::ChainSpec& chain, int kgrid,
                                            const spectra::SpectrumResult& spec) {
    const double threshold = options.value("edge_threshold", 0.9);
    const bool localize = options.value("localize_pairs", true);
    const auto& t = options.at("edge_target");
    if (t.is_string() && t.get<std::string>() == "gap-center") {
        const auto ks = momentum_grid(kgrid);
        const auto win =
            spectra::nonzero_gap_window(chain.j1, chain.j2, 2.0 * chain.b, 1.0, ks);
        if (win.width() <= 0.0) throw std::domain_error("nonzero bulk gap is closed");
        return spectra::in_gap_edge_modes(spec, win.lower, win.upper, threshold, localize);
    }
    double target = 0.0;
    if (t.is_number()) target = t.get<double>();
    else if (t.is_string() && t.get<std::string>() == "zero") target = 0.0;
    else throw config_error("edge_target must be a number, 'zero' or 'gap-center'");
    return spectra::edge_modes(spec, target, options.value("edge_tol", 1e-4), threshold,
                               localize);
}

void write_edge_reports(TaskContext& ctx, const spectra::EdgeModeReport& rep,
                        const std::string& suffix) {
    io::CsvWriter modes(ctx.path("edge_modes" + suffix + ".csv"),
                        {"mode", "energy", "edge_fraction", "localized"});
    io::CsvWriter prof(ctx.path("profiles" + suffix + ".csv"), {"mode", "site", "probability"});
    for (std::size_t m = 0; m < rep.energies.size(); ++m) {
        modes.row({num(static_cast<int>(m)), num(rep.energies[m]), num(rep.edge_fractions[m]),
                   rep.edge_localized[m] ? "1" : "0"});
        for (Eigen::Index s = 0; s < rep.profiles[m].size(); ++s)
            prof.row({num(static_cast<int>(m)), num(static_cast<int>(s)),
                      num(rep.profiles[m](s))});
    }
}

// ---------------------------------------------------------------- spectrum

void task_spectrum(TaskContext& ctx) {
    const auto& cfg = ctx.cfg;
    auto chain = require_chain(cfg);
    check_axes(cfg, {"b", "j1", "j2", "j"});
    if (cfg.axes.size() > 1) throw config_error("spectrum scans over at most one axis");

    if (cfg.axes.empty()) {
        const auto spec = spectra::diagonalize(model::real_space_bdg(chain));
        io::CsvWriter csv(ctx.path("spectrum.csv"), {"index", "energy"});
        for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i)
            csv.row({num(static_cast<int>(i)), num(spec.eigenvalues(i))});
        if (cfg.options.contains("edge_target")) {
            const auto rep = resolve_edge_report(cfg.options, chain, cfg.kgrid, spec);
            write_edge_reports(ctx, rep, "");
        }
        return;
    }

    ScanOptions opt;
    opt.threads = cfg.threads;
    opt.cell_budget = ctx.budget;
    opt.partial_path = ctx.partial("spectrum_sweep");
    const auto cell = [&](std::size_t, std::span<const double> vals) {
        model::ChainSpec c = chain;
        DriveConfig d = cfg.drive;
        apply_axis(cfg.axes[0].name, vals[0], c, d);
        const auto spec = spectra::diagonalize(model::real_space_bdg(c));
        std::vector<std::vector<std::string>> rows;
        rows.reserve(spec.eigenvalues.size());
        for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i)
            rows.push_back({num(static_cast<int>(i)), num(spec.eigenvalues(i))});
        return rows;
    };
    const auto table = run_scan(cfg.axes, {"index", "energy"}, cell, opt);
    write_scan_csv(ctx.path("spectrum_sweep.csv"), cfg.axes, table);
    ctx.complete = ctx.complete && table.complete;

    if (cfg.options.value("with_winding", false)) {
        ScanOptions wopt;
        wopt.threads = cfg.threads;
        wopt.cell_budget = ctx.budget;
    opt.cell_budget = ctx.budget;
        wopt.partial_path = ctx.partial("winding_sweep");
        const auto wcell = [&](std::size_t, std::span<const double> vals) {
            model::ChainSpec c = chain;
            DriveConfig d = cfg.drive;
            apply_axis(cfg.axes[0].name, vals[0], c, d);
            const auto w = topology::winding_number(c, cfg.kgrid);
            return std::vector<std::vector<std::string>>{
                {num(w.value), num(w.residual), num(w.grid_size)}};
        };
        const auto wtable = run_scan(cfg.axes, {"w", "residual", "kgrid"}, wcell, wopt);
        write_scan_csv(ctx.path("winding_sweep.csv"), cfg.axes, wtable);
        ctx.complete = ctx.complete && wtable.complete;
    }
}

// ----------------------------------------------------------------- winding

void task_winding(TaskContext& ctx) {
    const auto& cfg = ctx.cfg;
    const auto chain = require_chain(cfg);
    check_axes(cfg, {"b", "j1", "j2", "j"});
    ScanOptions opt;
    opt.threads = cfg.threads;
    opt.cell_budget = ctx.budget;
    opt.partial_path = ctx.partial("winding");
    const auto cell = [&](std::size_t, std::span<const double> vals) {
        model::ChainSpec c = chain;
        DriveConfig d = cfg.drive;
        for (std::size_t a = 0; a < vals.size(); ++a) apply_axis(cfg.axes[a].name, vals[a], c, d);
        const auto w = topology::winding_number(c, cfg.kgrid);
        return std::vector<std::vector<std::string>>{
            {num(w.value), num(w.residual), num(w.grid_size)}};
    };
    const auto table = run_scan(cfg.axes, {"w", "residual", "kgrid"}, cell, opt);
    write_scan_csv(ctx.path("winding.csv"), cfg.axes, table);
    ctx.complete = ctx.complete && table.complete;
}

// ------------------------------------------------------------------ dipole

void task_dipole(TaskContext& ctx) {
    const auto& cfg = ctx.cfg;
    const auto chain = require_chain(cfg);
    if (chain.boundary != model::Boundary::periodic)
        throw config_error("dipole needs \"boundary\": \"periodic\"");
    check_axes(cfg, {"b", "j1", "j2", "j"});
    if (cfg.axes.size() > 1) throw config_error("dipole scans over at most one axis");
    std::optional<int> occ;
    if (cfg.options.contains("occupied")) occ = cfg.options.at("occupied").get<int>();

    ScanOptions opt;
    opt.threads = cfg.threads;
    opt.cell_budget = ctx.budget;
    opt.partial_path = ctx.partial("dipole");
    const auto cell = [&](std::size_t, std::span<const double> vals) {
        model::ChainSpec c = chain;
        DriveConfig d = cfg.drive;
        for (std::size_t a = 0; a < vals.size(); ++a) apply_axis(cfg.axes[a].name, vals[a], c, d);
        const auto p = topology::dipole_moment(c, occ);
        return std::vector<std::vector<std::string>>{
            {num(p.value), num(p.residual), num(p.occupied)}};
    };
    const auto table = run_scan(cfg.axes, {"p", "residual", "occupied"}, cell, opt);
    write_scan_csv(ctx.path("dipole.csv"), cfg.axes, table);
    ctx.complete = ctx.complete && table.complete;
}

// ---------------------------------------------------------------- boundary

void task_boundary(TaskContext& ctx) {
    const auto& cfg = ctx.cfg;
    const auto chain = require_chain(cfg);
    check_axes(cfg, {"j1", "j2"});
    if (cfg.axes.size() > 1) throw config_error("boundary scans over at most one axis");

    std::vector<std::string> header;
    for (const auto& ax : cfg.axes) header.push_back(ax.name);
    header.insert(header.end(), {"index", "b_critical"});
    io::CsvWriter csv(ctx.path("boundary.csv"), header);
    const int points = cfg.axes.empty() ? 1 : cfg.axes[0].steps;
    for (int i = 0; i < points; ++i) {
        model::ChainSpec c = chain;
        DriveConfig d = cfg.drive;
        std::vector<std::string> prefix;
        if (!cfg.axes.empty()) {
            const double v = cfg.axes[0].value(i);
            apply_axis(cfg.axes[0].name, v, c, d);
            prefix.push_back(num(v));
        }
        const auto roots = topology::static_boundary(c.j1, c.j2);
        for (std::size_t r = 0; r < roots.size(); ++r) {
            std::vector<std::string> row = prefix;
            row.push_back(num(static_cast<int>(r)));
            row.push_back(num(roots[r]));
            csv.row(row);
        }
    }
}

// ----------------------------------------------------------- phase diagram

// Boundary locus sampler for the static diagrams: the zero-gap condition
// is scanned as a tangential minimum along the queried axis; the
// nonzero-gap locus is |j1| = |j2|.
std::vector<std::array<double, 2>> static_boundary_polyline(
    const RunConfig& cfg, const std::string& invariant, const model::ChainSpec& chain) {
    const auto& ax1 = cfg.axes[0];
    const auto& ax2 = cfg.axes[1];
    std::vector<std::array<double, 2>> pts;

    const auto eq4_residual = [](const model::ChainSpec& c) {
        const double lhs = 2.0 * c.b * c.b + c.j1 * c.j1 + c.j2 * c.j2;
        const double rad = 4.0 * c.b * c.b * (c.j1 + c.j2) * (c.j1 + c.j2) +
                           std::pow(c.j1 * c.j1 - c.j2 * c.j2, 2);
        return lhs - std::sqrt(rad);
    };

    const auto sample = [&](int fixed_axis) {
        const auto& fa = (fixed_axis == 0) ? ax1 : ax2;
        const auto& qa = (fixed_axis == 0) ? ax2 : ax1;
        const int fine = std::max(2, 4 * fa.steps);
        for (int i = 0; i < fine; ++i) {
            const double fv = fa.lo + (fa.hi - fa.lo) * i / (fine - 1);
            std::vector<double> qs;
            if (invariant == "dipole") {
                model::ChainSpec c = chain;
                DriveConfig d = cfg.drive;
                apply_axis(fa.name, fv, c, d);
                if (qa.name == "j1") qs = {std::abs(c.j2), -std::abs(c.j2)};
                else if (qa.name == "j2") qs = {std::abs(c.j1), -std::abs(c.j1)};
            } else {
                const auto g = [&](double qv) {
                    model::ChainSpec c = chain;
                    DriveConfig d = cfg.drive;
                    apply_axis(fa.name, fv, c, d);
                    apply_axis(qa.name, qv, c, d);
                    return eq4_residual(c);
                };
                const double span = qa.hi - qa.lo;
                for (const double q : bracketed_minima(g, qa.lo, qa.hi, 200, 1e-11 * span)) {
                    const double scale = 1.0 + std::abs(g(qa.lo)) + std::abs(g(qa.hi));
                    if (std::abs(g(q)) < 1e-9 * scale) qs.push_back(q);
                }
            }
            for (const double q : qs) {
                if (q < qa.lo || q > qa.hi) continue;
                if (fixed_axis == 0) pts.push_back({fv, q});
                else pts.push_back({q, fv});
            }
        }
    };
    sample(0);
    sample(1);
    return pts;
}

void write_polyline(TaskContext& ctx, const std::string& name,
                    const std::vector<std::array<double, 2>>& pts, const RunConfig& cfg) {
    io::CsvWriter csv(ctx.path(name), {cfg.axes[0].name, cfg.axes[1].name});
    for (const auto& p : pts) csv.row({num(p[0]), num(p[1])});
}

void task_phase_diagram(TaskContext& ctx) {
    const auto& cfg = ctx.cfg;
    const auto chain = require_chain(cfg);
    check_axes(cfg, {"b", "j1", "j2", "j"});
    if (cfg.axes.size() != 2) throw config_error("phase-diagram needs exactly two axes");
    const auto invariant = cfg.options.value("invariant", std::string("winding"));
    if (invariant != "winding" && invariant != "dipole")
        throw config_error("invariant must be 'winding' or 'dipole'");
    if (invariant == "dipole" && chain.boundary != model::Boundary::periodic)
        throw config_error("dipole diagrams need \"boundary\": \"periodic\"");

    const auto pts = static_boundary_polyline(cfg, invariant, chain);
    write_polyline(ctx, "boundary_overlay.csv", pts, cfg);

    const double s1 = cfg.axes[0].step() > 0 ? cfg.axes[0].step() : 1.0;
    const double s2 = cfg.axes[1].step() > 0 ? cfg.axes[1].step() : 1.0;
    ScanOptions opt;
    opt.threads = cfg.threads;
    opt.cell_budget = ctx.budget;
    opt.partial_path = ctx.partial("phase_diagram");
    opt.skip = [pts, s1, s2](std::span<const double> vals) {
        for (const auto& p : pts)
            if (std::abs(vals[0] - p[0]) <= s1 && std::abs(vals[1] - p[1]) <= s2) return true;
        return false;
    };
    std::optional<int> occ;
    if (cfg.options.contains("occupied")) occ = cfg.options.at("occupied").get<int>();

    const auto cell = [&](std::size_t, std::span<const double> vals) {
        model::ChainSpec c = chain;
        DriveConfig d = cfg.drive;
        for (std::size_t a = 0; a < vals.size(); ++a) apply_axis(cfg.axes[a].name, vals[a], c, d);
        std::vector<std::string> row;
        if (invariant == "winding") {
            const auto w = topology::winding_number(c, cfg.kgrid);
            row = {num(w.value), num(w.residual)};
        } else {
            const auto p = topology::dipole_moment(c, occ);
            row = {num(p.value), num(p.residual)};
        }
        return std::vector<std::vector<std::string>>{row};
    };
    const auto table = run_scan(cfg.axes, {"value", "residual"}, cell, opt);
    write_scan_csv(ctx.path("phase_diagram.csv"), cfg.axes, table);
    ctx.complete = ctx.complete && table.complete;
}

// --------------------------------------------------------- floquet spectrum

void task_floquet_spectrum(TaskContext& ctx) {
    const auto& cfg = ctx.cfg;
    const auto chain = require_chain(cfg);

    if (cfg.drive.type == DriveConfig::Type::step) {
        check_axes(cfg, {"b", "t1", "t2", "u1", "u2"});
        const auto drive = require_step(cfg);
        if (cfg.axes.empty()) {
            const auto rep = floquet::step_edge_modes(chain.b, drive, chain.n,
                                                      cfg.options.value("edge_tol", 1e-3),
                                                      cfg.options.value("edge_threshold", 0.9));
            io::CsvWriter csv(ctx.path("quasienergy_spectrum.csv"), {"index", "quasienergy"});
            for (Eigen::Index i = 0; i < rep.spectrum.quasienergies.size(); ++i)
                csv.row({num(static_cast<int>(i)), num(rep.spectrum.quasienergies(i))});
            write_edge_reports(ctx, rep.zero, "_zero");
            write_edge_reports(ctx, rep.pi_mode, "_pi");
            return;
        }
        if (cfg.axes.size() != 1) throw config_error("floquet-spectrum takes one axis");
        ScanOptions opt;
        opt.threads = cfg.threads;
    opt.cell_budget = ctx.budget;
        opt.partial_path = ctx.partial("quasienergy_sweep");
        const auto cell = [&](std::size_t, std::span<const double> vals) {
            model::ChainSpec c = chain;
            DriveConfig d = cfg.drive;
            apply_axis(cfg.axes[0].name, vals[0], c, d);
            const auto ut = floquet::step_monodromy_real_space(c.b, d.step, c.n);
            const auto eff = floquet::effective_hamiltonian(ut, d.step.period());
            std::vector<std::vector<std::string>> rows;
            for (Eigen::Index i = 0; i < eff.spectrum.quasienergies.size(); ++i)
                rows.push_back({num(static_cast<int>(i)), num(eff.spectrum.quasienergies(i))});
            return rows;
        };
        const auto table = run_scan(cfg.axes, {"index", "quasienergy"}, cell, opt);
        write_scan_csv(ctx.path("quasienergy_sweep.csv"), cfg.axes, table);
        ctx.complete = ctx.complete && table.complete;
        return;
    }

    if (cfg.drive.type != DriveConfig::Type::sine)
        throw config_error("floquet-spectrum needs a drive");
    check_axes(cfg, {"b0", "omega", "j1", "j2"});
    const auto fold = [](double e, double period) {
        const double w = 2.0 * pi / period;
        double q = std::fmod(e + pi / period, w);
        if (q < 0) q += w;
        return q - pi / period;
    };
    const auto spectrum_at = [&](const model::ChainSpec& c, const floquet::SineDrive& s) {
        const MatrixXcd h = model::real_space_bdg_matrix(c.n, c.j1, c.j2, s.b0, s.f(),
                                                         model::Boundary::open);
        return spectra::diagonalize({h, model::BasisTag::nambu, std::nullopt});
    };
    if (cfg.axes.empty()) {
        const auto spec = spectrum_at(chain, cfg.drive.sine);
        io::CsvWriter csv(ctx.path("sine_spectrum.csv"), {"index", "energy", "quasienergy"});
        for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i)
            csv.row({num(static_cast<int>(i)), num(spec.eigenvalues(i)),
                     num(fold(spec.eigenvalues(i), cfg.drive.sine.period()))});
        if (cfg.options.contains("edge_target")) {
            const auto rep = resolve_edge_report(cfg.options, chain, cfg.kgrid, spec);
            write_edge_reports(ctx, rep, "");
        }
        return;
    }
    if (cfg.axes.size() != 1) throw config_error("floquet-spectrum takes one axis");
    ScanOptions opt;
    opt.threads = cfg.threads;
    opt.cell_budget = ctx.budget;
    opt.partial_path = ctx.partial("sine_sweep");
    const auto cell = [&](std::size_t, std::span<const double> vals) {
        model::ChainSpec c = chain;
        DriveConfig d = cfg.drive;
        apply_axis(cfg.axes[0].name, vals[0], c, d);
        const auto spec = spectrum_at(c, d.sine);
        std::vector<std::vector<std::string>> rows;
        for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i)
            rows.push_back({num(static_cast<int>(i)), num(spec.eigenvalues(i)),
                            num(fold(spec.eigenvalues(i), d.sine.period()))});
        return rows;
    };
    const auto table = run_scan(cfg.axes, {"index", "energy", "quasienergy"}, cell, opt);
    write_scan_csv(ctx.path("sine_sweep.csv"), cfg.axes, table);
    ctx.complete = ctx.complete && table.complete;
}

// ------------------------------------------------------- floquet invariants

void task_floquet_invariants(TaskContext& ctx) {
    const auto& cfg = ctx.cfg;
    if (cfg.drive.type == DriveConfig::Type::step) {
        const auto chain = require_chain(cfg);
        check_axes(cfg, {"b", "t1", "t2", "u1", "u2"});
        ScanOptions opt;
        opt.threads = cfg.threads;
    opt.cell_budget = ctx.budget;
        opt.partial_path = ctx.partial("floquet_invariants");
        const auto cell = [&](std::size_t, std::span<const double> vals) {
            model::ChainSpec c = chain;
            DriveConfig d = cfg.drive;
            for (std::size_t a = 0; a < vals.size(); ++a)
                apply_axis(cfg.axes[a].name, vals[a], c, d);
            const auto inv = floquet::chiral_frame_windings(c.b, d.step, cfg.kgrid);
            return std::vector<std::vector<std::string>>{
                {num(inv.w0), num(inv.wpi), num(inv.w1), num(inv.w2), num(inv.gap0),
                 num(inv.gappi), num(inv.chiral_residual), num(inv.grid_size)}};
        };
        const auto table = run_scan(
            cfg.axes, {"w0", "wpi", "w1", "w2", "gap0", "gappi", "chiral_residual", "kgrid"},
            cell, opt);
        write_scan_csv(ctx.path("floquet_invariants.csv"), cfg.axes, table);
        ctx.complete = ctx.complete && table.complete;

        // Analytic boundary overlay for (b, t1)-style diagrams.
        if (cfg.axes.size() == 2 &&
            (cfg.axes[0].name == "b" || cfg.axes[1].name == "b")) {
            const int b_axis = (cfg.axes[0].name == "b") ? 0 : 1;
            const auto& other = cfg.axes[1 - b_axis];
            if (other.name == "t1" || other.name == "t2") {
                io::CsvWriter csv(ctx.path("floquet_boundary_overlay.csv"),
                                  {other.name, "b", "family", "n1", "n2", "gamma", "sign", "n",
                                   "gap", "k"});
                const int fine = std::max(2, 4 * other.steps);
                for (int i = 0; i < fine; ++i) {
                    const double ov = other.lo + (other.hi - other.lo) * i / (fine - 1);
                    model::ChainSpec c = chain;
                    DriveConfig d = cfg.drive;
                    apply_axis(other.name, ov, c, d);
                    const auto balo = cfg.axes[b_axis].lo, bahi = cfg.axes[b_axis].hi;
                    for (const auto& pt : floquet::step_boundaries(d.step, balo, bahi))
                        csv.row({num(ov), num(pt.b), pt.family, num(pt.n1), num(pt.n2),
                                 num(pt.gamma), num(pt.sign), num(pt.n),
                                 pt.gap == floquet::GapLabel::zero ? "zero" : "pi", num(pt.k)});
                }
            }
        }
        return;
    }

    if (cfg.drive.type != DriveConfig::Type::sine)
        throw config_error("floquet-invariants needs a drive");
    const auto chain = require_chain(cfg);
    check_axes(cfg, {"b0", "omega", "j1", "j2"});
    const bool with_dipole = cfg.options.value("with_dipole", cfg.axes.size() < 2);
    std::optional<int> occ;
    if (cfg.options.contains("occupied")) occ = cfg.options.at("occupied").get<int>();

    ScanOptions opt;
    opt.threads = cfg.threads;
    opt.cell_budget = ctx.budget;
    opt.partial_path = ctx.partial("sine_invariants");
    const auto cell = [&](std::size_t, std::span<const double> vals) {
        model::ChainSpec c = chain;
        DriveConfig d = cfg.drive;
        for (std::size_t a = 0; a < vals.size(); ++a) apply_axis(cfg.axes[a].name, vals[a], c, d);
        const auto& s = d.sine;
        const auto w = topology::winding_number_general(c.j1, c.j2, s.b0, s.f(), cfg.kgrid);
        std::vector<std::string> row{num(w.value), num(w.residual)};
        if (with_dipole) {
            const auto p = topology::dipole_moment_general(c.n, c.j1, c.j2, s.b0, s.f(), occ);
            row.push_back(num(p.value));
            row.push_back(num(p.residual));
        } else {
            row.push_back("");
            row.push_back("");
        }
        return std::vector<std::vector<std::string>>{row};
    };
    const auto table = run_scan(cfg.axes, {"w", "w_residual", "p", "p_residual"}, cell, opt);
    write_scan_csv(ctx.path("sine_invariants.csv"), cfg.axes, table);
    ctx.complete = ctx.complete && table.complete;
}

// ------------------------------------------------------- floquet boundaries

void task_floquet_boundaries(TaskContext& ctx) {
    const auto& cfg = ctx.cfg;
    if (cfg.drive.type == DriveConfig::Type::step) {
        check_axes(cfg, {"t1", "t2", "u1", "u2"});
        const double blo = cfg.options.value("b_min", 0.0);
        const double bhi = cfg.options.at("b_max").get<double>();
        std::vector<std::string> header;
        for (const auto& ax : cfg.axes) header.push_back(ax.name);
        header.insert(header.end(),
                      {"b", "family", "n1", "n2", "gamma", "sign", "n", "gap", "k"});
        io::CsvWriter csv(ctx.path("floquet_boundaries.csv"), header);
        const int points = cfg.axes.empty() ? 1 : cfg.axes[0].steps;
        for (int i = 0; i < points; ++i) {
            model::ChainSpec c = cfg.chain.value_or(model::ChainSpec{});
            DriveConfig d = cfg.drive;
            std::vector<std::string> prefix;
            if (!cfg.axes.empty()) {
                const double v = cfg.axes[0].value(i);
                apply_axis(cfg.axes[0].name, v, c, d);
                prefix.push_back(num(v));
            }
            for (const auto& pt : floquet::step_boundaries(d.step, blo, bhi)) {
                std::vector<std::string> row = prefix;
                row.insert(row.end(),
                           {num(pt.b), pt.family, num(pt.n1), num(pt.n2), num(pt.gamma),
                            num(pt.sign), num(pt.n),
                            pt.gap == floquet::GapLabel::zero ? "zero" : "pi", num(pt.k)});
                csv.row(row);
            }
        }
        return;
    }
    if (cfg.drive.type != DriveConfig::Type::sine)
        throw config_error("floquet-boundaries needs a drive");
    const auto chain = require_chain(cfg);
    check_axes(cfg, {"omega"});
    const double blo = cfg.options.value("b0_min", 0.0);
    const double bhi = cfg.options.at("b0_max").get<double>();
    std::vector<std::string> header;
    for (const auto& ax : cfg.axes) header.push_back(ax.name);
    header.insert(header.end(), {"b0", "k", "family"});
    io::CsvWriter csv(ctx.path("sine_boundaries.csv"), header);
    const int points = cfg.axes.empty() ? 1 : cfg.axes[0].steps;
    for (int i = 0; i < points; ++i) {
        model::ChainSpec c = chain;
        DriveConfig d = cfg.drive;
        std::vector<std::string> prefix;
        if (!cfg.axes.empty()) {
            const double v = cfg.axes[0].value(i);
            apply_axis(cfg.axes[0].name, v, c, d);
            prefix.push_back(num(v));
        }
        for (const auto& r : floquet::sine_boundary(c.j1, c.j2, d.sine.omega, blo, bhi)) {
            std::vector<std::string> row = prefix;
            row.insert(row.end(), {num(r.b0), num(r.k), r.family});
            csv.row(row);
        }
    }
}

// ---------------------------------------------------------------- oracle

void task_oracle_check(TaskContext& ctx) {
    const auto& cfg = ctx.cfg;
    const auto chain = require_chain(cfg);
    check_axes(cfg, {});
    const int draws = cfg.options.value("draws", 0);

    if (draws == 0) {
        oracle::SpinChainSpec s{chain.n, chain.j1, chain.j2, chain.b};
        const auto ed = oracle::spin_ed(s);
        const auto fr = oracle::fermion_spectrum_reconstruction(s);
        io::CsvWriter csv(ctx.path("oracle_spectra.csv"),
                          {"index", "energy_spin", "energy_fermion", "diff"});
        double worst = 0.0;
        for (std::size_t i = 0; i < ed.spectrum.energies.size(); ++i) {
            const double d = std::abs(ed.spectrum.energies[i] - fr.energies[i]);
            worst = std::max(worst, d);
            csv.row({num(static_cast<int>(i)), num(ed.spectrum.energies[i]),
                     num(fr.energies[i]), num(d)});
        }
        const auto probes = oracle::magnetization_probes(s);
        io::CsvWriter sum(ctx.path("oracle_summary.csv"),
                          {"max_abs_diff", "squared_moment", "end_to_end"});
        sum.row({num(worst), num(probes.squared_moment), num(probes.end_to_end)});
        return;
    }

    const unsigned seed = cfg.options.value("seed", 20240501u);
    const double jlo = cfg.options.value("j_min", 0.2), jhi = cfg.options.value("j_max", 2.0);
    const double bl = cfg.options.value("b_min", 0.0), bh = cfg.options.value("b_max", 2.0);
    // Draw all parameter triples up front so cells stay order-independent.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ju(jlo, jhi), bu(bl, bh);
    std::vector<std::array<double, 3>> params(draws);
    for (auto& p : params) p = {ju(rng), ju(rng), bu(rng)};

    topology::AxisSpec axis{"draw", 0.0, static_cast<double>(draws - 1), draws};
    ScanOptions opt;
    opt.threads = cfg.threads;
    opt.cell_budget = ctx.budget;
    opt.partial_path = ctx.partial("oracle_draws");
    const auto cell = [&](std::size_t idx, std::span<const double>) {
        const auto& p = params[idx];
        oracle::SpinChainSpec s{chain.n, p[0], p[1], p[2]};
        const auto ed = oracle::spin_ed(s);
        const auto fr = oracle::fermion_spectrum_reconstruction(s);
        double worst = 0.0;
        for (std::size_t i = 0; i < ed.spectrum.energies.size(); ++i)
            worst = std::max(worst, std::abs(ed.spectrum.energies[i] - fr.energies[i]));
        return std::vector<std::vector<std::string>>{
            {num(p[0]), num(p[1]), num(p[2]), num(worst)}};
    };
    const std::vector<topology::AxisSpec> axes{axis};
    const auto table = run_scan(axes, {"j1", "j2", "b", "max_abs_diff"}, cell, opt);
    write_scan_csv(ctx.path("oracle_draws.csv"), axes, table);
    ctx.complete = ctx.complete && table.complete;
}

// -------------------------------------------------------------- couplings

void task_couplings(TaskContext& ctx) {
    const auto& cfg = ctx.cfg;
    if (!cfg.options.contains("source")) throw config_error("couplings needs options.source");
    const auto& src = cfg.options.at("source");
    const auto kind = src.value("kind", std::string());
    MatrixXd j;
    if (kind == "geometric") {
        couplings::GeometricCoupling g;
        g.j0 = src.value("j0", 1.0);
        g.beta = src.value("beta", 3.0);
        if (src.contains("positions")) {
            for (const auto& z : src.at("positions")) g.positions.push_back(z.get<double>());
            g.validate();
        } else {
            g = couplings::GeometricCoupling::dimerized(g.j0, g.beta,
                                                        src.at("delta1").get<double>(),
                                                        src.at("delta2").get<double>(),
                                                        src.at("n").get<int>());
        }
        j = couplings::power_law_couplings(g);
    } else if (kind == "phonon") {
        const auto p = couplings::PhononSpec::from_json_text(src.dump());
        j = couplings::phonon_couplings(p);
        ctx.constants["phonon_prefactor_c"] = p.prefactor_c;
    } else {
        throw config_error("source.kind must be 'geometric' or 'phonon'");
    }
    io::CsvWriter csv(ctx.path("couplings.csv"), {"i", "j", "value"});
    for (Eigen::Index r = 0; r < j.rows(); ++r)
        for (Eigen::Index c = 0; c < j.cols(); ++c)
            csv.row({num(static_cast<int>(r)), num(static_cast<int>(c)), num(j(r, c))});
}

}  // namespace

RunOutcome run(const RunConfig& cfg, std::size_t cell_budget) {
    TaskContext ctx{cfg, fs::path(cfg.out_dir), cell_budget, {}, json::object(), true};
    std::error_code ec;
    fs::create_directories(ctx.out, ec);
    if (ec) throw config_error("cannot create output directory: " + cfg.out_dir);

    if (cfg.task == "spectrum") task_spectrum(ctx);
    else if (cfg.task == "winding") task_winding(ctx);
    else if (cfg.task == "dipole") task_dipole(ctx);
    else if (cfg.task == "boundary") task_boundary(ctx);
    else if (cfg.task == "phase-diagram") task_phase_diagram(ctx);
    else if (cfg.task == "floquet-spectrum") task_floquet_spectrum(ctx);
    else if (cfg.task == "floquet-invariants") task_floquet_invariants(ctx);
    else if (cfg.task == "floquet-boundaries") task_floquet_boundaries(ctx);
    else if (cfg.task == "oracle-check") task_oracle_check(ctx);
    else if (cfg.task == "couplings") task_couplings(ctx);
    else throw config_error("unknown task: " + cfg.task);

    RunOutcome out;
    out.files = ctx.files;
    out.complete = ctx.complete;

    json manifest;
    manifest["version"] = version;
    manifest["task"] = cfg.task;
    manifest["config_hash"] = config_hash(cfg.raw);
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%FT%TZ", std::gmtime(&t));
    manifest["timestamp"] = stamp;
    manifest["complete"] = ctx.complete;
    ctx.constants["kgrid"] = cfg.kgrid;
    ctx.constants["dipole_exponent_length"] = "unit cells (n/2)";
    ctx.constants["dipole_background"] = "(L+1)/2 with L = n/2";
    manifest["constants"] = ctx.constants;
    json outputs = json::array();
    for (const auto& f : ctx.files) {
        std::error_code fec;
        const auto size = fs::file_size(ctx.out / f, fec);
        if (fec || size == 0) throw std::runtime_error("output missing or empty: " + f);
        outputs.push_back({{"name", f}, {"bytes", size}});
    }
    manifest["outputs"] = outputs;
    std::ofstream m(ctx.out / "manifest.json");
    m << manifest.dump(2) << '\n';
    out.manifest = manifest;
    return out;
}

}  // namespace majorana::cli
