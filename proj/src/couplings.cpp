#include "majorana/couplings.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace majorana::couplings {

GeometricCoupling GeometricCoupling::dimerized(double j0, double beta, double delta1,
                                               double delta2, int n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("dimerized layout needs even n >= 2");
    if (delta1 <= 0.0 || delta2 <= 0.0) throw std::invalid_argument("spacings must be positive");
    GeometricCoupling g;
    g.j0 = j0;
    g.beta = beta;
    g.positions.resize(n);
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        g.positions[i] = z;
        z += (i % 2 == 0) ? delta1 : delta2;
    }
    g.validate();
    return g;
}

void GeometricCoupling::validate() const {
    if (!(beta > 0.0) || beta > 3.0) throw std::invalid_argument("beta must lie in (0, 3]");
    if (positions.size() < 2) throw std::invalid_argument("need at least two ions");
    for (std::size_t i = 1; i < positions.size(); ++i)
        if (!(positions[i] > positions[i - 1]))
            throw std::invalid_argument("positions must be strictly increasing");
}

double PhononSpec::eta(int j, int m) const {
    const auto& mode = modes.at(m);
    return delta_k * mode.b(j) / std::sqrt(2.0 * mass * mode.freq);
}

void PhononSpec::validate() const {
    if (modes.empty()) throw std::invalid_argument("phonon spec needs at least one mode");
    if (mass <= 0.0) throw std::invalid_argument("mass must be positive");
    if (prefactor_c != 2 && prefactor_c != 4)
        throw std::invalid_argument("prefactor constant must be 2 or 4");
    const int n = sites();
    for (const auto& mode : modes) {
        if (mode.b.size() != n) throw std::invalid_argument("mode vectors must share one length");
        if (!(mode.freq > 0.0)) throw std::invalid_argument("mode frequencies must be positive");
        if (std::abs(mu - mode.freq) < 1e-12 * std::max(std::abs(mu), mode.freq))
            throw std::domain_error("beatnote resonant with a normal mode");
    }
    // mode vectors orthonormal to 1e-10
    for (std::size_t a = 0; a < modes.size(); ++a)
        for (std::size_t b = a; b < modes.size(); ++b) {
            const double dot = modes[a].b.dot(modes[b].b);
            const double want = (a == b) ? 1.0 : 0.0;
            if (std::abs(dot - want) > 1e-10)
                throw std::invalid_argument("mode vectors are not orthonormal");
        }
}

PhononSpec PhononSpec::from_json_text(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    PhononSpec p;
    p.omega = j.at("omega").get<double>();
    p.delta_k = j.at("delta_k").get<double>();
    p.mass = j.at("mass").get<double>();
    p.mu = j.at("mu").get<double>();
    if (j.contains("prefactor_c")) p.prefactor_c = j.at("prefactor_c").get<int>();
    for (const auto& jm : j.at("modes")) {
        PhononMode m;
        m.freq = jm.at("freq").get<double>();
        const auto& bv = jm.at("b");
        m.b.resize(static_cast<Eigen::Index>(bv.size()));
        for (Eigen::Index i = 0; i < m.b.size(); ++i) m.b(i) = bv.at(i).get<double>();
        p.modes.push_back(std::move(m));
    }
    p.validate();
    return p;
}

MatrixXd power_law_couplings(const GeometricCoupling& g) {
    g.validate();
    const int n = static_cast<int>(g.positions.size());
    MatrixXd j = MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            const double d = std::abs(g.positions[a] - g.positions[b]);
            if (d == 0.0) throw std::domain_error("coincident ion positions");
            j(a, b) = j(b, a) = g.j0 / std::pow(d, g.beta);
        }
    return j;
}

MatrixXd phonon_couplings(const PhononSpec& p) {
    p.validate();
    const int n = p.sites();
    const double pref = p.omega * p.omega * p.delta_k * p.delta_k / (p.prefactor_c * p.mass);
    MatrixXd j = MatrixXd::Zero(n, n);
    for (const auto& mode : p.modes) {
        const double den = p.mu * p.mu - mode.freq * mode.freq;
        j += (pref / den) * (mode.b * mode.b.transpose());
    }
    j.diagonal().setZero();
    return j;
}

complexd displacement_amplitude(const PhononSpec& p, int j, int m, double t) {
    if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
    p.validate();
    const double wm = p.modes.at(m).freq;
    const double den = p.mu * p.mu - wm * wm;
    const complexd bracket =
        p.mu - std::exp(im * wm * t) * (p.mu * std::cos(p.mu * t) - im * wm * std::sin(p.mu * t));
    return -im * p.eta(j, m) * p.omega / den * bracket;
}

AccumulatedPhase accumulated_phase(const PhononSpec& p, int i, int j, double t) {
    if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
    p.validate();
    complexd chi{0.0, 0.0};
    double slope = 0.0;
    const double o2 = 0.5 * p.omega * p.omega;
    for (std::size_t m = 0; m < p.modes.size(); ++m) {
        const double wm = p.modes[m].freq;
        const double den = p.mu * p.mu - wm * wm;
        const double ee = p.eta(i, static_cast<int>(m)) * p.eta(j, static_cast<int>(m));
        const double bracket = p.mu * std::sin((p.mu - wm) * t) / (p.mu - wm) -
                               p.mu * std::sin((p.mu + wm) * t) / (p.mu + wm) +
                               wm * std::sin(2.0 * p.mu * t) / (2.0 * p.mu) - wm * t;
        chi += im * o2 * ee / den * bracket;
        slope += -o2 * ee * wm / den;
    }
    return {chi, slope};
}

}  // namespace majorana::couplings
