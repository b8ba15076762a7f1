#include "majorana/couplings.hpp"

#include <doctest.h>

#include <random>

using namespace majorana;
using namespace majorana::couplings;

namespace {

MatrixXd random_orthonormal(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = g(rng);
    const Eigen::HouseholderQR<MatrixXd> qr(a);
    return qr.householderQ() * MatrixXd::Identity(n, n);
}

PhononSpec two_ion_spec(double mu, double w1, double w2) {
    PhononSpec p;
    p.omega = 0.9;
    p.delta_k = 1.3;
    p.mass = 2.0;
    p.mu = mu;
    const double r = 1.0 / std::sqrt(2.0);
    PhononMode m1, m2;
    m1.freq = w1;
    m1.b = (VectorXd(2) << r, r).finished();
    m2.freq = w2;
    m2.b = (VectorXd(2) << r, -r).finished();
    p.modes = {m1, m2};
    return p;
}

}  // namespace

TEST_CASE("power law: uniform spacing") {
    GeometricCoupling g;
    g.j0 = 1.0;
    g.beta = 3.0;
    g.positions = {0.0, 1.0, 2.0, 3.0, 4.0};
    const MatrixXd j = power_law_couplings(g);
    CHECK(j(0, 1) == doctest::Approx(1.0));
    CHECK(j(1, 2) == doctest::Approx(1.0));
    CHECK(j(0, 2) == doctest::Approx(0.125));
    CHECK(j(0, 3) == doctest::Approx(1.0 / 27.0));
    CHECK((j - j.transpose()).norm() == 0.0);
    CHECK(j.diagonal().norm() == 0.0);
}

TEST_CASE("power law: equal spacings give the uniform chain") {
    const double d = 1.37;
    const auto g = GeometricCoupling::dimerized(2.0, 3.0, d, d, 6);
    const MatrixXd j = power_law_couplings(g);
    const double expect = 2.0 / (d * d * d);
    for (int i = 0; i + 1 < 6; ++i) CHECK(j(i, i + 1) == doctest::Approx(expect));
}

TEST_CASE("power law: spacings inverted from target couplings") {
    // delta_i = (j0/j_i)^(1/3) should reproduce j1 = 5/6, j2 = 5/4
    const double d1 = std::pow(6.0 / 5.0, 1.0 / 3.0);
    const double d2 = std::pow(4.0 / 5.0, 1.0 / 3.0);
    const auto g = GeometricCoupling::dimerized(1.0, 3.0, d1, d2, 8);
    const MatrixXd j = power_law_couplings(g);
    for (int i = 0; i + 1 < 8; ++i)
        CHECK(j(i, i + 1) == doctest::Approx(i % 2 == 0 ? 5.0 / 6.0 : 5.0 / 4.0).epsilon(1e-14));
}

TEST_CASE("power law: coupling ratio follows the spacing ratio") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double beta = 0.3 + 2.7 * std::generate_canonical<double, 53>(rng);
        const double d1 = u(rng), d2 = u(rng);
        const auto g = GeometricCoupling::dimerized(1.0, beta, d1, d2, 4);
        const MatrixXd j = power_law_couplings(g);
        CHECK(j(0, 1) / j(1, 2) == doctest::Approx(std::pow(d2 / d1, beta)).epsilon(1e-13));
    }
}

TEST_CASE("power law: bad geometry rejected") {
    GeometricCoupling g;
    g.positions = {0.0, 1.0, 1.0};
    CHECK_THROWS(power_law_couplings(g));
    GeometricCoupling h;
    h.beta = 5.0;
    h.positions = {0.0, 1.0};
    CHECK_THROWS(power_law_couplings(h));
}

TEST_CASE("phonon couplings: two-ion closed form") {
    const auto p = two_ion_spec(1.7, 1.0, 2.0);
    const MatrixXd j = phonon_couplings(p);
    const double pref = p.omega * p.omega * p.delta_k * p.delta_k / (4.0 * p.mass);
    const double expect = pref * (0.5 / (1.7 * 1.7 - 1.0) - 0.5 / (1.7 * 1.7 - 4.0));
    CHECK(j(0, 1) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(j(0, 0) == 0.0);
    CHECK(j(1, 0) == j(0, 1));
}

TEST_CASE("phonon couplings: prefactor constant is configurable") {
    auto p = two_ion_spec(1.7, 1.0, 2.0);
    const double with4 = phonon_couplings(p)(0, 1);
    p.prefactor_c = 2;
    CHECK(phonon_couplings(p)(0, 1) == doctest::Approx(2.0 * with4).epsilon(1e-14));
    p.prefactor_c = 3;
    CHECK_THROWS(phonon_couplings(p));
}

TEST_CASE("phonon couplings: mode contribution flips sign across resonance") {
    const auto below = two_ion_spec(0.8, 1.0, 5.0);
    const auto above = two_ion_spec(1.2, 1.0, 5.0);
    // the first mode dominates; its denominator changes sign at mu = 1
    CHECK(phonon_couplings(below)(0, 1) * phonon_couplings(above)(0, 1) < 0.0);
}

TEST_CASE("phonon couplings: random table matches direct summation") {
    const int n = 4;
    const MatrixXd b = random_orthonormal(n, 42);
    PhononSpec p;
    p.omega = 1.1;
    p.delta_k = 0.7;
    p.mass = 3.0;
    p.mu = 2.9;
    for (int m = 0; m < n; ++m) {
        PhononMode mode;
        mode.freq = 1.0 + 0.4 * m;
        mode.b = b.col(m);
        p.modes.push_back(mode);
    }
    const MatrixXd j = phonon_couplings(p);
    const double pref = p.omega * p.omega * p.delta_k * p.delta_k / (4.0 * p.mass);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (i == k) continue;
            double direct = 0.0;
            for (int m = 0; m < n; ++m)
                direct += b(i, m) * b(k, m) /
                          (p.mu * p.mu - p.modes[m].freq * p.modes[m].freq);
            CHECK(j(i, k) == doctest::Approx(pref * direct).epsilon(1e-12));
        }
}

TEST_CASE("phonon couplings: resonance and bad mode tables rejected") {
    auto p = two_ion_spec(1.0, 1.0, 2.0);
    CHECK_THROWS_AS(phonon_couplings(p), std::domain_error);
    auto q = two_ion_spec(1.7, 1.0, 2.0);
    q.modes[1].b = q.modes[0].b;   // not orthonormal
    CHECK_THROWS(phonon_couplings(q));
}

TEST_CASE("displacement amplitude: zero at t = 0 and bounded") {
    const auto p = two_ion_spec(1.9, 1.0, 2.4);
    CHECK(std::abs(displacement_amplitude(p, 0, 0, 0.0)) == 0.0);
    for (int m = 0; m < 2; ++m) {
        const double wm = p.modes[m].freq;
        const double bound = 2.0 * std::abs(p.eta(0, m)) * p.omega * (p.mu + wm) /
                             std::abs(p.mu * p.mu - wm * wm);
        for (int i = 0; i < 3000; ++i) {
            const double t = 0.013 * i;
            CHECK(std::abs(displacement_amplitude(p, 0, m, t)) <= bound * (1 + 1e-12));
        }
    }
}

TEST_CASE("displacement amplitude: negligible when far detuned") {
    auto p = two_ion_spec(1.7, 1.0, 2.0);
    p.mu = 25.0;       // |mu - omega_m| >> Omega eta
    p.omega = 0.05;
    double worst = 0.0;
    for (int i = 0; i < 5000; ++i)
        worst = std::max(worst, std::abs(displacement_amplitude(p, 1, 0, 0.002 * i)));
    CHECK(worst < 1e-2);
}

TEST_CASE("accumulated phase: zero at t = 0, secular slope from a long fit") {
    const auto p = two_ion_spec(2.3, 1.0, 3.1);
    CHECK(std::abs(accumulated_phase(p, 0, 1, 0.0).chi) == 0.0);

    const auto ref = accumulated_phase(p, 0, 1, 1.0);
    // least-squares slope of Im chi over one hundred beat periods
    const double horizon = 100.0 * 2.0 * pi / p.mu;
    const int samples = 4000;
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (int i = 1; i <= samples; ++i) {
        const double t = horizon * i / samples;
        const double y = accumulated_phase(p, 0, 1, t).chi.imag();
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
    }
    const double fit = (samples * sty - st * sy) / (samples * stt - st * st);
    CHECK(fit == doctest::Approx(ref.secular_slope).epsilon(0.01));

    // the slope reproduces the phonon coupling in the c = 4 normalization
    const MatrixXd j = phonon_couplings(p);
    CHECK(ref.secular_slope == doctest::Approx(-j(0, 1)).epsilon(1e-12));
}

TEST_CASE("accumulated phase: remainder after the secular part stays bounded") {
    const auto p = two_ion_spec(2.3, 1.0, 3.1);
    const double slope = accumulated_phase(p, 0, 1, 1.0).secular_slope;
    double bound = 0.0;
    const double o2 = 0.5 * p.omega * p.omega;
    for (int m = 0; m < 2; ++m) {
        const double wm = p.modes[m].freq;
        const double coef =
            std::abs(o2 * p.eta(0, m) * p.eta(1, m) / (p.mu * p.mu - wm * wm));
        bound += coef * (p.mu / std::abs(p.mu - wm) + p.mu / (p.mu + wm) + wm / (2.0 * p.mu));
    }
    for (int i = 0; i <= 2000; ++i) {
        const double t = 0.37 * i;
        const double rem = accumulated_phase(p, 0, 1, t).chi.imag() - slope * t;
        CHECK(std::abs(rem) <= bound * (1 + 1e-12));
    }
}

TEST_CASE("phonon spec json parsing") {
    const auto p = PhononSpec::from_json_text(R"({
        "omega": 0.9, "delta_k": 1.3, "mass": 2.0, "mu": 1.7,
        "modes": [{"freq": 1.0, "b": [0.7071067811865476, 0.7071067811865476]},
                  {"freq": 2.0, "b": [0.7071067811865476, -0.7071067811865476]}]})");
    CHECK(p.sites() == 2);
    CHECK(p.prefactor_c == 4);
    CHECK(phonon_couplings(p)(0, 1) ==
          doctest::Approx(phonon_couplings(two_ion_spec(1.7, 1.0, 2.0))(0, 1)));
    CHECK_THROWS(PhononSpec::from_json_text("{\"omega\": 1}"));
}
