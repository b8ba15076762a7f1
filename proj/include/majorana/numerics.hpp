#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace majorana {

/// Golden-section minimization on [a, b]; tolerance on the argument.
inline double golden_min(const std::function<double(double)>& f, double a, double b,
                         double xtol = 1e-12) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

/// Local minima of f sampled on n+1 equispaced points over [lo, hi],
/// refined by golden sections; interval endpoints count as candidates.
inline std::vector<double> bracketed_minima(const std::function<double(double)>& f, double lo,
                                            double hi, int n, double xtol = 1e-12) {
    std::vector<double> xs(n + 1), fs(n + 1);
    for (int i = 0; i <= n; ++i) {
        xs[i] = lo + (hi - lo) * i / n;
        fs[i] = f(xs[i]);
    }
    std::vector<double> out;
    for (int i = 0; i <= n; ++i) {
        const bool left_ok = (i == 0) || fs[i] <= fs[i - 1];
        const bool right_ok = (i == n) || fs[i] <= fs[i + 1];
        if (!(left_ok && right_ok)) continue;
        const double a = xs[std::max(0, i - 1)];
        const double b = xs[std::min(n, i + 1)];
        out.push_back(a == b ? xs[i] : golden_min(f, a, b, xtol));
    }
    return out;
}

/// Bisection for a sign change of f on [a, b]; requires f(a)*f(b) <= 0.
inline double bisect_root(const std::function<double(double)>& f, double a, double b,
                          double xtol = 1e-13) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) return std::numeric_limits<double>::quiet_NaN();
    while (b - a > xtol) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if (fa * fm < 0.0) {
            b = m; fb = fm;
        } else {
            a = m; fa = fm;
        }
    }
    return 0.5 * (a + b);
}

inline double mod1(double x) {
    double r = std::fmod(x, 1.0);
    if (r < 0.0) r += 1.0;
    return r;
}

}  // namespace majorana
