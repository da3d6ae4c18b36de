#include "instanton.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace nls {

double solve_mbeta(double beta) {
    if (!(beta > 1.0)) throw std::invalid_argument("solve_mbeta: beta must exceed 1 (only the zero root exists otherwise)");
    double lo = 0.0, hi = 1.0;
    // f(m) = tanh(beta m) - m is positive just right of 0 and negative at 1
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = std::tanh(beta * mid) - mid;
        if (f > 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-15) break;
    }
    double m = 0.5 * (lo + hi);
    for (int it = 0; it < 60; ++it) {  // Newton polish
        const double t = std::tanh(beta * m);
        const double f = t - m;
        const double fp = beta * (1.0 - t * t) - 1.0;
        const double step = f / fp;
        m -= step;
        if (std::fabs(step) < 1e-16) break;
    }
    return m;
}

namespace {

void antisymmetrize(Vec& v) {
    const int n = static_cast<int>(v.size());
    for (int i = 0, j = n - 1; i < j; ++i, --j) {
        const double a = 0.5 * (v[i] - v[j]);
        v[i] = a;
        v[j] = -a;
    }
    v[(n - 1) / 2] = 0.0;
}

double sup_diff(const Vec& a, const Vec& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

}  // namespace

InstantonProfile solve_instanton(double beta, const KernelSpec& kernel, const Grid& master_grid,
                                 const InstantonOptions& opts) {
    if (!(beta > 1.0)) throw std::invalid_argument("solve_instanton: beta must exceed 1");

    InstantonProfile prof;
    prof.beta = beta;
    prof.m_beta = solve_mbeta(beta);
    prof.sigma = beta * (1.0 - prof.m_beta * prof.m_beta);
    prof.grid = master_grid;
    prof.kernel = discretize(kernel, master_grid.inv_h);
    prof.kernel_spec = kernel;

    const int n = master_grid.n();
    const double mb = prof.m_beta;
    Vec m(n);
    for (int i = 0; i < n; ++i) m[i] = mb * std::tanh(master_grid.nodes[i]);
    antisymmetrize(m);

    auto apply = [&](const Vec& v) {
        Vec c = convolve_whole_line(master_grid, prof.kernel, v, -mb, mb);
        for (double& x : c) x = std::tanh(beta * x);
        return c;
    };

    double damping = 1.0;
    double prev_update = std::numeric_limits<double>::infinity();
    double best_update = std::numeric_limits<double>::infinity();
    int oscillations = 0;
    int stalled = 0;
    int it = 0;
    for (; it < opts.max_iterations; ++it) {
        Vec next = apply(m);
        antisymmetrize(next);
        if (damping < 1.0)
            for (int i = 0; i < n; ++i) next[i] = damping * next[i] + (1.0 - damping) * m[i];
        const double update = sup_diff(next, m);
        m = std::move(next);
        if (update < opts.tol) break;
        if (update < best_update) {
            best_update = update;
            stalled = 0;
        } else if (++stalled >= 30) {
            break;  // rounding floor reached
        }
        if (update > prev_update) {
            if (++oscillations >= 3) damping = 0.5;  // engage only on persistent oscillation
        }
        prev_update = update;
    }

    prof.iterations = it;
    prof.residual = sup_diff(apply(m), m);
    if (prof.residual > 1e-10)
        throw std::runtime_error("solve_instanton: no convergence after " + std::to_string(it) +
                                 " iterations, residual " + std::to_string(prof.residual));

    prof.m_bar = std::move(m);
    prof.p.resize(n);
    for (int i = 0; i < n; ++i) prof.p[i] = beta * (1.0 - prof.m_bar[i] * prof.m_bar[i]);
    prof.m_bar_prime = instanton_derivative(prof, opts.derivative_endpoint_correction);
    prof.fit = fit_decay_rate(prof);
    return prof;
}

Vec instanton_derivative(const InstantonProfile& profile, bool endpoint_correction) {
    Vec g = convolve_derivative_whole_line(profile.grid, profile.kernel, profile.m_bar,
                                           -profile.m_beta, profile.m_beta, endpoint_correction);
    Vec d(g.size());
    for (size_t i = 0; i < g.size(); ++i) d[i] = profile.p[i] * g[i];
    return d;
}

DecayFit fit_decay_rate(const InstantonProfile& profile) {
    const double mb2 = profile.m_beta * profile.m_beta;
    const int n = profile.grid.n();
    Vec xs, ys, yps;
    for (int i = profile.grid.center() + 1; i < n; ++i) {
        const double gap = mb2 - profile.m_bar[i] * profile.m_bar[i];
        if (gap > 1e-10 && gap < 1e-2) {
            xs.push_back(profile.grid.nodes[i]);
            ys.push_back(std::log(gap));
            yps.push_back(profile.m_bar_prime[i] > 0.0 ? std::log(profile.m_bar_prime[i]) : 0.0);
        }
    }
    if (xs.size() < 3)
        throw std::runtime_error("fit_decay_rate: empty fitting window; master domain too small");

    auto least_squares = [](const Vec& x, const Vec& y, double& slope, double& icept, double& r2) {
        const double n = static_cast<double>(x.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            sx += x[i];
            sy += y[i];
            sxx += x[i] * x[i];
            sxy += x[i] * y[i];
            syy += y[i] * y[i];
        }
        const double det = n * sxx - sx * sx;
        slope = (n * sxy - sx * sy) / det;
        icept = (sy * sxx - sx * sxy) / det;
        const double ss_tot = syy - sy * sy / n;
        double ss_res = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            const double e = y[i] - (slope * x[i] + icept);
            ss_res += e * e;
        }
        r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    };

    DecayFit fit;
    double slope, icept;
    least_squares(xs, ys, slope, icept, fit.r_squared);
    fit.alpha = -slope;
    fit.prefactor = std::exp(icept);
    double slope_p, icept_p;
    least_squares(xs, yps, slope_p, icept_p, fit.r_squared_prime);
    fit.alpha_prime = -slope_p;
    fit.reliable = fit.r_squared >= 0.99;
    fit.window_lo = xs.front();
    fit.window_hi = xs.back();
    if (!(fit.alpha > 0.0)) throw std::runtime_error("fit_decay_rate: nonpositive rate");
    return fit;
}

Restriction restrict_to(const InstantonProfile& profile, const Grid& sub) {
    if (sub.inv_h != profile.grid.inv_h)
        throw std::invalid_argument("restrict_to: incompatible spacings");
    if (sub.half_length > profile.grid.half_length + 1e-12)
        throw std::invalid_argument("restrict_to: requested interval exceeds the master domain");
    const int offset = (profile.grid.n() - sub.n()) / 2;

    Restriction r;
    r.beta = profile.beta;
    r.m_beta = profile.m_beta;
    r.sigma = profile.sigma;
    r.alpha_fit = profile.fit.alpha;
    r.grid = sub;
    r.kernel = profile.kernel;
    r.kernel_spec = profile.kernel_spec;
    r.m_bar.resize(sub.n());
    r.m_bar_prime.resize(sub.n());
    r.p.resize(sub.n());
    for (int i = 0; i < sub.n(); ++i) {
        r.m_bar[i] = profile.m_bar[offset + i];
        r.m_bar_prime[i] = profile.m_bar_prime[offset + i];
        r.p[i] = profile.p[offset + i];
    }
    return r;
}

void write_profile_csv(const Restriction& r, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << "x,m_bar,m_bar_prime,p\n";
    for (int i = 0; i < r.grid.n(); ++i)
        os << format_double(r.grid.nodes[i]) << ',' << format_double(r.m_bar[i]) << ','
           << format_double(r.m_bar_prime[i]) << ',' << format_double(r.p[i]) << '\n';
}

}  // namespace nls
