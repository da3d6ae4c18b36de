#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "eigensolve.hpp"

namespace nls {

namespace {
void reflect_average(Vec& v) {
    const int n = static_cast<int>(v.size());
    for (int i = 0, j = n - 1; i < j; ++i, --j) {
        const double a = 0.5 * (v[i] + v[j]);
        v[i] = a;
        v[j] = a;
    }
}
}  // namespace

PowerIterationResult principal_power_iteration(const SymmetrizedOperator& s, double value_tol,
                                               double residual_tol, int max_iterations) {
    const int n = s.grid.n();
    Vec u(n, 1.0);
    {
        const double inv = 1.0 / norm2(u);
        for (double& x : u) x *= inv;
    }

    double nu_prev = 0.0;
    double cw_best = std::numeric_limits<double>::infinity();
    int stalled = 0;
    PowerIterationResult out;

    for (int it = 1; it <= max_iterations; ++it) {
        Vec su = matvec_banded(s.sym_entries, u, s.half_band);
        reflect_average(su);

        double cw_lo = std::numeric_limits<double>::infinity(), cw_hi = 0.0;
        for (int i = 0; i < n; ++i) {
            if (u[i] <= 0.0) { cw_lo = 0.0; cw_hi = std::numeric_limits<double>::infinity(); break; }
            const double r = su[i] / u[i];
            cw_lo = std::min(cw_lo, r);
            cw_hi = std::max(cw_hi, r);
        }
        const double nu = dot(u, su);  // Rayleigh quotient; u is unit
        const double spread = (cw_hi - cw_lo) / std::max(nu, 1e-300);

        const double nsu = norm2(su);
        const double inv = 1.0 / nsu;
        Vec next = su;
        for (double& x : next) x *= inv;

        const bool value_done = std::fabs(nu - nu_prev) < value_tol;
        const bool cw_done = spread < 1e-11;
        if (spread >= cw_best * 0.999) {
            if (++stalled > 200 && value_done && spread < 1e-9) {
                u = std::move(next);
                out.nu = nu;
                out.iterations = it;
                out.cw_spread = spread;
                break;
            }
        } else {
            stalled = 0;
            cw_best = spread;
        }

        u = std::move(next);
        nu_prev = nu;
        if (value_done && cw_done && it > 3) {
            out.nu = nu;
            out.iterations = it;
            out.cw_spread = spread;
            break;
        }
        if (it == max_iterations)
            throw std::runtime_error("power iteration: no convergence after " + std::to_string(it) +
                                     " iterations (spread " + std::to_string(spread) + ")");
    }

    // residual-based refinement: recompute the Rayleigh quotient once
    Vec su = matvec_banded(s.sym_entries, u, s.half_band);
    out.nu = dot(u, su);
    double res = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = su[i] - out.nu * u[i];
        res += r * r;
    }
    out.residual = std::sqrt(res);
    if (out.residual > residual_tol)
        throw std::runtime_error("power iteration: residual " + std::to_string(out.residual) +
                                 " above tolerance");
    out.u = std::move(u);
    return out;
}

SpectralResult solve_spectrum(const SymmetrizedOperator& s) {
    if (s.kind != OperatorKind::a) throw std::invalid_argument("solve_spectrum: assemble kind a first");
    SpectralResult res;

    PowerIterationResult pw = principal_power_iteration(s);
    res.nu0 = pw.nu;
    res.eig_residual = pw.residual;
    res.cw_spread = pw.cw_spread;
    res.power_iterations = pw.iterations;

    // back-transform; l2 normalization of u equals H normalization of v0
    res.v0 = from_symmetric_coords(s, pw.u);
    if (res.v0[s.grid.center()] < 0.0)
        for (double& x : res.v0) x = -x;

    res.eigenvalues = symmetric_eigenvalues(s.sym_entries);
    res.mu1 = 1.0 - res.nu0;
    res.mu2 = res.eigenvalues.size() > 1 ? 1.0 - res.eigenvalues[1] : res.mu1;

    if (std::fabs(res.eigenvalues[0] - res.nu0) > 1e-10)
        throw std::runtime_error("solve_spectrum: power iteration and QL disagree on the top eigenvalue");
    if (res.eigenvalues.size() > 1 && res.eigenvalues[0] - res.eigenvalues[1] < 1e-12)
        res.simple = false;  // contradicts simplicity; flagged, never silently accepted
    return res;
}

double rayleigh_trial(const OperatorMatrix& a, const Vec& h_trial) {
    const double nrm = weighted_norm(h_trial, a.grid, a.p);
    if (!(nrm > 0.0)) throw std::invalid_argument("rayleigh_trial: zero trial vector");
    Vec h = h_trial;
    for (double& x : h) x /= nrm;
    const Vec ah = matvec(a.entries, h);
    return weighted_inner(ah, h, a.grid, a.p);
}

double default_eps0(double sigma) { return 0.25 * (1.0 - sigma); }

DecayParams decay_params(const Restriction& r, double eps0) {
    if (!(eps0 > 0.0) || !(eps0 < 0.5 * (1.0 - r.sigma)))
        throw std::invalid_argument("decay_params: eps0 must lie in (0, (1-sigma)/2)");
    DecayParams dp;
    dp.eps0 = eps0;
    const double threshold = 1.0 - eps0;
    const int n = r.grid.n();
    const int c = r.grid.center();

    // smallest node index beyond which p stays below 1 - eps0 (p is even and
    // decreasing away from the center, but scan defensively from the right)
    int idx = n;  // one past the end = nowhere
    for (int i = n - 1; i >= c; --i) {
        if (r.p[i] < threshold)
            idx = i;
        else
            break;
    }
    if (idx == n)
        throw std::runtime_error("decay_params: p never drops below 1 - eps0 on this interval");
    dp.r0_index = idx;
    dp.r0 = r.grid.nodes[idx];
    dp.p_at_r0 = r.p[idx];
    dp.alpha_eps0 = std::log((1.0 - 0.5 * eps0) / dp.p_at_r0);
    if (dp.r0 > 0.5 * r.grid.half_length + 1e-12) {
        dp.applicable = false;
        dp.note = "r0 exceeds L/2; interval too small for the decay lemma";
    }
    return dp;
}

DecayVerdict verify_eigen_decay(const Vec& psi, double nu, const DecayParams& dp, const Restriction& r) {
    DecayVerdict v;
    if (!(nu > 1.0 - 0.5 * dp.eps0)) {
        v.applicable = false;
        return v;
    }
    v.bound_c = r.beta * l2_norm(r.kernel);
    v.pass = true;
    v.min_admissible_c = 0.0;
    v.worst_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < r.grid.n(); ++i) {
        const double ax = std::fabs(r.grid.nodes[i]);
        if (ax + 1e-12 < dp.r0) continue;
        const double envelope = std::exp(-dp.alpha_eps0 * ax);
        const double bound = v.bound_c * envelope;
        const double val = std::fabs(psi[i]);
        if (val > bound) v.pass = false;
        v.min_admissible_c = std::max(v.min_admissible_c, val / envelope);
        v.worst_margin = std::min(v.worst_margin, bound - val);
    }
    return v;
}

ShapeReport shape_report(const Vec& v0, const Grid& grid, const Vec& p, const DecayParams& dp) {
    ShapeReport rep;
    const int n = grid.n();
    const int c = grid.center();

    for (int i = 0, j = n - 1; i < j; ++i, --j)
        rep.even_defect = std::max(rep.even_defect, std::fabs(v0[i] - v0[j]));

    rep.monotone_tail = true;
    for (int i = std::max(dp.r0_index, c); i + 1 < n; ++i)
        if (!(v0[i + 1] < v0[i])) rep.monotone_tail = false;

    rep.harnack_gamma = 1.0;
    const int band = grid.inv_h;  // |x-y| <= 1
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - band); j <= std::min(n - 1, i + band); ++j)
            if (v0[j] > 0.0) rep.harnack_gamma = std::max(rep.harnack_gamma, v0[i] / v0[j]);

    double half_mass = 0.0;
    int k = c;
    double target = 0.5;
    while (k <= n - 1) {
        double mass = 0.0;
        const int lo = 2 * c - k;
        for (int i = lo; i <= k; ++i) mass += grid.weights[i] * v0[i] * v0[i] / p[i];
        half_mass = mass;
        if (mass >= target) break;
        ++k;
    }
    rep.r1_index = std::min(k, n - 1);
    rep.r1 = grid.nodes[rep.r1_index];
    rep.zeta1 = std::numeric_limits<double>::infinity();
    for (int i = 2 * c - rep.r1_index; i <= rep.r1_index; ++i) rep.zeta1 = std::min(rep.zeta1, v0[i]);
    (void)half_mass;
    return rep;
}

ProjectionReport compare_to_instanton_derivative(const Vec& psi1, const Vec& m_bar_prime,
                                                 const Grid& grid, const Vec& p) {
    const double npsi = weighted_norm(psi1, grid, p);
    const double nh = weighted_norm(m_bar_prime, grid, p);
    if (!(npsi > 0.0) || !(nh > 0.0)) throw std::invalid_argument("compare: zero-norm input");
    Vec a = psi1, b = m_bar_prime;
    for (double& x : a) x /= npsi;
    for (double& x : b) x /= nh;

    ProjectionReport rep;
    rep.a = weighted_inner(b, a, grid, p);
    Vec diff(a.size()), ort(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        diff[i] = a[i] - b[i];
        ort[i] = b[i] - rep.a * a[i];
    }
    rep.distance = weighted_norm(diff, grid, p);
    rep.ort_norm = weighted_norm(ort, grid, p);
    rep.pythagoras_defect = std::fabs(rep.a * rep.a + rep.ort_norm * rep.ort_norm - 1.0);
    return rep;
}

}  // namespace nls
