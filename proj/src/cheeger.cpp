#include "cheeger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nls {

namespace {
double kernel_entry(const DiscreteKernel& dk, int n, int i, int j, BoundaryKind bc) {
    const int m = dk.m;
    double v = 0.0;
    if (std::abs(i - j) <= m) v += dk.at(i - j);
    if (bc == BoundaryKind::neumann) {
        const int right = i + j - 2 * (n - 1);
        if (right >= -m) v += dk.at(right);
        if (i + j <= m) v += dk.at(i + j);
    }
    return v;
}
}  // namespace

MarkovSystem build_markov(const SpectralResult& spectral, const Restriction& r, BoundaryKind bc) {
    const int n = r.grid.n();
    for (double v : spectral.v0)
        if (!(v > 0.0)) throw std::invalid_argument("build_markov: v0 must be strictly positive");

    MarkovSystem ms;
    ms.nu0 = spectral.nu0;
    ms.v0 = spectral.v0;
    ms.weights = r.grid.weights;
    ms.half_band = r.kernel.m;  // Neumann images stay inside the band
    ms.pi.resize(n);
    for (int i = 0; i < n; ++i) ms.pi[i] = spectral.v0[i] * spectral.v0[i] / r.p[i];

    ms.q_w = Matrix(n, n);
    for (int i = 0; i < n; ++i) {
        const int j0 = std::max(0, i - ms.half_band);
        const int j1 = std::min(n - 1, i + ms.half_band);
        for (int j = j0; j <= j1; ++j) {
            const double jv = kernel_entry(r.kernel, n, i, j, bc);
            if (jv == 0.0) continue;
            ms.q_w(i, j) = (r.p[i] / ms.nu0) * jv * (spectral.v0[j] / spectral.v0[i]) * r.grid.weights[j];
        }
    }

    // invariant defects, all relative
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = std::max(0, i - ms.half_band); j <= std::min(n - 1, i + ms.half_band); ++j)
            s += ms.q_w(i, j);
        ms.row_defect = std::max(ms.row_defect, std::fabs(s - 1.0));
    }
    double pn = 0.0;
    for (int i = 0; i < n; ++i) pn += ms.weights[i] * ms.pi[i];
    ms.pi_norm_defect = std::fabs(pn - 1.0);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = std::max(0, j - ms.half_band); i <= std::min(n - 1, j + ms.half_band); ++i)
            s += ms.pi[i] * ms.weights[i] * ms.q_w(i, j);
        const double target = ms.pi[j] * ms.weights[j];
        ms.stationarity_defect = std::max(ms.stationarity_defect, std::fabs(s / target - 1.0));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j <= std::min(n - 1, i + ms.half_band); ++j) {
            const double fij = ms.pi[i] * ms.weights[i] * ms.q_w(i, j);
            const double fji = ms.pi[j] * ms.weights[j] * ms.q_w(j, i);
            const double scale = std::max({std::fabs(fij), std::fabs(fji), 1e-300});
            ms.reversibility_defect = std::max(ms.reversibility_defect, std::fabs(fij - fji) / scale);
        }
    return ms;
}

MarkovSystem markov_from_matrix(const Matrix& q_row_stochastic, const Vec& pi) {
    if (q_row_stochastic.rows != q_row_stochastic.cols ||
        q_row_stochastic.rows != static_cast<int>(pi.size()))
        throw std::invalid_argument("markov_from_matrix: shape mismatch");
    MarkovSystem ms;
    const int n = q_row_stochastic.rows;
    ms.q_w = q_row_stochastic;
    ms.pi = pi;
    ms.weights.assign(n, 1.0);
    ms.half_band = n - 1;
    ms.v0.assign(n, 1.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += ms.q_w(i, j);
        ms.row_defect = std::max(ms.row_defect, std::fabs(s - 1.0));
    }
    return ms;
}

IntervalConductance cheeger_of_interval(const MarkovSystem& ms, int a, int b) {
    const int n = ms.q_w.rows;
    if (a < 0 || b >= n || a > b) throw std::invalid_argument("cheeger_of_interval: bad interval");
    // complement mass summed directly: near-full intervals leave a complement
    // far below the rounding of pi_total - pi_a
    double pi_a = 0.0, pi_ac = 0.0;
    for (int i = 0; i < n; ++i) {
        const double mass = ms.pi[i] * ms.weights[i];
        if (i >= a && i <= b)
            pi_a += mass;
        else
            pi_ac += mass;
    }
    if (!(pi_a > 0.0) || !(pi_ac > 0.0))
        throw std::invalid_argument("cheeger_of_interval: interval must have measure strictly inside (0,1)");

    double flow = 0.0, inner = 0.0;
    for (int i = a; i <= b; ++i) {
        const double mi = ms.pi[i] * ms.weights[i];
        const int j0 = std::max(0, i - ms.half_band);
        const int j1 = std::min(n - 1, i + ms.half_band);
        for (int j = j0; j <= j1; ++j) {
            const double f = mi * ms.q_w(i, j);
            if (j < a || j > b)
                flow += f;
            else
                inner += f;
        }
    }
    IntervalConductance out;
    out.pi_a = pi_a;
    const double denom = pi_a * pi_ac;
    out.flow_form = flow / denom;
    out.generator_form = (pi_a - inner) / denom;
    return out;
}

CheegerScan cheeger_scan(const MarkovSystem& ms) {
    // Tail intervals carry measures as small as exp(-4 alpha L); every flow
    // and measure below is a sum of positive terms only, never a difference
    // of prefix sums, so relative accuracy survives at any scale.
    const int n = ms.q_w.rows;
    const int band = std::min(ms.half_band, n - 1);

    auto cval = [&](int i, int j) { return ms.pi[i] * ms.weights[i] * ms.q_w(i, j); };

    // one-way flows across the cut between t and t+1
    Vec cross_up(n, 0.0), cross_dn(n, 0.0);  // up: i <= t < j; dn: j <= t < i
    for (int t = 0; t + 1 < n; ++t) {
        double up = 0.0, dn = 0.0;
        for (int i = std::max(0, t - band + 1); i <= t; ++i)
            for (int j = t + 1; j <= std::min(n - 1, i + band); ++j) {
                up += cval(i, j);
                dn += cval(j, i);
            }
        cross_up[t] = up;
        cross_dn[t] = dn;
    }

    Vec pi_prefix(n + 1, 0.0);
    for (int i = 0; i < n; ++i) pi_prefix[i + 1] = pi_prefix[i] + ms.pi[i] * ms.weights[i];
    const double pi_total = pi_prefix[n];

    auto pi_of = [&](int a, int b) {
        double v = pi_prefix[b + 1] - pi_prefix[a];
        if (v < 1e-6 * pi_total) {  // rebuild tiny measures without cancellation
            v = 0.0;
            for (int i = a; i <= b; ++i) v += ms.pi[i] * ms.weights[i];
        }
        return v;
    };

    CheegerScan best;
    best.k_scan = std::numeric_limits<double>::infinity();
    const double half = 0.5 * pi_total + 1e-9;

    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
            if (pi_prefix[b + 1] - pi_prefix[a] > half) break;
            const double pi_a = pi_of(a, b);
            const double pi_ac = pi_total - pi_a;
            if (!(pi_a > 0.0) || !(pi_ac > 0.0)) continue;
            double flow;
            if (b - a >= band) {
                // no pair bridges both ends; the two cut flows are exact
                flow = (a > 0 ? cross_dn[a - 1] : 0.0) + (b < n - 1 ? cross_up[b] : 0.0);
            } else {
                flow = 0.0;
                for (int i = a; i <= b; ++i) {
                    for (int j = std::max(0, i - band); j < a; ++j) flow += cval(i, j);
                    for (int j = b + 1; j <= std::min(n - 1, i + band); ++j) flow += cval(i, j);
                }
            }
            const double k = flow / (pi_a * pi_ac);
            if (k < best.k_scan) {
                best.k_scan = k;
                best.a_min = a;
                best.b_min = b;
            }
        }
    }
    if (!std::isfinite(best.k_scan)) throw std::runtime_error("cheeger_scan: no admissible interval");
    return best;
}

CheegerConstants theoretical_d(const Restriction& r, const ShapeReport& shape, const DecayParams& dp,
                               double nu0) {
    CheegerConstants c;
    c.gamma = shape.harnack_gamma;
    c.zeta1 = shape.zeta1;
    c.r1 = shape.r1;
    const double mbar_r0 = r.m_bar[dp.r0_index];
    c.d1 = (1.0 / nu0) * r.beta * (1.0 - mbar_r0 * mbar_r0);
    if (!(c.d1 < 1.0))
        throw std::runtime_error("theoretical_d: d1 >= 1; tail-contraction hypothesis fails (r0 too small?)");

    c.j_tail = kernel_integral(r.kernel_spec, 0.5, 1.0);
    c.j_head = kernel_integral(r.kernel_spec, 0.0, 0.5);
    const double sigma = r.beta * (1.0 - r.m_beta * r.m_beta);

    c.D1 = (1.0 / c.gamma) * sigma * c.j_tail;
    c.D2_branch_pinned = 2.0 * (sigma / c.gamma) * c.j_head / (1.0 - c.d1 * c.d1);
    c.D2_branch_floor = (2.0 / c.gamma) * c.zeta1 * c.zeta1 * c.j_head;
    c.D2_branch_floor_alt = 2.0 * c.D2_branch_floor;
    c.D2 = std::min(c.D2_branch_pinned, c.D2_branch_floor);
    c.D = std::min(c.D1, c.D2);
    return c;
}

CheegerReport make_cheeger_report(const MarkovSystem& ms, const CheegerScan& scan,
                                  const CheegerConstants& constants, double mu2, const Grid& grid) {
    CheegerReport rep;
    rep.k_scan = scan.k_scan;
    rep.a_min = scan.a_min;
    rep.b_min = scan.b_min;
    rep.a_min_x = grid.nodes[scan.a_min];
    rep.b_min_x = grid.nodes[scan.b_min];
    rep.constants = constants;
    rep.mu2 = mu2;
    rep.sandwich_lower = scan.k_scan * scan.k_scan / 8.0;
    rep.sandwich_upper = scan.k_scan;
    rep.lower_margin = mu2 - rep.sandwich_lower;
    rep.upper_margin = rep.sandwich_upper - mu2;
    rep.sandwich_ok = rep.lower_margin >= 0.0 && rep.upper_margin >= 0.0;
    rep.d_below_k = scan.k_scan >= constants.D;
    (void)ms;
    return rep;
}

void lawler_sokal_check(const CheegerReport& report) {
    if (report.sandwich_ok) return;
    std::ostringstream os;
    os << "Lawler-Sokal sandwich violated: k^2/8 = " << format_double(report.sandwich_lower)
       << ", gap = " << format_double(report.mu2) << ", k = " << format_double(report.sandwich_upper)
       << ", argmin interval [" << report.a_min_x << ", " << report.b_min_x << "]";
    throw std::runtime_error(os.str());
}

}  // namespace nls
