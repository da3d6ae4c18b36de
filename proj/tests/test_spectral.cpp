#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "instanton.hpp"
#include "operators.hpp"
#include "oracles.hpp"
#include "spectral.hpp"

using namespace nls;

namespace {

InstantonProfile& profile20() {
    static InstantonProfile prof = solve_instanton(2.0, standard_kernel(), build_grid(30.0, 20));
    return prof;
}

struct Solved {
    Restriction r;
    OperatorMatrix a;
    SymmetrizedOperator s;
    SpectralResult sr;
    DecayParams dp;
};

Solved solve_at(double l, BoundaryKind bc = BoundaryKind::dirichlet) {
    Solved out;
    out.r = restrict_to(profile20(), build_grid(l, 20));
    out.a = assemble(OperatorKind::a, out.r, bc);
    out.s = symmetrize(out.a);
    out.sr = solve_spectrum(out.s);
    out.dp = decay_params(out.r, default_eps0(out.r.sigma));
    return out;
}

}  // namespace

TEST_CASE("power iteration on a hand eigenproblem") {
    SymmetrizedOperator s;
    s.sym_entries = Matrix(2, 2);
    s.sym_entries(0, 0) = 2;
    s.sym_entries(0, 1) = 1;
    s.sym_entries(1, 0) = 1;
    s.sym_entries(1, 1) = 2;
    s.d_half = {1.0, 1.0};
    s.grid.nodes = {-1.0, 1.0};
    s.grid.weights = {1.0, 1.0};
    s.half_band = 1;
    PowerIterationResult pr = principal_power_iteration(s);
    CHECK(pr.nu == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(pr.u[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
    CHECK(pr.u[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("principal pair at beta 2: positivity, evenness, normalization") {
    Solved s = solve_at(10.0);
    const int n = s.r.grid.n();
    const int c = s.r.grid.center();

    for (double v : s.sr.v0) CHECK(v > 0.0);
    CHECK(s.sr.v0[c] > 0.0);
    double even_defect = 0;
    for (int i = 0; i < n; ++i) even_defect = std::max(even_defect, std::fabs(s.sr.v0[i] - s.sr.v0[n - 1 - i]));
    CHECK(even_defect < 1e-8);
    CHECK(std::fabs(weighted_norm(s.sr.v0, s.r.grid, s.r.p) - 1.0) < 1e-10);

    // residual of the eigenrelation in symmetric coordinates
    Vec u = to_symmetric_coords(s.s, s.sr.v0);
    Vec su = matvec(s.s.sym_entries, u);
    double resid = 0;
    for (int i = 0; i < n; ++i) resid = std::max(resid, std::fabs(su[i] - s.sr.nu0 * u[i]));
    CHECK(resid < 1e-10);

    // the computed nu0 sits at 1 up to the rounding floor of the assembly
    CHECK(s.sr.nu0 < 1.0 + 5e-12);
    CHECK(s.sr.nu0 > 1.0 - 1e-6);
    CHECK(s.sr.simple);
    CHECK(s.sr.mu2 > 1e-3);  // the gap is far from the tie threshold
}

TEST_CASE("two eigenvalue routes agree and the spectrum is descending") {
    Solved s = solve_at(5.0);
    CHECK(std::fabs(s.sr.eigenvalues[0] - s.sr.nu0) < 1e-10);
    for (size_t k = 1; k < s.sr.eigenvalues.size(); ++k)
        CHECK(s.sr.eigenvalues[k] <= s.sr.eigenvalues[k - 1] + 1e-14);
    double trace = 0, sum = 0;
    for (int i = 0; i < s.s.sym_entries.rows; ++i) trace += s.s.sym_entries(i, i);
    for (double v : s.sr.eigenvalues) sum += v;
    CHECK(std::fabs(trace - sum) <= 1e-9 * std::max(1.0, std::fabs(trace)));
}

TEST_CASE("variational lower bound from the profile derivative") {
    Solved s = solve_at(10.0);
    const double trial = rayleigh_trial(s.a, s.r.m_bar_prime);
    CHECK(trial <= s.sr.nu0 + 1e-13);
    CHECK(1.0 - trial < 1e-3);

    // with the eigenfunction itself the quotient is the eigenvalue
    const double self = rayleigh_trial(s.a, s.sr.v0);
    CHECK(std::fabs(self - s.sr.nu0) < 1e-12);

    Vec zero(s.r.grid.n(), 0.0);
    CHECK_THROWS_AS(rayleigh_trial(s.a, zero), std::invalid_argument);
}

TEST_CASE("trial bound does not degrade as the interval grows") {
    const double t5 = rayleigh_trial(solve_at(5.0).a, restrict_to(profile20(), build_grid(5.0, 20)).m_bar_prime);
    const double t15 =
        rayleigh_trial(solve_at(15.0).a, restrict_to(profile20(), build_grid(15.0, 20)).m_bar_prime);
    // the boundary deficit shrinks with L; allow the rounding floor
    CHECK(t15 >= t5 - 1e-12);
}

TEST_CASE("decay parameters") {
    Restriction r = restrict_to(profile20(), build_grid(10.0, 20));
    const double eps0 = default_eps0(r.sigma);

    DecayParams dp = decay_params(r, eps0);
    CHECK(dp.applicable);
    CHECK(dp.r0 > 0.0);
    CHECK(dp.r0 <= 5.0);
    CHECK(dp.p_at_r0 < 1.0 - eps0);
    CHECK(dp.alpha_eps0 > 0.0);
    CHECK(dp.alpha_eps0 ==
          doctest::Approx(std::log((1.0 - 0.5 * eps0) / dp.p_at_r0)).epsilon(1e-14));

    // tiny cutoff: r0 becomes the first node where p dips below 1
    DecayParams dp_small = decay_params(r, 1e-8);
    int expected = r.grid.n();
    for (int i = r.grid.n() - 1; i >= r.grid.center(); --i) {
        if (r.p[i] < 1.0 - 1e-8)
            expected = i;
        else
            break;
    }
    CHECK(dp_small.r0_index == expected);

    CHECK_THROWS_AS(decay_params(r, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(decay_params(r, 0.5 * (1.0 - r.sigma)), std::invalid_argument);
}

TEST_CASE("decay parameters on synthetic coefficient fields") {
    Restriction r = restrict_to(profile20(), build_grid(4.0, 20));
    const double eps0 = default_eps0(r.sigma);

    // constant p = sigma: the condition holds everywhere, r0 = 0
    Restriction flat = r;
    for (auto& v : flat.p) v = flat.sigma;
    DecayParams dp = decay_params(flat, eps0);
    CHECK(dp.r0 == 0.0);
    CHECK(dp.applicable);

    // plateau of large p out to 0.8 L: r0 lands beyond L/2, inapplicable
    Restriction plateau = r;
    for (int i = 0; i < plateau.grid.n(); ++i)
        plateau.p[i] = std::fabs(plateau.grid.nodes[i]) <= 0.8 * 4.0 ? plateau.beta : plateau.sigma;
    DecayParams dp2 = decay_params(plateau, eps0);
    CHECK_FALSE(dp2.applicable);
}

TEST_CASE("eigenfunction decay envelope") {
    Solved s = solve_at(10.0);
    Restriction& r = s.r;

    DecayVerdict dv = verify_eigen_decay(s.sr.v0, s.sr.nu0, s.dp, r);
    CHECK(dv.applicable);
    CHECK(dv.pass);
    CHECK(dv.bound_c == doctest::Approx(r.beta * l2_norm(r.kernel)).epsilon(1e-12));
    CHECK(dv.min_admissible_c <= dv.bound_c);

    // faster synthetic decay passes with margin
    Vec fast(r.grid.n());
    for (int i = 0; i < r.grid.n(); ++i)
        fast[i] = std::exp(-2.0 * s.dp.alpha_eps0 * std::fabs(r.grid.nodes[i]));
    DecayVerdict dv_fast = verify_eigen_decay(fast, s.sr.nu0, s.dp, r);
    CHECK(dv_fast.pass);
    CHECK(dv_fast.worst_margin > 0.0);

    // a flat function violates the envelope far out
    Vec flat(r.grid.n(), 1.0);
    DecayVerdict dv_flat = verify_eigen_decay(flat, s.sr.nu0, s.dp, r);
    CHECK_FALSE(dv_flat.pass);

    // hypothesis nu > 1 - eps0/2 gates applicability
    DecayVerdict dv_na = verify_eigen_decay(s.sr.v0, 0.5, s.dp, r);
    CHECK_FALSE(dv_na.applicable);
}

TEST_CASE("shape report") {
    Solved s = solve_at(10.0);
    ShapeReport rep = shape_report(s.sr.v0, s.r.grid, s.r.p, s.dp);

    CHECK(rep.even_defect < 1e-8);
    CHECK(rep.monotone_tail);
    CHECK(rep.harnack_gamma >= 1.0);
    CHECK(std::isfinite(rep.harnack_gamma));
    CHECK(rep.zeta1 > 0.0);
    CHECK(rep.r1 > 0.0);

    // r1 is the smallest symmetric interval holding half the weighted mass
    auto mass_within = [&](int k) {
        double m = 0;
        for (int i = 2 * s.r.grid.center() - k; i <= k; ++i)
            m += s.r.grid.weights[i] * s.sr.v0[i] * s.sr.v0[i] / s.r.p[i];
        return m;
    };
    CHECK(mass_within(rep.r1_index) >= 0.5);
    if (rep.r1_index > s.r.grid.center()) CHECK(mass_within(rep.r1_index - 1) < 0.5);

    // lower Harnack ratio bound: both directions stay within [1/gamma, gamma]
    const int band = s.r.grid.inv_h;
    for (int i = 0; i < s.r.grid.n(); i += 7)
        for (int j = std::max(0, i - band); j <= std::min(s.r.grid.n() - 1, i + band); j += 3) {
            const double ratio = s.sr.v0[i] / s.sr.v0[j];
            CHECK(ratio <= rep.harnack_gamma * (1 + 1e-12));
            CHECK(ratio >= 1.0 / rep.harnack_gamma * (1 - 1e-12));
        }
}

TEST_CASE("tail contraction bound from the eigenrelation") {
    Solved s = solve_at(10.0);
    const int n = s.r.grid.n();
    for (int i = 0; i < n; ++i) {
        const double x = s.r.grid.nodes[i];
        if (std::fabs(x) < s.dp.r0 || i + s.r.grid.inv_h >= n) continue;
        const int j = i + s.r.grid.inv_h;  // x + 1
        const double bound = (1.0 / s.sr.nu0) * s.r.beta * (1.0 - s.r.m_bar[j] * s.r.m_bar[j]);
        if (x >= s.dp.r0) {
            CHECK(s.sr.v0[j] / s.sr.v0[i] <= bound);
            CHECK(bound < 1.0);
        }
    }
}

TEST_CASE("projection onto the profile derivative") {
    Solved s = solve_at(10.0);
    ProjectionReport pr =
        compare_to_instanton_derivative(s.sr.v0, s.r.m_bar_prime, s.r.grid, s.r.p);
    CHECK(pr.distance < 1e-5);  // quadrature floor, flat in L
    CHECK(pr.a == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(pr.pythagoras_defect < 1e-10);

    // identical inputs: distance zero, full projection
    ProjectionReport self = compare_to_instanton_derivative(s.sr.v0, s.sr.v0, s.r.grid, s.r.p);
    CHECK(self.distance < 1e-12);
    CHECK(self.a == doctest::Approx(1.0).epsilon(1e-12));

    // orthogonal inputs: Pythagoras gives sqrt(2)
    Vec odd(s.r.grid.n());
    for (int i = 0; i < s.r.grid.n(); ++i) odd[i] = s.r.grid.nodes[i] * s.sr.v0[i];
    ProjectionReport orth = compare_to_instanton_derivative(s.sr.v0, odd, s.r.grid, s.r.p);
    CHECK(std::fabs(orth.a) < 1e-10);
    CHECK(orth.distance == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

    Vec zero(s.r.grid.n(), 0.0);
    CHECK_THROWS_AS(compare_to_instanton_derivative(s.sr.v0, zero, s.r.grid, s.r.p),
                    std::invalid_argument);
}

TEST_CASE("distance to the derivative is stable across interval lengths") {
    Solved s7 = solve_at(7.0);
    Solved s15 = solve_at(15.0);
    const double d7 =
        compare_to_instanton_derivative(s7.sr.v0, s7.r.m_bar_prime, s7.r.grid, s7.r.p).distance;
    const double d15 =
        compare_to_instanton_derivative(s15.sr.v0, s15.r.m_bar_prime, s15.r.grid, s15.r.p).distance;
    // the true gap shrinks exponentially in L; at this resolution both sit on
    // the same quadrature floor, so growing L must not increase the distance
    CHECK(d15 <= d7 + 1e-12);
}

TEST_CASE("neumann principal eigenvalue sits at or above one") {
    Solved s = solve_at(10.0, BoundaryKind::neumann);
    CHECK(s.sr.nu0 >= 1.0 - 1e-8);
    for (double v : s.sr.v0) CHECK(v > 0.0);
}
