#pragma once

#include <string>

#include "spectral.hpp"

namespace nls {

// Reversible jump chain built from the principal eigenpair:
//   Q(x,y) = (p(x)/nu0) J(x,y) v0(y)/v0(x),  pi(x) = v0(x)^2 / p(x).
// q_w stores the weight-included matrix (Q_hat)_ij = Q(x_i,x_j) w_j, whose
// rows sum to one.
struct MarkovSystem {
    Matrix q_w;
    Vec pi;
    Vec weights;
    double nu0 = 1.0;
    Vec v0;
    int half_band = 0;  // support band of Q in node indices; 0 = dense
    double row_defect = 0.0;          // max |row sum - 1|
    double stationarity_defect = 0.0; // max |sum_i pi_i w_i Q_ij - pi_j w_j| (relative)
    double reversibility_defect = 0.0;
    double pi_norm_defect = 0.0;      // |sum w_i pi_i - 1|
};

MarkovSystem build_markov(const SpectralResult& spectral, const Restriction& r,
                          BoundaryKind bc = BoundaryKind::dirichlet);

// Hand-built chain for sanity checks and tests: q_w row-stochastic, pi its
// stationary density, unit weights.
MarkovSystem markov_from_matrix(const Matrix& q_row_stochastic, const Vec& pi);

// k(A) for the node-index interval A = [a, b], both endpoints inclusive.
struct IntervalConductance {
    double flow_form = 0.0;      // (1_A, Q 1_{A^c}) / pi(A) pi(A^c)
    double generator_form = 0.0; // (1_A, B 1_A) / pi(A) pi(A^c), B = I - Q
    double pi_a = 0.0;
};

IntervalConductance cheeger_of_interval(const MarkovSystem& ms, int a, int b);

struct CheegerScan {
    double k_scan = 0.0;
    int a_min = 0;
    int b_min = 0;
};

// Exhaustive minimum of k([a,b]) over intervals with pi(A) <= 1/2 (+ slack);
// complements are covered through k(A) = k(A^c). Prefix sums over the band
// make each evaluation O(band).
CheegerScan cheeger_scan(const MarkovSystem& ms);

struct CheegerConstants {
    double gamma = 0.0;   // empirical Harnack ratio from the shape report
    double zeta1 = 0.0;
    double r1 = 0.0;
    double d1 = 0.0;      // (1/nu0) beta (1 - m_bar(r0)^2)
    double D1 = 0.0;      // (1/gamma) beta (1 - m_beta^2) int_{1/2}^{1} J
    double D2 = 0.0;
    double D2_branch_pinned = 0.0;  // 2 sigma/gamma int_0^{1/2} J / (1 - d1^2)
    double D2_branch_floor = 0.0;   // (2/gamma) zeta1^2 int_0^{1/2} J
    double D2_branch_floor_alt = 0.0;  // the 4/gamma variant, logged only
    double D = 0.0;       // min(D1, D2)
    double gamma_chain = 0.0;  // chain-construction Harnack constant, logged only
    double j_tail = 0.0;  // int_{1/2}^{1} J
    double j_head = 0.0;  // int_0^{1/2} J
};

CheegerConstants theoretical_d(const Restriction& r, const ShapeReport& shape, const DecayParams& dp,
                               double nu0);

struct CheegerReport {
    double k_scan = 0.0;
    int a_min = 0, b_min = 0;
    double a_min_x = 0.0, b_min_x = 0.0;
    CheegerConstants constants;
    double mu2 = 0.0;              // spectral gap from the spectral module
    double sandwich_lower = 0.0;   // k^2/8
    double sandwich_upper = 0.0;   // k
    double lower_margin = 0.0;     // mu2 - k^2/8
    double upper_margin = 0.0;     // k - mu2
    bool sandwich_ok = false;
    bool d_below_k = false;        // k_scan >= D (reported, asserted by the gate)
};

CheegerReport make_cheeger_report(const MarkovSystem& ms, const CheegerScan& scan,
                                  const CheegerConstants& constants, double mu2, const Grid& grid);

// kappa >= 1 strengthens only the lower side, so k^2/8 <= mu2 <= k is the
// testable form. Throws with diagnostics on violation.
void lawler_sokal_check(const CheegerReport& report);

}  // namespace nls
