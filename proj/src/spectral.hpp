#pragma once

#include <optional>
#include <string>

#include "operators.hpp"

namespace nls {

struct PowerIterationResult {
    double nu = 0.0;
    Vec u;  // eigenvector in symmetric coordinates, l2-normalized
    int iterations = 0;
    double residual = 0.0;   // ||S u - nu u||_2
    double cw_spread = 0.0;  // Collatz-Wielandt ratio spread, relative
};

// Power iteration from the all-ones vector. All arithmetic on nonnegative
// entries only, so iterates stay entrywise positive even when the tail is
// 1e-100 below the peak; the reflection average keeps iterates exactly even.
PowerIterationResult principal_power_iteration(const SymmetrizedOperator& s, double value_tol = 1e-13,
                                               double residual_tol = 1e-10, int max_iterations = 500000);

struct SpectralResult {
    double nu0 = 0.0;
    Vec v0;               // H-normalized, strictly positive, even
    Vec eigenvalues;      // of A, descending
    double mu1 = 0.0;     // 1 - nu0
    double mu2 = 0.0;     // 1 - second eigenvalue of A
    double eig_residual = 0.0;
    double cw_spread = 0.0;
    int power_iterations = 0;
    bool simple = true;   // principal gap above the tie threshold
    [[nodiscard]] const Vec& psi1() const { return v0; }
};

// Principal pair by power iteration, full spectrum by tridiagonal QL; the two
// largest-eigenvalue routes must agree to 1e-10.
SpectralResult solve_spectrum(const SymmetrizedOperator& s);

// <A h, h> / <h, h> in H; with h = m' this is the certified lower bound
// for nu0 up to quadrature error.
double rayleigh_trial(const OperatorMatrix& a, const Vec& h_trial);

struct DecayParams {
    double eps0 = 0.0;
    double r0 = 0.0;          // smallest node with p < 1 - eps0 beyond it
    int r0_index = 0;         // index of +r0 in the grid
    double p_at_r0 = 0.0;
    double alpha_eps0 = 0.0;  // ln((1 - eps0/2) / p(r0))
    bool applicable = true;   // r0 <= L/2
    std::string note;
};

double default_eps0(double sigma);

// eps0 must lie in (0, (1 - sigma)/2); r0 > L/2 is reported as inapplicable.
DecayParams decay_params(const Restriction& r, double eps0);

struct DecayVerdict {
    bool applicable = true;  // hypothesis nu > 1 - eps0/2
    bool pass = false;
    double bound_c = 0.0;    // beta * ||J||_2
    double min_admissible_c = 0.0;
    double worst_margin = 0.0;  // min over tail nodes of bound - |psi|
};

// |psi(x)| <= C exp(-alpha(eps0)|x|) for |x| >= r0, C = beta*||J||_2.
DecayVerdict verify_eigen_decay(const Vec& psi, double nu, const DecayParams& dp,
                                const Restriction& r);

struct ShapeReport {
    double even_defect = 0.0;
    bool monotone_tail = false;  // strict decrease of v0 on [r0, L]
    double harnack_gamma = 0.0;  // max of v0(x)/v0(y) over |x-y| <= 1
    double r1 = 0.0;             // half-width holding half the weighted mass
    int r1_index = 0;
    double zeta1 = 0.0;          // min of v0 on [-r1, r1]
};

ShapeReport shape_report(const Vec& v0, const Grid& grid, const Vec& p, const DecayParams& dp);

struct ProjectionReport {
    double distance = 0.0;  // || psi1 - m'/||m'|| || in H
    double a = 0.0;         // <m'/||m'||, psi1>
    double ort_norm = 0.0;
    double pythagoras_defect = 0.0;  // |a^2 + ||ort||^2 - 1|
};

ProjectionReport compare_to_instanton_derivative(const Vec& psi1, const Vec& m_bar_prime,
                                                 const Grid& grid, const Vec& p);

}  // namespace nls
