#pragma once

#include <string>

#include "convolution.hpp"
#include "grid.hpp"
#include "kernel.hpp"

namespace nls {

// Positive root of m = tanh(beta*m), beta > 1, to 1e-12.
double solve_mbeta(double beta);

struct DecayFit {
    double alpha = 0.0;       // decay rate of m_beta^2 - m^2
    double prefactor = 0.0;   // multiplier c in c*exp(-alpha x)
    double r_squared = 0.0;
    double alpha_prime = 0.0;      // secondary fit on log m'
    double r_squared_prime = 0.0;
    bool reliable = false;         // r_squared >= 0.99
    double window_lo = 0.0, window_hi = 0.0;
};

// The monotone antisymmetric connection between -m_beta and +m_beta, sampled
// on a master grid wide enough that the clamped ends are below tolerance.
struct InstantonProfile {
    double beta = 0.0;
    double m_beta = 0.0;
    double sigma = 0.0;  // beta*(1 - m_beta^2), the limit of p at infinity
    Grid grid;
    DiscreteKernel kernel;
    KernelSpec kernel_spec;
    Vec m_bar;
    Vec m_bar_prime;
    Vec p;  // beta*(1 - m_bar^2)
    DecayFit fit;
    double residual = 0.0;  // sup |m - tanh(beta (J*m))| at convergence
    int iterations = 0;
};

struct InstantonOptions {
    // Iteration stops at sup-norm updates below tol, or earlier at the
    // floating-point stall; either way the final residual is checked.
    double tol = 1e-15;
    int max_iterations = 50000;
    // Endpoint-corrected quadrature for the derivative (see convolution.hpp).
    bool derivative_endpoint_correction = true;
};

InstantonProfile solve_instanton(double beta, const KernelSpec& kernel, const Grid& master_grid,
                                 const InstantonOptions& opts = {});

// m'(x) = beta*(1 - m^2(x)) * (J' * m)(x): the derivative of the fixed-point
// relation evaluated with the kernel's derivative.
Vec instanton_derivative(const InstantonProfile& profile, bool endpoint_correction = true);

DecayFit fit_decay_rate(const InstantonProfile& profile);

// Samples of the master profile on a centred subgrid of half-length L.
struct Restriction {
    double beta = 0.0;
    double m_beta = 0.0;
    double sigma = 0.0;
    double alpha_fit = 0.0;
    Grid grid;
    DiscreteKernel kernel;
    KernelSpec kernel_spec;
    Vec m_bar;
    Vec m_bar_prime;
    Vec p;
};

Restriction restrict_to(const InstantonProfile& profile, const Grid& sub);

// CSV with columns x, m_bar, m_bar_prime, p.
void write_profile_csv(const Restriction& r, const std::string& path);

}  // namespace nls
