#pragma once

#include <functional>
#include <string>

#include "grid.hpp"
#include "linalg.hpp"

namespace nls {

// Even probability density supported on [-1, 1], C^1 on the line (value and
// first derivative vanish at the support edge).
struct KernelSpec {
    std::function<double(double)> profile;
    std::function<double(double)> derivative;
    // One-sided second derivative at z = 1 (inside the support), used for the
    // Euler-Maclaurin endpoint correction of derivative convolutions.
    double d2_at_edge = 0.0;
    std::string name;
};

// Quartic bump (15/16)(1-z^2)^2.
KernelSpec standard_kernel();

// Piecewise-linear profile from a two-column table (z, J(z)). Extension
// point for user-supplied kernels; the derivative is the piecewise slope.
KernelSpec kernel_from_table(const Vec& z, const Vec& j);
KernelSpec load_kernel_table(const std::string& path);

// Named-kernel registry; "quartic" is pre-registered. register_kernel
// validates the spec at inv_h = 512 before accepting it.
void register_kernel(const std::string& name, const KernelSpec& spec);
KernelSpec kernel_by_name(const std::string& name);

// Checks evenness, nonnegativity, vanishing at the edge and unit mass of the
// sampled profile. Throws std::invalid_argument on violation.
void validate_kernel(const KernelSpec& spec, int inv_h);

// Kernel sampled at node offsets k*h, k = -inv_h..inv_h, scaled by a single
// constant so the lattice mass h*sum_k J(kh) is exactly 1. That keeps
// Neumann row sums and whole-line convolutions of constants exact.
struct DiscreteKernel {
    int m = 0;  // = inv_h; support half-width in cells
    double h = 0.0;
    Vec j;            // size 2m+1, j[k+m] = c * profile(kh)
    Vec jprime;       // size 2m+1, c * derivative(kh)
    double norm_c = 1.0;
    double raw_mass = 0.0;  // lattice mass of the unscaled profile
    double d2_edge = 0.0;   // c * spec.d2_at_edge

    [[nodiscard]] double at(int k) const { return j[k + m]; }
    [[nodiscard]] double deriv_at(int k) const { return jprime[k + m]; }
};

DiscreteKernel discretize(const KernelSpec& spec, int inv_h);

// High-resolution composite Simpson integral of the (continuum) profile over
// [a, b] in [-1, 1]; used for theoretical constants, not for operators.
double kernel_integral(const KernelSpec& spec, double a, double b);
double kernel_l2_norm(const KernelSpec& spec);

// Lattice L2 norm and sup of the sampled kernel.
double l2_norm(const DiscreteKernel& dk);
double sup_norm(const DiscreteKernel& dk);

}  // namespace nls
