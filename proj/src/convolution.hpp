#pragma once

#include "grid.hpp"
#include "kernel.hpp"

namespace nls {

// Quadrature convolution (J *_b v)(x_i) = sum_j w_j J(x_i - x_j) v_j on the
// bounded interval. Neumann adds the two reflected images of y, which
// restores the mass lost at the boundary.
Vec convolve(const Grid& grid, const DiscreteKernel& dk, const Vec& v, BoundaryKind bc);

// Row mass b(x_i) = sum_j w_j J(x_i - x_j); lies in [1/2, 1] up to rounding.
Vec boundary_mass(const Grid& grid, const DiscreteKernel& dk);

// Whole-line convolution on a master grid: v is extended past the ends by
// the clamp values, and every node carries the full lattice weight h.
Vec convolve_whole_line(const Grid& grid, const DiscreteKernel& dk, const Vec& v,
                        double left_clamp, double right_clamp);

// Same with the kernel derivative in place of the kernel. With the
// Euler-Maclaurin endpoint correction (the integrand's second derivative
// jumps at the support edge) the result is an O(h^3) quadrature of
// (J' * v) instead of O(h^2).
Vec convolve_derivative_whole_line(const Grid& grid, const DiscreteKernel& dk, const Vec& v,
                                   double left_clamp, double right_clamp, bool endpoint_correction);

}  // namespace nls
