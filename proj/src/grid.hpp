#pragma once

#include "linalg.hpp"

namespace nls {

// Uniform nodes on [-L, L] with composite-trapezoid weights. The spacing h
// always divides 1 exactly (inv_h = 1/h is an integer), so a unit-radius
// kernel support spans a whole number of cells.
struct Grid {
    double half_length = 0.0;  // L
    int inv_h = 0;
    double h = 0.0;
    Vec nodes;
    Vec weights;

    [[nodiscard]] int n() const { return static_cast<int>(nodes.size()); }
    [[nodiscard]] double node(int i) const { return nodes[i]; }
    // Index of x = 0; the grid is symmetric about it.
    [[nodiscard]] int center() const { return (n() - 1) / 2; }
};

// L >= 1, inv_h >= 2, and L*inv_h must be an integer.
Grid build_grid(double half_length, int inv_h);

enum class BoundaryKind { dirichlet, neumann };

}  // namespace nls
