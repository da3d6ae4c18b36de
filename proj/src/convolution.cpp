#include "convolution.hpp"

#include <algorithm>
#include <stdexcept>

namespace nls {

namespace {
void check_sizes(const Grid& grid, const DiscreteKernel& dk, const Vec& v) {
    if (static_cast<int>(v.size()) != grid.n()) throw std::invalid_argument("convolve: v has wrong length");
    if (dk.m != grid.inv_h) throw std::invalid_argument("convolve: kernel sampled at a different resolution");
}

inline double padded(const Vec& v, int i, int n, double lc, double rc) {
    if (i < 0) return lc;
    if (i >= n) return rc;
    return v[i];
}
}  // namespace

Vec convolve(const Grid& grid, const DiscreteKernel& dk, const Vec& v, BoundaryKind bc) {
    check_sizes(grid, dk, v);
    const int n = grid.n();
    const int m = dk.m;
    Vec out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const int j0 = std::max(0, i - m);
        const int j1 = std::min(n - 1, i + m);
        double s = 0.0;
        for (int j = j0; j <= j1; ++j) s += grid.weights[j] * dk.at(i - j) * v[j];
        if (bc == BoundaryKind::neumann) {
            // right image 2L - y: offset x_i - (2L - x_j) = (i + j - 2(n-1)) h
            for (int j = std::max(0, 2 * (n - 1) - m - i); j < n; ++j)
                s += grid.weights[j] * dk.at(i + j - 2 * (n - 1)) * v[j];
            // left image -2L - y: offset x_i - (-2L - x_j) = (i + j) h
            for (int j = 0; j <= std::min(n - 1, m - i); ++j)
                s += grid.weights[j] * dk.at(i + j) * v[j];
        }
        out[i] = s;
    }
    return out;
}

Vec boundary_mass(const Grid& grid, const DiscreteKernel& dk) {
    Vec ones(grid.n(), 1.0);
    return convolve(grid, dk, ones, BoundaryKind::dirichlet);
}

Vec convolve_whole_line(const Grid& grid, const DiscreteKernel& dk, const Vec& v,
                        double left_clamp, double right_clamp) {
    check_sizes(grid, dk, v);
    const int n = grid.n();
    const int m = dk.m;
    Vec out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = -m; k <= m; ++k)
            s += dk.h * dk.at(k) * padded(v, i - k, n, left_clamp, right_clamp);
        out[i] = s;
    }
    return out;
}

Vec convolve_derivative_whole_line(const Grid& grid, const DiscreteKernel& dk, const Vec& v,
                                   double left_clamp, double right_clamp, bool endpoint_correction) {
    check_sizes(grid, dk, v);
    const int n = grid.n();
    const int m = dk.m;
    Vec out(n, 0.0);
    const double corr = endpoint_correction ? (dk.h * dk.h / 12.0) * dk.d2_edge : 0.0;
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        // J' is odd; fold the sum so each term pairs m(x-kh) against m(x+kh).
        for (int k = 1; k <= m; ++k)
            s += dk.h * dk.deriv_at(k) *
                 (padded(v, i - k, n, left_clamp, right_clamp) - padded(v, i + k, n, left_clamp, right_clamp));
        if (corr != 0.0)
            s -= corr * (padded(v, i - m, n, left_clamp, right_clamp) - padded(v, i + m, n, left_clamp, right_clamp));
        out[i] = s;
    }
    return out;
}

}  // namespace nls
