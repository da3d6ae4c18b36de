#include "grid.hpp"

#include <cmath>
#include <stdexcept>

namespace nls {

Grid build_grid(double half_length, int inv_h) {
    if (!(half_length >= 1.0)) throw std::invalid_argument("build_grid: half-length must be >= 1");
    if (inv_h < 2) throw std::invalid_argument("build_grid: inv_h must be >= 2");
    const double cells_f = half_length * inv_h;
    const long long cells = std::llround(cells_f);
    if (std::fabs(cells_f - static_cast<double>(cells)) > 1e-9)
        throw std::invalid_argument("build_grid: L*inv_h must be an integer");
    if (cells > (1LL << 24)) throw std::invalid_argument("build_grid: grid too large");

    Grid g;
    g.half_length = half_length;
    g.inv_h = inv_h;
    g.h = 1.0 / inv_h;
    const int n = static_cast<int>(2 * cells) + 1;
    g.nodes.resize(n);
    g.weights.assign(n, g.h);
    for (int i = 0; i < n; ++i) g.nodes[i] = (static_cast<double>(i) - static_cast<double>(cells)) * g.h;
    g.weights.front() = 0.5 * g.h;
    g.weights.back() = 0.5 * g.h;
    return g;
}

}  // namespace nls
