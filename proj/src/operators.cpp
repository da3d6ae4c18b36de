#include "operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nls {

namespace {
// Kernel value including Neumann images, as a function of node indices.
double kernel_entry(const DiscreteKernel& dk, const Grid& grid, int i, int j, BoundaryKind bc) {
    const int n = grid.n();
    const int m = dk.m;
    double v = 0.0;
    if (std::abs(i - j) <= m) v += dk.at(i - j);
    if (bc == BoundaryKind::neumann) {
        const int right = i + j - 2 * (n - 1);
        if (right >= -m) v += dk.at(right);
        const int left = i + j;
        if (left <= m) v += dk.at(left);
    }
    return v;
}
}  // namespace

OperatorMatrix assemble(OperatorKind kind, const Restriction& r, BoundaryKind bc) {
    const int n = r.grid.n();
    for (double pv : r.p)
        if (!(pv > 0.0)) throw std::invalid_argument("assemble: p must be strictly positive");
    if (kind == OperatorKind::b && bc != BoundaryKind::dirichlet)
        throw std::invalid_argument("assemble: the whole-line operator has no Neumann variant");

    OperatorMatrix op;
    op.grid = r.grid;
    op.p = r.p;
    op.kind = kind;
    op.bc = bc;
    op.kernel = r.kernel;
    op.entries = Matrix(n, n);
    const BoundaryKind eff_bc = (kind == OperatorKind::b) ? BoundaryKind::dirichlet : bc;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double jv = kernel_entry(r.kernel, r.grid, i, j, eff_bc);
            if (jv == 0.0) continue;
            op.entries(i, j) = r.p[i] * r.grid.weights[j] * jv;
        }
    if (kind == OperatorKind::l0) {
        for (auto& x : op.entries.a) x = -x;
        for (int i = 0; i < n; ++i) op.entries(i, i) += 1.0;
    }
    return op;
}

double weighted_inner(const Vec& u, const Vec& v, const Grid& grid, const Vec& p) {
    if (u.size() != v.size() || static_cast<int>(u.size()) != grid.n() || u.size() != p.size())
        throw std::invalid_argument("weighted_inner: length mismatch");
    double s = 0.0;
    for (size_t i = 0; i < u.size(); ++i) s += grid.weights[i] * u[i] * v[i] / p[i];
    return s;
}

double weighted_norm(const Vec& u, const Grid& grid, const Vec& p) {
    return std::sqrt(weighted_inner(u, u, grid, p));
}

SymmetrizedOperator symmetrize(const OperatorMatrix& op) {
    if (op.kind == OperatorKind::b) throw std::invalid_argument("symmetrize: kind a or l0 only");
    const int n = op.grid.n();
    SymmetrizedOperator s;
    s.grid = op.grid;
    s.p = op.p;
    s.kind = op.kind;
    s.bc = op.bc;
    s.half_band = op.kernel.m;
    s.d_half.resize(n);
    for (int i = 0; i < n; ++i) s.d_half[i] = std::sqrt(op.grid.weights[i] / op.p[i]);
    s.sym_entries = Matrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s.sym_entries(i, j) = op.entries(i, j) * s.d_half[i] / s.d_half[j];
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (s.sym_entries(i, j) + s.sym_entries(j, i));
            s.sym_entries(i, j) = avg;
            s.sym_entries(j, i) = avg;
        }
    return s;
}

Vec to_symmetric_coords(const SymmetrizedOperator& s, const Vec& g) {
    Vec u(g.size());
    for (size_t i = 0; i < g.size(); ++i) u[i] = s.d_half[i] * g[i];
    return u;
}

Vec from_symmetric_coords(const SymmetrizedOperator& s, const Vec& u) {
    Vec g(u.size());
    for (size_t i = 0; i < u.size(); ++i) g[i] = u[i] / s.d_half[i];
    return g;
}

ChainPositivityReport chain_positivity(const DiscreteKernel& dk, const Grid& grid, const Vec& p) {
    const int n = grid.n();
    if (static_cast<int>(p.size()) != n) throw std::invalid_argument("chain_positivity: p length mismatch");
    const int cap = static_cast<int>(4.0 * grid.half_length) + 4;

    // base kernels: K0_ij = J(x_i-x_j), step matrices carry quadrature weights
    Matrix base(n, n), step_plain(n, n), step_weighted(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - dk.m); j <= std::min(n - 1, i + dk.m); ++j) {
            const double jv = dk.at(i - j);
            base(i, j) = jv;
            step_plain(i, j) = grid.weights[j] * jv;
            step_weighted(i, j) = grid.weights[j] * p[j] * jv;
        }

    Matrix chain_plain = base, chain_weighted = base;
    for (int iter = 1; iter <= cap; ++iter) {
        // one more intermediate integration point
        chain_plain = matmul(chain_plain, step_plain);
        chain_weighted = matmul(chain_weighted, step_weighted);
        const double mn_plain = min_element(chain_plain);
        if (mn_plain > 0.0) {
            ChainPositivityReport rep;
            rep.n_l = iter;
            rep.zeta_plain = mn_plain;
            // displayed arrangement: leading p(x) on the weighted chain
            double mn_w = std::numeric_limits<double>::infinity();
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) mn_w = std::min(mn_w, p[i] * chain_weighted(i, j));
            rep.zeta = mn_w;
            if (!(rep.zeta > 0.0))
                throw std::runtime_error("chain_positivity: weighted and plain chains disagree on positivity");
            return rep;
        }
    }
    throw std::runtime_error("chain_positivity: no strictly positive power up to n = " + std::to_string(cap) +
                             "; grid and kernel are inconsistent");
}

}  // namespace nls
