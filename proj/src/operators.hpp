#pragma once

#include "instanton.hpp"
#include "linalg.hpp"

namespace nls {

enum class OperatorKind { a, l0, b };

// Dense Nystrom discretization of the integral operator, self-adjoint in the
// inner product <u,v> = sum_i w_i u_i v_i / p_i.
struct OperatorMatrix {
    Matrix entries;
    Grid grid;
    Vec p;
    OperatorKind kind = OperatorKind::a;
    BoundaryKind bc = BoundaryKind::dirichlet;
    DiscreteKernel kernel;
};

// kind a:  A_ij = p(x_i) w_j J(x_i - x_j)   (plus reflected images if Neumann)
// kind l0: I - A
// kind b:  the whole-line operator realized on the master grid; boundary
//          truncation only matters at exp(-alpha L) scale, so it is assembled
//          like Dirichlet A. Exists for the m' residual check.
OperatorMatrix assemble(OperatorKind kind, const Restriction& r, BoundaryKind bc);

double weighted_inner(const Vec& u, const Vec& v, const Grid& grid, const Vec& p);
double weighted_norm(const Vec& u, const Grid& grid, const Vec& p);

struct SymmetrizedOperator {
    Matrix sym_entries;
    Vec d_half;  // sqrt(w_i / p_i); u = d_half .* g maps H to plain l2
    Grid grid;
    Vec p;
    OperatorKind kind = OperatorKind::a;
    BoundaryKind bc = BoundaryKind::dirichlet;
    int half_band = 0;  // |i-j| band of nonzeros; reflected images stay inside it
};

// S = D^{1/2} A D^{-1/2} with D = diag(w_i/p_i); exact symmetry is enforced
// by (S + S^T)/2 afterwards.
SymmetrizedOperator symmetrize(const OperatorMatrix& op);

Vec to_symmetric_coords(const SymmetrizedOperator& s, const Vec& g);
Vec from_symmetric_coords(const SymmetrizedOperator& s, const Vec& u);

struct ChainPositivityReport {
    int n_l = 0;      // smallest iteration count with a strictly positive kernel
    double zeta = 0.0;  // minimum entry of the p-weighted chain at n_l
    double zeta_plain = 0.0;  // minimum entry of the p-free chain at n_l
};

// Discrete n-fold chain kernels J(x,x1)...J(xn,y) built by repeated banded
// products of [w_j J(x_i - x_j)]; n counts intermediate integration points.
ChainPositivityReport chain_positivity(const DiscreteKernel& dk, const Grid& grid, const Vec& p);

}  // namespace nls
