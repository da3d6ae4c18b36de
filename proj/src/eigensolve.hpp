#pragma once

#include "linalg.hpp"

namespace nls {

// Householder reduction of a symmetric matrix to tridiagonal form
// (diagonal d, subdiagonal e with e[0] unused). The input matrix is
// destroyed. Eigenvalues only; no transformation accumulation.
void householder_tridiag(Matrix& s, Vec& d, Vec& e);

// Implicit-shift QL on a tridiagonal; returns eigenvalues unordered in d.
// Throws on per-index iteration-cap exhaustion.
void tridiag_ql(Vec& d, Vec& e);

// All eigenvalues of a symmetric matrix, sorted descending.
Vec symmetric_eigenvalues(Matrix s);

}  // namespace nls
