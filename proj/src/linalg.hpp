#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace nls {

using Vec = std::vector<double>;

// Dense row-major square-or-rectangular matrix of doubles.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Matrix identity(int n);
};

Vec matvec(const Matrix& m, const Vec& v);

// y = M v restricted to the band |i-j| <= half_band; entries outside it are
// assumed zero and never touched. Reflected boundary images of a unit-radius
// kernel always land inside the band, so this covers both boundary kinds.
Vec matvec_banded(const Matrix& m, const Vec& v, int half_band);

Matrix matmul(const Matrix& x, const Matrix& y);

double dot(const Vec& x, const Vec& y);
double norm2(const Vec& x);
double max_abs_diff(const Vec& x, const Vec& y);
double min_element(const Matrix& m);

// Dense row-major binary dump: 16-byte header ("NLSP", u32 rows, two reserved
// u32 fields), then rows*cols little-endian doubles.
void save_matrix_binary(const Matrix& m, const std::string& path);
Matrix load_matrix_binary(const std::string& path);
void save_matrix_csv(const Matrix& m, const std::string& path);

// Scientific notation with 17 significant digits; locale-independent.
std::string format_double(double x);

}  // namespace nls
