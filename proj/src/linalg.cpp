#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace nls {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Vec matvec(const Matrix& m, const Vec& v) {
    if (static_cast<int>(v.size()) != m.cols) throw std::invalid_argument("matvec: size mismatch");
    Vec y(m.rows, 0.0);
    for (int i = 0; i < m.rows; ++i) {
        const double* row = &m.a[static_cast<size_t>(i) * m.cols];
        double s = 0.0;
        for (int j = 0; j < m.cols; ++j) s += row[j] * v[j];
        y[i] = s;
    }
    return y;
}

Vec matvec_banded(const Matrix& m, const Vec& v, int half_band) {
    if (static_cast<int>(v.size()) != m.cols) throw std::invalid_argument("matvec_banded: size mismatch");
    const int n = m.rows;
    Vec y(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double* row = &m.a[static_cast<size_t>(i) * m.cols];
        double s = 0.0;
        const int j0 = std::max(0, i - half_band);
        const int j1 = std::min(n - 1, i + half_band);
        for (int j = j0; j <= j1; ++j) s += row[j] * v[j];
        y[i] = s;
    }
    return y;
}

Matrix matmul(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matmul: shape mismatch");
    Matrix z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i) {
        double* zi = &z.a[static_cast<size_t>(i) * z.cols];
        for (int k = 0; k < x.cols; ++k) {
            const double xik = x(i, k);
            if (xik == 0.0) continue;
            const double* yk = &y.a[static_cast<size_t>(k) * y.cols];
            for (int j = 0; j < y.cols; ++j) zi[j] += xik * yk[j];
        }
    }
    return z;
}

double dot(const Vec& x, const Vec& y) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm2(const Vec& x) { return std::sqrt(dot(x, x)); }

double max_abs_diff(const Vec& x, const Vec& y) {
    double m = 0.0;
    for (size_t i = 0; i < x.size(); ++i) m = std::max(m, std::fabs(x[i] - y[i]));
    return m;
}

double min_element(const Matrix& m) {
    double v = m.a.empty() ? 0.0 : m.a[0];
    for (double x : m.a) v = std::min(v, x);
    return v;
}

namespace {
void put_u32(std::ofstream& os, uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff), static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff), static_cast<unsigned char>((v >> 24) & 0xff)};
    os.write(reinterpret_cast<const char*>(b), 4);
}
uint32_t get_u32(std::ifstream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
           (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
}
}  // namespace

void save_matrix_binary(const Matrix& m, const std::string& path) {
    if (m.rows != m.cols) throw std::invalid_argument("save_matrix_binary: square matrices only");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os.write("NLSP", 4);
    put_u32(os, static_cast<uint32_t>(m.rows));
    put_u32(os, 0u);
    put_u32(os, 0u);
    os.write(reinterpret_cast<const char*>(m.a.data()), static_cast<std::streamsize>(m.a.size() * sizeof(double)));
    if (!os) throw std::runtime_error("write failed: " + path);
}

Matrix load_matrix_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "NLSP", 4) != 0) throw std::runtime_error("bad magic in " + path);
    const uint32_t n = get_u32(is);
    get_u32(is);
    get_u32(is);
    Matrix m(static_cast<int>(n), static_cast<int>(n));
    is.read(reinterpret_cast<char*>(m.a.data()), static_cast<std::streamsize>(m.a.size() * sizeof(double)));
    if (!is) throw std::runtime_error("truncated matrix file: " + path);
    return m;
}

void save_matrix_csv(const Matrix& m, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) {
            if (j) os << ',';
            os << format_double(m(i, j));
        }
        os << '\n';
    }
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

}  // namespace nls
