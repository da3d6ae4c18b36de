#include "eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nls {

namespace {
double pythag(double a, double b) {
    const double absa = std::fabs(a), absb = std::fabs(b);
    if (absa > absb) {
        const double r = absb / absa;
        return absa * std::sqrt(1.0 + r * r);
    }
    if (absb == 0.0) return 0.0;
    const double r = absa / absb;
    return absb * std::sqrt(1.0 + r * r);
}
}  // namespace

void householder_tridiag(Matrix& s, Vec& d, Vec& e) {
    const int n = s.rows;
    if (n != s.cols) throw std::invalid_argument("householder_tridiag: square matrix required");
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    if (n == 1) {
        d[0] = s(0, 0);
        return;
    }

    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::fabs(s(i, k));
            if (scale == 0.0) {
                e[i] = s(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    s(i, k) /= scale;
                    h += s(i, k) * s(i, k);
                }
                double f = s(i, l);
                double g = (f >= 0.0 ? -std::sqrt(h) : std::sqrt(h));
                e[i] = scale * g;
                h -= f * g;
                s(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += s(j, k) * s(i, k);
                    for (int k = j + 1; k <= l; ++k) g += s(k, j) * s(i, k);
                    e[j] = g / h;
                    f += e[j] * s(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = s(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k) s(j, k) -= f * e[k] + g * s(i, k);
                }
            }
        } else {
            e[i] = s(i, l);
        }
        d[i] = h;
    }
    for (int i = 0; i < n; ++i) d[i] = s(i, i);
}

void tridiag_ql(Vec& d, Vec& e) {
    const int n = static_cast<int>(d.size());
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= 1e-300 || std::fabs(e[m]) + dd == dd) break;
            }
            if (m != l) {
                if (iter++ == 50)
                    throw std::runtime_error("tridiag_ql: no convergence at index " + std::to_string(l));
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = pythag(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::fabs(r) : -std::fabs(r)));
                double si = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = si * e[i];
                    const double b = c * e[i];
                    e[i + 1] = (r = pythag(f, g));
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    si = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * si + 2.0 * c * b;
                    d[i + 1] = g + (p = si * r);
                    g = c * r - b;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

Vec symmetric_eigenvalues(Matrix s) {
    Vec d, e;
    householder_tridiag(s, d, e);
    tridiag_ql(d, e);
    std::sort(d.begin(), d.end(), std::greater<double>());
    return d;
}

}  // namespace nls
