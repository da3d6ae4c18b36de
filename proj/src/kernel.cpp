#include "kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace nls {

KernelSpec standard_kernel() {
    KernelSpec k;
    k.profile = [](double z) {
        if (std::fabs(z) >= 1.0) return 0.0;
        const double u = 1.0 - z * z;
        return (15.0 / 16.0) * u * u;
    };
    k.derivative = [](double z) {
        if (std::fabs(z) >= 1.0) return 0.0;
        return -(15.0 / 4.0) * z * (1.0 - z * z);
    };
    k.d2_at_edge = 15.0 / 2.0;
    k.name = "quartic";
    return k;
}

KernelSpec kernel_from_table(const Vec& z, const Vec& j) {
    if (z.size() != j.size() || z.size() < 3) throw std::invalid_argument("kernel table: need matching columns, >= 3 rows");
    for (size_t i = 1; i < z.size(); ++i)
        if (!(z[i] > z[i - 1])) throw std::invalid_argument("kernel table: z must be strictly increasing");
    auto zs = std::make_shared<Vec>(z);
    auto js = std::make_shared<Vec>(j);
    KernelSpec k;
    k.profile = [zs, js](double x) {
        const Vec& zz = *zs;
        const Vec& jj = *js;
        if (x <= zz.front() || x >= zz.back()) return 0.0;
        auto it = std::upper_bound(zz.begin(), zz.end(), x);
        const size_t hi = static_cast<size_t>(it - zz.begin());
        const size_t lo = hi - 1;
        const double t = (x - zz[lo]) / (zz[hi] - zz[lo]);
        return jj[lo] + t * (jj[hi] - jj[lo]);
    };
    k.derivative = [zs, js](double x) {
        const Vec& zz = *zs;
        const Vec& jj = *js;
        if (x <= zz.front() || x >= zz.back()) return 0.0;
        auto it = std::upper_bound(zz.begin(), zz.end(), x);
        const size_t hi = static_cast<size_t>(it - zz.begin());
        const size_t lo = hi - 1;
        return (jj[hi] - jj[lo]) / (zz[hi] - zz[lo]);
    };
    k.d2_at_edge = 0.0;
    k.name = "table";
    return k;
}

KernelSpec load_kernel_table(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open kernel table: " + path);
    Vec z, j;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double a, b;
        if (ls >> a >> b) {
            z.push_back(a);
            j.push_back(b);
        } else if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) {
            throw std::runtime_error("kernel table " + path + ":" + std::to_string(lineno) + ": expected two columns");
        }
    }
    return kernel_from_table(z, j);
}

namespace {
std::map<std::string, KernelSpec>& registry() {
    static std::map<std::string, KernelSpec> r = {{"quartic", standard_kernel()}};
    return r;
}
std::mutex registry_mutex;
}  // namespace

void register_kernel(const std::string& name, const KernelSpec& spec) {
    validate_kernel(spec, 512);
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto s = spec;
    s.name = name;
    registry()[name] = std::move(s);
}

KernelSpec kernel_by_name(const std::string& name) {
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto it = registry().find(name);
    if (it == registry().end()) throw std::invalid_argument("unknown kernel: " + name);
    return it->second;
}

void validate_kernel(const KernelSpec& spec, int inv_h) {
    if (!spec.profile || !spec.derivative) throw std::invalid_argument("kernel: missing profile or derivative");
    const double h = 1.0 / inv_h;
    double mass = 0.0;
    for (int k = -inv_h; k <= inv_h; ++k) {
        const double z = k * h;
        const double v = spec.profile(z);
        if (v < 0.0) throw std::invalid_argument("kernel: negative value at z = " + std::to_string(z));
        if (std::fabs(v - spec.profile(-z)) > 1e-12 * std::max(1.0, std::fabs(v)))
            throw std::invalid_argument("kernel: profile not even at z = " + std::to_string(z));
        mass += h * v;
    }
    if (std::fabs(spec.profile(1.0)) > 1e-12 || std::fabs(spec.profile(-1.0)) > 1e-12)
        throw std::invalid_argument("kernel: profile must vanish at the support edge");
    if (std::fabs(spec.derivative(1.0)) > 1e-10 || std::fabs(spec.derivative(-1.0)) > 1e-10)
        throw std::invalid_argument("kernel: derivative must vanish at the support edge");
    if (std::fabs(mass - 1.0) > 1e-3)
        throw std::invalid_argument("kernel: mass " + std::to_string(mass) + " too far from 1");
}

DiscreteKernel discretize(const KernelSpec& spec, int inv_h) {
    if (inv_h < 2) throw std::invalid_argument("discretize: inv_h must be >= 2");
    DiscreteKernel dk;
    dk.m = inv_h;
    dk.h = 1.0 / inv_h;
    dk.j.resize(2 * inv_h + 1);
    dk.jprime.resize(2 * inv_h + 1);
    double mass = 0.0;
    for (int k = -inv_h; k <= inv_h; ++k) {
        const double z = k * dk.h;
        dk.j[k + inv_h] = spec.profile(z);
        dk.jprime[k + inv_h] = spec.derivative(z);
        mass += dk.h * dk.j[k + inv_h];
    }
    if (!(mass > 0.0)) throw std::invalid_argument("discretize: kernel mass not positive");
    dk.raw_mass = mass;
    dk.norm_c = 1.0 / mass;
    for (auto& v : dk.j) v *= dk.norm_c;
    for (auto& v : dk.jprime) v *= dk.norm_c;
    dk.d2_edge = dk.norm_c * spec.d2_at_edge;
    return dk;
}

double kernel_integral(const KernelSpec& spec, double a, double b) {
    // composite Simpson, 4096 panels; exact to rounding for polynomial bumps
    const int n = 4096;
    const double h = (b - a) / n;
    double s = spec.profile(a) + spec.profile(b);
    for (int i = 1; i < n; ++i) s += spec.profile(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

double kernel_l2_norm(const KernelSpec& spec) {
    const int n = 4096;
    const double a = -1.0, b = 1.0;
    const double h = (b - a) / n;
    auto sq = [&](double z) { const double v = spec.profile(z); return v * v; };
    double s = sq(a) + sq(b);
    for (int i = 1; i < n; ++i) s += sq(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return std::sqrt(s * h / 3.0);
}

double l2_norm(const DiscreteKernel& dk) {
    double s = 0.0;
    for (double v : dk.j) s += dk.h * v * v;
    return std::sqrt(s);
}

double sup_norm(const DiscreteKernel& dk) {
    double s = 0.0;
    for (double v : dk.j) s = std::max(s, v);
    return s;
}

}  // namespace nls
