#include "scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "eigensolve.hpp"

namespace nls {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& v, const std::string& where) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument(where + ": expected a number, got '" + v + "'");
    }
}

std::string fmt_short(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

ScanConfig parse_config_text(const std::string& text, const std::string& origin) {
    ScanConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = origin + ":" + std::to_string(lineno);
        if (eq == std::string::npos) throw std::invalid_argument(where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "beta")
            cfg.beta_list.push_back(parse_number(value, where));
        else if (key == "L")
            cfg.l_list.push_back(parse_number(value, where));
        else if (key == "inv_h")
            cfg.inv_h = static_cast<int>(parse_number(value, where));
        else if (key == "eps0")
            cfg.eps0 = parse_number(value, where);
        else if (key == "workers")
            cfg.workers = static_cast<int>(parse_number(value, where));
        else if (key == "out")
            cfg.output_dir = value;
        else if (key == "bc") {
            if (value == "dirichlet")
                cfg.bc = BoundaryKind::dirichlet;
            else if (value == "neumann")
                cfg.bc = BoundaryKind::neumann;
            else
                throw std::invalid_argument(where + ": bc must be dirichlet or neumann");
        } else if (key.rfind("tol.", 0) == 0)
            cfg.tolerances[key.substr(4)] = parse_number(value, where);
        else
            throw std::invalid_argument(where + ": unknown key '" + key + "'");
    }
    return cfg;
}

ScanConfig parse_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config: " + path);
    std::stringstream buf;
    buf << is.rdbuf();
    return parse_config_text(buf.str(), path);
}

namespace {

struct Cell {
    double beta, l;
};

ScanRow compute_cell(const InstantonProfile& prof, double l, const ScanConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    ScanRow row;
    row.beta = prof.beta;
    row.l = l;
    row.inv_h = cfg.inv_h;
    row.bc = cfg.bc;
    row.m_beta = prof.m_beta;
    row.sigma = prof.sigma;
    row.alpha_fit = prof.fit.alpha;
    row.alpha_fit_r2 = prof.fit.r_squared;
    row.eps0 = cfg.eps0 > 0.0 ? cfg.eps0 : default_eps0(prof.sigma);

    Grid sub = build_grid(l, cfg.inv_h);
    Restriction r = restrict_to(prof, sub);

    DecayParams dp = decay_params(r, row.eps0);
    row.r0 = dp.r0;
    row.p_r0 = dp.p_at_r0;
    row.alpha_eps0 = dp.alpha_eps0;
    if (!dp.applicable) {
        row.status = "inapplicable: " + dp.note;
        return row;
    }

    OperatorMatrix a = assemble(OperatorKind::a, r, cfg.bc);
    SymmetrizedOperator s = symmetrize(a);
    SpectralResult sr = solve_spectrum(s);
    row.nu0 = sr.nu0;
    row.mu1 = sr.mu1;
    row.mu2 = sr.mu2;
    row.power_iterations = sr.power_iterations;
    row.trial_bound = rayleigh_trial(a, r.m_bar_prime);

    ProjectionReport proj = compare_to_instanton_derivative(sr.v0, r.m_bar_prime, sub, r.p);
    row.distance_psi1 = proj.distance;
    row.proj_a = proj.a;
    row.proj_ort_norm = proj.ort_norm;

    DecayVerdict dv = verify_eigen_decay(sr.v0, sr.nu0, dp, r);
    row.decay_applicable = dv.applicable ? 1 : 0;
    row.decay_pass = dv.pass ? 1 : 0;
    row.decay_c_bound = dv.bound_c;
    row.decay_c_min = dv.min_admissible_c;

    ShapeReport shape = shape_report(sr.v0, sub, r.p, dp);
    row.even_defect = shape.even_defect;
    row.monotone_tail = shape.monotone_tail ? 1 : 0;
    row.harnack_gamma = shape.harnack_gamma;
    row.r1 = shape.r1;
    row.zeta1 = shape.zeta1;

    MarkovSystem ms = build_markov(sr, r, cfg.bc);
    row.q_row_defect = ms.row_defect;
    row.q_stationarity_defect = ms.stationarity_defect;
    row.q_reversibility_defect = ms.reversibility_defect;
    row.pi_norm_defect = ms.pi_norm_defect;

    CheegerScan scan = cheeger_scan(ms);
    CheegerConstants constants = theoretical_d(r, shape, dp, sr.nu0);
    CheegerReport rep = make_cheeger_report(ms, scan, constants, sr.mu2, sub);
    row.d1 = constants.d1;
    row.big_d1 = constants.D1;
    row.big_d2 = constants.D2;
    row.big_d = constants.D;
    row.k_scan = rep.k_scan;
    row.a_min_x = rep.a_min_x;
    row.b_min_x = rep.b_min_x;
    row.sandwich_lower_margin = rep.lower_margin;
    row.sandwich_upper_margin = rep.upper_margin;
    row.sandwich_ok = rep.sandwich_ok ? 1 : 0;

    // spectrum of Q versus spectrum of A through the pi-weighted symmetrization
    {
        const int n = sub.n();
        Matrix sq(n, n);
        for (int i = 0; i < n; ++i) {
            const double di = std::sqrt(ms.pi[i] * ms.weights[i]);
            for (int j = std::max(0, i - ms.half_band); j <= std::min(n - 1, i + ms.half_band); ++j) {
                const double dj = std::sqrt(ms.pi[j] * ms.weights[j]);
                sq(i, j) = ms.q_w(i, j) * di / dj;
            }
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double avg = 0.5 * (sq(i, j) + sq(j, i));
                sq(i, j) = avg;
                sq(j, i) = avg;
            }
        Vec eq = symmetric_eigenvalues(std::move(sq));
        double defect = 0.0;
        for (size_t k = 0; k < eq.size(); ++k) defect = std::max(defect, std::fabs(eq[k] - sr.eigenvalues[k]));
        row.spec_match_defect = defect;
    }

    row.x = sub.nodes;
    row.psi1 = sr.v0;
    row.m_bar = r.m_bar;
    row.m_bar_prime = r.m_bar_prime;
    row.p = r.p;

    row.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

}  // namespace

ScanResult run_scan(const ScanConfig& config) {
    ScanResult result;
    if (config.inv_h < 2) throw std::invalid_argument("run_scan: inv_h must be >= 2");
    if (config.l_list.empty()) {
        result.warnings.push_back("empty L list; nothing to do");
        return result;
    }
    if (config.beta_list.empty()) throw std::invalid_argument("run_scan: no beta given");

    // deduplicate (beta, L) pairs, keep first occurrence order per beta
    std::vector<Cell> cells;
    for (double beta : config.beta_list)
        for (double l : config.l_list) {
            bool dup = false;
            for (const Cell& c : cells)
                if (c.beta == beta && c.l == l) dup = true;
            if (dup) {
                result.warnings.push_back("duplicate cell (beta=" + fmt_short(beta) + ", L=" + fmt_short(l) +
                                          ") dropped");
                continue;
            }
            cells.push_back({beta, l});
        }

    // one master instanton per beta
    std::map<double, InstantonProfile> profiles;
    for (const Cell& c : cells)
        if (!profiles.count(c.beta)) {
            double l_max = 20.0;
            for (const Cell& d : cells)
                if (d.beta == c.beta) l_max = std::max(l_max, 2.0 * d.l);
            Grid master = build_grid(l_max, config.inv_h);
            profiles.emplace(c.beta, solve_instanton(c.beta, standard_kernel(), master));
        }

    std::vector<ScanRow> rows(cells.size());
    std::atomic<size_t> next{0};
    const int workers = std::max(1, config.workers);
    auto work = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            const Cell& c = cells[i];
            try {
                if (config.cell_hook) config.cell_hook(c.beta, c.l);
                rows[i] = compute_cell(profiles.at(c.beta), c.l, config);
            } catch (const std::exception& e) {
                ScanRow row;
                row.beta = c.beta;
                row.l = c.l;
                row.inv_h = config.inv_h;
                row.bc = config.bc;
                row.status = std::string("failed: ") + e.what();
                rows[i] = std::move(row);
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    std::stable_sort(rows.begin(), rows.end(), [](const ScanRow& a, const ScanRow& b) {
        if (a.beta != b.beta) return a.beta < b.beta;
        return a.l < b.l;
    });
    result.rows = std::move(rows);
    return result;
}

FitOutcome fit_exponential(const std::vector<std::pair<double, double>>& series) {
    FitOutcome out;
    if (series.size() < 3) {
        out.error = "fewer than 3 points";
        return out;
    }
    for (const auto& [l, v] : series)
        if (!(v > 0.0)) {
            out.error = "nonpositive values";
            return out;
        }
    const double n = static_cast<double>(series.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (const auto& [l, v] : series) {
        const double y = std::log(v);
        sx += l;
        sy += y;
        sxx += l * l;
        sxy += l * y;
        syy += y * y;
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) {
        out.error = "degenerate abscissae";
        return out;
    }
    const double slope = (n * sxy - sx * sy) / det;
    const double icept = (sy * sxx - sx * sxy) / det;
    double ss_res = 0;
    const double ss_tot = syy - sy * sy / n;
    for (const auto& [l, v] : series) {
        const double e = std::log(v) - (slope * l + icept);
        ss_res += e * e;
    }
    out.valid = true;
    out.rate = -slope;
    out.prefactor = std::exp(icept);
    out.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return out;
}

Theorem81Verdict theorem81_verdict(const std::vector<ScanRow>& rows_for_beta, const ScanConfig& config) {
    std::vector<const ScanRow*> rows;
    for (const auto& r : rows_for_beta)
        if (r.ok()) rows.push_back(&r);
    if (rows.size() < 4) throw std::invalid_argument("theorem81_verdict: insufficient span (need >= 4 L values)");
    double lmin = rows.front()->l, lmax = rows.front()->l;
    for (auto* r : rows) {
        lmin = std::min(lmin, r->l);
        lmax = std::max(lmax, r->l);
    }
    if (lmax < 3.0 * lmin) throw std::invalid_argument("theorem81_verdict: insufficient span (L range below factor 3)");

    Theorem81Verdict v;
    v.beta = rows.front()->beta;
    v.bc = rows.front()->bc;
    v.cells = static_cast<int>(rows.size());
    const double alpha = rows.front()->alpha_fit;

    const double mu1_floor = config.tol("mu1_floor", -1e-8);
    v.mu1_floor_ok = true;
    for (auto* r : rows)
        if (!(r->mu1 > mu1_floor)) v.mu1_floor_ok = false;

    if (v.bc == BoundaryKind::neumann) {
        const double ceiling = config.tol("neumann_mu1_ceiling", 1e-8);
        v.point1 = true;
        for (auto* r : rows)
            if (!(r->mu1 <= ceiling)) v.point1 = false;
        v.point1_note = "neumann: mu1 <= ceiling at every L";
    } else {
        std::vector<std::pair<double, double>> series;
        for (auto* r : rows) series.emplace_back(r->l, r->mu1);
        v.mu1_fit = fit_exponential(series);
        const double band = config.tol("mu1_rate_band", 0.25);
        const double r2min = config.tol("mu1_r2", 0.98);
        bool rate_ok = v.mu1_fit.valid && std::fabs(v.mu1_fit.rate - 2.0 * alpha) <= band * 2.0 * alpha;
        bool r2_ok = v.mu1_fit.valid && v.mu1_fit.r_squared >= r2min;
        v.point1 = rate_ok && r2_ok && v.mu1_floor_ok;
        if (!v.mu1_fit.valid) v.point1_note = "mu1 fit failed: " + v.mu1_fit.error;
    }

    v.gap_min = std::numeric_limits<double>::infinity();
    v.gap_max = 0.0;
    v.d_max = 0.0;
    for (auto* r : rows) {
        v.gap_min = std::min(v.gap_min, r->mu2);
        v.gap_max = std::max(v.gap_max, r->mu2);
        v.d_max = std::max(v.d_max, r->big_d);
    }
    const double spread = config.tol("gap_spread", 1.1);
    v.point2 = v.gap_max <= spread * v.gap_min && v.gap_min >= v.d_max && v.d_max > 0.0;

    {
        std::vector<std::pair<double, double>> series;
        for (auto* r : rows) series.emplace_back(r->l, r->distance_psi1);
        v.dist_fit = fit_exponential(series);
        v.dist_strictly_decreasing = true;
        for (size_t i = 1; i < rows.size(); ++i)
            if (!(rows[i]->distance_psi1 < rows[i - 1]->distance_psi1)) v.dist_strictly_decreasing = false;
        const double frac = config.tol("dist_rate_frac", 0.8);
        const double r2min = config.tol("dist_r2", 0.95);
        v.point3 = v.dist_fit.valid && v.dist_fit.rate >= frac * alpha && v.dist_fit.r_squared >= r2min;
    }

    v.empirical_l1 = 0.0;
    for (auto* r : rows) {
        const bool hyp = r->r0 <= 0.5 * r->l && r->nu0 > 1.0 - 0.5 * r->eps0;
        if (hyp) {
            v.empirical_l1 = r->l;
            break;
        }
    }
    return v;
}

std::string scan_csv_text(const std::vector<ScanRow>& rows) {
    std::ostringstream os;
    os << "beta,L,inv_h,bc,status,m_beta,sigma,alpha_fit,alpha_fit_r2,nu0,mu1,mu2,trial_bound,"
          "distance_psi1,proj_a,proj_ort_norm,eps0,r0,p_r0,alpha_eps0,decay_applicable,decay_pass,"
          "decay_c_bound,decay_c_min,even_defect,monotone_tail,harnack_gamma,r1,zeta1,d1,D1,D2,D,"
          "k_scan,a_min_x,b_min_x,sandwich_lower_margin,sandwich_upper_margin,sandwich_ok,"
          "q_row_defect,q_stationarity_defect,q_reversibility_defect,pi_norm_defect,"
          "spec_match_defect,power_iterations\n";
    for (const auto& r : rows) {
        os << format_double(r.beta) << ',' << format_double(r.l) << ',' << r.inv_h << ','
           << (r.bc == BoundaryKind::dirichlet ? "dirichlet" : "neumann") << ',' << r.status << ','
           << format_double(r.m_beta) << ',' << format_double(r.sigma) << ',' << format_double(r.alpha_fit)
           << ',' << format_double(r.alpha_fit_r2) << ',' << format_double(r.nu0) << ','
           << format_double(r.mu1) << ',' << format_double(r.mu2) << ',' << format_double(r.trial_bound)
           << ',' << format_double(r.distance_psi1) << ',' << format_double(r.proj_a) << ','
           << format_double(r.proj_ort_norm) << ',' << format_double(r.eps0) << ',' << format_double(r.r0)
           << ',' << format_double(r.p_r0) << ',' << format_double(r.alpha_eps0) << ','
           << r.decay_applicable << ',' << r.decay_pass << ',' << format_double(r.decay_c_bound) << ','
           << format_double(r.decay_c_min) << ',' << format_double(r.even_defect) << ','
           << r.monotone_tail << ',' << format_double(r.harnack_gamma) << ',' << format_double(r.r1)
           << ',' << format_double(r.zeta1) << ',' << format_double(r.d1) << ',' << format_double(r.big_d1)
           << ',' << format_double(r.big_d2) << ',' << format_double(r.big_d) << ','
           << format_double(r.k_scan) << ',' << format_double(r.a_min_x) << ',' << format_double(r.b_min_x)
           << ',' << format_double(r.sandwich_lower_margin) << ','
           << format_double(r.sandwich_upper_margin) << ',' << r.sandwich_ok << ','
           << format_double(r.q_row_defect) << ',' << format_double(r.q_stationarity_defect) << ','
           << format_double(r.q_reversibility_defect) << ',' << format_double(r.pi_norm_defect) << ','
           << format_double(r.spec_match_defect) << ',' << r.power_iterations << '\n';
    }
    return os.str();
}

void write_spectral_csv(const std::vector<ScanRow>& rows, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << "L,beta,nu0,mu1,mu2,trial_bound,distance_to_mbar_prime,harnack_gamma,zeta1,r0,r1,alpha_eps0\n";
    for (const auto& r : rows)
        os << format_double(r.l) << ',' << format_double(r.beta) << ',' << format_double(r.nu0) << ','
           << format_double(r.mu1) << ',' << format_double(r.mu2) << ',' << format_double(r.trial_bound)
           << ',' << format_double(r.distance_psi1) << ',' << format_double(r.harnack_gamma) << ','
           << format_double(r.zeta1) << ',' << format_double(r.r0) << ',' << format_double(r.r1) << ','
           << format_double(r.alpha_eps0) << '\n';
}

void write_cheeger_csv(const std::vector<ScanRow>& rows, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << "L,beta,k_scan,a_min,b_min,D1,D2,D,d1,gamma,zeta1,mu2,sandwich_lower_margin,"
          "sandwich_upper_margin\n";
    for (const auto& r : rows)
        os << format_double(r.l) << ',' << format_double(r.beta) << ',' << format_double(r.k_scan) << ','
           << format_double(r.a_min_x) << ',' << format_double(r.b_min_x) << ','
           << format_double(r.big_d1) << ',' << format_double(r.big_d2) << ',' << format_double(r.big_d)
           << ',' << format_double(r.d1) << ',' << format_double(r.harnack_gamma) << ','
           << format_double(r.zeta1) << ',' << format_double(r.mu2) << ','
           << format_double(r.sandwich_lower_margin) << ',' << format_double(r.sandwich_upper_margin)
           << '\n';
}

namespace {
void write_plot(const std::vector<ScanRow>& rows, const std::string& path,
                double ScanRow::* field) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    double beta = std::numeric_limits<double>::quiet_NaN();
    bool first = true;
    for (const auto& r : rows) {
        if (!r.ok()) continue;
        if (r.beta != beta) {
            if (!first) os << '\n';
            os << "# beta = " << fmt_short(r.beta) << '\n';
            beta = r.beta;
            first = false;
        }
        os << format_double(r.l) << ' ' << format_double(r.*field) << '\n';
    }
}

std::string verdict_text(const Theorem81Verdict& v) {
    std::ostringstream os;
    os << "beta = " << fmt_short(v.beta) << "  (" << (v.bc == BoundaryKind::dirichlet ? "dirichlet" : "neumann")
       << ", " << v.cells << " cells)\n";
    if (v.bc == BoundaryKind::neumann) {
        os << "  point (1): " << (v.point1 ? "PASS" : "FAIL") << "  [" << v.point1_note << "]\n";
    } else {
        os << "  point (1): " << (v.point1 ? "PASS" : "FAIL");
        if (v.mu1_fit.valid)
            os << "  rate = " << fmt_short(v.mu1_fit.rate) << ", R^2 = " << fmt_short(v.mu1_fit.r_squared)
               << ", floor " << (v.mu1_floor_ok ? "ok" : "violated");
        else
            os << "  [" << v.point1_note << ", floor " << (v.mu1_floor_ok ? "ok" : "violated") << "]";
        os << '\n';
    }
    os << "  point (2): " << (v.point2 ? "PASS" : "FAIL") << "  gap in [" << fmt_short(v.gap_min) << ", "
       << fmt_short(v.gap_max) << "], D = " << fmt_short(v.d_max) << '\n';
    os << "  point (3): " << (v.point3 ? "PASS" : "FAIL");
    if (v.dist_fit.valid)
        os << "  rate = " << fmt_short(v.dist_fit.rate) << ", R^2 = " << fmt_short(v.dist_fit.r_squared)
           << ", strictly decreasing: " << (v.dist_strictly_decreasing ? "yes" : "no");
    else
        os << "  [distance fit failed: " << v.dist_fit.error << "]";
    os << '\n';
    os << "  empirical L1 (hypotheses first hold): " << fmt_short(v.empirical_l1) << '\n';
    return os.str();
}
}  // namespace

std::vector<Theorem81Verdict> emit_outputs(const ScanResult& result, const ScanConfig& config) {
    if (result.rows.empty()) throw std::invalid_argument("emit_outputs: no rows");
    const fs::path out(config.output_dir);
    fs::create_directories(out / "plots");
    fs::create_directories(out / "profiles");

    {
        std::ofstream os(out / "scan.csv", std::ios::binary);
        if (!os) throw std::runtime_error("cannot open for writing: " + (out / "scan.csv").string());
        os << scan_csv_text(result.rows);
    }
    write_plot(result.rows, (out / "plots" / "mu1_vs_L.dat").string(), &ScanRow::mu1);
    write_plot(result.rows, (out / "plots" / "gap_vs_L.dat").string(), &ScanRow::mu2);
    write_plot(result.rows, (out / "plots" / "psi1_distance_vs_L.dat").string(), &ScanRow::distance_psi1);

    for (const auto& r : result.rows) {
        if (!r.ok()) continue;
        const std::string name = fmt_short(r.beta) + "_" + fmt_short(r.l) + ".csv";
        std::ofstream os(out / "profiles" / name);
        if (!os) throw std::runtime_error("cannot write profile dump " + name);
        os << "x,psi1,m_bar,m_bar_prime,p\n";
        for (size_t i = 0; i < r.x.size(); ++i)
            os << format_double(r.x[i]) << ',' << format_double(r.psi1[i]) << ',' << format_double(r.m_bar[i])
               << ',' << format_double(r.m_bar_prime[i]) << ',' << format_double(r.p[i]) << '\n';
    }

    std::vector<Theorem81Verdict> verdicts;
    std::ofstream vt(out / "verdict.txt");
    for (const auto& w : result.warnings) vt << "warning: " << w << '\n';
    std::vector<double> betas;
    for (const auto& r : result.rows)
        if (betas.empty() || betas.back() != r.beta) betas.push_back(r.beta);
    for (double beta : betas) {
        std::vector<ScanRow> rb;
        for (const auto& r : result.rows)
            if (r.beta == beta) rb.push_back(r);
        try {
            Theorem81Verdict v = theorem81_verdict(rb, config);
            vt << verdict_text(v);
            verdicts.push_back(std::move(v));
        } catch (const std::exception& e) {
            vt << "beta = " << fmt_short(beta) << ": no verdict (" << e.what() << ")\n";
        }
    }
    vt << "# timing (informational)\n";
    for (const auto& r : result.rows)
        vt << "# beta = " << fmt_short(r.beta) << " L = " << fmt_short(r.l) << "  " << fmt_short(r.wall_ms)
           << " ms  [" << r.status << "]\n";
    return verdicts;
}

std::vector<ScanRow> read_scan_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open scan csv: " + path);
    std::string header;
    if (!std::getline(is, header)) throw std::runtime_error("empty scan csv: " + path);
    std::vector<std::string> cols;
    {
        std::istringstream hs(header);
        std::string c;
        while (std::getline(hs, c, ',')) cols.push_back(c);
    }
    auto col = [&](const std::string& name) {
        for (size_t i = 0; i < cols.size(); ++i)
            if (cols[i] == name) return static_cast<int>(i);
        throw std::runtime_error("scan csv missing column " + name);
    };
    const int c_beta = col("beta"), c_l = col("L"), c_bc = col("bc"), c_status = col("status"),
              c_alpha = col("alpha_fit"), c_nu0 = col("nu0"), c_mu1 = col("mu1"), c_mu2 = col("mu2"),
              c_dist = col("distance_psi1"), c_d = col("D"), c_eps0 = col("eps0"), c_r0 = col("r0"),
              c_invh = col("inv_h");

    std::vector<ScanRow> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) f.push_back(c);
        if (f.size() != cols.size()) throw std::runtime_error("scan csv: ragged row");
        ScanRow r;
        r.beta = std::stod(f[c_beta]);
        r.l = std::stod(f[c_l]);
        r.inv_h = std::stoi(f[c_invh]);
        r.bc = f[c_bc] == "neumann" ? BoundaryKind::neumann : BoundaryKind::dirichlet;
        r.status = f[c_status];
        r.alpha_fit = std::stod(f[c_alpha]);
        r.nu0 = std::stod(f[c_nu0]);
        r.mu1 = std::stod(f[c_mu1]);
        r.mu2 = std::stod(f[c_mu2]);
        r.distance_psi1 = std::stod(f[c_dist]);
        r.big_d = std::stod(f[c_d]);
        r.eps0 = std::stod(f[c_eps0]);
        r.r0 = std::stod(f[c_r0]);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace nls
