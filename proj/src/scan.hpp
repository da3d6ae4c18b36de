#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cheeger.hpp"
#include "instanton.hpp"
#include "spectral.hpp"

namespace nls {

struct ScanConfig {
    std::vector<double> beta_list;
    std::vector<double> l_list;
    int inv_h = 40;
    BoundaryKind bc = BoundaryKind::dirichlet;
    double eps0 = 0.0;  // <= 0 means the default (1 - sigma)/4 per beta
    std::string output_dir = "out";
    int workers = 1;
    std::map<std::string, double> tolerances;  // named overrides for the verdict

    // test hook: called before each cell; throwing fails that cell only
    std::function<void(double beta, double l)> cell_hook;

    [[nodiscard]] double tol(const std::string& name, double fallback) const {
        auto it = tolerances.find(name);
        return it == tolerances.end() ? fallback : it->second;
    }
};

// key = value lines; repeated keys beta / L form lists. '#' starts a comment.
ScanConfig parse_config(const std::string& path);
ScanConfig parse_config_text(const std::string& text, const std::string& origin);

struct ScanRow {
    double beta = 0.0, l = 0.0;
    int inv_h = 0;
    BoundaryKind bc = BoundaryKind::dirichlet;
    std::string status = "ok";  // or "inapplicable: ..." / "failed: ..."
    bool ok() const { return status == "ok"; }

    double m_beta = 0, sigma = 0, alpha_fit = 0, alpha_fit_r2 = 0;
    double nu0 = 0, mu1 = 0, mu2 = 0, trial_bound = 0;
    double distance_psi1 = 0, proj_a = 0, proj_ort_norm = 0;
    double eps0 = 0, r0 = 0, p_r0 = 0, alpha_eps0 = 0;
    int decay_applicable = 0, decay_pass = 0;
    double decay_c_bound = 0, decay_c_min = 0;
    double even_defect = 0;
    int monotone_tail = 0;
    double harnack_gamma = 0, r1 = 0, zeta1 = 0;
    double d1 = 0, big_d1 = 0, big_d2 = 0, big_d = 0;
    double k_scan = 0, a_min_x = 0, b_min_x = 0;
    double sandwich_lower_margin = 0, sandwich_upper_margin = 0;
    int sandwich_ok = 0;
    double q_row_defect = 0, q_stationarity_defect = 0, q_reversibility_defect = 0, pi_norm_defect = 0;
    double spec_match_defect = 0;
    int power_iterations = 0;
    double wall_ms = 0;  // informational only; never written to scan.csv

    // node-sampled dumps for profiles/<beta>_<L>.csv
    Vec x, psi1, m_bar, m_bar_prime, p;
};

struct ScanResult {
    std::vector<ScanRow> rows;
    std::vector<std::string> warnings;
};

ScanResult run_scan(const ScanConfig& config);

struct FitOutcome {
    bool valid = false;
    double rate = 0, prefactor = 0, r_squared = 0;
    std::string error;
};

// least squares on (L, log value); rate = -slope
FitOutcome fit_exponential(const std::vector<std::pair<double, double>>& series);

struct Theorem81Verdict {
    double beta = 0;
    BoundaryKind bc = BoundaryKind::dirichlet;
    int cells = 0;
    // point (1)
    FitOutcome mu1_fit;
    bool mu1_floor_ok = false;
    bool point1 = false;
    std::string point1_note;
    // point (2)
    double gap_min = 0, gap_max = 0, d_max = 0;
    bool point2 = false;
    // point (3)
    FitOutcome dist_fit;
    bool dist_strictly_decreasing = false;
    bool point3 = false;
    double empirical_l1 = 0;  // smallest L with all hypotheses satisfied
    bool all_pass() const { return point1 && point2 && point3; }
};

Theorem81Verdict theorem81_verdict(const std::vector<ScanRow>& rows_for_beta, const ScanConfig& config);

// scan.csv, plots/*.dat, profiles/<beta>_<L>.csv and verdict.txt under
// config.output_dir; returns one verdict per beta with enough cells.
std::vector<Theorem81Verdict> emit_outputs(const ScanResult& result, const ScanConfig& config);

std::string scan_csv_text(const std::vector<ScanRow>& rows);
void write_spectral_csv(const std::vector<ScanRow>& rows, const std::string& path);
void write_cheeger_csv(const std::vector<ScanRow>& rows, const std::string& path);

// reads a scan.csv produced by emit_outputs; used by the verify command
std::vector<ScanRow> read_scan_csv(const std::string& path);

}  // namespace nls
