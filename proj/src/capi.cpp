#include "nlspectra.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "cheeger.hpp"
#include "instanton.hpp"
#include "scan.hpp"
#include "spectral.hpp"

namespace {

thread_local std::string g_last_error;

nls_status set_error(nls_status s, const char* what) {
    g_last_error = what ? what : "";
    return s;
}

template <typename F>
nls_status guarded(F&& f) {
    try {
        f();
        return NLS_OK;
    } catch (const std::invalid_argument& e) {
        return set_error(NLS_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::ios_base::failure& e) {
        return set_error(NLS_ERR_IO, e.what());
    } catch (const std::runtime_error& e) {
        const std::string msg = e.what();
        if (msg.find("convergence") != std::string::npos || msg.find("converge") != std::string::npos)
            return set_error(NLS_ERR_NO_CONVERGENCE, e.what());
        if (msg.find("open") != std::string::npos || msg.find("write") != std::string::npos)
            return set_error(NLS_ERR_IO, e.what());
        return set_error(NLS_ERR_INTERNAL, e.what());
    } catch (const std::exception& e) {
        return set_error(NLS_ERR_INTERNAL, e.what());
    }
}

}  // namespace

struct nls_instanton {
    nls::InstantonProfile profile;
};

struct nls_spectral {
    nls::Restriction restriction;
    nls::BoundaryKind bc = nls::BoundaryKind::dirichlet;
    nls::SpectralResult spectral;
    nls::DecayParams decay;
    nls::ShapeReport shape;
    nls::ProjectionReport projection;
    double trial_bound = 0.0;
};

struct nls_cheeger {
    nls::MarkovSystem markov;
    nls::CheegerReport report;
    double beta = 0.0, l = 0.0;
};

struct nls_scan {
    nls::ScanConfig config;
    nls::ScanResult result;
    std::vector<nls::Theorem81Verdict> verdicts;
};

extern "C" {

const char* nls_version(void) { return "0.1.0"; }
const char* nls_last_error(void) { return g_last_error.c_str(); }

const char* nls_status_name(nls_status s) {
    switch (s) {
        case NLS_OK: return "ok";
        case NLS_ERR_INVALID_ARGUMENT: return "invalid argument";
        case NLS_ERR_NO_CONVERGENCE: return "no convergence";
        case NLS_ERR_IO: return "io error";
        default: return "internal error";
    }
}

nls_status nls_solve_mbeta(double beta, double* out) {
    if (!out) return set_error(NLS_ERR_INVALID_ARGUMENT, "out is null");
    return guarded([&] { *out = nls::solve_mbeta(beta); });
}

nls_status nls_instanton_create(double beta, double l_max, int inv_h, nls_instanton** out) {
    if (!out) return set_error(NLS_ERR_INVALID_ARGUMENT, "out is null");
    return guarded([&] {
        nls::Grid master = nls::build_grid(l_max, inv_h);
        auto* handle = new nls_instanton{nls::solve_instanton(beta, nls::standard_kernel(), master)};
        *out = handle;
    });
}

void nls_instanton_free(nls_instanton* p) { delete p; }

double nls_instanton_mbeta(const nls_instanton* p) { return p->profile.m_beta; }
double nls_instanton_sigma(const nls_instanton* p) { return p->profile.sigma; }
double nls_instanton_alpha_fit(const nls_instanton* p) { return p->profile.fit.alpha; }
double nls_instanton_fit_r2(const nls_instanton* p) { return p->profile.fit.r_squared; }
double nls_instanton_residual(const nls_instanton* p) { return p->profile.residual; }
int nls_instanton_size(const nls_instanton* p) { return p->profile.grid.n(); }

nls_status nls_instanton_samples(const nls_instanton* p, double* x, double* m_bar, double* m_bar_prime,
                                 double* p_coeff, size_t cap) {
    if (!p) return set_error(NLS_ERR_INVALID_ARGUMENT, "instanton handle is null");
    const size_t n = std::min(cap, static_cast<size_t>(p->profile.grid.n()));
    for (size_t i = 0; i < n; ++i) {
        if (x) x[i] = p->profile.grid.nodes[i];
        if (m_bar) m_bar[i] = p->profile.m_bar[i];
        if (m_bar_prime) m_bar_prime[i] = p->profile.m_bar_prime[i];
        if (p_coeff) p_coeff[i] = p->profile.p[i];
    }
    return NLS_OK;
}

nls_status nls_instanton_write_csv(const nls_instanton* p, double l, const char* path) {
    if (!p || !path) return set_error(NLS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        nls::Grid sub = nls::build_grid(l, p->profile.grid.inv_h);
        nls::write_profile_csv(nls::restrict_to(p->profile, sub), path);
    });
}

nls_status nls_spectral_compute(const nls_instanton* p, double l, nls_bc bc, double eps0,
                                nls_spectral** out) {
    if (!p || !out) return set_error(NLS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto handle = std::make_unique<nls_spectral>();
        nls::Grid sub = nls::build_grid(l, p->profile.grid.inv_h);
        handle->restriction = nls::restrict_to(p->profile, sub);
        handle->bc = bc == NLS_BC_NEUMANN ? nls::BoundaryKind::neumann : nls::BoundaryKind::dirichlet;
        const double e0 = eps0 > 0.0 ? eps0 : nls::default_eps0(p->profile.sigma);
        handle->decay = nls::decay_params(handle->restriction, e0);
        nls::OperatorMatrix a = nls::assemble(nls::OperatorKind::a, handle->restriction, handle->bc);
        nls::SymmetrizedOperator s = nls::symmetrize(a);
        handle->spectral = nls::solve_spectrum(s);
        handle->trial_bound = nls::rayleigh_trial(a, handle->restriction.m_bar_prime);
        handle->shape = nls::shape_report(handle->spectral.v0, sub, handle->restriction.p, handle->decay);
        handle->projection = nls::compare_to_instanton_derivative(
            handle->spectral.v0, handle->restriction.m_bar_prime, sub, handle->restriction.p);
        *out = handle.release();
    });
}

void nls_spectral_free(nls_spectral* s) { delete s; }

double nls_spectral_nu0(const nls_spectral* s) { return s->spectral.nu0; }
double nls_spectral_mu1(const nls_spectral* s) { return s->spectral.mu1; }
double nls_spectral_mu2(const nls_spectral* s) { return s->spectral.mu2; }
double nls_spectral_trial_bound(const nls_spectral* s) { return s->trial_bound; }
double nls_spectral_distance_to_mbar_prime(const nls_spectral* s) { return s->projection.distance; }
double nls_spectral_harnack_gamma(const nls_spectral* s) { return s->shape.harnack_gamma; }
double nls_spectral_zeta1(const nls_spectral* s) { return s->shape.zeta1; }
double nls_spectral_r0(const nls_spectral* s) { return s->decay.r0; }
double nls_spectral_r1(const nls_spectral* s) { return s->shape.r1; }
double nls_spectral_alpha_eps0(const nls_spectral* s) { return s->decay.alpha_eps0; }
int nls_spectral_size(const nls_spectral* s) { return s->restriction.grid.n(); }

nls_status nls_spectral_eigenfunction(const nls_spectral* s, double* x, double* v0, size_t cap) {
    if (!s) return set_error(NLS_ERR_INVALID_ARGUMENT, "spectral handle is null");
    const size_t n = std::min(cap, static_cast<size_t>(s->restriction.grid.n()));
    for (size_t i = 0; i < n; ++i) {
        if (x) x[i] = s->restriction.grid.nodes[i];
        if (v0) v0[i] = s->spectral.v0[i];
    }
    return NLS_OK;
}

nls_status nls_spectral_eigenvalues(const nls_spectral* s, double* values, size_t cap) {
    if (!s || !values) return set_error(NLS_ERR_INVALID_ARGUMENT, "null argument");
    const size_t n = std::min(cap, s->spectral.eigenvalues.size());
    for (size_t i = 0; i < n; ++i) values[i] = s->spectral.eigenvalues[i];
    return NLS_OK;
}

nls_status nls_spectral_write_csv(const nls_spectral* s, const char* path) {
    if (!s || !path) return set_error(NLS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        nls::ScanRow row;
        row.l = s->restriction.grid.half_length;
        row.beta = s->restriction.beta;
        row.nu0 = s->spectral.nu0;
        row.mu1 = s->spectral.mu1;
        row.mu2 = s->spectral.mu2;
        row.trial_bound = s->trial_bound;
        row.distance_psi1 = s->projection.distance;
        row.harnack_gamma = s->shape.harnack_gamma;
        row.zeta1 = s->shape.zeta1;
        row.r0 = s->decay.r0;
        row.r1 = s->shape.r1;
        row.alpha_eps0 = s->decay.alpha_eps0;
        nls::write_spectral_csv({row}, path);
    });
}

nls_status nls_cheeger_compute(const nls_spectral* s, nls_cheeger** out) {
    if (!s || !out) return set_error(NLS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto handle = std::make_unique<nls_cheeger>();
        handle->beta = s->restriction.beta;
        handle->l = s->restriction.grid.half_length;
        handle->markov = nls::build_markov(s->spectral, s->restriction, s->bc);
        nls::CheegerScan scan = nls::cheeger_scan(handle->markov);
        nls::CheegerConstants constants =
            nls::theoretical_d(s->restriction, s->shape, s->decay, s->spectral.nu0);
        handle->report = nls::make_cheeger_report(handle->markov, scan, constants, s->spectral.mu2,
                                                  s->restriction.grid);
        *out = handle.release();
    });
}

void nls_cheeger_free(nls_cheeger* c) { delete c; }

double nls_cheeger_k_scan(const nls_cheeger* c) { return c->report.k_scan; }
double nls_cheeger_argmin_a(const nls_cheeger* c) { return c->report.a_min_x; }
double nls_cheeger_argmin_b(const nls_cheeger* c) { return c->report.b_min_x; }
double nls_cheeger_d1(const nls_cheeger* c) { return c->report.constants.d1; }
double nls_cheeger_big_d1(const nls_cheeger* c) { return c->report.constants.D1; }
double nls_cheeger_big_d2(const nls_cheeger* c) { return c->report.constants.D2; }
double nls_cheeger_big_d(const nls_cheeger* c) { return c->report.constants.D; }
double nls_cheeger_sandwich_lower_margin(const nls_cheeger* c) { return c->report.lower_margin; }
double nls_cheeger_sandwich_upper_margin(const nls_cheeger* c) { return c->report.upper_margin; }
int nls_cheeger_sandwich_ok(const nls_cheeger* c) { return c->report.sandwich_ok ? 1 : 0; }
double nls_cheeger_q_row_defect(const nls_cheeger* c) { return c->markov.row_defect; }
double nls_cheeger_q_reversibility_defect(const nls_cheeger* c) { return c->markov.reversibility_defect; }

nls_status nls_cheeger_write_csv(const nls_cheeger* c, const char* path) {
    if (!c || !path) return set_error(NLS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        nls::ScanRow row;
        row.l = c->l;
        row.beta = c->beta;
        row.k_scan = c->report.k_scan;
        row.a_min_x = c->report.a_min_x;
        row.b_min_x = c->report.b_min_x;
        row.big_d1 = c->report.constants.D1;
        row.big_d2 = c->report.constants.D2;
        row.big_d = c->report.constants.D;
        row.d1 = c->report.constants.d1;
        row.harnack_gamma = c->report.constants.gamma;
        row.zeta1 = c->report.constants.zeta1;
        row.mu2 = c->report.mu2;
        row.sandwich_lower_margin = c->report.lower_margin;
        row.sandwich_upper_margin = c->report.upper_margin;
        nls::write_cheeger_csv({row}, path);
    });
}

nls_status nls_scan_run(const double* betas, size_t n_betas, const double* l_values, size_t n_l,
                        int inv_h, nls_bc bc, double eps0, int workers, nls_scan** out) {
    if (!out || (!betas && n_betas) || (!l_values && n_l))
        return set_error(NLS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto handle = std::make_unique<nls_scan>();
        handle->config.beta_list.assign(betas, betas + n_betas);
        handle->config.l_list.assign(l_values, l_values + n_l);
        handle->config.inv_h = inv_h;
        handle->config.bc = bc == NLS_BC_NEUMANN ? nls::BoundaryKind::neumann : nls::BoundaryKind::dirichlet;
        handle->config.eps0 = eps0;
        handle->config.workers = workers;
        handle->result = nls::run_scan(handle->config);
        *out = handle.release();
    });
}

nls_status nls_scan_run_config(const char* config_path, nls_scan** out) {
    if (!config_path || !out) return set_error(NLS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto handle = std::make_unique<nls_scan>();
        handle->config = nls::parse_config(config_path);
        handle->result = nls::run_scan(handle->config);
        *out = handle.release();
    });
}

void nls_scan_free(nls_scan* s) { delete s; }

size_t nls_scan_rows(const nls_scan* s) { return s->result.rows.size(); }

nls_status nls_scan_value(const nls_scan* s, size_t row, const char* column, double* out) {
    if (!s || !column || !out) return set_error(NLS_ERR_INVALID_ARGUMENT, "null argument");
    if (row >= s->result.rows.size()) return set_error(NLS_ERR_INVALID_ARGUMENT, "row out of range");
    const nls::ScanRow& r = s->result.rows[row];
    const std::string c = column;
    double v;
    if (c == "beta") v = r.beta;
    else if (c == "L") v = r.l;
    else if (c == "m_beta") v = r.m_beta;
    else if (c == "sigma") v = r.sigma;
    else if (c == "alpha_fit") v = r.alpha_fit;
    else if (c == "nu0") v = r.nu0;
    else if (c == "mu1") v = r.mu1;
    else if (c == "mu2") v = r.mu2;
    else if (c == "trial_bound") v = r.trial_bound;
    else if (c == "distance_psi1") v = r.distance_psi1;
    else if (c == "eps0") v = r.eps0;
    else if (c == "r0") v = r.r0;
    else if (c == "alpha_eps0") v = r.alpha_eps0;
    else if (c == "harnack_gamma") v = r.harnack_gamma;
    else if (c == "r1") v = r.r1;
    else if (c == "zeta1") v = r.zeta1;
    else if (c == "d1") v = r.d1;
    else if (c == "D1") v = r.big_d1;
    else if (c == "D2") v = r.big_d2;
    else if (c == "D") v = r.big_d;
    else if (c == "k_scan") v = r.k_scan;
    else if (c == "sandwich_lower_margin") v = r.sandwich_lower_margin;
    else if (c == "sandwich_upper_margin") v = r.sandwich_upper_margin;
    else if (c == "q_row_defect") v = r.q_row_defect;
    else if (c == "spec_match_defect") v = r.spec_match_defect;
    else return set_error(NLS_ERR_INVALID_ARGUMENT, ("unknown column: " + c).c_str());
    *out = v;
    return NLS_OK;
}

const char* nls_scan_status(const nls_scan* s, size_t row) {
    if (!s || row >= s->result.rows.size()) return "";
    return s->result.rows[row].status.c_str();
}

nls_status nls_scan_write_outputs(nls_scan* s, const char* out_dir) {
    if (!s || !out_dir) return set_error(NLS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        s->config.output_dir = out_dir;
        s->verdicts = nls::emit_outputs(s->result, s->config);
    });
}

size_t nls_scan_verdicts(const nls_scan* s) { return s->verdicts.size(); }

int nls_scan_verdict_pass(const nls_scan* s, size_t v, int point) {
    if (!s || v >= s->verdicts.size()) return 0;
    const nls::Theorem81Verdict& verdict = s->verdicts[v];
    switch (point) {
        case 1: return verdict.point1 ? 1 : 0;
        case 2: return verdict.point2 ? 1 : 0;
        case 3: return verdict.point3 ? 1 : 0;
        default: return verdict.all_pass() ? 1 : 0;
    }
}

double nls_scan_verdict_beta(const nls_scan* s, size_t v) {
    if (!s || v >= s->verdicts.size()) return 0.0;
    return s->verdicts[v].beta;
}

nls_status nls_verify_csv(const char* scan_csv_path, const char* verdict_out_path, int* n_failed) {
    if (!scan_csv_path) return set_error(NLS_ERR_INVALID_ARGUMENT, "null path");
    return guarded([&] {
        std::vector<nls::ScanRow> rows = nls::read_scan_csv(scan_csv_path);
        nls::ScanConfig cfg;
        std::vector<double> betas;
        for (const auto& r : rows)
            if (std::find(betas.begin(), betas.end(), r.beta) == betas.end()) betas.push_back(r.beta);
        int failed = 0;
        std::string text;
        for (double beta : betas) {
            std::vector<nls::ScanRow> rb;
            for (const auto& r : rows)
                if (r.beta == beta) rb.push_back(r);
            nls::Theorem81Verdict v = nls::theorem81_verdict(rb, cfg);
            if (!v.all_pass()) ++failed;
            text += "beta = " + std::to_string(beta) + ": point1 " + (v.point1 ? "PASS" : "FAIL") +
                    ", point2 " + (v.point2 ? "PASS" : "FAIL") + ", point3 " + (v.point3 ? "PASS" : "FAIL") +
                    "\n";
        }
        if (verdict_out_path) {
            std::ofstream os(verdict_out_path);
            if (!os) throw std::runtime_error("cannot open for writing: " + std::string(verdict_out_path));
            os << text;
        }
        if (n_failed) *n_failed = failed;
    });
}

}  // extern "C"
