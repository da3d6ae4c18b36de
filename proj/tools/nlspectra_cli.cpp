// nlspectra command line: instanton / spectrum / cheeger / scan / verify.
// Links only the C API from nlspectra.h.
//
// Exit codes: 0 all pass, 1 verdict failure, 2 configuration error,
// 3 numerical non-convergence.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlspectra.h"

namespace {

int status_exit(nls_status s) {
    if (s == NLS_OK) return 0;
    std::fprintf(stderr, "error (%s): %s\n", nls_status_name(s), nls_last_error());
    switch (s) {
        case NLS_ERR_INVALID_ARGUMENT:
        case NLS_ERR_IO:
            return 2;
        case NLS_ERR_NO_CONVERGENCE:
            return 3;
        default:
            return 3;
    }
}

struct CommonArgs {
    std::vector<double> betas{2.0};
    std::vector<double> ls;
    int inv_h = 40;
    std::string bc = "dirichlet";
    double eps0 = 0.0;
    std::string out = "out";
    int workers = 1;
    std::string config;
};

nls_bc to_bc(const std::string& s) { return s == "neumann" ? NLS_BC_NEUMANN : NLS_BC_DIRICHLET; }

void add_common(CLI::App* cmd, CommonArgs& a, bool wants_l) {
    cmd->add_option("--beta", a.betas, "inverse temperature (> 1, repeatable)")->capture_default_str();
    if (wants_l) cmd->add_option("--L", a.ls, "interval half-length (>= 1, repeatable)");
    cmd->add_option("--inv-h", a.inv_h, "grid resolution 1/h")->capture_default_str();
    cmd->add_option("--bc", a.bc, "boundary kind: dirichlet | neumann")
        ->check(CLI::IsMember({"dirichlet", "neumann"}))
        ->capture_default_str();
    cmd->add_option("--eps0", a.eps0, "decay cutoff (0 = default (1-sigma)/4)");
    cmd->add_option("--out", a.out, "output directory")->capture_default_str();
}

int run_instanton(const CommonArgs& a) {
    namespace fs = std::filesystem;
    fs::create_directories(a.out);
    for (double beta : a.betas) {
        double l_max = 20.0;
        for (double l : a.ls) l_max = std::max(l_max, 2.0 * l);
        nls_instanton* inst = nullptr;
        if (nls_status s = nls_instanton_create(beta, l_max, a.inv_h, &inst); s != NLS_OK)
            return status_exit(s);
        const double l_dump = a.ls.empty() ? l_max : a.ls.front();
        char namebuf[64];
        std::snprintf(namebuf, sizeof namebuf, "instanton_%g.csv", beta);
        const std::string path = (fs::path(a.out) / namebuf).string();
        if (nls_status s = nls_instanton_write_csv(inst, l_dump, path.c_str()); s != NLS_OK) {
            nls_instanton_free(inst);
            return status_exit(s);
        }
        std::printf("beta=%g  m_beta=%.12f  sigma=%.12f  alpha_fit=%.6f (R^2=%.6f)  residual=%.3e\n",
                    beta, nls_instanton_mbeta(inst), nls_instanton_sigma(inst),
                    nls_instanton_alpha_fit(inst), nls_instanton_fit_r2(inst),
                    nls_instanton_residual(inst));
        std::printf("  profile written to %s\n", path.c_str());
        nls_instanton_free(inst);
    }
    return 0;
}

int run_spectrum_or_cheeger(const CommonArgs& a, bool with_cheeger) {
    namespace fs = std::filesystem;
    if (a.ls.empty()) {
        std::fprintf(stderr, "error: at least one --L is required\n");
        return 2;
    }
    fs::create_directories(a.out);
    for (double beta : a.betas) {
        double l_max = 20.0;
        for (double l : a.ls) l_max = std::max(l_max, 2.0 * l);
        nls_instanton* inst = nullptr;
        if (nls_status s = nls_instanton_create(beta, l_max, a.inv_h, &inst); s != NLS_OK)
            return status_exit(s);
        for (double l : a.ls) {
            nls_spectral* sp = nullptr;
            if (nls_status s = nls_spectral_compute(inst, l, to_bc(a.bc), a.eps0, &sp); s != NLS_OK) {
                nls_instanton_free(inst);
                return status_exit(s);
            }
            char namebuf[96];
            if (!with_cheeger) {
                std::snprintf(namebuf, sizeof namebuf, "spectrum_%g_%g.csv", beta, l);
                const std::string path = (fs::path(a.out) / namebuf).string();
                if (nls_status s = nls_spectral_write_csv(sp, path.c_str()); s != NLS_OK) {
                    nls_spectral_free(sp);
                    nls_instanton_free(inst);
                    return status_exit(s);
                }
                std::printf("beta=%g L=%g  nu0=%.15f  mu1=%.6e  mu2=%.9f  gamma=%.4f -> %s\n", beta, l,
                            nls_spectral_nu0(sp), nls_spectral_mu1(sp), nls_spectral_mu2(sp),
                            nls_spectral_harnack_gamma(sp), path.c_str());
            } else {
                nls_cheeger* ch = nullptr;
                if (nls_status s = nls_cheeger_compute(sp, &ch); s != NLS_OK) {
                    nls_spectral_free(sp);
                    nls_instanton_free(inst);
                    return status_exit(s);
                }
                std::snprintf(namebuf, sizeof namebuf, "cheeger_%g_%g.csv", beta, l);
                const std::string path = (fs::path(a.out) / namebuf).string();
                if (nls_status s = nls_cheeger_write_csv(ch, path.c_str()); s != NLS_OK) {
                    nls_cheeger_free(ch);
                    nls_spectral_free(sp);
                    nls_instanton_free(inst);
                    return status_exit(s);
                }
                std::printf("beta=%g L=%g  k=%.9f on [%.3f, %.3f]  D=%.6e  sandwich %s -> %s\n", beta, l,
                            nls_cheeger_k_scan(ch), nls_cheeger_argmin_a(ch), nls_cheeger_argmin_b(ch),
                            nls_cheeger_big_d(ch), nls_cheeger_sandwich_ok(ch) ? "holds" : "VIOLATED",
                            path.c_str());
                nls_cheeger_free(ch);
            }
            nls_spectral_free(sp);
        }
        nls_instanton_free(inst);
    }
    return 0;
}

int run_scan_cmd(const CommonArgs& a) {
    nls_scan* scan = nullptr;
    nls_status s;
    if (!a.config.empty()) {
        s = nls_scan_run_config(a.config.c_str(), &scan);
    } else {
        if (a.ls.empty()) {
            std::fprintf(stderr, "error: at least one --L (or --config) is required\n");
            return 2;
        }
        s = nls_scan_run(a.betas.data(), a.betas.size(), a.ls.data(), a.ls.size(), a.inv_h, to_bc(a.bc),
                         a.eps0, a.workers, &scan);
    }
    if (s != NLS_OK) return status_exit(s);

    if (nls_scan_rows(scan) == 0) {
        std::fprintf(stderr, "warning: empty scan (no cells)\n");
        nls_scan_free(scan);
        return 0;
    }
    if (nls_status w = nls_scan_write_outputs(scan, a.out.c_str()); w != NLS_OK) {
        nls_scan_free(scan);
        return status_exit(w);
    }
    for (size_t i = 0; i < nls_scan_rows(scan); ++i) {
        const char* st = nls_scan_status(scan, i);
        double beta = 0, l = 0, mu2 = 0, k = 0;
        nls_scan_value(scan, i, "beta", &beta);
        nls_scan_value(scan, i, "L", &l);
        nls_scan_value(scan, i, "mu2", &mu2);
        nls_scan_value(scan, i, "k_scan", &k);
        std::printf("beta=%g L=%g  status=%s  mu2=%.9f  k=%.9f\n", beta, l, st, mu2, k);
    }
    bool any_fail = false;
    bool any_numeric_fail = false;
    for (size_t i = 0; i < nls_scan_rows(scan); ++i) {
        std::string st = nls_scan_status(scan, i);
        if (st.rfind("failed", 0) == 0) any_numeric_fail = true;
    }
    for (size_t v = 0; v < nls_scan_verdicts(scan); ++v)
        if (!nls_scan_verdict_pass(scan, v, 0)) any_fail = true;
    std::printf("outputs written under %s (scan.csv, plots/, profiles/, verdict.txt)\n", a.out.c_str());
    nls_scan_free(scan);
    if (any_numeric_fail) return 3;
    return any_fail ? 1 : 0;
}

int run_verify(const std::string& csv, const std::string& out) {
    int failed = 0;
    const std::string vpath = out.empty() ? std::string() : out;
    nls_status s = nls_verify_csv(csv.c_str(), vpath.empty() ? nullptr : vpath.c_str(), &failed);
    if (s != NLS_OK) return status_exit(s);
    std::printf("verify: %d failing verdict(s)\n", failed);
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectra of nonlocal linearized operators on bounded intervals"};
    app.require_subcommand(1);
    app.footer("Environment: NLSPECTRA_SEED is reserved; the pipeline is deterministic and ignores it.");

    CommonArgs inst_args, spec_args, cheeg_args, scan_args;
    std::string verify_csv, verify_out;

    CLI::App* c_inst = app.add_subcommand("instanton", "solve the connection profile and its decay fit");
    add_common(c_inst, inst_args, true);

    CLI::App* c_spec = app.add_subcommand("spectrum", "principal eigenpair and full spectrum on [-L, L]");
    add_common(c_spec, spec_args, true);

    CLI::App* c_cheeg = app.add_subcommand("cheeger", "Markov chain, Cheeger constant and sandwich");
    add_common(c_cheeg, cheeg_args, true);

    CLI::App* c_scan = app.add_subcommand("scan", "full (beta, L) sweep with CSV/plot outputs");
    add_common(c_scan, scan_args, true);
    c_scan->add_option("--workers", scan_args.workers, "concurrent cells")->capture_default_str();
    c_scan->add_option("--config", scan_args.config, "key = value config file (repeated beta/L keys)");

    CLI::App* c_verify = app.add_subcommand("verify", "re-run the verdict on an existing scan.csv");
    c_verify->add_option("--scan", verify_csv, "path to scan.csv")->required();
    c_verify->add_option("--out", verify_out, "verdict output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (c_inst->parsed()) return run_instanton(inst_args);
        if (c_spec->parsed()) return run_spectrum_or_cheeger(spec_args, false);
        if (c_cheeg->parsed()) return run_spectrum_or_cheeger(cheeg_args, true);
        if (c_scan->parsed()) return run_scan_cmd(scan_args);
        if (c_verify->parsed()) return run_verify(verify_csv, verify_out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 2;
}
