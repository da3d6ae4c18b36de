// Exercises the shared-library surface exactly as an external client would:
// only nlspectra.h, no internal headers.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "nlspectra.h"

namespace fs = std::filesystem;

TEST_CASE("version and status strings") {
    CHECK(std::string(nls_version()) == "0.1.0");
    CHECK(std::string(nls_status_name(NLS_OK)) == "ok");
    CHECK(std::string(nls_status_name(NLS_ERR_INVALID_ARGUMENT)) == "invalid argument");
}

TEST_CASE("mbeta through the C surface") {
    double m = 0;
    REQUIRE(nls_solve_mbeta(2.0, &m) == NLS_OK);
    CHECK(std::fabs(m - 0.957504) < 1e-6);

    CHECK(nls_solve_mbeta(0.5, &m) == NLS_ERR_INVALID_ARGUMENT);
    CHECK(std::string(nls_last_error()).size() > 0);
    CHECK(nls_solve_mbeta(2.0, nullptr) == NLS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("instanton handle lifecycle") {
    nls_instanton* inst = nullptr;
    REQUIRE(nls_instanton_create(2.0, 10.0, 20, &inst) == NLS_OK);
    REQUIRE(inst != nullptr);

    CHECK(std::fabs(nls_instanton_mbeta(inst) - 0.957504) < 1e-6);
    CHECK(nls_instanton_sigma(inst) < 1.0);
    CHECK(nls_instanton_alpha_fit(inst) > 1.0);
    CHECK(nls_instanton_fit_r2(inst) > 0.99);
    CHECK(nls_instanton_residual(inst) < 1e-10);
    REQUIRE(nls_instanton_size(inst) == 401);

    std::vector<double> x(401), m(401);
    REQUIRE(nls_instanton_samples(inst, x.data(), m.data(), nullptr, nullptr, x.size()) == NLS_OK);
    CHECK(x.front() == -10.0);
    CHECK(x.back() == 10.0);
    CHECK(m[200] == 0.0);

    const char* csv = "capi_instanton.csv";
    REQUIRE(nls_instanton_write_csv(inst, 2.0, csv) == NLS_OK);
    {
        std::ifstream is(csv);
        std::string header;
        std::getline(is, header);
        CHECK(header == "x,m_bar,m_bar_prime,p");
    }
    std::remove(csv);

    // invalid creation surfaces a status and a message
    nls_instanton* bad = nullptr;
    CHECK(nls_instanton_create(0.9, 10.0, 20, &bad) == NLS_ERR_INVALID_ARGUMENT);
    CHECK(bad == nullptr);

    nls_instanton_free(inst);
}

TEST_CASE("spectral and cheeger handles") {
    nls_instanton* inst = nullptr;
    REQUIRE(nls_instanton_create(2.0, 10.0, 20, &inst) == NLS_OK);

    nls_spectral* sp = nullptr;
    REQUIRE(nls_spectral_compute(inst, 5.0, NLS_BC_DIRICHLET, 0.0, &sp) == NLS_OK);
    CHECK(std::fabs(nls_spectral_nu0(sp) - 1.0) < 1e-6);
    CHECK(std::fabs(nls_spectral_mu1(sp)) < 1e-9);
    CHECK(nls_spectral_mu2(sp) > 0.1);
    CHECK(nls_spectral_trial_bound(sp) <= nls_spectral_nu0(sp) + 1e-12);
    CHECK(nls_spectral_harnack_gamma(sp) >= 1.0);
    CHECK(nls_spectral_zeta1(sp) > 0.0);
    CHECK(nls_spectral_r0(sp) > 0.0);
    CHECK(nls_spectral_r1(sp) > 0.0);
    CHECK(nls_spectral_alpha_eps0(sp) > 0.0);
    CHECK(nls_spectral_distance_to_mbar_prime(sp) < 1e-4);

    const int n = nls_spectral_size(sp);
    REQUIRE(n == 201);
    std::vector<double> xs(n), v0(n), eig(n);
    REQUIRE(nls_spectral_eigenfunction(sp, xs.data(), v0.data(), xs.size()) == NLS_OK);
    for (double v : v0) CHECK(v > 0.0);
    REQUIRE(nls_spectral_eigenvalues(sp, eig.data(), eig.size()) == NLS_OK);
    CHECK(std::fabs(eig[0] - nls_spectral_nu0(sp)) < 1e-10);

    const char* scsv = "capi_spectrum.csv";
    REQUIRE(nls_spectral_write_csv(sp, scsv) == NLS_OK);
    std::remove(scsv);

    nls_cheeger* ch = nullptr;
    REQUIRE(nls_cheeger_compute(sp, &ch) == NLS_OK);
    CHECK(nls_cheeger_k_scan(ch) > 0.1);
    CHECK(nls_cheeger_sandwich_ok(ch) == 1);
    CHECK(nls_cheeger_big_d(ch) > 0.0);
    CHECK(nls_cheeger_big_d(ch) <= nls_cheeger_k_scan(ch));
    CHECK(nls_cheeger_d1(ch) < 1.0);
    CHECK(nls_cheeger_q_row_defect(ch) < 1e-9);
    CHECK(nls_cheeger_q_reversibility_defect(ch) < 1e-10);
    CHECK(nls_cheeger_argmin_a(ch) <= nls_cheeger_argmin_b(ch));

    const char* ccsv = "capi_cheeger.csv";
    REQUIRE(nls_cheeger_write_csv(ch, ccsv) == NLS_OK);
    {
        std::ifstream is(ccsv);
        std::string header;
        std::getline(is, header);
        CHECK(header.rfind("L,beta,k_scan,a_min,b_min", 0) == 0);
    }
    std::remove(ccsv);

    nls_cheeger_free(ch);
    nls_spectral_free(sp);
    nls_instanton_free(inst);
}

TEST_CASE("scan through the C surface with outputs and verify round trip") {
    const double betas[] = {2.0};
    const double ls[] = {2.0, 3.0, 5.0, 7.0};
    nls_scan* scan = nullptr;
    REQUIRE(nls_scan_run(betas, 1, ls, 4, 10, NLS_BC_DIRICHLET, 0.0, 2, &scan) == NLS_OK);
    REQUIRE(nls_scan_rows(scan) == 4);
    for (size_t i = 0; i < 4; ++i) CHECK(std::string(nls_scan_status(scan, i)) == "ok");

    double v = 0;
    REQUIRE(nls_scan_value(scan, 0, "mu2", &v) == NLS_OK);
    CHECK(v > 0.0);
    CHECK(nls_scan_value(scan, 0, "no_such_column", &v) == NLS_ERR_INVALID_ARGUMENT);
    CHECK(nls_scan_value(scan, 99, "mu2", &v) == NLS_ERR_INVALID_ARGUMENT);

    const fs::path out = "capi_scan_out";
    fs::remove_all(out);
    REQUIRE(nls_scan_write_outputs(scan, out.string().c_str()) == NLS_OK);
    CHECK(fs::exists(out / "scan.csv"));
    CHECK(fs::exists(out / "verdict.txt"));
    CHECK(nls_scan_verdicts(scan) == 1);  // L spans a factor 3.5
    (void)nls_scan_verdict_pass(scan, 0, 0);
    CHECK(nls_scan_verdict_beta(scan, 0) == 2.0);

    int failed = -1;
    REQUIRE(nls_verify_csv((out / "scan.csv").string().c_str(),
                           (out / "verify.txt").string().c_str(), &failed) == NLS_OK);
    CHECK(failed >= 0);
    CHECK(fs::exists(out / "verify.txt"));

    fs::remove_all(out);
    nls_scan_free(scan);

    CHECK(nls_scan_run(nullptr, 1, ls, 2, 10, NLS_BC_DIRICHLET, 0.0, 1, &scan) ==
          NLS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("config-file scan via the C surface") {
    const char* cfg_path = "capi_scan_config.txt";
    {
        std::ofstream os(cfg_path);
        os << "beta = 2\nL = 2\nL = 3\ninv_h = 10\n";
    }
    nls_scan* scan = nullptr;
    REQUIRE(nls_scan_run_config(cfg_path, &scan) == NLS_OK);
    CHECK(nls_scan_rows(scan) == 2);
    nls_scan_free(scan);
    std::remove(cfg_path);

    CHECK(nls_scan_run_config("missing_config.txt", &scan) != NLS_OK);
}
