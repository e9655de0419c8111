// sipcli: families, spectra, wavefunctions and verification reports from the command line.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sip/cli.hpp"

namespace {

namespace cli = sip::cli;

// Inline overrides shared by every job-taking subcommand.
struct JobFlags {
    std::string config;
    bool json = false;
    std::optional<int> kmax;
    std::string grid;
    std::string oracle_grid;
    std::optional<double> tol;
    std::string family;
    std::string extension;
    std::string m;
    std::vector<std::string> couplings;
    std::string rho_invariant;
    std::optional<double> eps;
    std::optional<double> rho;
    std::optional<int> ell;
    bool imaginary_rho = false;
    std::optional<int> k;
};

void add_job_flags(CLI::App* app, JobFlags& f, bool with_k) {
    app->add_option("--config", f.config, "JSON job file");
    app->add_flag("--json", f.json, "emit JSON instead of text");
    app->add_option("--kmax", f.kmax, "highest state index");
    app->add_option("--grid", f.grid, "evaluation grid a,b,N");
    app->add_option("--oracle-grid", f.oracle_grid, "finite-difference grid a,b,N");
    app->add_option("--tol", f.tol, "tolerance override");
    app->add_option("--family", f.family, "family id (see 'families list')");
    app->add_option("--extension", f.extension, "extension id ext-1 .. ext-11");
    app->add_option("--m", f.m, "translated parameters m1,m2,...");
    app->add_option("--coupling", f.couplings, "invariant coupling EXPR,beta,d (repeatable)");
    app->add_option("--rho-invariant", f.rho_invariant, "rho invariant for the generalized families");
    app->add_option("--eps,--beta", f.eps, "effective first parameter (beta for harm-osc)");
    app->add_option("--rho", f.rho, "effective rho");
    app->add_option("--ell", f.ell, "extension degree l");
    app->add_flag("--imaginary-rho", f.imaginary_rho, "use i*rho (ext-11)");
    if (with_k) app->add_option("--k", f.k, "state index");
}

cli::JobConfig job_config(const JobFlags& f) {
    cli::JobConfig c = f.config.empty() ? cli::JobConfig{} : cli::load_config(f.config);
    if (!f.family.empty() || !f.extension.empty()) {
        c.family.reset();
        c.extension.reset();
        if (!f.family.empty()) c.family = f.family;
        if (!f.extension.empty()) c.extension = f.extension;
    }
    if (!f.m.empty()) {
        c.m = cli::parse_list(f.m);
        c.eps.reset();
        c.rho.reset();
    }
    for (const auto& s : f.couplings) c.couplings.push_back(cli::parse_coupling(s));
    if (!f.rho_invariant.empty()) c.rho_invariant = f.rho_invariant;
    if (f.eps || f.rho) {
        c.m.clear();
        if (f.eps) c.eps = f.eps;
        if (f.rho) c.rho = f.rho;
    }
    if (f.ell) c.ell = *f.ell;
    if (f.imaginary_rho) c.imaginary_rho = true;
    if (!f.grid.empty()) c.grid = cli::parse_grid(f.grid);
    if (!f.oracle_grid.empty()) c.oracle = cli::parse_grid(f.oracle_grid);
    if (f.kmax) c.kmax = f.kmax;
    if (f.tol) c.tol = f.tol;
    if (f.k) c.k = f.k;
    return c;
}

int emit(const cli::Output& out) {
    (out.code == cli::kConfig || out.code == cli::kNumerical ? std::cerr : std::cout) << out.text;
    return out.code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shape-invariant potentials: families, spectra and identity checks"};
    app.require_subcommand(1);

    auto* families = app.add_subcommand("families", "family and extension catalogue");
    families->require_subcommand(1);
    auto* list = families->add_subcommand("list", "list family and extension ids");
    bool list_ext = false, list_json = false;
    list->add_flag("--extensions", list_ext, "include the rational extensions");
    list->add_flag("--json", list_json, "emit JSON");

    JobFlags spec_f, wave_f, verify_f, oracle_f;
    auto* spectrum = app.add_subcommand("spectrum", "table of E_k");
    add_job_flags(spectrum, spec_f, false);
    bool with_oracle = false;
    spectrum->add_flag("--oracle", with_oracle, "add finite-difference gaps and deviations");

    auto* wave = app.add_subcommand("wavefunction", "sample zeta_k and V on a grid (CSV or JSON)");
    add_job_flags(wave, wave_f, true);

    auto* verify = app.add_subcommand("verify", "run one identity check");
    std::string which;
    verify->add_option("check", which, "si | cond1 | cond2 | ext-si | ladder | orthonormal")
        ->required()
        ->check(CLI::IsMember({"si", "cond1", "cond2", "ext-si", "ladder", "orthonormal"}));
    add_job_flags(verify, verify_f, false);

    auto* oracle = app.add_subcommand("oracle", "finite-difference oracle");
    oracle->require_subcommand(1);
    auto* compare = oracle->add_subcommand("compare", "compare E_k with finite-difference gaps");
    add_job_flags(compare, oracle_f, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kConfig;
    }

    if (*list) return emit(cli::cmd_list(list_ext, list_json));
    if (*spectrum) {
        return emit(cli::guarded([&] {
            const auto c = job_config(spec_f);
            return cli::cmd_spectrum(cli::resolve(c), c, with_oracle, spec_f.json);
        }));
    }
    if (*wave) {
        return emit(cli::guarded([&] {
            const auto c = job_config(wave_f);
            return cli::cmd_wavefunction(cli::resolve(c), c, wave_f.json);
        }));
    }
    if (*verify) {
        return emit(cli::guarded([&] {
            const auto c = job_config(verify_f);
            return cli::cmd_verify(cli::resolve(c), c, which, verify_f.json);
        }));
    }
    if (*compare) {
        return emit(cli::guarded([&] {
            const auto c = job_config(oracle_f);
            return cli::cmd_oracle_compare(cli::resolve(c), c, oracle_f.json);
        }));
    }
    return cli::kConfig;
}
