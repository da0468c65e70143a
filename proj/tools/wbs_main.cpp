#include <cmath>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "wbs/cli_app.hpp"

namespace {

// "--p inf" and "--p 2" both accepted
bool parse_p(const std::string& s, double& out) {
    if (s == "inf" || s == "infinity" || s == "Inf") {
        out = std::numeric_limits<double>::infinity();
        return true;
    }
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted bilateral shift cyclicity toolkit"};
    app.require_subcommand(1);

    wbs::RunConfig cfg;
    std::string p_text = "2";
    std::string family, spec_file, rho;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--family", family, "inline family, e.g. beauzamy:2,1 or inline JSON");
        sub->add_option("--spec-file", spec_file, "path to a weight-spec JSON file");
        sub->add_option("--p", p_text, "sequence space exponent in [1, inf] ('inf' = c_0)");
        sub->add_option("--tol", cfg.tol_linear, "witness tolerance, linear magnitude (default 1e-6)");
        sub->add_option("--m-max", cfg.m_max, "m horizon (default 64)");
        sub->add_option("--n-max", cfg.n_max, "n horizon (default 4096)");
        sub->add_option("--j-max", cfg.j_max, "j horizon (default 64)");
        sub->add_option("--format", cfg.format, "json or csv (default json)");
        sub->add_option("--out", cfg.out_path, "output path (default stdout)");
        sub->add_option("--workers", cfg.workers, "worker threads; affects wall time only");
        sub->add_option("--seed", cfg.seed, "rng seed for sampled verifications (default 0)");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "run all applicable criteria");
    add_common(analyze);
    analyze->add_option("--k", cfg.k, "growth exponent k for the alpha-sequence test");
    analyze->add_option("--rho", rho, "rho spec JSON for the alpha-sequence test");
    analyze->add_option("--lq-m", cfg.lq_m, "m for the direct-sum obstruction (default 0)");
    analyze->add_option("--radius", cfg.sc_radius, "support radius for sc_witness (default 2)");

    CLI::App* classify = app.add_subcommand("classify", "classification report over C1..C6");
    add_common(classify);

    CLI::App* approx = app.add_subcommand("approximate", "approximate transition f_{-k} -> f_{-n}");
    add_common(approx);
    approx->add_option("--k", cfg.k, "source index k >= 1");
    approx->add_option("--n", cfg.n, "target index n >= 1");
    approx->add_option("--eps", cfg.eps, "transition tolerance eps > 0");

    CLI::App* families = app.add_subcommand("families", "list built-in weight families");
    families->add_option("--format", cfg.format, "json or csv");
    families->add_option("--out", cfg.out_path, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return wbs::kExitInput;
    }

    if (analyze->parsed()) cfg.command = "analyze";
    if (classify->parsed()) cfg.command = "classify";
    if (approx->parsed()) cfg.command = "approximate";
    if (families->parsed()) cfg.command = "families";

    if (!parse_p(p_text, cfg.p)) {
        std::cerr << "error: --p must be a number or 'inf'\n";
        return wbs::kExitInput;
    }
    if (!family.empty()) cfg.family_inline = family;
    if (!spec_file.empty()) cfg.spec_file = spec_file;
    if (!rho.empty()) cfg.rho_json = rho;

    return wbs::run_command(cfg);
}
