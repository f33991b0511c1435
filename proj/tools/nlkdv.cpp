// nlkdv: solver and experiment harness for nonlocally regularized KdV-type
// equations u_t + alpha * ((f(u))_x + kappa u_xxx) = 0.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nlkdv/errors.hpp"
#include "nlkdv/experiment.hpp"

namespace {

void print_summary(const nlkdv::ExperimentConfig& cfg,
                   const std::vector<std::string>& files) {
    std::cout << "command: " << cfg.command << "  kernel: " << cfg.kernel
              << "  f(u) = " << cfg.nonlinearity << "  kappa = " << cfg.kappa
              << "\n";
    for (const auto& f : files) std::cout << "wrote " << f << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-discrete solver for nonlocally regularized KdV-type equations"};
    app.require_subcommand(1);

    std::string config_path, preset;
    bool scale = false;

    nlkdv::ExperimentConfig cfg;
    std::vector<double> domain_flag;
    std::vector<double> h_flag;
    std::vector<int> n_flag;
    std::vector<double> out_times_flag;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--preset", preset,
                        "named setup (fig1, fig2-kdv, fig2-bbm, fig3-kdv, fig3-bbm, "
                        "fig4, table1)");
        sub->add_flag("--scale", scale, "desk-scale variant of the preset");
        sub->add_option("--kernel", cfg.kernel,
                        "rosenau-kdv | rosenau-bbm-kdv | exponential | gaussian");
        sub->add_option("--nonlinearity", cfg.nonlinearity,
                        "polynomial f(u), e.g. \"u + u^2/2\"");
        sub->add_option("--kappa", cfg.kappa, "dispersion coefficient (> 0)");
        sub->add_option("--domain", domain_flag, "x_left x_right")->expected(2);
        sub->add_option("--h-list", h_flag, "mesh size(s), descending for sweeps");
        sub->add_option("--n-list", n_flag, "window half-counts N for localize");
        sub->add_option("--t-end", cfg.t_end, "final time");
        sub->add_option("--output-times", out_times_flag, "additional output times");
        sub->add_option("--rel-tol", cfg.rel_tol, "relative tolerance");
        sub->add_option("--abs-tol", cfg.abs_tol, "absolute tolerance");
        sub->add_option("--output-prefix", cfg.output_prefix, "output file prefix");
        sub->add_flag("--compare-exact", cfg.compare_exact,
                      "compare against the exact solitary wave");
        sub->add_option("--family", cfg.family,
                        "solitary family for initial data / exact comparison");
        sub->add_option("--richardson", cfg.richardson,
                        "converge mode: auto | yes | no");
        sub->add_flag("--fused", cfg.fused, "use the fused rhs form");
        sub->add_option("--conv-method", cfg.conv_method, "auto | direct | fft");
        sub->add_option("--quad-step", cfg.quad_step, "kernel-check quadrature step");
        sub->add_option("--quad-halfwidth", cfg.quad_halfwidth,
                        "kernel-check quadrature halfwidth");
    };

    CLI::App* sim = app.add_subcommand("simulate", "run one simulation");
    CLI::App* con = app.add_subcommand("converge", "h-sweep convergence study");
    CLI::App* loc = app.add_subcommand("localize", "N-sweep localization study");
    CLI::App* ker = app.add_subcommand("kernel-check", "kernel condition report");
    for (CLI::App* sub : {sim, con, loc, ker}) add_common(sub);

    CLI11_PARSE(app, argc, argv);
    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();

    try {
        nlkdv::ExperimentConfig base;
        if (!preset.empty() && !config_path.empty())
            throw nlkdv::config_error("--preset and --config are mutually exclusive",
                                      "preset");
        if (!preset.empty()) {
            base = nlkdv::preset_config(preset, scale);
            if (base.command != command)
                throw nlkdv::config_error("preset '" + preset + "' is a '" +
                                          base.command + "' preset", "preset");
        } else if (!config_path.empty()) {
            base = nlkdv::load_config(config_path);
        }
        base.command = command;

        // individual flags override preset/config values
        auto used = [&](const char* name) { return sub->count(name) > 0; };
        if (used("--kernel")) base.kernel = cfg.kernel;
        if (used("--nonlinearity")) base.nonlinearity = cfg.nonlinearity;
        if (used("--kappa")) base.kappa = cfg.kappa;
        if (used("--domain")) base.domain = {domain_flag[0], domain_flag[1]};
        if (used("--h-list")) base.h_list = h_flag;
        if (used("--n-list")) base.n_list = n_flag;
        if (used("--t-end")) base.t_end = cfg.t_end;
        if (used("--output-times")) base.output_times = out_times_flag;
        if (used("--rel-tol")) base.rel_tol = cfg.rel_tol;
        if (used("--abs-tol")) base.abs_tol = cfg.abs_tol;
        if (used("--output-prefix")) base.output_prefix = cfg.output_prefix;
        if (used("--compare-exact")) base.compare_exact = cfg.compare_exact;
        if (used("--family")) base.family = cfg.family;
        if (used("--richardson")) base.richardson = cfg.richardson;
        if (used("--fused")) base.fused = cfg.fused;
        if (used("--conv-method")) base.conv_method = cfg.conv_method;
        if (used("--quad-step")) base.quad_step = cfg.quad_step;
        if (used("--quad-halfwidth")) base.quad_halfwidth = cfg.quad_halfwidth;

        const std::vector<std::string> files = nlkdv::run_experiment(base);
        print_summary(base, files);
        return 0;
    } catch (const nlkdv::config_error& e) {
        std::cerr << "config error [" << e.field() << "]: " << e.what() << "\n";
        return 2;
    } catch (const nlkdv::divergence_error& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
