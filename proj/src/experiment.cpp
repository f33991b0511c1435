#include "nlkdv/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nlkdv/errors.hpp"
#include "nlkdv/solutions.hpp"

namespace nlkdv {

namespace {

using ordered_json = nlohmann::ordered_json;

SolitaryFamily family_from_name(const std::string& name) {
    if (name == "rosenau-kdv" || name.empty()) return SolitaryFamily::RosenauKdV;
    if (name == "rosenau-bbm-kdv") return SolitaryFamily::RosenauBBMKdV;
    throw config_error("unknown solitary family '" + name +
                       "' (expected rosenau-kdv or rosenau-bbm-kdv)", "family");
}

Kernel kernel_from_config(const ExperimentConfig& c) {
    auto kind = kernel_kind_from_name(c.kernel);
    if (!kind)
        throw config_error("unknown kernel '" + c.kernel + "'", "kernel");
    return make_kernel(*kind);
}

ProblemOptions options_from_config(const ExperimentConfig& c) {
    ProblemOptions o;
    o.fused = c.fused;
    if (c.conv_method == "auto") o.method = ConvolveMethod::Auto;
    else if (c.conv_method == "direct") o.method = ConvolveMethod::Direct;
    else if (c.conv_method == "fft") o.method = ConvolveMethod::Fft;
    else throw config_error("conv-method must be auto, direct or fft", "conv-method");
    return o;
}

StudySetup setup_from_config(const ExperimentConfig& c) {
    StudySetup s;
    s.kernel = kernel_from_config(c);
    try {
        s.nonlinearity = parse_nonlinearity(c.nonlinearity);
    } catch (const config_error&) {
        throw;
    } catch (const std::exception& e) {
        throw config_error(e.what(), "nonlinearity");
    }
    if (!(c.kappa > 0)) throw config_error("kappa must be positive", "kappa");
    s.kappa = c.kappa;
    if (!(c.t_end > 0)) throw config_error("t-end must be positive", "t-end");
    s.t_end = c.t_end;
    if (!(c.rel_tol > 0 && c.rel_tol < 1))
        throw config_error("rel-tol must lie in (0, 1)", "rel-tol");
    if (!(c.abs_tol > 0 && c.abs_tol < 1))
        throw config_error("abs-tol must lie in (0, 1)", "abs-tol");
    s.tol.rel_tol = c.rel_tol;
    s.tol.abs_tol = c.abs_tol;
    s.options = options_from_config(c);

    // all standard experiments start from the solitary profile of `family`
    const SolitaryWave wave = solitary_params(family_from_name(c.family));
    s.initial = [wave](double x) { return solitary_profile(wave, x, 0.0); };
    if (c.compare_exact || c.command == "localize") {
        s.exact = [wave](double x, double t) { return solitary_profile(wave, x, t); };
    }
    return s;
}

UniformGrid grid_from_config(const ExperimentConfig& c, double h) {
    try {
        return make_grid(c.domain[0], c.domain[1], h);
    } catch (const std::exception& e) {
        throw config_error(e.what(), "h");
    }
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"fig1", "fig2-kdv", "fig2-bbm", "fig3-kdv", "fig3-bbm", "fig4", "table1"};
}

ExperimentConfig preset_config(const std::string& name, bool scale) {
    ExperimentConfig c;
    c.preset = name;
    c.scale = scale;
    if (name == "fig1") {
        c.command = "simulate";
        c.kernel = "rosenau-kdv";
        c.family = "rosenau-kdv";
        c.compare_exact = true;
        c.domain = {-40.0, 80.0};
        c.h_list = {0.5};
        c.t_end = scale ? 10.0 : 40.0;
    } else if (name == "fig2-kdv" || name == "fig2-bbm") {
        const bool bbm = name == "fig2-bbm";
        c.command = "converge";
        c.kernel = bbm ? "rosenau-bbm-kdv" : "rosenau-kdv";
        c.family = c.kernel;
        c.compare_exact = true;
        c.richardson = "no";
        if (scale) {
            c.domain = bbm ? std::array<double, 2>{-60.0, 100.0}
                           : std::array<double, 2>{-60.0, 80.0};
            c.h_list = {0.4, 0.2, 0.1, 0.05};
            c.t_end = 10.0;
        } else {
            c.domain = bbm ? std::array<double, 2>{-80.0, 120.0}
                           : std::array<double, 2>{-100.0, 100.0};
            c.h_list = {1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125};
            c.t_end = 40.0;
        }
    } else if (name == "fig3-kdv" || name == "fig3-bbm") {
        const bool bbm = name == "fig3-bbm";
        c.command = "localize";
        c.kernel = bbm ? "rosenau-bbm-kdv" : "rosenau-kdv";
        c.family = c.kernel;
        c.compare_exact = true;
        c.h_list = {0.05};
        if (scale) {
            c.n_list = bbm ? std::vector<int>{300, 400, 500, 650, 900, 1100}
                           : std::vector<int>{250, 350, 450, 600, 900, 1100};
            c.t_end = 10.0;
        } else {
            c.n_list = {600, 800, 1000, 1200, 1600, 2400};
            c.t_end = 40.0;
        }
    } else if (name == "fig4") {
        c.command = "simulate";
        c.kernel = "gaussian";
        c.family = "rosenau-kdv";  // initial-profile parameters only
        c.compare_exact = false;
        c.domain = {-40.0, 80.0};
        c.h_list = {0.05};
        c.t_end = scale ? 10.0 : 40.0;
    } else if (name == "table1") {
        c.command = "converge";
        c.kernel = "gaussian";
        c.family = "rosenau-kdv";
        c.compare_exact = false;
        c.richardson = "yes";
        if (scale) {
            c.domain = {-60.0, 80.0};
            c.h_list = {0.4, 0.2, 0.1, 0.05, 0.025};
            c.t_end = 10.0;
        } else {
            c.domain = {-110.0, 130.0};
            c.h_list = {1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125};
            c.t_end = 40.0;
        }
    } else {
        throw config_error("unknown preset '" + name + "'", "preset");
    }
    if (scale) {
        c.rel_tol = 1e-8;
        c.abs_tol = 1e-8;
    }
    c.output_prefix = name;
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file " + path, "config");
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw config_error(std::string("config parse error: ") + e.what(), "config");
    }
    ExperimentConfig c;
    c.command = j.value("command", c.command);
    c.kernel = j.value("kernel", c.kernel);
    c.nonlinearity = j.value("nonlinearity", c.nonlinearity);
    c.kappa = j.value("kappa", c.kappa);
    if (j.contains("domain")) c.domain = {j["domain"][0], j["domain"][1]};
    if (j.contains("h_list")) c.h_list = j["h_list"].get<std::vector<double>>();
    if (j.contains("n_list")) c.n_list = j["n_list"].get<std::vector<int>>();
    c.t_end = j.value("t_end", c.t_end);
    if (j.contains("output_times"))
        c.output_times = j["output_times"].get<std::vector<double>>();
    c.rel_tol = j.value("rel_tol", c.rel_tol);
    c.abs_tol = j.value("abs_tol", c.abs_tol);
    c.output_prefix = j.value("output_prefix", c.output_prefix);
    c.compare_exact = j.value("compare_exact", c.compare_exact);
    c.family = j.value("family", c.family);
    c.richardson = j.value("richardson", c.richardson);
    c.fused = j.value("fused", c.fused);
    c.conv_method = j.value("conv_method", c.conv_method);
    c.quad_step = j.value("quad_step", c.quad_step);
    c.quad_halfwidth = j.value("quad_halfwidth", c.quad_halfwidth);
    c.preset = j.value("preset", c.preset);
    c.scale = j.value("scale", c.scale);
    return c;
}

ExperimentResult execute(const ExperimentConfig& c) {
    ExperimentResult result;
    if (c.command == "kernel-check") {
        const Kernel k = kernel_from_config(c);
        if (!(c.quad_step > 0)) throw config_error("quad-step must be positive", "quad-step");
        if (!(c.quad_halfwidth > 0))
            throw config_error("quad-halfwidth must be positive", "quad-halfwidth");
        result.kernel_report = verify_conditions(k, c.quad_step, c.quad_halfwidth);
        return result;
    }

    StudySetup setup = setup_from_config(c);
    if (c.command == "simulate") {
        if (c.h_list.empty()) throw config_error("h is required", "h");
        const UniformGrid grid = grid_from_config(c, c.h_list[0]);
        Problem p = assemble(setup.kernel, setup.nonlinearity, setup.kappa, grid,
                             restrict_to_grid(setup.initial, grid), setup.options);
        IntegrationResult r = integrate(p, setup.t_end, c.output_times, setup.tol);
        result.stats = r.stats;
        result.profile_times = r.times;
        result.profiles = std::move(r.states);
        const GridFunction& fin = result.profiles.back();
        int ipk = 0;
        for (int i = 1; i < fin.size(); ++i)
            if (fin[i] > fin[ipk]) ipk = i;
        result.peak_x = fin.grid.node(ipk);
        if (c.compare_exact)
            result.final_linf_error = linf_error(fin, setup.exact, setup.t_end);
    } else if (c.command == "converge") {
        if (c.h_list.empty()) throw config_error("h-list is required", "h-list");
        ConvergenceReport::Mode mode;
        if (c.richardson == "yes") mode = ConvergenceReport::Mode::Richardson;
        else if (c.richardson == "no") mode = ConvergenceReport::Mode::AgainstExact;
        else mode = c.compare_exact ? ConvergenceReport::Mode::AgainstExact
                                    : ConvergenceReport::Mode::Richardson;
        if (mode == ConvergenceReport::Mode::AgainstExact && !setup.exact) {
            const SolitaryWave wave = solitary_params(family_from_name(c.family));
            setup.exact = [wave](double x, double t) { return solitary_profile(wave, x, t); };
        }
        try {
            result.convergence =
                convergence_study(setup, c.domain[0], c.domain[1], c.h_list, mode);
        } catch (const std::invalid_argument& e) {
            throw config_error(e.what(), "h-list");
        }
        result.stats = result.convergence->stats;
    } else if (c.command == "localize") {
        if (c.h_list.empty()) throw config_error("h is required", "h");
        if (c.n_list.empty()) throw config_error("n-list is required", "n-list");
        try {
            result.localization = localization_study(setup, c.h_list[0], c.n_list);
        } catch (const std::invalid_argument& e) {
            throw config_error(e.what(), "n-list");
        }
        result.stats = result.localization->stats;
    } else {
        throw config_error("unknown command '" + c.command + "'", "command");
    }
    return result;
}

namespace {

ordered_json config_to_json(const ExperimentConfig& c) {
    ordered_json j;
    j["command"] = c.command;
    j["preset"] = c.preset;
    j["scale"] = c.scale;
    j["kernel"] = c.kernel;
    j["nonlinearity"] = c.nonlinearity;
    j["kappa"] = c.kappa;
    j["domain"] = c.domain;
    j["h_list"] = c.h_list;
    j["n_list"] = c.n_list;
    j["t_end"] = c.t_end;
    j["output_times"] = c.output_times;
    j["rel_tol"] = c.rel_tol;
    j["abs_tol"] = c.abs_tol;
    j["output_prefix"] = c.output_prefix;
    j["compare_exact"] = c.compare_exact;
    j["family"] = c.family;
    j["richardson"] = c.richardson;
    j["fused"] = c.fused;
    j["conv_method"] = c.conv_method;
    j["quad_step"] = c.quad_step;
    j["quad_halfwidth"] = c.quad_halfwidth;
    return j;
}

}  // namespace

std::vector<std::string> run_experiment(const ExperimentConfig& c) {
    ExperimentResult r = execute(c);
    std::vector<std::string> files;
    const std::string prefix = c.output_prefix.empty() ? "out" : c.output_prefix;

    std::function<double(double, double)> exact;
    if (c.compare_exact) {
        const SolitaryWave wave = solitary_params(family_from_name(c.family));
        exact = [wave](double x, double t) { return solitary_profile(wave, x, t); };
    }

    ordered_json manifest = config_to_json(c);
    if (c.command == "simulate") {
        if (r.profiles.size() == 1) {
            const std::string path = prefix + "_profile.csv";
            write_profile_csv(path, r.profiles[0], exact, r.profile_times[0]);
            files.push_back(path);
        } else {
            for (size_t i = 0; i < r.profiles.size(); ++i) {
                char suffix[32];
                std::snprintf(suffix, sizeof suffix, "_profile_%03zu.csv", i);
                const std::string path = prefix + suffix;
                write_profile_csv(path, r.profiles[i], exact, r.profile_times[i]);
                files.push_back(path);
            }
        }
        ordered_json res;
        res["times"] = r.profile_times;
        if (r.peak_x) res["peak_x"] = *r.peak_x;
        if (r.final_linf_error) res["final_linf_error"] = *r.final_linf_error;
        manifest["results"] = res;
    } else if (c.command == "converge") {
        const std::string path = prefix + "_convergence.csv";
        write_convergence_csv(path, *r.convergence);
        files.push_back(path);
        ordered_json rows = ordered_json::array();
        for (const auto& row : r.convergence->rows) {
            ordered_json jr;
            jr["h"] = row.h;
            jr["m"] = row.m;
            if (row.error) jr["error"] = *row.error;
            if (row.rate) jr["rate"] = *row.rate;
            rows.push_back(jr);
        }
        manifest["results"] = ordered_json{{"rows", rows}};
    } else if (c.command == "localize") {
        const std::string path = prefix + "_localization.csv";
        write_localization_csv(path, *r.localization);
        files.push_back(path);
        ordered_json res;
        if (r.localization->knee_index)
            res["knee_n"] = r.localization->rows[*r.localization->knee_index].n;
        manifest["results"] = res;
    } else if (c.command == "kernel-check") {
        const ConditionReport& rep = *r.kernel_report;
        ordered_json jk;
        jk["kernel"] = c.kernel;
        jk["l1_alpha"] = rep.l1_alpha;
        jk["l1_alpha_prime"] = rep.l1_alpha_prime;
        jk["l1_alpha_second"] = rep.l1_alpha_second;
        jk["w21_norm"] = rep.w21_norm;
        if (rep.mu_total_variation) jk["mu_total_variation"] = *rep.mu_total_variation;
        else jk["mu_total_variation"] = "unavailable";
        jk["satisfies_c2"] = rep.satisfies_c2;
        jk["converged"] = rep.converged;
        const std::string path = prefix + "_kernel.json";
        std::ofstream out(path);
        out << jk.dump(2) << '\n';
        files.push_back(path);
        manifest["results"] = jk;
    }

    ordered_json stats;
    stats["steps_accepted"] = r.stats.steps_accepted;
    stats["steps_rejected"] = r.stats.steps_rejected;
    stats["rhs_evaluations"] = r.stats.rhs_evaluations;
    manifest["stats"] = stats;
    manifest["outputs"] = files;

    const std::string mpath = prefix + "_manifest.json";
    std::ofstream mout(mpath);
    if (!mout) throw std::runtime_error("cannot open " + mpath);
    mout << manifest.dump(2) << '\n';
    files.push_back(mpath);
    return files;
}

}  // namespace nlkdv
