#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nlkdv/analysis.hpp"

namespace nlkdv {

/// Declarative description of one run: a single simulation, an h-sweep
/// convergence study, an N-sweep localization study, or a kernel condition
/// check. Serialized as JSON; every field can be overridden by a CLI flag of
/// the same kebab-case name.
struct ExperimentConfig {
    std::string command = "simulate";  // simulate | converge | localize | kernel-check
    std::string kernel = "rosenau-kdv";
    std::string nonlinearity = "u + u^2/2";
    double kappa = 1.0;
    std::array<double, 2> domain{-40.0, 80.0};
    std::vector<double> h_list{0.5};
    std::vector<int> n_list;
    double t_end = 40.0;
    std::vector<double> output_times;
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    std::string output_prefix = "out";
    bool compare_exact = false;
    std::string family;  // "rosenau-kdv" | "rosenau-bbm-kdv"
    std::string richardson = "auto";  // converge mode: "auto" | "yes" | "no"
    bool fused = false;
    std::string conv_method = "auto";  // auto | direct | fft
    double quad_step = 0.01;
    double quad_halfwidth = 60.0;
    std::string preset;
    bool scale = false;
};

/// In-memory results of executing a config (no files written).
struct ExperimentResult {
    std::optional<ConvergenceReport> convergence;
    std::optional<LocalizationReport> localization;
    std::vector<double> profile_times;
    std::vector<GridFunction> profiles;
    std::optional<double> final_linf_error;  // simulate + compare_exact
    std::optional<double> peak_x;            // simulate
    std::optional<ConditionReport> kernel_report;
    IntegrationStats stats;
};

/// Named setups of the standard experiments. With scale=true the run is
/// shrunk to desk scale (t_end 10, tolerances 1e-8, reduced mesh/N lists).
/// Presets: fig1, fig2-kdv, fig2-bbm, fig3-kdv, fig3-bbm, fig4, table1.
ExperimentConfig preset_config(const std::string& name, bool scale = false);
std::vector<std::string> preset_names();

ExperimentConfig load_config(const std::string& path);

/// Validates and runs the experiment; throws config_error on bad input.
ExperimentResult execute(const ExperimentConfig& config);

/// execute() + CSV/manifest emission. Returns the written file paths; the
/// manifest (<prefix>_manifest.json) round-trips through load_config.
std::vector<std::string> run_experiment(const ExperimentConfig& config);

}  // namespace nlkdv
