// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "starloc/config.hpp"
#include "starloc/experiments.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_path = "sweep.csv";
    std::string profile = "desk";
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config_path, "flat key = value config file");
    cmd->add_option("--seed", opt.seed, "override the RNG seed");
    cmd->add_option("--out", opt.out_path, "output CSV path");
    cmd->add_option("--profile", opt.profile, "parameter profile: paper or desk")
        ->check(CLI::IsMember({"paper", "desk"}));
    cmd->add_option("--threads", opt.threads, "worker threads (0 = hardware)");
}

starloc::ExperimentConfig load_config(const CommonOptions& opt) {
    starloc::ExperimentConfig cfg = starloc::ExperimentConfig::profile(opt.profile);
    if (!opt.config_path.empty()) cfg.apply_file(opt.config_path);
    if (opt.seed) cfg.seed = *opt.seed;
    cfg.validate();
    return cfg;
}

std::string labeled_path(const std::string& base, const std::string& label) {
    const std::filesystem::path p(base);
    std::filesystem::path out = p.parent_path() / p.stem();
    out += "_" + label;
    out += p.extension();
    return out.string();
}

void write_study(const std::vector<starloc::StudySweep>& sweeps, const std::string& out) {
    for (const auto& sweep : sweeps) {
        const std::string path = labeled_path(out, sweep.label);
        starloc::write_csv(path, sweep.rows);
        std::cout << sweep.label << " -> " << path;
        if (sweep.principal_angle) {
            std::cout << "  (principal-angle objective "
                      << starloc::format_double(*sweep.principal_angle) << ")";
        }
        std::cout << "\n";
    }
}

bool study_all_flagged(const std::vector<starloc::StudySweep>& sweeps) {
    for (const auto& sweep : sweeps) {
        if (!starloc::all_rows_flagged(sweep.rows)) return false;
    }
    return !sweeps.empty();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"STAR-RIS indoor/outdoor 3D localization workbench"};
    app.require_subcommand(1);

    CommonOptions opt;
    auto* crlb = app.add_subcommand("crlb-sweep", "theoretical RMSE bounds vs SNR");
    auto* mc = app.add_subcommand("monte-carlo", "ANM localizer RMSE vs SNR");
    auto* design = app.add_subcommand("design-check", "optimal vs random schedule");
    auto* h4 = app.add_subcommand("imperfect-h4", "RIS-BS channel uncertainty study");
    auto* mpc = app.add_subcommand("mpc-study", "multipath sensitivity study");
    for (auto* cmd : {crlb, mc, design, h4, mpc}) add_common(cmd, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        const starloc::ExperimentConfig cfg = load_config(opt);
        bool failed = false;
        if (crlb->parsed()) {
            const auto rows = starloc::run_crlb_sweep(cfg);
            starloc::write_csv(opt.out_path, rows);
            failed = starloc::all_rows_flagged(rows);
        } else if (mc->parsed()) {
            const auto rows = starloc::run_monte_carlo(cfg, opt.threads);
            starloc::write_csv(opt.out_path, rows);
            failed = starloc::all_rows_flagged(rows);
        } else if (design->parsed()) {
            const auto sweeps = starloc::run_design_study(cfg, opt.threads);
            write_study(sweeps, opt.out_path);
            failed = study_all_flagged(sweeps);
        } else if (h4->parsed()) {
            const auto sweeps = starloc::run_imperfect_h4_study(cfg, opt.threads);
            write_study(sweeps, opt.out_path);
            failed = study_all_flagged(sweeps);
        } else if (mpc->parsed()) {
            const auto sweeps = starloc::run_mpc_study(cfg, opt.threads);
            write_study(sweeps, opt.out_path);
            failed = study_all_flagged(sweeps);
        }
        if (failed) {
            std::cerr << "error: every sweep point was flagged\n";
            return 3;
        }
    } catch (const starloc::ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const starloc::Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    }
    return 0;
}
