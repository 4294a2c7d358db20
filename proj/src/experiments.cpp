// SPDX-License-Identifier: Apache-2.0
#include "starloc/experiments.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <thread>

namespace starloc {

namespace {

constexpr std::uint64_t kH4PerturbTag = 0x68345f70ull;

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads < 1) threads = 1;
    }
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

struct SweepContext {
    Scenario sc;
    PowerConfig pc;
    PhaseSchedule schedule;
    MeasurementMatrices mm;      // built from the true H4
    RisBsChannel h4_true;
    ChannelVector h1, h2, h3;    // synthesis channels (MPCs included if any)
    Matrix9d gram;               // Re(J^H J) at unit P/sigma^2
    JacobianT t;
    bool fim_ok = false;
    std::string fim_error;
};

SweepContext make_context(const ExperimentConfig& cfg) {
    cfg.validate();
    SweepContext ctx;
    ctx.sc = cfg.scenario();
    ctx.pc = cfg.power();
    ctx.schedule = cfg.make_schedule();
    ctx.h4_true = ris_bs_channel(ctx.sc.sys.bs, ctx.sc.sys.ris, ctx.sc.link4(),
                                 ctx.sc.sys.pathloss, ctx.sc.sys.lambda);
    ctx.mm = build_measurement_matrices(ctx.h4_true, ctx.schedule);

    const auto& sys = ctx.sc.sys;
    ctx.h1 = los_channel(sys.bs, ctx.sc.link1(), sys.pathloss, sys.lambda);
    ctx.h2 = los_channel(sys.ris, ctx.sc.link2(), sys.pathloss, sys.lambda);
    ctx.h3 = los_channel(sys.ris, ctx.sc.link3(), sys.pathloss, sys.lambda);
    if (cfg.mpc_case != 0) {
        const auto comps = mpc_components(cfg.mpc_case);
        ctx.h1 = add_mpc(ctx.h1, ctx.sc.link1(), comps, sys.bs, sys.pathloss, sys.lambda);
        ctx.h2 = add_mpc(ctx.h2, ctx.sc.link2(), comps, sys.ris, sys.pathloss, sys.lambda);
        ctx.h3 = add_mpc(ctx.h3, ctx.sc.link3(), comps, sys.ris, sys.pathloss, sys.lambda);
    }

    try {
        const Eigen::MatrixXcd jac =
            mean_jacobian(nu_from_scenario(ctx.sc), ctx.mm, ctx.pc, sys);
        ctx.gram = fisher_nu(jac, 1.0, 1.0);  // scaled per SNR point later
        ctx.t = ctx.sc.jacobian();
        ctx.fim_ok = true;
    } catch (const Error& err) {
        ctx.fim_error = err.what();
    }
    return ctx;
}

// CRLB is proportional to sigma/sqrt(P); evaluate the base FIM once and scale
void fill_bounds(const SweepContext& ctx, double snr_db, SweepRow& row) {
    if (!ctx.fim_ok) {
        row.flagged = true;
        return;
    }
    const double snr_lin = std::pow(10.0, snr_db / 10.0);
    try {
        const CrlbReport rep = crlb_rmse(position_fim(Matrix9d(snr_lin * ctx.gram), ctx.t));
        row.crlb_rmse_u1 = rep.rmse_u1;
        row.crlb_rmse_u2 = rep.rmse_u2;
    } catch (const UnidentifiableConfigurationError&) {
        row.flagged = true;
    }
}

std::vector<MpcComponent> mpc_components_impl(int mpc_case) {
    if (mpc_case == 0) return {};
    const double scale = mpc_case == 1 ? 10.0 : 5.0;
    return {{scale, pi / 6.0, pi / 6.0}, {scale, pi / 3.0, pi / 3.0}};
}

}  // namespace

std::vector<MpcComponent> mpc_components(int mpc_case) {
    if (mpc_case < 0 || mpc_case > 2) throw ConfigError("mpc_case must be 0, 1 or 2");
    return mpc_components_impl(mpc_case);
}

std::vector<SweepRow> run_crlb_sweep(const ExperimentConfig& cfg) {
    const SweepContext ctx = make_context(cfg);
    const std::string hash = cfg.hash();
    std::vector<SweepRow> rows;
    rows.reserve(cfg.snr_db_list.size());
    for (const double snr_db : cfg.snr_db_list) {
        SweepRow row;
        row.snr_db = snr_db;
        row.config_hash = hash;
        fill_bounds(ctx, snr_db, row);
        row.trials_ok = row.flagged ? 0 : 1;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SweepRow> run_monte_carlo(const ExperimentConfig& cfg, int threads) {
    const SweepContext ctx = make_context(cfg);
    const std::string hash = cfg.hash();
    const AnmConfig anm_cfg;
    const bool perturbed_h4 = cfg.d_hat > 0.0 || cfg.phi_hat > 0.0;

    // fixed assumed channel: one shared front end for every trial
    std::shared_ptr<const LocalizerPipeline> shared_pipeline;
    if (!perturbed_h4) {
        shared_pipeline = std::make_shared<LocalizerPipeline>(
            ctx.sc.sys, ctx.h4_true, ctx.schedule, ctx.pc, anm_cfg);
    }

    std::vector<SweepRow> rows;
    for (const double snr_db : cfg.snr_db_list) {
        SweepRow row;
        row.snr_db = snr_db;
        row.config_hash = hash;
        fill_bounds(ctx, snr_db, row);

        const double sigma2 = ctx.pc.p / std::pow(10.0, snr_db / 10.0);
        std::vector<double> err1(cfg.trials, 0.0), err2(cfg.trials, 0.0);
        std::vector<char> ok(cfg.trials, 0);

        parallel_for(cfg.trials, threads, [&](int trial) {
            const std::uint64_t trial_seed = cfg.seed ^ static_cast<std::uint64_t>(trial);
            const LocalizerPipeline* pipeline = shared_pipeline.get();
            std::unique_ptr<LocalizerPipeline> own;
            if (perturbed_h4) {
                const LinkGeometry link4 =
                    perturb_h4(ctx.sc.link4(), {cfg.d_hat, cfg.phi_hat},
                               trial_seed ^ kH4PerturbTag);
                const RisBsChannel h4_assumed =
                    ris_bs_channel(ctx.sc.sys.bs, ctx.sc.sys.ris, link4,
                                   ctx.sc.sys.pathloss, ctx.sc.sys.lambda);
                own = std::make_unique<LocalizerPipeline>(ctx.sc.sys, h4_assumed,
                                                          ctx.schedule, ctx.pc, anm_cfg);
                pipeline = own.get();
            }
            const ObservationBundle obs = synthesize_observation(
                ctx.mm, ctx.h1, ctx.h2, ctx.h3, ctx.pc, sigma2, trial_seed);
            const LocalizationResult res = pipeline->run(obs.y, sigma2);
            if (res.u1_ok && res.u2_ok && res.all_converged()) {
                err1[trial] = (res.p_u1 - ctx.sc.p_u1).squaredNorm();
                err2[trial] = (res.p_u2 - ctx.sc.p_u2).squaredNorm();
                ok[trial] = 1;
            }
        });

        double sum1 = 0.0, sum2 = 0.0;
        int count = 0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            if (!ok[trial]) continue;
            sum1 += err1[trial];
            sum2 += err2[trial];
            ++count;
        }
        row.trials_ok = count;
        if (count > 0) {
            row.est_rmse_u1 = std::sqrt(sum1 / count);
            row.est_rmse_u2 = std::sqrt(sum2 / count);
        } else {
            row.flagged = true;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<StudySweep> run_design_study(const ExperimentConfig& cfg, int threads) {
    std::vector<StudySweep> sweeps;
    for (const char* label : {"dft", "random"}) {
        ExperimentConfig variant = cfg;
        variant.schedule = label;
        StudySweep sweep;
        sweep.label = label;
        const SweepContext ctx = make_context(variant);
        sweep.principal_angle =
            principal_angle_objective(ctx.sc, ctx.mm, ctx.pc);
        sweep.rows = run_monte_carlo(variant, threads);
        sweeps.push_back(std::move(sweep));
    }
    return sweeps;
}

std::vector<StudySweep> run_imperfect_h4_study(const ExperimentConfig& cfg, int threads) {
    struct Case {
        const char* label;
        double d_hat, phi_hat;
    };
    const Case cases[] = {{"baseline", 0.0, 0.0},
                          {"case_i", 0.5, 0.2},
                          {"case_ii", 1.0, 0.4}};
    std::vector<StudySweep> sweeps;
    for (const Case& c : cases) {
        ExperimentConfig variant = cfg;
        variant.d_hat = c.d_hat;
        variant.phi_hat = c.phi_hat;
        StudySweep sweep;
        sweep.label = c.label;
        sweep.rows = run_monte_carlo(variant, threads);
        sweeps.push_back(std::move(sweep));
    }
    return sweeps;
}

std::vector<StudySweep> run_mpc_study(const ExperimentConfig& cfg, int threads) {
    struct Case {
        const char* label;
        int mpc_case;
    };
    const Case cases[] = {{"los", 0}, {"case_i", 1}, {"case_ii", 2}};
    std::vector<StudySweep> sweeps;
    for (const Case& c : cases) {
        ExperimentConfig variant = cfg;
        variant.mpc_case = c.mpc_case;
        StudySweep sweep;
        sweep.label = c.label;
        sweep.rows = run_monte_carlo(variant, threads);
        sweeps.push_back(std::move(sweep));
    }
    return sweeps;
}

std::string csv_string(const std::vector<SweepRow>& rows) {
    std::string out =
        "snr_db,crlb_rmse_u1,crlb_rmse_u2,est_rmse_u1,est_rmse_u2,trials_ok,config_hash\n";
    for (const SweepRow& row : rows) {
        out += format_double(row.snr_db);
        out += ',';
        if (!std::isnan(row.crlb_rmse_u1)) out += format_double(row.crlb_rmse_u1);
        out += ',';
        if (!std::isnan(row.crlb_rmse_u2)) out += format_double(row.crlb_rmse_u2);
        out += ',';
        if (row.est_rmse_u1) out += format_double(*row.est_rmse_u1);
        out += ',';
        if (row.est_rmse_u2) out += format_double(*row.est_rmse_u2);
        out += ',';
        out += std::to_string(row.trials_ok);
        out += ',';
        out += row.config_hash;
        out += '\n';
    }
    return out;
}

void write_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out << csv_string(rows);
}

bool all_rows_flagged(const std::vector<SweepRow>& rows) {
    for (const SweepRow& row : rows) {
        if (!row.flagged) return false;
    }
    return !rows.empty();
}

}  // namespace starloc
