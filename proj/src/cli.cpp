#include "gls/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "gls/config.hpp"
#include "gls/conjugate.hpp"
#include "gls/csv.hpp"
#include "gls/martingale.hpp"
#include "gls/moments.hpp"
#include "gls/transfer.hpp"
#include "gls/verify.hpp"

namespace gls {

namespace {

namespace fs = std::filesystem;

PDomain cli_domain(double p_lo, double p_hi) {
    const bool finite = std::isfinite(p_hi);
    return PDomain(p_lo, p_hi, true, finite);
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void print_moment_rows(const std::vector<MomentCheckRow>& rows) {
    for (const auto& r : rows)
        std::printf("  p=%-4g lhs=%-12.6g rhs=%-12.6g margin=%-12.6g %s\n", r.p,
                    r.lhs, r.rhs, r.margin, r.violation ? "VIOLATION" : "ok");
}

void print_tail_summary(const TailDominanceReport& tail, bool warn_only) {
    if (tail.rows.empty()) {
        std::printf("tail dominance: no grid points above the validity "
                    "threshold\n");
        return;
    }
    std::printf("tail dominance: %zu violation(s) on %zu grid points "
                "(min margin %.6g)%s\n",
                tail.violations, tail.rows.size(), tail.min_margin,
                warn_only && tail.violations > 0 ? " [warning]" : "");
}

struct VerifyFlags {
    std::string config_path;
    std::string law = "gaussian(1)";
    int n_steps = 64;
    long trials = 100000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string p_grid;
    double slack = 3.0;
    std::string out_dir = ".";
    bool law_set = false, n_set = false, trials_set = false, seed_set = false,
         threads_set = false, slack_set = false, out_set = false;
};

void add_verify_flags(CLI::App* cmd, VerifyFlags& f) {
    cmd->add_option("--config", f.config_path, "experiment config file");
    cmd->add_option("--law", f.law, "increment law, e.g. gaussian(1)")
        ->each([&f](const std::string&) { f.law_set = true; });
    cmd->add_option("--n", f.n_steps, "number of martingale steps")
        ->each([&f](const std::string&) { f.n_set = true; });
    cmd->add_option("--trials", f.trials, "number of Monte Carlo trials")
        ->each([&f](const std::string&) { f.trials_set = true; });
    cmd->add_option("--seed", f.seed, "master seed")
        ->each([&f](const std::string&) { f.seed_set = true; });
    cmd->add_option("--threads", f.threads, "worker threads (0 = hardware)")
        ->each([&f](const std::string&) { f.threads_set = true; });
    cmd->add_option("--p-grid", f.p_grid, "comma separated moment orders");
    cmd->add_option("--slack", f.slack, "allowed standard errors of slack")
        ->each([&f](const std::string&) { f.slack_set = true; });
    cmd->add_option("--out-dir", f.out_dir, "report directory")
        ->each([&f](const std::string&) { f.out_set = true; });
}

ExperimentConfig resolve_config(const VerifyFlags& f) {
    ExperimentConfig cfg;
    if (!f.config_path.empty()) cfg = load_experiment_config(f.config_path);
    if (f.law_set || f.config_path.empty()) cfg.law = parse_increment_law(f.law);
    if (f.n_set || f.config_path.empty()) cfg.n_steps = f.n_steps;
    if (f.trials_set || f.config_path.empty()) cfg.n_trials = f.trials;
    if (f.seed_set || f.config_path.empty()) cfg.seed = f.seed;
    if (f.threads_set) cfg.threads = f.threads;
    if (f.slack_set) cfg.slack_sigmas = f.slack;
    if (f.out_set || f.config_path.empty()) cfg.out_dir = f.out_dir;
    if (!f.p_grid.empty()) {
        cfg.p_grid.clear();
        for (const auto& part : CLI::detail::split(f.p_grid, ','))
            cfg.p_grid.push_back(std::stod(part));
    }
    return cfg;
}

int run_conjugate(const std::string& psi_spec, double p_lo, double p_hi,
                  double y_lo, double y_hi, std::size_t y_count,
                  std::size_t p_grid, double p_cap, const std::string& out) {
    const GeneratingFunction psi =
        parse_generating_function(psi_spec, cli_domain(p_lo, p_hi));
    std::vector<double> ys(y_count);
    for (std::size_t i = 0; i < y_count; ++i)
        ys[i] = y_lo + (y_hi - y_lo) * static_cast<double>(i) /
                           static_cast<double>(std::max<std::size_t>(y_count - 1, 1));
    FenchelOptions opt;
    opt.p_grid_size = p_grid;
    opt.p_cap = p_cap;
    const ConjugateTable table = fenchel_transform(psi, std::move(ys), opt);
    write_conjugate_csv(out, table);
    std::printf("conjugate of '%s': %zu y points, hstar in [%.6g, %.6g] -> %s\n",
                psi.tag().c_str(), table.y_grid.size(), table.hstar.front(),
                table.hstar.back(), out.c_str());
    return 0;
}

int run_tailbound(const std::string& psi_spec, double p_lo, double p_hi,
                  double scale_C, double t, double t_lo, double t_hi,
                  std::size_t t_count, double p_cap, const std::string& out) {
    const GeneratingFunction psi =
        parse_generating_function(psi_spec, cli_domain(p_lo, p_hi));
    FenchelOptions opt;
    opt.p_cap = p_cap;
    if (t > 0.0) {
        std::printf("%.6g\n", tail_from_psi(psi, scale_C, t, opt));
        return 0;
    }
    const TailBound bound = make_tail_bound(psi, scale_C, t_hi, opt);
    write_tailbound_csv(out, bound, t_lo, t_hi, t_count);
    std::printf("tail bound for '%s' (C=%g, valid from %.6g) -> %s\n",
                psi.tag().c_str(), scale_C, bound.valid_from(), out.c_str());
    return 0;
}

int run_transfer(const std::string& kernel_spec, const std::string& oracle_spec,
                 double p_lo, double p_hi, std::size_t p_count, double p0,
                 const std::string& out) {
    const TransferKernel kernel = parse_kernel(kernel_spec, p0);
    const MomentOracle oracle = parse_moment_oracle(oracle_spec);
    std::vector<double> grid;
    if (!kernel.p_points.empty()) {
        grid = kernel.p_points;
    } else {
        grid = log_grid(p_lo, p_hi, p_count);
    }
    const GeneratingFunction psi = build_psi_function(kernel, oracle, grid);
    std::FILE* fp = std::fopen(out.c_str(), "w");
    if (!fp) throw std::runtime_error("cannot open " + out);
    std::fprintf(fp, "p,psi\n");
    for (double p : grid)
        std::fprintf(fp, "%s,%s\n", format_double(p).c_str(),
                     format_double(psi(p)).c_str());
    std::fclose(fp);
    std::printf("transfer '%s' with oracle '%s': psi on %zu orders -> %s\n",
                kernel.tag.c_str(), oracle.tag.c_str(), grid.size(),
                out.c_str());
    return 0;
}

int run_gls_norm(const std::string& oracle_spec, const std::string& kappa_spec,
                 double p_lo, double p_hi, std::size_t grid, double p_cap) {
    const MomentOracle oracle = parse_moment_oracle(oracle_spec);
    const GeneratingFunction kappa =
        parse_generating_function(kappa_spec, cli_domain(p_lo, p_hi));
    const GridSup norm = gls_norm(oracle, kappa, grid, p_cap);
    std::printf("gls_norm %.12g (argmax p = %.6g)\n", norm.value, norm.argmax_p);
    return 0;
}

int run_simulate(const VerifyFlags& f) {
    const ExperimentConfig cfg = resolve_config(f);
    const MartingalePathBatch batch = simulate_martingale(cfg.sim());
    fs::create_directories(cfg.out_dir);
    batch.terminal.store_csv(join(cfg.out_dir, "terminal.csv"));
    batch.running_max.store_csv(join(cfg.out_dir, "running_max.csv"));
    batch.quad_variation_sqrt.store_csv(
        join(cfg.out_dir, "quad_variation_sqrt.csv"));
    const MomentEstimate t2 = empirical_moment(batch.terminal, 2.0);
    const MomentEstimate m2 = empirical_moment(batch.running_max, 2.0);
    std::printf("simulated %ld trials of %s, n=%d, seed=%llu\n", cfg.n_trials,
                cfg.law.to_string().c_str(), cfg.n_steps,
                static_cast<unsigned long long>(cfg.seed));
    std::printf("  |S_n|_2 = %.6g (se %.2g), |M*|_2 = %.6g (se %.2g)\n",
                t2.value, t2.std_error, m2.value, m2.std_error);
    std::printf("samples -> %s\n", cfg.out_dir.c_str());
    return 0;
}

int run_verify_doob(const VerifyFlags& f) {
    const ExperimentConfig cfg = resolve_config(f);
    const DoobVerifyReport rep = verify_doob(cfg);
    fs::create_directories(cfg.out_dir);
    write_moment_report_csv(join(cfg.out_dir, "moment_report.csv"),
                            rep.moment_rows);
    write_tail_report_csv(join(cfg.out_dir, "tail_report.csv"), rep.tail);
    std::printf("doob verification: law=%s n=%d trials=%ld seed=%llu\n",
                cfg.law.to_string().c_str(), cfg.n_steps, cfg.n_trials,
                static_cast<unsigned long long>(cfg.seed));
    std::printf("moment check (slack %.2g se): %zu violation(s)\n",
                cfg.slack_sigmas, rep.moment_violations);
    print_moment_rows(rep.moment_rows);
    if (rep.degenerate) {
        std::printf("degenerate all-zero walk: tail stage trivially satisfied\n");
    } else {
        std::printf("fitted m = %.4g, norm constant C = %.6g\n", rep.fitted_m,
                    rep.norm_constant);
        print_tail_summary(rep.tail, false);
    }
    std::printf("reports -> %s\n", cfg.out_dir.c_str());
    return rep.passed() ? 0 : 2;
}

int run_verify_bdg(const VerifyFlags& f) {
    const ExperimentConfig cfg = resolve_config(f);
    const BdgVerifyReport rep = verify_bdg(cfg);
    fs::create_directories(cfg.out_dir);
    write_moment_report_csv(join(cfg.out_dir, "moment_report.csv"),
                            rep.moment_rows);
    write_tail_report_csv(join(cfg.out_dir, "tail_report.csv"), rep.tail);
    std::printf("bdg verification: law=%s n=%d trials=%ld seed=%llu\n",
                cfg.law.to_string().c_str(), cfg.n_steps, cfg.n_trials,
                static_cast<unsigned long long>(cfg.seed));
    std::printf("moment check (slack %.2g se): %zu violation(s)\n",
                cfg.slack_sigmas, rep.moment_violations);
    print_moment_rows(rep.moment_rows);
    if (rep.degenerate)
        std::printf("degenerate all-zero walk: tail stage trivially satisfied\n");
    else
        print_tail_summary(rep.tail, true);
    std::printf("reports -> %s\n", cfg.out_dir.c_str());
    return rep.moment_passed() ? 0 : 2;
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"moment-to-tail transfer toolkit for Grand Lebesgue norms"};
    app.require_subcommand(1);

    // conjugate
    std::string psi_spec = "power(2)";
    double p_lo = 1.0, p_hi = kInf, p_cap = kDefaultPMax;
    double y_lo = 1.0, y_hi = 3.0;
    std::size_t y_count = 50, p_grid = 512;
    std::string out_path = "conjugate.csv";
    auto* conj = app.add_subcommand("conjugate",
                                    "tabulate the Young-Fenchel conjugate");
    conj->add_option("--psi", psi_spec, "generating function descriptor");
    conj->add_option("--p-lo", p_lo);
    conj->add_option("--p-hi", p_hi);
    conj->add_option("--p-max", p_cap, "truncation cap for unbounded domains");
    conj->add_option("--y-lo", y_lo);
    conj->add_option("--y-hi", y_hi);
    conj->add_option("--y-count", y_count);
    conj->add_option("--p-grid", p_grid, "scan size of the inner maximization");
    conj->add_option("--out", out_path);

    // tailbound
    std::string tb_psi = "power(2)", tb_out = "tailbound.csv";
    double tb_plo = 1.0, tb_phi = kInf, tb_cap = kDefaultPMax;
    double tb_C = 1.0, tb_t = 0.0, tb_tlo = 0.0, tb_thi = 0.0;
    std::size_t tb_tcount = 65;
    auto* tb = app.add_subcommand("tailbound",
                                  "tail estimate induced by a generating function");
    tb->add_option("--psi", tb_psi, "generating function descriptor");
    tb->add_option("--p-lo", tb_plo);
    tb->add_option("--p-hi", tb_phi);
    tb->add_option("--p-max", tb_cap);
    tb->add_option("--C", tb_C, "scale constant");
    tb->add_option("--t", tb_t, "single threshold; prints the bound");
    tb->add_option("--t-lo", tb_tlo);
    tb->add_option("--t-hi", tb_thi);
    tb->add_option("--t-count", tb_tcount);
    tb->add_option("--out", tb_out);

    // transfer
    std::string tr_kernel = "doob", tr_oracle = "normal",
                tr_out = "transfer.csv";
    double tr_plo = 1.5, tr_phi = 32.0, tr_p0 = -1.0;
    std::size_t tr_count = 65;
    auto* tr = app.add_subcommand(
        "transfer", "materialize psi from a kernel and a moment oracle");
    tr->add_option("--kernel", tr_kernel, "doob | bdg | custom(path)");
    tr->add_option("--oracle", tr_oracle, "moment oracle descriptor");
    tr->add_option("--p-lo", tr_plo);
    tr->add_option("--p-hi", tr_phi);
    tr->add_option("--p-count", tr_count);
    tr->add_option("--p0", tr_p0, "branch order (default: infimum of U)");
    tr->add_option("--out", tr_out);

    // gls-norm
    std::string gn_oracle = "normal", gn_kappa = "power(2)";
    double gn_plo = 1.0, gn_phi = kInf, gn_cap = kDefaultPMax;
    std::size_t gn_grid = 129;
    auto* gn = app.add_subcommand("gls-norm",
                                  "grid Grand Lebesgue norm of an oracle");
    gn->add_option("--oracle", gn_oracle);
    gn->add_option("--kappa", gn_kappa, "generating function descriptor");
    gn->add_option("--p-lo", gn_plo);
    gn->add_option("--p-hi", gn_phi);
    gn->add_option("--p-max", gn_cap);
    gn->add_option("--grid", gn_grid);

    // simulate / verify
    VerifyFlags sim_flags, doob_flags, bdg_flags;
    auto* sim = app.add_subcommand("simulate", "run a martingale batch");
    add_verify_flags(sim, sim_flags);
    auto* vd = app.add_subcommand("verify-doob",
                                  "maximal-inequality moment and tail checks");
    add_verify_flags(vd, doob_flags);
    auto* vb = app.add_subcommand(
        "verify-bdg", "quadratic-variation moment and tail checks");
    add_verify_flags(vb, bdg_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (conj->parsed())
            return run_conjugate(psi_spec, p_lo, p_hi, y_lo, y_hi, y_count,
                                 p_grid, p_cap, out_path);
        if (tb->parsed()) {
            if (tb_t <= 0.0 && !(tb_tlo > 0.0 && tb_thi > tb_tlo))
                throw std::invalid_argument(
                    "tailbound: pass --t, or --t-lo and --t-hi");
            return run_tailbound(tb_psi, tb_plo, tb_phi, tb_C, tb_t, tb_tlo,
                                 tb_thi, tb_tcount, tb_cap, tb_out);
        }
        if (tr->parsed())
            return run_transfer(tr_kernel, tr_oracle, tr_plo, tr_phi, tr_count,
                                tr_p0, tr_out);
        if (gn->parsed())
            return run_gls_norm(gn_oracle, gn_kappa, gn_plo, gn_phi, gn_grid,
                                gn_cap);
        if (sim->parsed()) return run_simulate(sim_flags);
        if (vd->parsed()) return run_verify_doob(doob_flags);
        if (vb->parsed()) return run_verify_bdg(bdg_flags);
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 1;
    }
    return 1;
}

}  // namespace gls
