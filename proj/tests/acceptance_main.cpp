// Acceptance suite: runs every gate criterion and prints one line each.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "gls/conjugate.hpp"
#include "gls/domain.hpp"
#include "gls/generating.hpp"
#include "gls/martingale.hpp"
#include "gls/moments.hpp"
#include "gls/rng.hpp"
#include "gls/transfer.hpp"
#include "gls/verify.hpp"

using namespace gls;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int number, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s - %s\n", number, pass ? "PASS" : "FAIL",
                detail.c_str());
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

// 1. closed-form conjugate of the power family: h*(y) = e^{my-1}/m
void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    double max_rel = 0.0;
    for (double m : {1.0, 2.0, 4.0}) {
        // the stationary order e^{m y - 1} reaches e^11 at m=4, y=3
        const GeneratingFunction psi =
            make_power(m, PDomain(1.0, 1.2e5, true, true));
        std::vector<double> ys(50);
        for (int i = 0; i < 50; ++i) ys[i] = 1.0 + 2.0 * i / 49.0;
        const ConjugateTable table = fenchel_transform(psi, ys);
        for (std::size_t i = 0; i < ys.size(); ++i) {
            const double exact = std::exp(m * ys[i] - 1.0) / m;
            max_rel = std::max(max_rel,
                               std::fabs(table.hstar[i] - exact) / exact);
        }
    }
    const double secs = seconds_since(t0);
    std::ostringstream detail;
    detail << "power-family conjugate vs stationary-point oracle: max rel err "
           << max_rel << ", " << secs << " s";
    report(1, max_rel <= 1e-3 && secs < 1.0, detail.str());
}

// 2. sub-gaussian equivalence with c(m) = 1/(m e)
void criterion_2() {
    bool pass = true;
    std::ostringstream detail;
    detail << "tail matches exp(-t^m/(m e)):";
    for (double m : {1.0, 2.0}) {
        const SubgaussianReport rep = subgaussian_family_check(m, 64, 1e-3);
        pass = pass && rep.pass;
        detail << " m=" << m << " max rel err " << rep.max_rel_err
               << " (c=" << rep.c_implied << " vs " << rep.c_closed_form
               << ");";
    }
    report(2, pass, detail.str());
}

// 3. conjugate table invariants and grid-refinement conservativeness
void criterion_3() {
    bool pass = true;
    std::ostringstream detail;
    std::vector<double> ys;
    for (int i = 0; i <= 60; ++i) ys.push_back(0.2 + 0.08 * i);

    std::vector<GeneratingFunction> family{
        make_power(1.0, PDomain(1.0, 1000.0, true, true)),
        make_power(2.0, PDomain(1.0, 1000.0, true, true)),
        make_power(4.0, PDomain(1.0, 1000.0, true, true)),
        combine(make_doob_factor(PDomain(1.0, 128.0, false, true)),
                make_power(2.0, PDomain(1.0, 128.0, true, true)),
                CombineMode::Product),
        make_constant(3.0, PDomain(1.0, 100.0, true, true))};

    std::size_t tables = 0;
    double worst_drop = 0.0;
    for (const auto& psi : family) {
        const ConjugateTable table = fenchel_transform(psi, ys, 256);
        try {
            validate(table);
        } catch (const std::exception& ex) {
            pass = false;
            detail << " invariant failure (" << psi.tag() << "): " << ex.what();
        }
        ++tables;

        const ConjugateTable coarse = fenchel_transform(psi, ys, 128);
        const ConjugateTable fine = fenchel_transform(psi, ys, 1024);
        for (std::size_t i = 0; i < ys.size(); ++i) {
            const double drop = coarse.hstar[i] - fine.hstar[i];
            worst_drop = std::max(worst_drop, drop);
            if (drop > 1e-12 * (1.0 + std::fabs(coarse.hstar[i]))) pass = false;
        }
    }
    detail << " " << tables
           << " tables validated; worst refinement drop (fp noise) "
           << worst_drop;
    report(3, pass, detail.str());
}

// 4. converse direction: moments recovered from tails
void criterion_4() {
    bool pass = true;
    std::ostringstream detail;
    auto exp_tail = [](double t) { return std::exp(-t); };
    double worst = 0.0;
    for (double p : {1.0, 2.0, 3.0}) {
        const double recovered = moments_from_tail(exp_tail, p);
        const double exact = std::exp(std::lgamma(p + 1.0) / p);
        const double rel = std::fabs(recovered - exact) / exact;
        worst = std::max(worst, rel);
        if (rel > 1e-3) pass = false;
    }
    detail << "gamma moments rel err " << worst;

    const GeneratingFunction root = make_power(2.0, PDomain(1.0, kInf));
    FenchelOptions opt;
    opt.p_grid_size = 128;
    auto bound_fn = [&](double t) { return tail_from_psi(root, 1.0, t, opt); };
    double K = 0.0;
    for (double p : log_grid(1.0, 20.0, 13))
        K = std::max(K, moments_from_tail(bound_fn, p) / std::sqrt(p));
    detail << "; round-trip constant K = " << K;
    if (!(std::isfinite(K) && K > 0.0)) pass = false;
    report(4, pass, detail.str());
}

// 5. norm axioms: natural norm, homogeneity, Lyapunov monotonicity
void criterion_5() {
    bool pass = true;
    std::ostringstream detail;

    PDomain dom(1.0, 64.0, true, true);
    CounterRng rng(123, 0);
    std::vector<double> draws(50000);
    for (auto& x : draws) x = std::fabs(rng.next_gaussian());
    auto sample = std::make_shared<const EmpiricalSample>(
        EmpiricalSample(std::move(draws), "acceptance"));

    std::vector<MomentOracle> oracles{constant_oracle(1.0),
                                      normal_moment_oracle(),
                                      exponential_moment_oracle(),
                                      sample_oracle(sample)};
    double worst_unit = 0.0, worst_hom = 0.0, worst_lyap = 0.0;
    for (const auto& oracle : oracles) {
        const double unit =
            gls_norm(oracle, natural_function(oracle, dom), 129).value;
        worst_unit = std::max(worst_unit, std::fabs(unit - 1.0));

        const GeneratingFunction kappa = make_power(2.0, dom);
        const double base = gls_norm(oracle, kappa, 129).value;
        const double scaled = gls_norm(scale_oracle(oracle, 3.5), kappa, 129).value;
        worst_hom = std::max(worst_hom, std::fabs(scaled / (3.5 * base) - 1.0));

        double prev = 0.0;
        for (double p : domain_grid(dom, 65)) {
            const double cur = oracle.eval(p);
            worst_lyap = std::max(worst_lyap, (prev - cur) / std::max(cur, 1e-300));
            prev = cur;
        }
    }
    pass = worst_unit <= 1e-12 && worst_hom <= 1e-12 && worst_lyap <= 1e-9;
    detail << "natural norm off by " << worst_unit << ", homogeneity off by "
           << worst_hom << ", worst Lyapunov drop " << worst_lyap;
    report(5, pass, detail.str());
}

// 6. Doob verification across laws and seeds
void criterion_6() {
    bool pass = true;
    std::ostringstream detail;
    for (const IncrementLaw& law :
         {IncrementLaw::gaussian(1.0), IncrementLaw::rademacher()}) {
        const auto t0 = std::chrono::steady_clock::now();
        std::size_t moment_v = 0, tail_v = 0;
        double min_exceed = kInf;
        for (std::uint64_t seed : {7ull, 8ull, 9ull}) {
            ExperimentConfig cfg;
            cfg.law = law;
            cfg.n_steps = 64;
            cfg.n_trials = 100000;
            cfg.seed = seed;
            cfg.p_grid = {2, 3, 4, 6, 8};
            const DoobVerifyReport rep = verify_doob(cfg);
            moment_v += rep.moment_violations;
            tail_v += rep.tail.violations;
            for (const auto& row : rep.tail.rows)
                min_exceed = std::min(min_exceed, row.empirical * 100000.0);
            if (rep.tail.rows.empty()) pass = false;
        }
        const double secs = seconds_since(t0);
        detail << law.to_string() << ": " << moment_v << " moment / " << tail_v
               << " tail violations, min exceedances " << min_exceed << ", "
               << secs << " s (3 seeds); ";
        if (moment_v != 0 || tail_v != 0 || !(min_exceed >= 50.0) ||
            !(secs < 60.0))
            pass = false;
    }
    report(6, pass, detail.str());
}

// 7. BDG verification: exact rademacher right side, gaussian margins
void criterion_7() {
    bool pass = true;
    std::ostringstream detail;

    ExperimentConfig cfg;
    cfg.law = IncrementLaw::rademacher();
    cfg.n_steps = 64;
    cfg.n_trials = 100000;
    cfg.seed = 7;
    cfg.p_grid = {2, 4, 6};
    const BdgVerifyReport rade = verify_bdg(cfg);
    const double exact_rhs = std::exp(0.5) * 8.0;
    for (const auto& row : rade.moment_rows) {
        if (std::fabs(row.rhs - exact_rhs) > 1e-12 * exact_rhs) pass = false;
        if (row.rhs_se != 0.0) pass = false;
    }
    if (rade.moment_violations != 0) pass = false;
    detail << "rademacher rhs = sqrt(e)*sqrt(n) exactly, "
           << rade.moment_violations << " moment violations";

    cfg.law = IncrementLaw::gaussian(1.0);
    const BdgVerifyReport gauss = verify_bdg(cfg);
    if (gauss.moment_violations != 0) pass = false;
    detail << "; gaussian margins: " << gauss.moment_violations
           << " violations beyond 3 se";
    if (gauss.tail.violations > 0)
        detail << " (tail warnings: " << gauss.tail.violations << ")";
    double min_margin = kInf;
    for (const auto& row : gauss.moment_rows)
        min_margin = std::min(min_margin, row.margin);
    detail << ", min moment margin " << min_margin;
    report(7, pass, detail.str());
}

// 8. byte-identical reports independent of the thread count
void criterion_8() {
    auto run_once = [](unsigned threads, const std::string& dir) {
        ExperimentConfig cfg;
        cfg.law = IncrementLaw::gaussian(1.0);
        cfg.n_steps = 64;
        cfg.n_trials = 100000;
        cfg.seed = 7;
        cfg.threads = threads;
        cfg.p_grid = {2, 3, 4, 6, 8};
        const DoobVerifyReport rep = verify_doob(cfg);
        fs::create_directories(dir);
        write_moment_report_csv(dir + "/moment_report.csv", rep.moment_rows);
        write_tail_report_csv(dir + "/tail_report.csv", rep.tail);
    };
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    run_once(1, "acceptance_serial");
    run_once(4, "acceptance_parallel");
    const bool moments_equal = slurp("acceptance_serial/moment_report.csv") ==
                               slurp("acceptance_parallel/moment_report.csv");
    const bool tails_equal = slurp("acceptance_serial/tail_report.csv") ==
                             slurp("acceptance_parallel/tail_report.csv");
    const bool nonempty =
        !slurp("acceptance_serial/moment_report.csv").empty() &&
        !slurp("acceptance_serial/tail_report.csv").empty();
    fs::remove_all("acceptance_serial");
    fs::remove_all("acceptance_parallel");
    report(8, moments_equal && tails_equal && nonempty,
           std::string("serial vs 4-thread reports byte-identical: moments ") +
               (moments_equal ? "yes" : "no") + ", tails " +
               (tails_equal ? "yes" : "no"));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (failures == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criterion(s) failed\n", failures);
    return failures;
}
