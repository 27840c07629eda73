#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gls/martingale.hpp"
#include "gls/moments.hpp"

namespace gls {

// One experiment: simulation parameters plus the knobs of the moment and
// tail checks. Loaded from a key=value file or built from CLI flags.
struct ExperimentConfig {
    std::string kernel;  // optional; must match the driver when set
    IncrementLaw law = IncrementLaw::gaussian(1.0);
    int n_steps = 64;
    long n_trials = 100000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::vector<double> p_grid;    // empty: per-verifier default
    double slack_sigmas = 3.0;
    double fit_lo = 2.0;           // window of the m fit (doob)
    double fit_hi = 16.0;
    int fit_points = 9;
    double transfer_lo = 0.0;      // 0: per-verifier default
    double transfer_hi = 0.0;
    int transfer_points = 65;
    int tail_grid_size = 33;
    int norm_grid_size = 65;
    std::string out_dir = ".";

    SimulationConfig sim() const {
        return SimulationConfig{law, n_steps, n_trials, seed, threads};
    }
};

struct MomentCheckRow {
    double p;
    double lhs;       // empirical |M*|_p
    double lhs_se;
    double rhs;       // transferred right side
    double rhs_se;
    double margin;    // rhs + slack*combined_se - lhs
    bool violation;   // margin < 0
};

struct DoobVerifyReport {
    std::vector<MomentCheckRow> moment_rows;
    std::size_t moment_violations = 0;
    bool degenerate = false;  // all-zero walk: tail stage trivially holds
    double fitted_m = 0.0;
    double norm_constant = 0.0;  // grid GLS norm against the fitted power
    TailDominanceReport tail;
    bool passed() const { return moment_violations == 0 && tail.violations == 0; }
};

// (a) |M*|_p <= (p/(p-1)) |S_n|_p with slack at each grid order;
// (b) psi built from the Doob kernel and the normalized terminal oracle,
//     then tail dominance of the induced bound over the running maximum.
DoobVerifyReport verify_doob(const ExperimentConfig& cfg);

struct BdgVerifyReport {
    std::vector<MomentCheckRow> moment_rows;
    std::size_t moment_violations = 0;
    bool degenerate = false;
    TailDominanceReport tail;  // violations here are warnings, not failures
    bool moment_passed() const { return moment_violations == 0; }
};

// (a) |M*|_p <= sqrt(e) |<M,M>|_{p/2}^{1/2} with slack at p >= 2;
// (b) power transfer (alpha = 1/2, r = p/2) from the quadratic-variation
//     oracle over the checked window, then tail dominance. Whether the
//     sqrt(e) constant covers every discrete-time martingale at all p is
//     not settled, so tail rows are reported as warnings.
BdgVerifyReport verify_bdg(const ExperimentConfig& cfg);

// CSV export, header "p,lhs,rhs,margin".
void write_moment_report_csv(const std::string& path,
                             const std::vector<MomentCheckRow>& rows);

}  // namespace gls
