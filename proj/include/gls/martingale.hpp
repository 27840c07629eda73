#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gls/moments.hpp"
#include "gls/rng.hpp"

namespace gls {

enum class LawKind { Gaussian, Rademacher, UniformSym };

// Centered i.i.d. increment law. Zero-scale laws are allowed (degenerate
// all-zero walks); negative parameters are rejected.
struct IncrementLaw {
    LawKind kind = LawKind::Gaussian;
    double param = 1.0;  // sigma, or the half-width for uniform

    static IncrementLaw gaussian(double sigma);
    static IncrementLaw rademacher();
    static IncrementLaw uniform_sym(double half_width);

    double draw(CounterRng& rng) const;
    std::string to_string() const;
};

struct SimulationConfig {
    IncrementLaw law;
    int n_steps = 64;
    long n_trials = 1000;
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0 = hardware concurrency
};

// Batch of martingale trials S_k = d_1 + ... + d_k, k = 1..n. The signed
// vectors are in trial order; the samples are sorted. running_max stores
// max(0, max_k S_k): clamping keeps the sample nonnegative and leaves the
// tail P(M* > t) unchanged for t > 0.
struct MartingalePathBatch {
    SimulationConfig cfg;
    std::vector<double> terminal_signed;
    std::vector<double> running_max_signed;
    EmpiricalSample terminal;            // |S_n|
    EmpiricalSample running_max;         // max(0, max_k S_k)
    EmpiricalSample quad_variation_sqrt; // sqrt(sum_k d_k^2)
};

// Deterministic for a given config: trial i draws from the counter stream
// (seed, i) regardless of the thread count.
MartingalePathBatch simulate_martingale(const SimulationConfig& cfg);

}  // namespace gls
