#include "gls/martingale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace gls {

IncrementLaw IncrementLaw::gaussian(double sigma) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("gaussian law: need sigma >= 0");
    return {LawKind::Gaussian, sigma};
}

IncrementLaw IncrementLaw::rademacher() { return {LawKind::Rademacher, 1.0}; }

IncrementLaw IncrementLaw::uniform_sym(double half_width) {
    if (!(half_width >= 0.0) || !std::isfinite(half_width))
        throw std::invalid_argument("uniform law: need half width >= 0");
    return {LawKind::UniformSym, half_width};
}

double IncrementLaw::draw(CounterRng& rng) const {
    switch (kind) {
        case LawKind::Gaussian:
            return param * rng.next_gaussian();
        case LawKind::Rademacher:
            return rng.next_rademacher();
        case LawKind::UniformSym:
            return param * (2.0 * rng.next_unit() - 1.0);
    }
    throw std::logic_error("IncrementLaw: unknown kind");
}

std::string IncrementLaw::to_string() const {
    std::ostringstream out;
    switch (kind) {
        case LawKind::Gaussian:
            out << "gaussian(" << param << ")";
            break;
        case LawKind::Rademacher:
            out << "rademacher";
            break;
        case LawKind::UniformSym:
            out << "uniform(" << param << ")";
            break;
    }
    return out.str();
}

MartingalePathBatch simulate_martingale(const SimulationConfig& cfg) {
    if (cfg.n_steps < 1)
        throw std::invalid_argument("simulate_martingale: need n_steps >= 1");
    if (cfg.n_trials < 1)
        throw std::invalid_argument("simulate_martingale: need n_trials >= 1");

    const auto trials = static_cast<std::size_t>(cfg.n_trials);
    std::vector<double> terminal(trials);
    std::vector<double> run_max(trials);
    std::vector<double> qv_sqrt(trials);

    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            CounterRng rng(cfg.seed, static_cast<std::uint64_t>(i));
            double walk = 0.0;
            double peak = -std::numeric_limits<double>::infinity();
            double qv = 0.0;
            for (int k = 0; k < cfg.n_steps; ++k) {
                const double d = cfg.law.draw(rng);
                walk += d;
                qv += d * d;
                if (walk > peak) peak = walk;
            }
            terminal[i] = walk;
            run_max[i] = peak;
            qv_sqrt[i] = std::sqrt(qv);
        }
    };

    unsigned workers = cfg.threads ? cfg.threads
                                   : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers,
                                 static_cast<unsigned>(std::min<std::size_t>(
                                     trials, std::numeric_limits<unsigned>::max())));
    if (workers <= 1) {
        run_range(0, trials);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (trials + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            if (begin >= trials) break;
            pool.emplace_back(run_range, begin, std::min(begin + chunk, trials));
        }
        for (auto& t : pool) t.join();
    }

    std::ostringstream info;
    info << "philox4x32(seed=" << cfg.seed << ",stream=trial)"
         << " law=" << cfg.law.to_string() << " n=" << cfg.n_steps
         << " trials=" << cfg.n_trials;

    std::vector<double> abs_term(trials), clamped_max(trials);
    for (std::size_t i = 0; i < trials; ++i) {
        abs_term[i] = std::fabs(terminal[i]);
        clamped_max[i] = std::max(0.0, run_max[i]);
    }

    return MartingalePathBatch{
        cfg,
        std::move(terminal),
        std::move(run_max),
        EmpiricalSample(std::move(abs_term), info.str() + " kind=|S_n|"),
        EmpiricalSample(std::move(clamped_max), info.str() + " kind=M*"),
        EmpiricalSample(std::move(qv_sqrt), info.str() + " kind=sqrt<M,M>")};
}

}  // namespace gls
