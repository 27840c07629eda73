#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gls/conjugate.hpp"
#include "gls/domain.hpp"
#include "gls/generating.hpp"

namespace gls {

// Absolute values of simulated outcomes, sorted ascending. Immutable.
class EmpiricalSample {
public:
    explicit EmpiricalSample(std::vector<double> values,
                             std::string seed_info = "");

    static EmpiricalSample load_csv(const std::string& path);
    void store_csv(const std::string& path) const;

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    const std::string& seed_info() const { return seed_info_; }

    double min() const { return values_.front(); }
    double max() const { return values_.back(); }
    double quantile(double q) const;

private:
    std::vector<double> values_;
    std::string seed_info_;
};

struct MomentEstimate {
    double value;
    double std_error;  // jackknife
};

// Plug-in estimate ((1/n) sum v_i^p)^{1/p}, stabilized by factoring out the
// sample maximum so large p cannot overflow. Jackknife standard error.
MomentEstimate empirical_moment(const EmpiricalSample& s, double p);

struct TailEstimate {
    double fraction;
    double std_error;
};

// #{v_i > t}/n by binary search on the sorted values (strict inequality).
TailEstimate empirical_tail(const EmpiricalSample& s, double t);

// The map p -> |zeta|_p. eval must be defined for p in [1, finite_up_to]
// and is nondecreasing in p on a probability space (Lyapunov).
struct MomentOracle {
    std::string tag;
    std::function<double(double)> eval;
    double finite_up_to = kInf;
};

MomentOracle constant_oracle(double c);
MomentOracle normal_moment_oracle();       // |N(0,1)|_p
MomentOracle exponential_moment_oracle();  // Exp(1): Gamma(p+1)^{1/p}
MomentOracle sample_oracle(std::shared_ptr<const EmpiricalSample> s);
MomentOracle scale_oracle(const MomentOracle& base, double c);

// ||zeta||_{G kappa} = sup_p |zeta|_p / kappa(p) over a log grid on the
// intersection of kappa's domain with [1, finite_up_to]. Lower estimate of
// the true norm; returns the maximizing order.
GridSup gls_norm(const MomentOracle& oracle, const GeneratingFunction& kappa,
                 std::size_t grid_size, double p_cap = kDefaultPMax);

// kappa_0(p) = |zeta|_p wrapped as a generating function. By construction
// gls_norm(oracle, natural_function(oracle)) = 1.
GeneratingFunction natural_function(const MomentOracle& oracle,
                                    const PDomain& domain);

struct TailDominanceRow {
    double t;
    double empirical;
    double std_error;
    double bound;
    bool violation;
};

struct TailDominanceReport {
    std::vector<TailDominanceRow> rows;
    std::size_t violations = 0;
    double slack_sigmas = 3.0;
    // min over rows of bound + slack*stderr - empirical; +inf when empty
    double min_margin = kInf;
};

// Checks the empirical survival function against the bound on a log grid
// from bound.valid_from() to the 0.999 sample quantile. Report-only.
TailDominanceReport check_tail_dominance(const EmpiricalSample& s,
                                         const TailBound& bound,
                                         double slack_sigmas = 3.0,
                                         std::size_t grid_size = 33);

// CSV export, header "t,empirical,stderr,bound,violation".
void write_tail_report_csv(const std::string& path,
                           const TailDominanceReport& report);

}  // namespace gls
