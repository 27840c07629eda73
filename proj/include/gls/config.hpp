#pragma once

#include <string>

#include "gls/generating.hpp"
#include "gls/martingale.hpp"
#include "gls/moments.hpp"
#include "gls/transfer.hpp"
#include "gls/verify.hpp"

namespace gls {

// Descriptor grammar shared by config files and CLI flags:
//   power(m) | doob | const(c) | product[spec, ...] | scale(c, spec)
//   | table(path)
// The shorthand name:arg (e.g. power:2) is accepted for single-argument
// kinds. Unbounded kinds default to the given domain.
GeneratingFunction parse_generating_function(const std::string& spec,
                                             PDomain default_domain = PDomain());

// const(c) | normal | exponential | sample(path)
MomentOracle parse_moment_oracle(const std::string& spec);

// gaussian(sigma) | gaussian | rademacher | uniform(a)
IncrementLaw parse_increment_law(const std::string& spec);

// doob | bdg | custom(path); custom tables are CSV p,r,factor,alpha
TransferKernel parse_kernel(const std::string& spec, double p0 = -1.0);

// key = value lines, # comments. Unknown keys are rejected.
ExperimentConfig load_experiment_config(const std::string& path);

}  // namespace gls
