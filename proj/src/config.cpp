#include "gls/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "gls/csv.hpp"

namespace gls {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// name | name:arg | name(args...), where args respect nested brackets
struct Descriptor {
    std::string name;
    std::vector<std::string> args;
};

std::vector<std::string> split_top_level(const std::string& s) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty() || !parts.empty()) parts.push_back(trim(cur));
    return parts;
}

Descriptor parse_descriptor(const std::string& raw) {
    const std::string s = trim(raw);
    if (s.empty()) throw std::invalid_argument("empty descriptor");
    const std::size_t colon = s.find(':');
    const std::size_t paren = s.find_first_of("([");
    if (paren == std::string::npos) {
        if (colon == std::string::npos) return {s, {}};
        return {trim(s.substr(0, colon)), {trim(s.substr(colon + 1))}};
    }
    const char open = s[paren];
    const char close = open == '(' ? ')' : ']';
    if (s.back() != close)
        throw std::invalid_argument("descriptor '" + s + "': missing '" +
                                    std::string(1, close) + "'");
    Descriptor d;
    d.name = trim(s.substr(0, paren));
    d.args = split_top_level(s.substr(paren + 1, s.size() - paren - 2));
    return d;
}

double arg_number(const Descriptor& d, std::size_t i) {
    if (i >= d.args.size())
        throw std::invalid_argument("descriptor '" + d.name +
                                    "': missing argument");
    std::size_t used = 0;
    const double v = std::stod(d.args[i], &used);
    if (used != d.args[i].size())
        throw std::invalid_argument("descriptor '" + d.name +
                                    "': bad number '" + d.args[i] + "'");
    return v;
}

void expect_args(const Descriptor& d, std::size_t n) {
    if (d.args.size() != n)
        throw std::invalid_argument("descriptor '" + d.name + "': expected " +
                                    std::to_string(n) + " argument(s)");
}

}  // namespace

GeneratingFunction parse_generating_function(const std::string& spec,
                                             PDomain default_domain) {
    const Descriptor d = parse_descriptor(spec);
    if (d.name == "power") {
        expect_args(d, 1);
        return make_power(arg_number(d, 0), default_domain);
    }
    if (d.name == "doob") {
        expect_args(d, 0);
        PDomain dom = default_domain;
        if (dom.contains(1.0)) dom = PDomain(1.0, dom.p_hi, false, dom.include_hi);
        return make_doob_factor(dom);
    }
    if (d.name == "const") {
        expect_args(d, 1);
        return make_constant(arg_number(d, 0), default_domain);
    }
    if (d.name == "product") {
        if (d.args.size() < 2)
            throw std::invalid_argument("product[...]: need >= 2 factors");
        GeneratingFunction acc =
            parse_generating_function(d.args[0], default_domain);
        for (std::size_t i = 1; i < d.args.size(); ++i)
            acc = combine(acc, parse_generating_function(d.args[i], default_domain),
                          CombineMode::Product);
        return acc;
    }
    if (d.name == "scale") {
        expect_args(d, 2);
        return scale(parse_generating_function(d.args[1], default_domain),
                     arg_number(d, 0));
    }
    if (d.name == "table") {
        expect_args(d, 1);
        auto rows = read_numeric_csv(d.args[0], 2);
        std::vector<double> ps, vals;
        for (const auto& r : rows) {
            ps.push_back(r[0]);
            vals.push_back(r[1]);
        }
        return make_table(std::move(ps), std::move(vals), "table(" + d.args[0] + ")");
    }
    throw std::invalid_argument("unknown generating function '" + d.name + "'");
}

MomentOracle parse_moment_oracle(const std::string& spec) {
    const Descriptor d = parse_descriptor(spec);
    if (d.name == "const") {
        expect_args(d, 1);
        return constant_oracle(arg_number(d, 0));
    }
    if (d.name == "normal") {
        expect_args(d, 0);
        return normal_moment_oracle();
    }
    if (d.name == "exponential") {
        expect_args(d, 0);
        return exponential_moment_oracle();
    }
    if (d.name == "sample") {
        expect_args(d, 1);
        return sample_oracle(std::make_shared<const EmpiricalSample>(
            EmpiricalSample::load_csv(d.args[0])));
    }
    throw std::invalid_argument("unknown oracle '" + d.name + "'");
}

IncrementLaw parse_increment_law(const std::string& spec) {
    const Descriptor d = parse_descriptor(spec);
    if (d.name == "gaussian")
        return IncrementLaw::gaussian(d.args.empty() ? 1.0 : arg_number(d, 0));
    if (d.name == "rademacher") {
        expect_args(d, 0);
        return IncrementLaw::rademacher();
    }
    if (d.name == "uniform") {
        expect_args(d, 1);
        return IncrementLaw::uniform_sym(arg_number(d, 0));
    }
    throw std::invalid_argument("unknown increment law '" + d.name + "'");
}

TransferKernel parse_kernel(const std::string& spec, double p0) {
    const Descriptor d = parse_descriptor(spec);
    if (d.name == "doob") return doob_kernel(kInf, p0);
    if (d.name == "bdg") return bdg_kernel(kInf, p0 > 0.0 ? p0 : 2.0);
    if (d.name == "custom") {
        expect_args(d, 1);
        auto rows = read_numeric_csv(d.args[0], 4);
        std::vector<CustomKernelRow> krows;
        krows.reserve(rows.size());
        for (const auto& r : rows) krows.push_back({r[0], r[1], r[2], r[3]});
        return custom_kernel(std::move(krows));
    }
    throw std::invalid_argument("unknown kernel '" + d.name + "'");
}

namespace {

std::vector<double> parse_number_list(const std::string& s) {
    std::vector<double> out;
    for (const std::string& part : split_top_level(s)) {
        std::size_t used = 0;
        out.push_back(std::stod(part, &used));
        if (used != part.size())
            throw std::invalid_argument("bad number '" + part + "'");
    }
    if (out.empty()) throw std::invalid_argument("empty number list");
    return out;
}

}  // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        try {
            if (key == "kernel") {
                parse_kernel(value);  // reject unparsable specs early
                cfg.kernel = value;
            } else if (key == "law") {
                cfg.law = parse_increment_law(value);
            } else if (key == "n_steps") {
                cfg.n_steps = std::stoi(value);
            } else if (key == "trials") {
                cfg.n_trials = std::stol(value);
            } else if (key == "seed") {
                cfg.seed = std::stoull(value);
            } else if (key == "threads") {
                cfg.threads = static_cast<unsigned>(std::stoul(value));
            } else if (key == "p_grid") {
                cfg.p_grid = parse_number_list(value);
            } else if (key == "slack_sigmas") {
                cfg.slack_sigmas = std::stod(value);
            } else if (key == "fit_window") {
                const auto w = parse_number_list(value);
                if (w.size() != 2) throw std::invalid_argument("need lo,hi");
                cfg.fit_lo = w[0];
                cfg.fit_hi = w[1];
            } else if (key == "fit_points") {
                cfg.fit_points = std::stoi(value);
            } else if (key == "transfer_window") {
                const auto w = parse_number_list(value);
                if (w.size() != 2) throw std::invalid_argument("need lo,hi");
                cfg.transfer_lo = w[0];
                cfg.transfer_hi = w[1];
            } else if (key == "transfer_points") {
                cfg.transfer_points = std::stoi(value);
            } else if (key == "t_grid") {
                cfg.tail_grid_size = std::stoi(value);
            } else if (key == "norm_grid") {
                cfg.norm_grid_size = std::stoi(value);
            } else if (key == "out_dir") {
                cfg.out_dir = value;
            } else {
                throw std::invalid_argument("unknown key '" + key + "'");
            }
        } catch (const std::exception& ex) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": " + ex.what());
        }
    }
    return cfg;
}

}  // namespace gls
