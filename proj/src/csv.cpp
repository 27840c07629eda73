#include "gls/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gls {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::vector<std::vector<double>> read_numeric_csv(const std::string& path,
                                                  std::size_t expect_cols) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string field;
        bool numeric = true;
        while (std::getline(ss, field, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(field, &used));
                while (used < field.size() &&
                       std::isspace(static_cast<unsigned char>(field[used])))
                    ++used;
                if (used != field.size()) numeric = false;
            } catch (const std::exception&) {
                numeric = false;
            }
            if (!numeric) break;
        }
        if (!numeric) {
            if (first) {  // header line
                first = false;
                continue;
            }
            throw std::runtime_error(path + ": non-numeric row '" + line + "'");
        }
        first = false;
        if (row.size() != expect_cols)
            throw std::runtime_error(path + ": expected " +
                                     std::to_string(expect_cols) +
                                     " columns, got " +
                                     std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error(path + ": no data rows");
    return rows;
}

}  // namespace gls
