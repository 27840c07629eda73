#pragma once

#include <string>
#include <vector>

namespace gls {

// Round-trip safe formatting (17 significant digits).
std::string format_double(double x);

// Numeric CSV reader; a non-numeric first line is treated as a header and
// skipped. Every row must have the same number of fields.
std::vector<std::vector<double>> read_numeric_csv(const std::string& path,
                                                  std::size_t expect_cols);

}  // namespace gls
