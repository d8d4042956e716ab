#pragma once

#include <string>
#include <vector>

namespace gmx {

/* Shortest decimal form that parses back to the same double; locale
 * independent ('.' decimal point always). */
std::string format_double(double v);

/* Parse a full CSV/whitespace numeric column file: one value per row, a
 * row being either "v" or "t,v" (the last field wins); an optional
 * non-numeric header row is skipped. */
std::vector<double> read_value_column(const std::string& path);

void write_signal_csv(const std::string& path, const std::vector<double>& values);

}  // namespace gmx
