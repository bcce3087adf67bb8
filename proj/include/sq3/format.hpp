#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sq3 {

/// Locale-independent rendering with 17 significant digits, like "%.17g".
std::string format_double(double v);

/// Writes one comma-separated line terminated by LF.
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);
void write_csv_row(std::ostream& out, const std::vector<double>& values);

}  // namespace sq3
