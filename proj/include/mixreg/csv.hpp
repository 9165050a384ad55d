#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mixreg/types.hpp"

namespace mixreg {

/// %.17g formatting: shortest round-trip safe for doubles.
std::string format_double(double v);

void write_sample_csv(std::ostream& os, const Sample& sample);
void write_sample_csv(const std::string& path, const Sample& sample);

/// Parses `x,y[,u]` CSV; malformed rows report their line number.
Sample read_sample_csv(std::istream& is, const std::string& name = "<stream>");
Sample read_sample_csv(const std::string& path);

/// Long-form table writer: header row then one formatted row per record.
void write_table_csv(const std::string& path, const std::string& header,
                     const std::vector<std::vector<double>>& rows);

}  // namespace mixreg
