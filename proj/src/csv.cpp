#include "mixreg/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mixreg {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_sample_csv(std::ostream& os, const Sample& sample) {
  sample.validate();
  os << (sample.u ? "x,y,u\n" : "x,y\n");
  for (std::size_t i = 0; i < sample.size(); ++i) {
    os << format_double(sample.x[i]) << ',' << format_double(sample.y[i]);
    if (sample.u) os << ',' << int((*sample.u)[i]);
    os << '\n';
  }
}

void write_sample_csv(const std::string& path, const Sample& sample) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  write_sample_csv(f, sample);
}

Sample read_sample_csv(std::istream& is, const std::string& name) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error(name + ": empty CSV");
  bool has_u;
  if (line == "x,y") {
    has_u = false;
  } else if (line == "x,y,u") {
    has_u = true;
  } else {
    throw std::runtime_error(name + ":1: expected header 'x,y' or 'x,y,u'");
  }
  Sample s;
  if (has_u) s.u = std::vector<std::uint8_t>();
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    double vals[2];
    for (int k = 0; k < 2; ++k) {
      if (!std::getline(ls, cell, ',')) {
        throw std::runtime_error(name + ":" + std::to_string(lineno) + ": missing column");
      }
      try {
        std::size_t pos;
        vals[k] = std::stod(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument("");
      } catch (...) {
        throw std::runtime_error(name + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
    }
    s.x.push_back(vals[0]);
    s.y.push_back(vals[1]);
    if (has_u) {
      if (!std::getline(ls, cell, ','))
        throw std::runtime_error(name + ":" + std::to_string(lineno) + ": missing label column");
      if (cell != "0" && cell != "1")
        throw std::runtime_error(name + ":" + std::to_string(lineno) + ": label must be 0 or 1");
      s.u->push_back(cell == "1" ? 1 : 0);
    }
  }
  if (s.x.empty()) throw std::runtime_error(name + ": no data rows");
  s.validate();
  return s;
}

Sample read_sample_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  return read_sample_csv(f, path);
}

void write_table_csv(const std::string& path, const std::string& header,
                     const std::vector<std::vector<double>>& rows) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << header << '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) f << ',';
      f << format_double(row[k]);
    }
    f << '\n';
  }
}

}  // namespace mixreg
