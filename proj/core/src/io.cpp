#include "vpfp/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vpfp {

std::string format_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("atomic_write_file: cannot open " + tmp.string());
    }
    out << content;
    if (!out.good()) {
      throw std::runtime_error("atomic_write_file: write failed for " +
                               tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::map<std::string, std::string> parse_config_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("parse_config_file: cannot open " + path.string());
  }
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("parse_config_file: missing '=' at line " +
                               std::to_string(lineno));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::runtime_error("parse_config_file: empty key at line " +
                               std::to_string(lineno));
    }
    kv[key] = value;
  }
  return kv;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) {
      throw std::invalid_argument("parse_double_list: bad number '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::string join_csv_row(const std::vector<std::string>& cells) {
  std::string row;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    row += cells[i];
  }
  row += '\n';
  return row;
}

}  // namespace vpfp
