#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

inline std::string data_path(const std::string& name) { return std::string(DELPEZZO_TEST_DATA) + "/" + name; }

/// Whitespace-split lines of a data file.
inline std::vector<std::vector<std::string>> read_rows(const std::string& name) {
  std::ifstream in(data_path(name));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::vector<std::string> row;
    std::string f;
    while (ss >> f) row.push_back(f);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}
