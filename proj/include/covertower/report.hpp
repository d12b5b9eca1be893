// Structured text records: one line per record, deterministic field order.

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace covertower {

struct Record {
  std::string name;
  std::vector<std::pair<std::string, std::string>> fields;
  bool pass = true;

  std::string to_line() const;
};

struct Summary {
  int passed = 0;
  int failed = 0;

  void add(const Record& r) { (r.pass ? passed : failed) += 1; }
  bool all_pass() const { return failed == 0; }
  std::string to_line() const;
};

void write_records(const std::string& path, const std::vector<Record>& records,
                   const Summary* summary = nullptr);

}  // namespace covertower
