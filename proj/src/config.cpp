// Tower config file parsing: "key = value" lines with '#' comments.
// Schedules accept a single constant or an explicit per-level list.

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "covertower/tower.hpp"

namespace covertower {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw std::invalid_argument("config line " + std::to_string(line) + ": " + msg);
}

std::vector<BigInt> parse_values(const std::string& text, int line) {
  std::string cleaned = text;
  for (char& c : cleaned)
    if (c == ',') c = ' ';
  std::istringstream is(cleaned);
  std::vector<BigInt> values;
  std::string tok;
  while (is >> tok) {
    try {
      values.emplace_back(tok);
    } catch (const std::exception&) {
      fail(line, "not an integer: '" + tok + "'");
    }
  }
  if (values.empty()) fail(line, "missing value");
  return values;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

}  // namespace

TowerConfig parse_tower_config(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  bool have_depth = false;
  int depth = 0;
  std::vector<BigInt> top_values;
  int top_line = 0;
  std::vector<BigInt> mult_values;
  int mult_line = 0;

  while (std::getline(is, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string stripped = trim(line);
    if (stripped.empty()) continue;
    std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key == "depth") {
      auto vals = parse_values(value, lineno);
      if (vals.size() != 1 || vals[0] < 0 || vals[0] > 100000)
        fail(lineno, "depth must be a single small nonnegative integer");
      depth = static_cast<int>(to_i64(vals[0]));
      have_depth = true;
    } else if (key == "top_length") {
      top_values = parse_values(value, lineno);
      top_line = lineno;
    } else if (key == "mult") {
      mult_values = parse_values(value, lineno);
      mult_line = lineno;
    } else {
      fail(lineno, "unknown key '" + key + "'");
    }
  }

  if (!have_depth) throw std::invalid_argument("config: missing 'depth'");
  TowerConfig cfg = TowerConfig::uniform(depth);
  if (!top_values.empty()) {
    if (top_values.size() == 1)
      cfg.top_length.assign(static_cast<std::size_t>(depth), top_values[0]);
    else if (top_values.size() == static_cast<std::size_t>(depth))
      cfg.top_length = top_values;
    else
      fail(top_line, "top_length needs 1 or depth values");
  }
  if (!mult_values.empty()) {
    std::size_t rows = static_cast<std::size_t>(std::max(depth - 1, 0));
    if (mult_values.size() == 1) {
      for (std::size_t n = 0; n < rows; ++n)
        cfg.mult[n].assign(n + 1, mult_values[0]);
    } else if (mult_values.size() == rows) {
      // one value per level, applied to every circuit of that level
      for (std::size_t n = 0; n < rows; ++n) cfg.mult[n].assign(n + 1, mult_values[n]);
    } else {
      fail(mult_line, "mult needs 1 or depth-1 values");
    }
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(e.what()));
  }
  return cfg;
}

TowerConfig load_tower_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tower_config(buf.str());
}

}  // namespace covertower
