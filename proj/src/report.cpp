#include "covertower/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace covertower {

std::string Record::to_line() const {
  std::ostringstream os;
  os << name;
  for (const auto& [k, v] : fields) os << " " << k << "=" << v;
  os << " verdict=" << (pass ? "pass" : "fail");
  return os.str();
}

std::string Summary::to_line() const {
  std::ostringstream os;
  os << "summary passed=" << passed << " failed=" << failed
     << " verdict=" << (all_pass() ? "pass" : "fail");
  return os.str();
}

void write_records(const std::string& path, const std::vector<Record>& records,
                   const Summary* summary) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report file '" + path + "'");
  for (const Record& r : records) out << r.to_line() << "\n";
  if (summary) out << summary->to_line() << "\n";
}

}  // namespace covertower
