// Pass/fail reports produced by the verifiers.

#ifndef NMODAL_REPORT_HPP_
#define NMODAL_REPORT_HPP_

#include <algorithm>
#include <string>
#include <vector>

namespace nmodal {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string header;
  std::vector<Check> checks;

  void add(std::string name, bool pass, std::string detail = {}) {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
  std::vector<Check> failures() const {
    std::vector<Check> out;
    std::copy_if(checks.begin(), checks.end(), std::back_inserter(out), [](const Check& c) { return !c.pass; });
    return out;
  }
  std::string to_text() const {
    std::string out;
    if (!header.empty()) out += header + "\n";
    for (const auto& c : checks) {
      out += (c.pass ? "  pass  " : "  FAIL  ") + c.name;
      if (!c.detail.empty()) out += "  (" + c.detail + ")";
      out += "\n";
    }
    return out;
  }
};

}  // namespace nmodal

#endif  // NMODAL_REPORT_HPP_
