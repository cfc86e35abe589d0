#ifndef LIEAX_REPORT_HPP
#define LIEAX_REPORT_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace lieax {

/// One verified equation or axiom instance. `indices` are 1-based frame or
/// coordinate indices identifying the instance; `residual` is a canonical
/// expression (or form literal) and is only populated on failure.
struct Finding {
  std::string check_id;
  std::vector<std::size_t> indices;
  bool pass = true;
  std::string residual;
};

struct CheckReport {
  std::string name;
  std::vector<Finding> findings;

  bool pass() const {
    for (const auto& f : findings) {
      if (!f.pass) return false;
    }
    return true;
  }

  void add(std::string check_id, std::vector<std::size_t> indices, bool ok,
           std::string residual = "") {
    findings.push_back(Finding{std::move(check_id), std::move(indices), ok,
                               ok ? std::string() : std::move(residual)});
  }

  void merge(const CheckReport& other) {
    findings.insert(findings.end(), other.findings.begin(), other.findings.end());
  }
};

}  // namespace lieax

#endif
