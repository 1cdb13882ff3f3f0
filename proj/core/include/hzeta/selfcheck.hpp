#pragma once

#include <string>
#include <vector>

namespace hzeta {

struct CheckReport {
  std::string name;
  bool passed = false;
  std::string detail;  // measured vs tolerance, one line
  double seconds = 0.0;
};

// Suite names accepted by run_verify_suite, without "all".
const std::vector<std::string>& verify_suites();

// Runs one suite; "all" concatenates every suite in order.  A check that
// throws is reported as failed with the exception text.  Unknown suite
// names are a domain error.
std::vector<CheckReport> run_verify_suite(const std::string& suite);

}  // namespace hzeta
