#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace galjac {

/// Outcome of a verification run: how many cases were checked and which failed.
struct Report {
  std::string claim;
  std::size_t cases = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  void fail(std::string what) { failures.push_back(std::move(what)); }
  void merge(const Report& o) {
    cases += o.cases;
    for (const auto& f : o.failures) failures.push_back(o.claim.empty() ? f : o.claim + ": " + f);
  }
};

}  // namespace galjac
