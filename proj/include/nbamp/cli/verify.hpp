#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nbamp::cli {

struct PropertyResult {
  std::string name;
  bool pass;
  std::string detail;
};

// Cross-module property checks: closed forms against simulation, eigenstates,
// trig identities, moments, CDF bounds and phase estimation. Prints one line
// per property to `out`.
std::vector<PropertyResult> run_verify(std::ostream& out);

}  // namespace nbamp::cli
