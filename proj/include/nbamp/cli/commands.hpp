#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nbamp/amplify.hpp"
#include "nbamp/cli/config.hpp"
#include "nbamp/meanest.hpp"

namespace nbamp::cli {

// Runs amplification per the config and writes histogram.csv, lambda.csv and
// manifest.json into config.output_dir. A summary goes to `out`.
//
// With shots > 0 the ancilla is measured with `seed` and the data register is
// sampled with seed + 1.
AmplificationReport cmd_amplify(const ExperimentConfig& config, std::ostream& out);

// Runs mean estimation per config.estimate_mode and writes phase_hist.csv,
// cos_hist.csv (plus *_imag.csv for complex mode) and manifest.json.
MeanEstimate cmd_estimate(const ExperimentConfig& config, std::ostream& out);

struct OverlapArgs {
  std::filesystem::path a;
  std::filesystem::path b;
  int M = 8;
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = ".";
};

// Both circuits are widened to the larger qubit count. Writes phase_hist.csv
// (real-part run) and manifest.json.
OverlapEstimate cmd_overlap(const OverlapArgs& args, std::ostream& out);

// CSV helpers shared by the commands. Every file starts with a schema line
// "# nonbool-amp csv v1 <name>: <columns>".
std::string format_double(double v);

}  // namespace nbamp::cli
