#pragma once

// Experiment configuration files.
//
// Grammar (line based):
//   line     := blank | comment | section | entry
//   comment  := '#' ...
//   section  := '[' name ']'          prefixes later keys with "name."
//   entry    := key '=' value         key may itself be dotted: phi.kind = boolean
// Trailing "# ..." on an entry line is a comment. Keys are case-sensitive and
// may appear once. Relative paths resolve against the config file's directory.
//
// Keys:
//   n_qubits          integer in [1, 16]                          (required)
//   phi.kind          linear_ramp | boolean | file | random       (required)
//   phi.max_phase     angle, e.g. 0.785, pi/4, 3*pi/4             (linear_ramp)
//   phi.winners       comma-separated indices, may be empty       (boolean)
//   phi.path          phase-table file                            (file)
//   phi.seed          unsigned integer                            (random)
//   initial.kind      uniform | file                              (default uniform)
//   initial.path      amplitude file                              (file)
//   K                 integer >= 0 or "auto"                      (default auto)
//   formulation       alternating | qiter | ancilla_free          (default alternating)
//   M                 phase qubits, 1..14                         (default 8)
//   shots             integer >= 0                                (default 0)
//   seed              unsigned 64-bit integer                     (default 1)
//   output_dir        directory for CSVs and the manifest         (default out)
//   estimate.mode     real | complex | magnitude                  (default real)

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nbamp/amplitude_spec.hpp"
#include "nbamp/oracles.hpp"

namespace nbamp::cli {

// Invalid configuration; field() names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class PhiKind { LinearRamp, Boolean, File, Random };
enum class InitialKind { Uniform, File };
enum class EstimateMode { Real, Complex, Magnitude };

struct ExperimentConfig {
  int n_qubits = 0;
  PhiKind phi_kind = PhiKind::LinearRamp;
  double max_phase = 0.0;
  std::string max_phase_text;
  std::vector<std::uint64_t> winners;
  std::filesystem::path phi_path;
  std::uint64_t phi_seed = 0;
  InitialKind initial_kind = InitialKind::Uniform;
  std::filesystem::path initial_path;
  std::optional<int> K;  // empty = auto
  Formulation formulation = Formulation::Alternating;
  int M = 8;
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "out";
  EstimateMode estimate_mode = EstimateMode::Real;

  PhaseFunction build_phase() const;
  AmplitudeSpec build_initial() const;
  // Resolved key/value pairs in a fixed order, for the run manifest.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

// "pi", "-pi/2", "3*pi/4", "2pi", "0.25" and plain decimals.
std::optional<double> parse_angle(std::string_view text);

ExperimentConfig parse_config(std::istream& in, const std::string& source,
                              const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace nbamp::cli
