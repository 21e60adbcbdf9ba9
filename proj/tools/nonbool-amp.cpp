#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nbamp/cli/commands.hpp"
#include "nbamp/cli/config.hpp"
#include "nbamp/cli/verify.hpp"
#include "nbamp/error.hpp"
#include "nbamp/parallel.hpp"
#include "nbamp/text.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitVerify = 3;

// NONBOOL_AMP_THREADS must be a positive integer when set.
bool apply_thread_env() {
  const char* env = std::getenv("NONBOOL_AMP_THREADS");
  if (!env) return true;
  const auto v = nbamp::text::parse_int(env);
  if (!v || *v < 1) {
    std::cerr << "error: NONBOOL_AMP_THREADS must be a positive integer, got '" << env << "'\n";
    return false;
  }
  nbamp::set_max_threads(static_cast<unsigned>(*v));
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-boolean amplitude amplification and mean estimation by statevector simulation"};
  app.require_subcommand(1);

  std::string amplify_config;
  auto* amplify = app.add_subcommand("amplify", "Run amplitude amplification from a config file");
  amplify->add_option("--config", amplify_config, "Experiment config file")->required();

  std::string estimate_config;
  auto* estimate = app.add_subcommand("estimate", "Run QPE-based mean estimation from a config file");
  estimate->add_option("--config", estimate_config, "Experiment config file")->required();

  nbamp::cli::OverlapArgs ov;
  std::string ov_a, ov_b, ov_out = ".";
  auto* overlap = app.add_subcommand("overlap", "Estimate <0|A^dag B|0> for two gate-list circuits");
  overlap->add_option("--a", ov_a, "Circuit file preparing the first state")->required();
  overlap->add_option("--b", ov_b, "Circuit file preparing the second state")->required();
  overlap->add_option("--m", ov.M, "Phase qubits")->required()->check(CLI::Range(1, 14));
  overlap->add_option("--shots", ov.shots, "Samples drawn from the phase register (0 = exact)")->required();
  overlap->add_option("--seed", ov.seed, "Sampling seed")->required();
  overlap->add_option("--out", ov_out, "Output directory")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run the built-in property checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  if (!apply_thread_env()) return kExitUsage;

  try {
    if (*amplify) {
      nbamp::cli::cmd_amplify(nbamp::cli::load_config(amplify_config), std::cout);
    } else if (*estimate) {
      nbamp::cli::cmd_estimate(nbamp::cli::load_config(estimate_config), std::cout);
    } else if (*overlap) {
      ov.a = ov_a;
      ov.b = ov_b;
      ov.output_dir = ov_out;
      nbamp::cli::cmd_overlap(ov, std::cout);
    } else if (*verify) {
      const auto results = nbamp::cli::run_verify(std::cout);
      for (const auto& r : results) {
        if (!r.pass) return kExitVerify;
      }
    }
  } catch (const nbamp::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nbamp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nbamp::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}
