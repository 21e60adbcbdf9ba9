#include "nbamp/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "json.hpp"
#include "nbamp/cli/circuit.hpp"
#include "nbamp/error.hpp"
#include "nbamp/predict.hpp"

namespace nbamp::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr int kLambdaTableCap = 1000;

// Records created files and per-stage wall-clock times for the manifest.
class RunLog {
 public:
  explicit RunLog(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  void start(const std::string& stage) {
    stage_ = stage;
    t0_ = Clock::now();
  }
  void stop() {
    const double s = std::chrono::duration<double>(Clock::now() - t0_).count();
    stages_[stage_] = s;
  }

  std::ofstream open_csv(const std::string& name, const std::string& columns) {
    std::ofstream f(dir_ / name, std::ios::binary);
    if (!f) throw DomainError("cannot write '" + (dir_ / name).string() + "'");
    files_.push_back(name);
    f << "# nonbool-amp csv v1 " << name << ": " << columns << "\n" << columns << "\n";
    return f;
  }

  // Writes manifest.json through a temporary file and a rename.
  void write_manifest(Json body) {
    body["files"] = files_;
    body["stages_seconds"] = stages_;
    const auto tmp = dir_ / "manifest.json.tmp";
    {
      std::ofstream f(tmp, std::ios::binary);
      if (!f) throw DomainError("cannot write '" + tmp.string() + "'");
      f << body.dump(2) << "\n";
    }
    std::filesystem::rename(tmp, dir_ / "manifest.json");
  }

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
  Json stages_ = Json::object();
  std::string stage_;
  Clock::time_point t0_;
};

Json config_json(const ExperimentConfig& c) {
  Json j = Json::object();
  for (const auto& [k, v] : c.echo()) j[k] = v;
  return j;
}

void write_phase_hist(RunLog& log, const std::string& name, const PhaseEstimate& est) {
  auto f = log.open_csv(name, "omega_hat,count,exact_prob");
  for (std::size_t j = 0; j < est.grid_size(); ++j) {
    f << format_double(est.omega(j)) << ',' << (est.counts ? std::to_string((*est.counts)[j]) : "") << ','
      << format_double(est.distribution[j]) << '\n';
  }
}

// One row per distinct estimator value: grid points j and 2^M - j merged.
template <typename F>
void write_value_hist(RunLog& log, const std::string& name, const PhaseEstimate& est, F estimator) {
  auto f = log.open_csv(name, "cos_omega_hat,count");
  const std::size_t g = est.grid_size();
  std::vector<std::uint64_t> folded(g / 2 + 1, 0);
  if (est.counts) {
    for (std::size_t j = 0; j < g; ++j) folded[std::min(j, g - j)] += (*est.counts)[j];
  }
  for (std::size_t j = 0; j <= g / 2; ++j) {
    f << format_double(estimator(est.omega(j))) << ',' << (est.counts ? std::to_string(folded[j]) : "") << '\n';
  }
}

Json phase_summary(const PhaseEstimate& est, double mode_omega) {
  return Json{{"M", est.M}, {"mode_omega", mode_omega}, {"sampled", est.counts.has_value()}};
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

AmplificationReport cmd_amplify(const ExperimentConfig& config, std::ostream& out) {
  RunLog log(config.output_dir);

  log.start("build");
  const auto phi = config.build_phase();
  const auto spec = config.build_initial();
  log.stop();

  log.start("simulate");
  const bool ancilla_free = config.formulation == Formulation::AncillaFree;
  auto report = amplify(spec, phi, config.K, config.formulation,
                        ancilla_free ? std::nullopt : std::optional<std::uint64_t>(config.seed));
  log.stop();

  log.start("sample");
  std::vector<std::uint64_t> counts;
  if (config.shots > 0) counts = sample_weights(report.final_probabilities, config.shots, config.seed + 1);
  log.stop();

  log.start("write");
  const auto p0 = spec.initial_probabilities();
  {
    auto f = log.open_csv("histogram.csv", "x,cos_phi,p0,p_K_predicted,freq_observed");
    for (std::size_t x = 0; x < spec.size(); ++x) {
      f << x << ',' << format_double(std::cos(phi[x])) << ',' << format_double(p0[x]) << ','
        << format_double(report.predicted_probabilities[x]) << ',';
      if (config.shots > 0) {
        f << format_double(static_cast<double>(counts[x]) / static_cast<double>(config.shots));
      }
      f << '\n';
    }
  }
  const double angle = ancilla_free ? report.theta_prime : report.theta;
  int k_max = std::max(report.K, report.k_tilde.value_or(0));
  if (angle > 0.0) {
    k_max = std::max(k_max, static_cast<int>(std::min<double>(kLambdaTableCap, std::floor(kPi / angle))));
  }
  Json lambdas = Json::array();
  {
    auto f = log.open_csv("lambda.csv", "K,lambda_K");
    for (int k = 0; k <= k_max; ++k) {
      const double lam = lambda_k(angle, k);
      f << k << ',' << format_double(lam) << '\n';
      lambdas.push_back(lam);
    }
  }
  log.stop();

  Json m;
  m["command"] = "amplify";
  m["config"] = config_json(config);
  m["cos_theta"] = report.cos_theta;
  m["theta"] = report.theta;
  m["cos_theta_prime"] = report.cos_theta_prime;
  m["theta_prime"] = report.theta_prime;
  m["delta"] = report.delta;
  m["k_tilde"] = report.k_tilde ? Json(*report.k_tilde) : Json(nullptr);
  m["K"] = report.K;
  m["lambda_K"] = report.lambda_K;
  m["lambda_table"] = lambdas;
  m["no_amplification_scope"] = report.no_amplification_scope;
  m["ancilla_bit"] = report.ancilla_bit ? Json(*report.ancilla_bit) : Json(nullptr);
  log.write_manifest(std::move(m));

  out << "formulation      " << to_string(report.formulation) << "\n";
  out << "cos(theta)       " << format_double(report.cos_theta) << "\n";
  out << "theta            " << format_double(report.theta) << "\n";
  if (ancilla_free) {
    out << "cos(theta')      " << format_double(report.cos_theta_prime) << "\n";
    out << "delta            " << format_double(report.delta) << "\n";
  }
  out << "K_tilde          " << (report.k_tilde ? std::to_string(*report.k_tilde) : "undefined") << "\n";
  out << "K                " << report.K << (report.no_amplification_scope ? " (no amplification scope)" : "")
      << "\n";
  out << "lambda_K         " << format_double(report.lambda_K) << "\n";
  if (report.ancilla_bit) out << "ancilla bit      " << *report.ancilla_bit << "\n";
  out << "output           " << log.dir().string() << "\n";
  return report;
}

MeanEstimate cmd_estimate(const ExperimentConfig& config, std::ostream& out) {
  RunLog log(config.output_dir);

  log.start("build");
  const auto phi = config.build_phase();
  const auto spec = config.build_initial();
  const auto t = theta(spec, phi);
  const auto tp = theta_prime(spec, phi);
  log.stop();

  log.start("qpe");
  MeanEstimate est;
  switch (config.estimate_mode) {
    case EstimateMode::Real: est = estimate_cos_mean(spec, phi, config.M, config.shots, config.seed); break;
    case EstimateMode::Complex:
      est = estimate_complex_mean(spec, phi, config.M, config.shots, config.seed);
      break;
    case EstimateMode::Magnitude:
      est = estimate_magnitude_ancilla_free(spec, phi, config.M, config.shots, config.seed);
      break;
  }
  log.stop();

  log.start("write");
  auto cos_est = [](double w) { return std::cos(w); };
  auto half_est = [](double w) { return std::abs(std::cos(w / 2.0)); };
  write_phase_hist(log, "phase_hist.csv", est.phase);
  if (config.estimate_mode == EstimateMode::Magnitude) {
    write_value_hist(log, "cos_hist.csv", est.phase, half_est);
  } else {
    write_value_hist(log, "cos_hist.csv", est.phase, cos_est);
  }
  if (est.imag_phase) {
    write_phase_hist(log, "phase_hist_imag.csv", *est.imag_phase);
    write_value_hist(log, "cos_hist_imag.csv", *est.imag_phase, cos_est);
  }
  log.stop();

  const Complex exact(tp.cos_theta_prime * std::cos(tp.delta), tp.cos_theta_prime * std::sin(tp.delta));
  Json m;
  m["command"] = "estimate";
  m["config"] = config_json(config);
  m["cos_theta"] = t.cos_theta;
  m["theta"] = t.theta;
  m["cos_theta_prime"] = tp.cos_theta_prime;
  m["delta"] = tp.delta;
  m["estimate"] = {{"re", est.value.real()}, {"im", est.value.imag()}};
  m["real_part_run"] = phase_summary(est.phase, est.mode_omega);
  if (est.imag_phase) m["imag_part_run"] = phase_summary(*est.imag_phase, est.imag_mode_omega);
  log.write_manifest(std::move(m));

  switch (config.estimate_mode) {
    case EstimateMode::Real:
      out << "estimate cos(theta)   " << format_double(est.value.real()) << "\n";
      out << "exact cos(theta)      " << format_double(t.cos_theta) << "\n";
      break;
    case EstimateMode::Complex:
      out << "estimate mean         " << format_double(est.value.real()) << " + "
          << format_double(est.value.imag()) << "i\n";
      out << "exact mean            " << format_double(exact.real()) << " + " << format_double(exact.imag())
          << "i\n";
      break;
    case EstimateMode::Magnitude:
      out << "estimate |mean|       " << format_double(est.value.real()) << "\n";
      out << "exact |mean|          " << format_double(tp.cos_theta_prime) << "\n";
      break;
  }
  out << "mode omega_hat        " << format_double(est.mode_omega) << "\n";
  out << "output                " << log.dir().string() << "\n";
  return est;
}

OverlapEstimate cmd_overlap(const OverlapArgs& args, std::ostream& out) {
  RunLog log(args.output_dir);

  log.start("build");
  const auto ca = load_circuit(args.a);
  const auto cb = load_circuit(args.b);
  const int nq = std::max(ca.min_qubits(), cb.min_qubits());
  const auto a = circuit_operator(ca, nq);
  const auto b = circuit_operator(cb, nq);
  log.stop();

  log.start("qpe");
  auto est = estimate_overlap(a, b, args.M, args.shots, args.seed);
  log.stop();

  log.start("write");
  write_phase_hist(log, "phase_hist.csv", est.complex_estimate.phase);
  log.stop();

  const Complex v = est.complex_estimate.value;
  Json m;
  m["command"] = "overlap";
  m["config"] = {{"a", args.a.string()},
                 {"b", args.b.string()},
                 {"qubits", nq},
                 {"M", args.M},
                 {"shots", args.shots},
                 {"seed", args.seed}};
  m["overlap"] = {{"re", v.real()}, {"im", v.imag()}};
  m["magnitude"] = std::abs(v);
  m["magnitude_ancilla_free"] = est.magnitude_estimate.value.real();
  log.write_manifest(std::move(m));

  out << "overlap               " << format_double(v.real()) << " + " << format_double(v.imag()) << "i\n";
  out << "magnitude             " << format_double(std::abs(v)) << "\n";
  out << "magnitude (no ancilla) " << format_double(est.magnitude_estimate.value.real()) << "\n";
  return est;
}

}  // namespace nbamp::cli
