#include "nbamp/cli/config.hpp"

#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "nbamp/error.hpp"
#include "nbamp/text.hpp"

namespace nbamp::cli {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "n_qubits",     "phi.kind",    "phi.max_phase", "phi.winners", "phi.path", "phi.seed",
      "initial.kind", "initial.path", "K",            "formulation", "M",        "shots",
      "seed",         "output_dir",  "estimate.mode"};
  return keys;
}

struct RawEntry {
  std::string value;
  int line;
};

using RawMap = std::map<std::string, RawEntry>;

std::string strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return std::string(text::trim(line.substr(0, hash)));
}

const RawEntry* find(const RawMap& raw, const std::string& key) {
  const auto it = raw.find(key);
  return it == raw.end() ? nullptr : &it->second;
}

const std::string& require(const RawMap& raw, const std::string& key) {
  const auto* e = find(raw, key);
  if (!e) throw ConfigError(key, "required key is missing");
  return e->value;
}

std::int64_t to_int(const std::string& key, const std::string& v, std::int64_t lo, std::int64_t hi) {
  const auto parsed = text::parse_int(v);
  if (!parsed || *parsed < lo || *parsed > hi) {
    throw ConfigError(key, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                               "], got '" + v + "'");
  }
  return *parsed;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto t = text::trim(v);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ConfigError(key, "expected an unsigned integer, got '" + v + "'");
  }
  return out;
}

std::filesystem::path existing_file(const std::string& key, const std::string& v,
                                    const std::filesystem::path& base) {
  std::filesystem::path p(v);
  if (p.is_relative()) p = base / p;
  if (!std::filesystem::is_regular_file(p)) throw ConfigError(key, "file not found: " + p.string());
  return p;
}

}  // namespace

std::optional<double> parse_angle(std::string_view s) {
  s = text::trim(s);
  const auto pos = s.find("pi");
  if (pos == std::string_view::npos) return text::parse_double(s);

  std::string_view coef = text::trim(s.substr(0, pos));
  std::string_view rest = text::trim(s.substr(pos + 2));
  if (!coef.empty() && coef.back() == '*') coef = text::trim(coef.substr(0, coef.size() - 1));
  double c = 1.0;
  if (coef == "-") {
    c = -1.0;
  } else if (!coef.empty() && coef != "+") {
    const auto v = text::parse_double(coef);
    if (!v) return std::nullopt;
    c = *v;
  }
  double d = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') return std::nullopt;
    const auto v = text::parse_double(rest.substr(1));
    if (!v || *v == 0.0) return std::nullopt;
    d = *v;
  }
  return c * kPi / d;
}

PhaseFunction ExperimentConfig::build_phase() const {
  switch (phi_kind) {
    case PhiKind::LinearRamp: return linear_ramp(n_qubits, max_phase);
    case PhiKind::Boolean: return boolean_phase(n_qubits, winners);
    case PhiKind::Random: return random_phase(n_qubits, phi_seed);
    case PhiKind::File: {
      auto phi = load_phase_table(phi_path);
      if (phi.num_qubits() != n_qubits) {
        throw ConfigError("phi.path", "table has " + std::to_string(phi.size()) + " entries, expected 2^" +
                                          std::to_string(n_qubits));
      }
      return phi;
    }
  }
  throw ConfigError("phi.kind", "unhandled kind");
}

AmplitudeSpec ExperimentConfig::build_initial() const {
  if (initial_kind == InitialKind::Uniform) return AmplitudeSpec::uniform(n_qubits);
  auto spec = load_amplitude_file(initial_path);
  if (spec.num_qubits() != n_qubits) {
    throw ConfigError("initial.path", "file has " + std::to_string(spec.size()) + " amplitudes, expected 2^" +
                                          std::to_string(n_qubits));
  }
  return spec;
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("n_qubits", std::to_string(n_qubits));
  switch (phi_kind) {
    case PhiKind::LinearRamp:
      out.emplace_back("phi.kind", "linear_ramp");
      out.emplace_back("phi.max_phase", max_phase_text);
      break;
    case PhiKind::Boolean: {
      out.emplace_back("phi.kind", "boolean");
      std::string w;
      for (std::size_t i = 0; i < winners.size(); ++i) w += (i ? "," : "") + std::to_string(winners[i]);
      out.emplace_back("phi.winners", w);
      break;
    }
    case PhiKind::File:
      out.emplace_back("phi.kind", "file");
      out.emplace_back("phi.path", phi_path.string());
      break;
    case PhiKind::Random:
      out.emplace_back("phi.kind", "random");
      out.emplace_back("phi.seed", std::to_string(phi_seed));
      break;
  }
  if (initial_kind == InitialKind::Uniform) {
    out.emplace_back("initial.kind", "uniform");
  } else {
    out.emplace_back("initial.kind", "file");
    out.emplace_back("initial.path", initial_path.string());
  }
  out.emplace_back("K", K ? std::to_string(*K) : "auto");
  out.emplace_back("formulation", std::string(to_string(formulation)));
  out.emplace_back("M", std::to_string(M));
  out.emplace_back("shots", std::to_string(shots));
  out.emplace_back("seed", std::to_string(seed));
  out.emplace_back("output_dir", output_dir.string());
  const char* mode = estimate_mode == EstimateMode::Real      ? "real"
                     : estimate_mode == EstimateMode::Complex ? "complex"
                                                              : "magnitude";
  out.emplace_back("estimate.mode", mode);
  return out;
}

ExperimentConfig parse_config(std::istream& in, const std::string& source,
                              const std::filesystem::path& base_dir) {
  RawMap raw;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = strip_comment(line);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']' || body.size() < 3) throw ParseError(source, lineno, "malformed section header");
      section = std::string(text::trim(std::string_view(body).substr(1, body.size() - 2)));
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(source, lineno, "expected 'key = value'");
    std::string key(text::trim(std::string_view(body).substr(0, eq)));
    const std::string value(text::trim(std::string_view(body).substr(eq + 1)));
    if (key.empty()) throw ParseError(source, lineno, "empty key");
    if (!section.empty()) key = section + "." + key;
    if (!known_keys().count(key)) throw ParseError(source, lineno, "unknown key '" + key + "'");
    if (raw.count(key)) throw ParseError(source, lineno, "duplicate key '" + key + "'");
    raw.emplace(key, RawEntry{value, lineno});
  }

  ExperimentConfig c;
  c.n_qubits = static_cast<int>(to_int("n_qubits", require(raw, "n_qubits"), 1, 16));

  const auto& kind = require(raw, "phi.kind");
  if (kind == "linear_ramp") {
    c.phi_kind = PhiKind::LinearRamp;
    c.max_phase_text = require(raw, "phi.max_phase");
    const auto a = parse_angle(c.max_phase_text);
    if (!a) throw ConfigError("phi.max_phase", "expected an angle such as 0.785 or pi/4");
    c.max_phase = *a;
  } else if (kind == "boolean") {
    c.phi_kind = PhiKind::Boolean;
    const auto& w = require(raw, "phi.winners");
    std::stringstream ss(w);
    std::string item;
    const std::uint64_t n = std::uint64_t{1} << c.n_qubits;
    while (std::getline(ss, item, ',')) {
      if (text::trim(item).empty()) continue;
      const auto v = to_u64("phi.winners", item);
      if (v >= n) throw ConfigError("phi.winners", "index " + std::to_string(v) + " out of range");
      c.winners.push_back(v);
    }
  } else if (kind == "file") {
    c.phi_kind = PhiKind::File;
    c.phi_path = existing_file("phi.path", require(raw, "phi.path"), base_dir);
  } else if (kind == "random") {
    c.phi_kind = PhiKind::Random;
    c.phi_seed = to_u64("phi.seed", require(raw, "phi.seed"));
  } else {
    throw ConfigError("phi.kind", "expected linear_ramp, boolean, file or random, got '" + kind + "'");
  }

  if (const auto* e = find(raw, "initial.kind")) {
    if (e->value == "uniform") {
      c.initial_kind = InitialKind::Uniform;
    } else if (e->value == "file") {
      c.initial_kind = InitialKind::File;
      c.initial_path = existing_file("initial.path", require(raw, "initial.path"), base_dir);
    } else {
      throw ConfigError("initial.kind", "expected uniform or file, got '" + e->value + "'");
    }
  }
  if (const auto* e = find(raw, "K"); e && e->value != "auto") {
    c.K = static_cast<int>(to_int("K", e->value, 0, 1000000));
  }
  if (const auto* e = find(raw, "formulation")) {
    try {
      c.formulation = parse_formulation(e->value);
    } catch (const DomainError& ex) {
      throw ConfigError("formulation", ex.what());
    }
  }
  if (const auto* e = find(raw, "M")) c.M = static_cast<int>(to_int("M", e->value, 1, 14));
  if (const auto* e = find(raw, "shots")) {
    c.shots = static_cast<std::uint64_t>(to_int("shots", e->value, 0, std::int64_t{1} << 40));
  }
  if (const auto* e = find(raw, "seed")) c.seed = to_u64("seed", e->value);
  if (const auto* e = find(raw, "output_dir")) {
    if (e->value.empty()) throw ConfigError("output_dir", "must not be empty");
    std::filesystem::path p(e->value);
    c.output_dir = p.is_relative() ? base_dir / p : p;
  } else {
    c.output_dir = base_dir / c.output_dir;
  }
  if (const auto* e = find(raw, "estimate.mode")) {
    if (e->value == "real") {
      c.estimate_mode = EstimateMode::Real;
    } else if (e->value == "complex") {
      c.estimate_mode = EstimateMode::Complex;
    } else if (e->value == "magnitude") {
      c.estimate_mode = EstimateMode::Magnitude;
    } else {
      throw ConfigError("estimate.mode", "expected real, complex or magnitude, got '" + e->value + "'");
    }
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path.string() + "'");
  return parse_config(in, path.string(), path.parent_path().empty() ? "." : path.parent_path());
}

}  // namespace nbamp::cli
