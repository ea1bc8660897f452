#include "ea/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ea/errors.hpp"

namespace ea {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    fail(ErrorCode::config, "config key '" + key + "': not a number: '" +
                                value + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    fail(ErrorCode::config, "config key '" + key + "': not an integer: '" +
                                value + "'");
  return i;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "on" || value == "1") return true;
  if (value == "false" || value == "off" || value == "0") return false;
  fail(ErrorCode::config, "config key '" + key + "': not a boolean: '" +
                              value + "'");
}

std::vector<double> parse_list(const std::string& key,
                               const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty())
      fail(ErrorCode::config, "config key '" + key + "': empty list entry");
    out.push_back(parse_double(key, item));
  }
  if (out.empty())
    fail(ErrorCode::config, "config key '" + key + "': empty list");
  return out;
}

// setter table; the suffix hint below leans on these exact spellings
using Setter = std::function<void(RunConfig&, const std::string&,
                                  const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"d1_m", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.d1_m = parse_double(k, v);
       }},
      {"d2_m", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.d2_m = parse_double(k, v);
       }},
      {"eps1_r", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.eps1_r = parse_double(k, v);
       }},
      {"sigma1", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.sigma1 = parse_double(k, v);
       }},
      {"sigma_air",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.sigma_air = parse_double(k, v);
       }},
      {"Y1_pa", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.y1_pa = parse_double(k, v);
       }},
      {"Y2_pa", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.y2_pa = parse_double(k, v);
       }},
      {"nu1", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.nu1 = parse_double(k, v);
       }},
      {"nu2", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.nu2 = parse_double(k, v);
       }},
      {"h_rms_m",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.h_rms_m = parse_double(k, v);
       }},
      {"hurst", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.hurst = parse_double(k, v);
       }},
      {"q_l", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.q_l = parse_double(k, v);
       }},
      {"q_0", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.q_0 = parse_double(k, v);
       }},
      {"q_1", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.q_1 = parse_double(k, v);
       }},
      {"p0_pa", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.p0_pa = parse_double(k, v);
       }},
      {"a0_m2", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.a0_m2 = parse_double(k, v);
       }},
      {"V0_v", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.v0_v = parse_double(k, v);
       }},
      {"freqs_hz",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.freqs_hz = parse_list(k, v);
       }},
      {"sc_dispersion_csv",
       [](RunConfig& c, const std::string&, const std::string& v) {
         c.sc_dispersion_csv = v;
       }},
      {"damping", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.damping = parse_double(k, v);
       }},
      {"rel_tol", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.rel_tol = parse_double(k, v);
       }},
      {"max_iterations",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.max_iterations = parse_int(k, v);
       }},
      {"include_leakage",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.include_leakage = parse_bool(k, v);
       }},
      {"parallel", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.parallel = parse_bool(k, v);
       }},
  };
  return table;
}

// "d1_mm" and friends are usually a wrong unit suffix on a known key
std::string suffix_hint(const std::string& key) {
  const auto cut = key.rfind('_');
  const std::string stem = cut == std::string::npos ? key : key.substr(0, cut);
  for (const auto& [known, unused] : setters()) {
    const auto kcut = known.rfind('_');
    const std::string kstem =
        kcut == std::string::npos ? known : known.substr(0, kcut);
    if (stem == kstem && key != known)
      return " (did you mean '" + known + "'?)";
  }
  return "";
}

}  // namespace

RunConfig parse_config_text(const std::string& text,
                            const std::string& source_name) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::config, source_name + ":" + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      fail(ErrorCode::config,
           source_name + ":" + std::to_string(lineno) + ": empty key");
    const auto it = setters().find(key);
    if (it == setters().end())
      fail(ErrorCode::config, source_name + ":" + std::to_string(lineno) +
                                  ": unknown config key '" + key + "'" +
                                  suffix_hint(key));
    if (std::find(seen.begin(), seen.end(), key) != seen.end())
      fail(ErrorCode::config, source_name + ":" + std::to_string(lineno) +
                                  ": duplicate config key '" + key + "'");
    seen.push_back(key);
    it->second(cfg, key, value);
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

RoughnessSpec roughness_from(const RunConfig& cfg) {
  RoughnessSpec spec;
  spec.h_rms_m = cfg.h_rms_m;
  spec.hurst = cfg.hurst;
  spec.q_l = cfg.q_l;
  spec.q_0 = cfg.q_0;
  spec.q_1 = cfg.q_1;
  return spec;
}

GapMedium gap_from(const RunConfig& cfg) {
  GapMedium gap;
  gap.conductivity_s_per_m = cfg.sigma_air;
  return gap;
}

DielectricLayer insulator_from(const RunConfig& cfg) {
  DielectricLayer l;
  l.name = "insulator";
  l.thickness_m = cfg.d1_m;
  l.rel_permittivity = Dispersive::constant(cfg.eps1_r);
  l.conductivity_s_per_m = Dispersive::constant(cfg.sigma1);
  l.elastic_modulus_pa = cfg.y1_pa;
  l.poisson = cfg.nu1;
  return l;
}

DielectricLayer counter_layer_from(const RunConfig& cfg) {
  if (cfg.sc_dispersion_csv.empty())
    fail(ErrorCode::config,
         "no counter-layer dispersion table configured (sc_dispersion_csv)");
  const LayerDispersion disp = load_layer_dispersion(cfg.sc_dispersion_csv);
  DielectricLayer l;
  l.name = "counter";
  l.thickness_m = cfg.d2_m;
  l.rel_permittivity = disp.eps_r;
  l.conductivity_s_per_m = disp.sigma_s_per_m;
  l.elastic_modulus_pa = cfg.y2_pa;
  l.poisson = cfg.nu2;
  return l;
}

SimulationConfig simulation_from(const RunConfig& cfg) {
  SimulationConfig sim;
  sim.v0 = cfg.v0_v;
  sim.freqs_hz = cfg.freqs_hz;
  sim.p0_pa = cfg.p0_pa;
  sim.a0_m2 = cfg.a0_m2;
  sim.damping = cfg.damping;
  sim.rel_tol = cfg.rel_tol;
  sim.max_iterations = cfg.max_iterations;
  sim.include_leakage = cfg.include_leakage;
  sim.parallel = cfg.parallel;
  return sim;
}

}  // namespace ea
