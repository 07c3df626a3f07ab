#include "ibnls/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ibnls/errors.hpp"

namespace ibnls {

namespace {

using json = nlohmann::json;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

// shortest round-trip formatting, stable across runs
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double parsed = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' expects a number, got '" + value + "'");
  }
}

int to_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int parsed = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' expects an integer, got '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("config key '" + key + "' expects true/false, got '" + value + "'");
}

const std::set<std::string> kKnownKeys = {
    "N",        "b",        "r_max",          "n",           "family",       "amplitude",
    "width",    "chirp",    "T",              "R",           "dt0",          "dt_min",
    "growth_factor",        "kinetic_stop_factor",           "out_interval", "far_field_tol",
    "radial",   "gs_tol",   "gs_max_iter",    "gs_seed_width"};

}  // namespace

std::map<std::string, std::string> parse_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + " is not 'key = value': '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + " is not 'key = value': '" + line + "'");
    }
    kv[key] = value;
  }
  return kv;
}

SimConfig sim_config_from_map(const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    (void)value;
    if (!kKnownKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  SimConfig config;
  auto get = [&](const char* key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (auto* v = get("N")) config.dim = to_int("N", *v);
  if (auto* v = get("b")) config.b = to_double("b", *v);
  if (auto* v = get("r_max")) config.r_max = to_double("r_max", *v);
  if (auto* v = get("n")) config.n = to_int("n", *v);
  if (auto* v = get("family")) {
    if (*v == "gaussian") {
      config.data.family = InitialDataSpec::Family::gaussian;
    } else if (*v == "ground_state_multiple") {
      config.data.family = InitialDataSpec::Family::ground_state_multiple;
    } else {
      throw ConfigError("family must be 'gaussian' or 'ground_state_multiple', got '" + *v + "'");
    }
  }
  if (auto* v = get("amplitude")) config.data.amplitude = to_double("amplitude", *v);
  if (auto* v = get("width")) config.data.width = to_double("width", *v);
  if (auto* v = get("chirp")) config.data.chirp = to_double("chirp", *v);
  if (auto* v = get("T")) config.horizon = to_double("T", *v);
  if (auto* v = get("R")) config.cutoff_radius = to_double("R", *v);
  if (auto* v = get("dt0")) config.dt0 = to_double("dt0", *v);
  if (auto* v = get("dt_min")) config.dt_min = to_double("dt_min", *v);
  if (auto* v = get("growth_factor")) config.growth_factor = to_double("growth_factor", *v);
  if (auto* v = get("kinetic_stop_factor")) config.kinetic_stop_factor = to_double("kinetic_stop_factor", *v);
  if (auto* v = get("out_interval")) config.out_interval = to_double("out_interval", *v);
  if (auto* v = get("far_field_tol")) config.far_field_tol = to_double("far_field_tol", *v);
  if (auto* v = get("radial")) config.declared_radial = to_bool("radial", *v);
  if (auto* v = get("gs_tol")) config.gs.tol = to_double("gs_tol", *v);
  if (auto* v = get("gs_max_iter")) config.gs.max_iter = to_int("gs_max_iter", *v);
  if (auto* v = get("gs_seed_width")) config.gs.seed_width = to_double("gs_seed_width", *v);
  return config;
}

SimConfig sim_config_from_file(const std::string& path) { return sim_config_from_map(parse_key_value_file(path)); }

std::vector<SimConfig> expand_sweep(const SimConfig& base, const std::vector<std::string>& axes) {
  struct Axis {
    std::string key;
    std::vector<std::string> values;
  };
  std::vector<Axis> parsed;
  for (const std::string& axis : axes) {
    const auto eq = axis.find('=');
    if (eq == std::string::npos) throw ConfigError("sweep axis must look like key=v1,v2,...: '" + axis + "'");
    Axis a;
    a.key = trim(axis.substr(0, eq));
    std::stringstream ss(axis.substr(eq + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) a.values.push_back(item);
    }
    if (a.values.empty()) throw ConfigError("sweep axis '" + a.key + "' has no values");
    parsed.push_back(std::move(a));
  }

  std::vector<std::map<std::string, std::string>> combos = {{}};
  for (const Axis& axis : parsed) {
    std::vector<std::map<std::string, std::string>> next;
    for (const auto& combo : combos) {
      for (const std::string& value : axis.values) {
        auto extended = combo;
        extended[axis.key] = value;
        next.push_back(std::move(extended));
      }
    }
    combos = std::move(next);
  }

  std::vector<SimConfig> configs;
  configs.reserve(combos.size());
  for (const auto& combo : combos) {
    // overlay each combo on the base config through the same typed parser
    std::map<std::string, std::string> merged = combo;
    SimConfig config = base;
    SimConfig overlay = sim_config_from_map(merged);
    // apply only the overlaid keys
    for (const auto& [key, value] : combo) {
      (void)value;
      if (key == "N") config.dim = overlay.dim;
      else if (key == "b") config.b = overlay.b;
      else if (key == "r_max") config.r_max = overlay.r_max;
      else if (key == "n") config.n = overlay.n;
      else if (key == "family") config.data.family = overlay.data.family;
      else if (key == "amplitude") config.data.amplitude = overlay.data.amplitude;
      else if (key == "width") config.data.width = overlay.data.width;
      else if (key == "chirp") config.data.chirp = overlay.data.chirp;
      else if (key == "T") config.horizon = overlay.horizon;
      else if (key == "R") config.cutoff_radius = overlay.cutoff_radius;
      else if (key == "dt0") config.dt0 = overlay.dt0;
      else if (key == "dt_min") config.dt_min = overlay.dt_min;
      else if (key == "growth_factor") config.growth_factor = overlay.growth_factor;
      else if (key == "kinetic_stop_factor") config.kinetic_stop_factor = overlay.kinetic_stop_factor;
      else if (key == "out_interval") config.out_interval = overlay.out_interval;
      else if (key == "far_field_tol") config.far_field_tol = overlay.far_field_tol;
      else if (key == "radial") config.declared_radial = overlay.declared_radial;
      else if (key == "gs_tol") config.gs.tol = overlay.gs.tol;
      else if (key == "gs_max_iter") config.gs.max_iter = overlay.gs.max_iter;
      else if (key == "gs_seed_width") config.gs.seed_width = overlay.gs.seed_width;
    }
    configs.push_back(config);
  }
  return configs;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << content;
}

void write_timeseries_csv(const std::string& path, const TimeSeries& series) {
  std::ostringstream out;
  out << "t,mass,energy,kinetic,grad_sq,potential,V_R,rate_localized,dt\n";
  for (const auto& rec : series.records) {
    out << fmt(rec.t) << ',' << fmt(rec.mass) << ',' << fmt(rec.energy) << ',' << fmt(rec.kinetic) << ','
        << fmt(rec.grad_sq) << ',' << fmt(rec.potential) << ',' << fmt(rec.v_r) << ',' << fmt(rec.rate_localized)
        << ',' << fmt(rec.dt) << '\n';
  }
  write_text_file(path, out.str());
}

void write_virial_terms_csv(const std::string& path, const TimeSeries& series) {
  std::ostringstream out;
  out << "t,hess_delta_term,delta3_term,hessian_contraction_term,delta2_term,"
         "laplacian_potential_term,gradient_potential_term,rate_localized,tail_error\n";
  for (const auto& rec : series.records) {
    out << fmt(rec.t);
    for (double term : rec.virial_terms) out << ',' << fmt(term);
    out << ',' << fmt(rec.rate_localized) << ',' << fmt(rec.tail_error) << '\n';
  }
  write_text_file(path, out.str());
}

void write_field_csv(const std::string& path, const RadialField& field) {
  std::ostringstream out;
  out << "r,re_u,im_u\n";
  for (int i = 0; i < field.size(); ++i) {
    out << fmt(field.grid->nodes()[i]) << ',' << fmt(field.values[i].real()) << ',' << fmt(field.values[i].imag())
        << '\n';
  }
  write_text_file(path, out.str());
}

void write_ground_state_csv(const std::string& path, const GroundStateResult& gs) { write_field_csv(path, gs.W); }

void write_cutoff_csv(const std::string& path, const CutoffProfile& profile) {
  std::ostringstream out;
  out << "r,phi,dphi,d2phi,delta_phi,delta2_phi,delta3_phi,big_phi\n";
  const auto& nodes = profile.grid->nodes();
  for (int i = 0; i < profile.grid->n(); ++i) {
    out << fmt(nodes[i]) << ',' << fmt(profile.phi[i]) << ',' << fmt(profile.radial_derivs[0][i]) << ','
        << fmt(profile.radial_derivs[1][i]) << ',' << fmt(profile.delta_phi[i]) << ',' << fmt(profile.delta2_phi[i])
        << ',' << fmt(profile.delta3_phi[i]) << ',' << fmt(profile.big_phi[i]) << '\n';
  }
  write_text_file(path, out.str());
}

namespace {

json config_to_json(const SimConfig& config) {
  json j;
  j["N"] = config.dim;
  j["b"] = config.b;
  j["r_max"] = config.r_max;
  j["n"] = config.n;
  j["family"] = config.data.family == InitialDataSpec::Family::gaussian ? "gaussian" : "ground_state_multiple";
  j["amplitude"] = config.data.amplitude;
  j["width"] = config.data.width;
  j["chirp"] = config.data.chirp;
  j["T"] = config.horizon;
  j["R"] = config.cutoff_radius;
  j["dt0"] = config.dt0;
  j["dt_min"] = config.dt_min;
  j["growth_factor"] = config.growth_factor;
  j["radial"] = config.declared_radial;
  return j;
}

}  // namespace

std::string run_summary_json(const SimConfig& config, const TimeSeries& series, const BlowupVerdict& verdict) {
  const ModelParams params = make_params(config.dim, config.b);
  json j;
  j["config"] = config_to_json(config);
  j["derived_exponents"] = {{"p", params.p}, {"alpha", params.alpha}, {"q", params.q}};
  j["termination"] = to_string(series.termination);
  j["verdict"] = to_string(verdict.verdict);
  j["kinetic_growth"] = verdict.growth;
  if (verdict.t_star_estimate) {
    j["t_star_estimate"] = *verdict.t_star_estimate;
  } else {
    j["t_star_estimate"] = nullptr;
  }
  j["mass_drift"] = series.mass_drift;
  j["energy_drift"] = series.energy_drift;
  j["max_boundary_ratio"] = series.max_boundary_ratio;
  j["records"] = series.records.size();
  j["total_steps"] = series.total_steps;
  return j.dump(2) + "\n";
}

std::string ground_state_json(const GroundStateResult& gs, const ModelParams& params) {
  json j;
  j["N"] = params.dim;
  j["b"] = params.b;
  j["p"] = params.p;
  j["alpha"] = params.alpha;
  j["kinetic_W"] = gs.kinetic_W;
  j["potential_W"] = gs.potential_W;
  j["energy_W"] = gs.energy_W;
  j["k_opt"] = gs.k_opt;
  j["residual"] = gs.residual;
  j["gamma_final"] = gs.gamma_final;
  j["iterations"] = gs.iterations;
  j["restarts"] = gs.restarts;
  return j.dump(2) + "\n";
}

std::string classification_json(const Classification& cls) {
  json j;
  j["regime"] = to_string(cls.regime);
  j["facts"] = {{"energy", cls.facts.energy},
                {"energy_W", cls.facts.energy_W},
                {"kinetic", cls.facts.kinetic},
                {"kinetic_W", cls.facts.kinetic_W},
                {"b", cls.facts.b},
                {"b_threshold", cls.facts.b_threshold},
                {"b_range_empty", cls.facts.b_range_empty},
                {"radial", cls.facts.radial}};
  return j.dump(2) + "\n";
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
  json arr = json::array();
  for (const auto& row : rows) {
    json j;
    j["index"] = row.index;
    j["config"] = config_to_json(row.config);
    j["regime"] = row.regime;
    j["termination"] = row.termination;
    j["verdict"] = row.verdict;
    if (row.t_star_estimate) {
      j["t_star_estimate"] = *row.t_star_estimate;
    } else {
      j["t_star_estimate"] = nullptr;
    }
    j["growth"] = row.growth;
    j["note"] = row.note;
    j["error"] = row.error;
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "index,N,b,family,amplitude,width,chirp,regime,termination,verdict,t_star_estimate,growth,note,error\n";
  for (const auto& row : rows) {
    out << row.index << ',' << row.config.dim << ',' << fmt(row.config.b) << ','
        << (row.config.data.family == InitialDataSpec::Family::gaussian ? "gaussian" : "ground_state_multiple")
        << ',' << fmt(row.config.data.amplitude) << ',' << fmt(row.config.data.width) << ','
        << fmt(row.config.data.chirp) << ',' << row.regime << ',' << row.termination << ',' << row.verdict << ','
        << (row.t_star_estimate ? fmt(*row.t_star_estimate) : "") << ',' << fmt(row.growth) << ',' << '"' << row.note
        << '"' << ',' << '"' << row.error << '"' << '\n';
  }
  write_text_file(path, out.str());
}

std::string verification_json(const std::vector<CheckResult>& checks) {
  json arr = json::array();
  for (const auto& check : checks) {
    arr.push_back({{"name", check.name},
                   {"pass", check.pass},
                   {"measured", check.measured},
                   {"threshold", check.threshold},
                   {"detail", check.detail}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace ibnls
