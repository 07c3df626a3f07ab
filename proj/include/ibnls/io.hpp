#pragma once

#include <map>
#include <string>
#include <vector>

#include "ibnls/cutoff.hpp"
#include "ibnls/evolution.hpp"
#include "ibnls/experiments.hpp"
#include "ibnls/ground_state.hpp"

namespace ibnls {

// Flat `key = value` configuration files; '#' starts a comment. Unknown keys
// are rejected so typos fail loudly.
std::map<std::string, std::string> parse_key_value_file(const std::string& path);
SimConfig sim_config_from_file(const std::string& path);
SimConfig sim_config_from_map(const std::map<std::string, std::string>& kv);

// Applies `key=v1,v2,...` sweep axes to a base config, producing the
// cartesian product in listed order (deterministic row order).
std::vector<SimConfig> expand_sweep(const SimConfig& base, const std::vector<std::string>& axes);

void write_timeseries_csv(const std::string& path, const TimeSeries& series);
// term-by-term virial breakdown per snapshot (the verbose companion of the run CSV)
void write_virial_terms_csv(const std::string& path, const TimeSeries& series);
void write_field_csv(const std::string& path, const RadialField& field);
void write_ground_state_csv(const std::string& path, const GroundStateResult& gs);
void write_cutoff_csv(const std::string& path, const CutoffProfile& profile);
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

std::string run_summary_json(const SimConfig& config, const TimeSeries& series, const BlowupVerdict& verdict);
std::string ground_state_json(const GroundStateResult& gs, const ModelParams& params);
std::string classification_json(const Classification& cls);
std::string sweep_json(const std::vector<SweepRow>& rows);
std::string verification_json(const std::vector<CheckResult>& checks);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace ibnls
