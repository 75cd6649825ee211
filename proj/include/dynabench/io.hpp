#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "dynabench/benchmarks.hpp"
#include "dynabench/features.hpp"
#include "dynabench/sim.hpp"
#include "dynabench/statmod.hpp"

namespace dynabench {

using json = nlohmann::json;

// Circuit interchange schema: {qubits, clbits, system_qubits, instructions};
// conditionals are {"if": {"bits": [...], "pred": "eq"|"parity", "val": ...},
// "body": [...]}.
json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const json& j);

// Benchmark files add a "benchmark" block (family, params, seed, readout,
// branch model, ideal-reference digest).
json benchmark_to_json(const GeneratedBenchmark& bench, uint64_t seed);
GeneratedBenchmark benchmark_from_json(const json& j, uint64_t* seed = nullptr);

json branch_model_to_json(const BranchModel& bm);
BranchModel branch_model_from_json(const json& j);

// Counts schema: {"register": {...}, "mcm": {"c<k>": {...}, "joint": {...}},
// "shots": N, "seed": S, "noise": {...}}.
json counts_to_json(const SimResult& result);
SimResult counts_from_json(const json& j);

json noise_to_json(const NoiseModel& nm);
NoiseModel noise_from_json(const json& j);

/// Named noise presets ("noiseless", "ibm-like", "helios-like").
NoiseModel noise_preset(const std::string& name);

struct FeatureRow {
  FeatureVector features;
  std::string benchmark;
  std::string family;
  int n = 0;
  int n_s = 0;
  uint64_t seed = 0;
};

std::string features_csv(const std::vector<FeatureRow>& rows);
std::vector<FeatureRow> parse_features_csv(const std::string& text);

struct ScoreRow {
  std::string benchmark;
  std::string family;
  int n = 0;
  uint64_t seed = 0;
  std::string noise;
  double score = 0;
};

std::string scores_csv(const std::vector<ScoreRow>& rows);
std::vector<ScoreRow> parse_scores_csv(const std::string& text);

/// Joins feature and score rows on (benchmark, n, seed) into a Dataset.
Dataset join_dataset(const std::vector<FeatureRow>& features,
                     const std::vector<ScoreRow>& scores, const std::string& backend_tag);

json fit_to_json(const FitResult& fit);
FitResult fit_from_json(const json& j);

/// Pipeline manifest: suite definition, noise preset, shots, seed, output.
struct RunManifest {
  std::vector<std::pair<Family, std::vector<int>>> suite;
  std::string noise = "noiseless";
  long shots = 4096;
  uint64_t seed = 1;
  int instances = 1;
  std::string out = "out";
  std::map<Family, std::map<std::string, double>> params;
  std::map<std::string, NoiseModel> noise_presets;  // user presets by name

  NoiseModel resolve_noise(const std::string& name) const;
};

RunManifest manifest_from_json(const json& j);
RunManifest load_manifest(const std::filesystem::path& path);

/// Write-temp-rename so partially written stage outputs never appear.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);

std::string format_double(double v);

}  // namespace dynabench
