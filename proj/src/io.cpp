#include "dynabench/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dynabench {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

json instruction_to_json(const Instruction& instr) {
  json j;
  if (instr.is_gate()) {
    const auto& g = instr.gate();
    j["op"] = "gate";
    j["gate"] = std::string(gate_name(g.id));
    j["qubits"] = g.qubits;
    j["params"] = g.params;
  } else if (instr.is_measure()) {
    j["op"] = "measure";
    j["qubit"] = instr.measure().qubit;
    j["clbit"] = instr.measure().clbit;
  } else if (instr.is_reset()) {
    j["op"] = "reset";
    j["qubit"] = instr.reset().qubit;
  } else {
    const auto& c = instr.conditional();
    json cond;
    cond["bits"] = c.cond.clbits;
    if (c.cond.pred == Condition::Pred::EqualsValue) {
      cond["pred"] = "eq";
      std::string v;
      for (uint8_t b : c.cond.value) v.push_back(b ? '1' : '0');
      cond["val"] = v;
    } else {
      cond["pred"] = "parity";
      cond["val"] = static_cast<int>(c.cond.parity);
    }
    j["if"] = cond;
    json body = json::array();
    for (const auto& inner : c.body) body.push_back(instruction_to_json(inner));
    j["body"] = body;
  }
  return j;
}

Instruction instruction_from_json(const json& j) {
  if (j.contains("if")) {
    const json& cond = j.at("if");
    Condition c;
    c.clbits = cond.at("bits").get<std::vector<int>>();
    std::string pred = cond.at("pred").get<std::string>();
    if (pred == "eq") {
      c.pred = Condition::Pred::EqualsValue;
      std::string v = cond.at("val").get<std::string>();
      for (char ch : v) c.value.push_back(ch == '1');
    } else if (pred == "parity") {
      c.pred = Condition::Pred::ParityEquals;
      c.parity = static_cast<uint8_t>(cond.at("val").get<int>() & 1);
    } else {
      throw std::invalid_argument("unknown predicate: " + pred);
    }
    std::vector<Instruction> body;
    for (const auto& inner : j.at("body")) body.push_back(instruction_from_json(inner));
    return make_conditional(std::move(c), std::move(body));
  }
  std::string op = j.at("op").get<std::string>();
  if (op == "gate") {
    auto id = gate_from_name(j.at("gate").get<std::string>());
    if (!id) throw std::invalid_argument("unknown gate: " + j.at("gate").get<std::string>());
    std::vector<double> params;
    if (j.contains("params")) params = j.at("params").get<std::vector<double>>();
    return make_gate(*id, j.at("qubits").get<std::vector<int>>(), std::move(params));
  }
  if (op == "measure") return make_measure(j.at("qubit").get<int>(), j.at("clbit").get<int>());
  if (op == "reset") return make_reset(j.at("qubit").get<int>());
  throw std::invalid_argument("unknown op: " + op);
}

}  // namespace

json circuit_to_json(const Circuit& c) {
  json j;
  j["qubits"] = c.num_qubits;
  j["clbits"] = c.num_clbits;
  j["system_qubits"] = std::vector<int>(c.system_qubits.begin(), c.system_qubits.end());
  json instrs = json::array();
  for (const auto& instr : c.instructions) instrs.push_back(instruction_to_json(instr));
  j["instructions"] = instrs;
  if (!c.name.empty()) j["name"] = c.name;
  if (!c.params.empty()) j["params"] = c.params;
  return j;
}

Circuit circuit_from_json(const json& j) {
  Circuit c;
  c.num_qubits = j.at("qubits").get<int>();
  c.num_clbits = j.at("clbits").get<int>();
  for (int q : j.at("system_qubits").get<std::vector<int>>()) c.system_qubits.insert(q);
  for (const auto& instr : j.at("instructions")) {
    c.instructions.push_back(instruction_from_json(instr));
  }
  if (j.contains("name")) c.name = j.at("name").get<std::string>();
  if (j.contains("params")) c.params = j.at("params").get<std::map<std::string, double>>();
  c.validate();
  return c;
}

json branch_model_to_json(const BranchModel& bm) {
  json j;
  switch (bm.kind) {
    case BranchModel::Kind::Uniform:
      j["kind"] = "uniform";
      j["n_a"] = bm.n_a;
      break;
    case BranchModel::Kind::QecNoise: {
      j["kind"] = "qec_noise";
      j["p"] = bm.p;
      j["m"] = bm.m;
      j["s"] = bm.s;
      json w;
      for (const auto& [clbit, weight] : bm.weights) w[std::to_string(clbit)] = weight;
      j["weights"] = w;
      break;
    }
    case BranchModel::Kind::Explicit: {
      j["kind"] = "explicit";
      json p;
      for (const auto& [idx, prob] : bm.probs) p[std::to_string(idx)] = prob;
      j["probs"] = p;
      break;
    }
  }
  return j;
}

BranchModel branch_model_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "uniform") return BranchModel::uniform(j.value("n_a", 0));
  if (kind == "qec_noise") {
    std::map<int, int> weights;
    for (const auto& [key, value] : j.at("weights").items())
      weights[std::stoi(key)] = value.get<int>();
    return BranchModel::qec_noise(j.at("p").get<double>(), j.at("m").get<double>(),
                                  j.at("s").get<double>(), std::move(weights));
  }
  if (kind == "explicit") {
    std::map<int, double> probs;
    for (const auto& [key, value] : j.at("probs").items())
      probs[std::stoi(key)] = value.get<double>();
    return BranchModel::explicit_probs(std::move(probs));
  }
  throw std::invalid_argument("unknown branch model kind: " + kind);
}

namespace {

json ideal_to_json(const IdealReference& ideal) {
  json j;
  switch (ideal.type) {
    case IdealReference::Type::GhzDist:
      j["type"] = "ghz";
      j["n"] = ideal.n;
      break;
    case IdealReference::Type::Clifford: {
      j["type"] = "clifford";
      json ops = json::array();
      for (const auto& op : ideal.clifford_ops) ops.push_back(instruction_to_json(op));
      j["ops"] = ops;
      j["data_qubits"] = ideal.data_qubits;
      break;
    }
    case IdealReference::Type::Delta:
      j["type"] = "delta";
      j["bitstring"] = ideal.bitstring;
      break;
    case IdealReference::Type::Tfim:
      j["type"] = "tfim";
      j["n"] = ideal.n;
      j["steps"] = ideal.steps;
      j["J"] = ideal.J;
      j["h"] = ideal.h;
      j["dt"] = ideal.dt;
      break;
    case IdealReference::Type::Code:
      j["type"] = "code";
      j["code"] = ideal.code_name;
      j["initial"] = code_initial_name(ideal.initial);
      break;
  }
  return j;
}

IdealReference ideal_from_json(const json& j) {
  IdealReference ideal;
  std::string type = j.at("type").get<std::string>();
  if (type == "ghz") {
    ideal.type = IdealReference::Type::GhzDist;
    ideal.n = j.at("n").get<int>();
  } else if (type == "clifford") {
    ideal.type = IdealReference::Type::Clifford;
    for (const auto& op : j.at("ops")) ideal.clifford_ops.push_back(instruction_from_json(op));
    ideal.data_qubits = j.at("data_qubits").get<std::vector<int>>();
  } else if (type == "delta") {
    ideal.type = IdealReference::Type::Delta;
    ideal.bitstring = j.at("bitstring").get<std::string>();
  } else if (type == "tfim") {
    ideal.type = IdealReference::Type::Tfim;
    ideal.n = j.at("n").get<int>();
    ideal.steps = j.at("steps").get<int>();
    ideal.J = j.at("J").get<double>();
    ideal.h = j.at("h").get<double>();
    ideal.dt = j.at("dt").get<double>();
  } else if (type == "code") {
    ideal.type = IdealReference::Type::Code;
    ideal.code_name = j.at("code").get<std::string>();
    std::string initial = j.at("initial").get<std::string>();
    ideal.initial = initial == "zero"  ? CodeInitial::Zero
                    : initial == "one" ? CodeInitial::One
                                       : CodeInitial::Plus;
  } else {
    throw std::invalid_argument("unknown ideal reference type: " + type);
  }
  return ideal;
}

}  // namespace

json benchmark_to_json(const GeneratedBenchmark& bench, uint64_t seed) {
  json j = circuit_to_json(bench.circuit);
  json b;
  b["family"] = family_name(bench.family);
  b["params"] = bench.circuit.params;
  b["seed"] = seed;
  b["readout"] = bench.readout_clbits;
  b["branch_model"] = branch_model_to_json(bench.branch_model);
  b["ideal_reference"] = ideal_to_json(bench.ideal);
  j["benchmark"] = b;
  return j;
}

GeneratedBenchmark benchmark_from_json(const json& j, uint64_t* seed) {
  GeneratedBenchmark bench;
  bench.circuit = circuit_from_json(j);
  const json& b = j.at("benchmark");
  auto family = family_from_name(b.at("family").get<std::string>());
  if (!family) throw std::invalid_argument("unknown family in benchmark block");
  bench.family = *family;
  bench.readout_clbits = b.at("readout").get<std::vector<int>>();
  bench.branch_model = branch_model_from_json(b.at("branch_model"));
  bench.ideal = ideal_from_json(b.at("ideal_reference"));
  if (seed) *seed = b.value("seed", uint64_t{0});
  return bench;
}

json noise_to_json(const NoiseModel& nm) {
  json j;
  j["p1"] = nm.p1;
  j["p2"] = nm.p2;
  j["pm"] = nm.pm;
  j["pidle"] = nm.pidle;
  return j;
}

NoiseModel noise_from_json(const json& j) {
  NoiseModel nm;
  nm.p1 = j.at("p1").get<double>();
  nm.p2 = j.at("p2").get<double>();
  nm.pm = j.at("pm").get<double>();
  nm.pidle = j.at("pidle").get<double>();
  return nm;
}

NoiseModel noise_preset(const std::string& name) {
  if (name == "noiseless") return NoiseModel{};
  if (name == "ibm-like") return NoiseModel{1e-4, 1e-3, 5e-3, 1e-4};
  if (name == "helios-like") return NoiseModel{2.5e-5, 8e-4, 1e-6, 2.5e-5};
  throw std::invalid_argument("unknown noise preset: " + name);
}

namespace {

std::map<std::string, long> raw_counts(const CountsDistribution& d) {
  std::map<std::string, long> raw;
  for (const auto& [key, p] : d.probs) raw[key] = std::lround(p * d.shots);
  return raw;
}

}  // namespace

json counts_to_json(const SimResult& result) {
  json j;
  json reg;
  for (const auto& [key, count] : raw_counts(result.register_counts)) reg[key] = count;
  j["register"] = reg;
  json mcm;
  for (const auto& [clbit, counts] : result.mcm_marginals) {
    json m;
    m["0"] = counts[0];
    m["1"] = counts[1];
    mcm["c" + std::to_string(clbit)] = m;
  }
  if (!result.mcm_clbits.empty()) {
    json joint;
    for (const auto& [key, count] : raw_counts(result.mcm_joint)) joint[key] = count;
    mcm["joint"] = joint;
  }
  j["mcm"] = mcm;
  j["shots"] = result.shots;
  j["seed"] = result.seed;
  j["noise"] = noise_to_json(result.noise);
  j["readout"] = result.readout;
  j["mcm_clbits"] = result.mcm_clbits;
  return j;
}

SimResult counts_from_json(const json& j) {
  SimResult result;
  result.shots = j.at("shots").get<long>();
  result.seed = j.at("seed").get<uint64_t>();
  result.noise = noise_from_json(j.at("noise"));
  result.readout = j.value("readout", std::vector<int>{});
  result.mcm_clbits = j.value("mcm_clbits", std::vector<int>{});
  std::map<std::string, long> reg;
  for (const auto& [key, value] : j.at("register").items()) reg[key] = value.get<long>();
  result.register_counts = CountsDistribution::from_raw(reg);
  const json& mcm = j.at("mcm");
  for (const auto& [key, value] : mcm.items()) {
    if (key == "joint") {
      std::map<std::string, long> joint;
      for (const auto& [k2, v2] : value.items()) joint[k2] = v2.get<long>();
      result.mcm_joint = CountsDistribution::from_raw(joint);
    } else if (key.size() > 1 && key[0] == 'c') {
      int clbit = std::stoi(key.substr(1));
      result.mcm_marginals[clbit] = {value.at("0").get<long>(), value.at("1").get<long>()};
    }
  }
  return result;
}

std::string features_csv(const std::vector<FeatureRow>& rows) {
  std::ostringstream out;
  const auto& names = FeatureVector::names();
  for (size_t i = 0; i < names.size(); ++i) out << names[i] << ",";
  out << "benchmark,family,n,n_s,seed\n";
  for (const auto& row : rows) {
    for (double v : row.features.values) out << format_double(v) << ",";
    out << row.benchmark << "," << row.family << "," << row.n << "," << row.n_s << ","
        << row.seed << "\n";
  }
  return out.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

std::vector<FeatureRow> parse_features_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty features csv");
  auto header = split_csv_line(line);
  const auto& names = FeatureVector::names();
  for (size_t i = 0; i < names.size(); ++i) {
    if (header.size() <= i || header[i] != names[i])
      throw std::invalid_argument("features csv header mismatch");
  }
  std::vector<FeatureRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != names.size() + 5)
      throw std::invalid_argument("features csv row width mismatch");
    FeatureRow row;
    for (size_t i = 0; i < names.size(); ++i) row.features[i] = std::stod(fields[i]);
    row.benchmark = fields[names.size()];
    row.family = fields[names.size() + 1];
    row.n = std::stoi(fields[names.size() + 2]);
    row.n_s = std::stoi(fields[names.size() + 3]);
    row.seed = std::stoull(fields[names.size() + 4]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string scores_csv(const std::vector<ScoreRow>& rows) {
  std::ostringstream out;
  out << "benchmark,family,n,seed,noise,score\n";
  for (const auto& row : rows) {
    out << row.benchmark << "," << row.family << "," << row.n << "," << row.seed << ","
        << row.noise << "," << format_double(row.score) << "\n";
  }
  return out.str();
}

std::vector<ScoreRow> parse_scores_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty scores csv");
  if (line != "benchmark,family,n,seed,noise,score")
    throw std::invalid_argument("scores csv header mismatch");
  std::vector<ScoreRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 6) throw std::invalid_argument("scores csv row width mismatch");
    ScoreRow row;
    row.benchmark = fields[0];
    row.family = fields[1];
    row.n = std::stoi(fields[2]);
    row.seed = std::stoull(fields[3]);
    row.noise = fields[4];
    row.score = std::stod(fields[5]);
    rows.push_back(std::move(row));
  }
  return rows;
}

Dataset join_dataset(const std::vector<FeatureRow>& features,
                     const std::vector<ScoreRow>& scores, const std::string& backend_tag) {
  std::map<std::string, const ScoreRow*> by_key;
  for (const auto& s : scores) {
    by_key[s.benchmark + "|" + std::to_string(s.n) + "|" + std::to_string(s.seed)] = &s;
  }
  Dataset d;
  const auto& names = FeatureVector::names();
  d.columns.assign(names.begin(), names.end());
  std::vector<const FeatureRow*> matched;
  std::vector<double> targets;
  for (const auto& f : features) {
    auto it = by_key.find(f.benchmark + "|" + std::to_string(f.n) + "|" +
                          std::to_string(f.seed));
    if (it == by_key.end()) continue;
    matched.push_back(&f);
    targets.push_back(it->second->score);
  }
  if (matched.empty()) throw std::invalid_argument("no joinable feature/score rows");
  d.X.resize(matched.size(), 24);
  d.y.resize(matched.size());
  for (size_t i = 0; i < matched.size(); ++i) {
    for (int j = 0; j < 24; ++j) d.X(i, j) = matched[i]->features[j];
    d.y(i) = targets[i];
    d.meta.push_back(
        {matched[i]->benchmark, matched[i]->family, matched[i]->n, matched[i]->seed,
         backend_tag});
  }
  return d;
}

json fit_to_json(const FitResult& fit) {
  json j;
  j["lambda"] = fit.lambda;
  j["means"] = std::vector<double>(fit.means.data(), fit.means.data() + fit.means.size());
  j["scales"] = std::vector<double>(fit.scales.data(), fit.scales.data() + fit.scales.size());
  j["coef"] = std::vector<double>(fit.coef.data(), fit.coef.data() + fit.coef.size());
  j["intercept"] = fit.intercept;
  j["schema"] = "table2-v1";
  j["train_r2"] = fit.train_r2;
  return j;
}

FitResult fit_from_json(const json& j) {
  if (j.at("schema").get<std::string>() != "table2-v1")
    throw std::invalid_argument("unknown model schema");
  FitResult fit;
  auto means = j.at("means").get<std::vector<double>>();
  auto scales = j.at("scales").get<std::vector<double>>();
  auto coef = j.at("coef").get<std::vector<double>>();
  fit.means = Eigen::Map<Eigen::VectorXd>(means.data(), means.size());
  fit.scales = Eigen::Map<Eigen::VectorXd>(scales.data(), scales.size());
  fit.coef = Eigen::Map<Eigen::VectorXd>(coef.data(), coef.size());
  fit.lambda = j.at("lambda").get<double>();
  fit.intercept = j.at("intercept").get<double>();
  fit.train_r2 = j.value("train_r2", 0.0);
  const auto& names = FeatureVector::names();
  fit.columns.assign(names.begin(), names.end());
  return fit;
}

RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  if (!j.contains("suite") || !j.at("suite").is_object())
    throw std::invalid_argument("manifest needs a suite object");
  for (const auto& [name, sizes] : j.at("suite").items()) {
    auto family = family_from_name(name);
    if (!family) throw std::invalid_argument("unknown benchmark family: " + name);
    m.suite.emplace_back(*family, sizes.get<std::vector<int>>());
  }
  m.noise = j.value("noise", std::string("noiseless"));
  m.shots = j.value("shots", 4096L);
  if (m.shots < 1) throw std::invalid_argument("manifest shots must be >= 1");
  m.seed = j.value("seed", uint64_t{1});
  m.instances = j.value("instances", 1);
  if (m.instances < 1) throw std::invalid_argument("manifest instances must be >= 1");
  m.out = j.value("out", std::string("out"));
  if (j.contains("params")) {
    for (const auto& [name, block] : j.at("params").items()) {
      auto family = family_from_name(name);
      if (!family) throw std::invalid_argument("unknown family in params: " + name);
      m.params[*family] = block.get<std::map<std::string, double>>();
    }
  }
  if (j.contains("noise_presets")) {
    for (const auto& [name, block] : j.at("noise_presets").items()) {
      m.noise_presets[name] = noise_from_json(block);
    }
  }
  return m;
}

NoiseModel RunManifest::resolve_noise(const std::string& name) const {
  auto it = noise_presets.find(name);
  return it != noise_presets.end() ? it->second : noise_preset(name);
}

RunManifest load_manifest(const std::filesystem::path& path) {
  return manifest_from_json(json::parse(read_text(path)));
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace dynabench
