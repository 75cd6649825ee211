#include "dynabench/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dynabench/pauli.hpp"
#include "dynabench/schedule.hpp"

namespace dynabench {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void require_normalized(const CountsDistribution& d, const char* which) {
  if (!d.normalized()) throw std::invalid_argument(std::string(which) + " not normalized");
}

}  // namespace

double hellinger_fidelity(const CountsDistribution& p, const CountsDistribution& q) {
  require_normalized(p, "first distribution");
  require_normalized(q, "second distribution");
  double bc = 0;
  for (const auto& [key, pp] : p.probs) {
    auto it = q.probs.find(key);
    if (it != q.probs.end()) bc += std::sqrt(pp * it->second);
  }
  return bc * bc;
}

ScoreResult ghz_score(const CountsDistribution& counts, int n) {
  for (const auto& [key, _] : counts.probs) {
    if (static_cast<int>(key.size()) != n)
      throw std::invalid_argument("bitstring length does not match GHZ width");
  }
  CountsDistribution ideal;
  ideal.probs[std::string(n, '0')] = 0.5;
  ideal.probs[std::string(n, '1')] = 0.5;
  ScoreResult r;
  r.family = "GHZ";
  r.score = clamp01(hellinger_fidelity(counts, ideal));
  return r;
}

ScoreResult delta_score(const CountsDistribution& counts, const std::string& bitstring) {
  CountsDistribution ideal;
  ideal.probs[bitstring] = 1.0;
  ScoreResult r;
  r.score = clamp01(hellinger_fidelity(counts, ideal));
  r.details["p_target"] = [&] {
    auto it = counts.probs.find(bitstring);
    return it == counts.probs.end() ? 0.0 : it->second;
  }();
  return r;
}

DfeSample dfe_sample_circuit(const GeneratedBenchmark& bench, const PauliString& pauli) {
  if (bench.ideal.type != IdealReference::Type::Clifford)
    throw std::invalid_argument("DFE requires a Clifford benchmark family");
  const auto& data = bench.ideal.data_qubits;
  const int n_data = static_cast<int>(data.size());
  if (pauli.size() != n_data)
    throw std::invalid_argument("Pauli string length must match the data qubit count");
  const Circuit body = strip_final_measurements(bench.circuit);

  DfeSample sample;
  sample.propagated = propagate_pauli(bench.ideal.clifford_ops, pauli);
  sample.readout_clbit_base = body.num_clbits;

  CircuitBuilder b(body.num_qubits, body.num_clbits + n_data);
  for (int i = 0; i < n_data; ++i) {
    for (const auto& instr : prepare_pauli_eigenstate(pauli.letter(i), data[i]))
      b.append(instr);
  }
  for (const auto& instr : body.instructions) b.append(instr);
  for (int i = 0; i < n_data; ++i) {
    switch (sample.propagated.letter(i)) {
      case Pauli::X: b.h(data[i]); break;
      case Pauli::Y: b.sdg(data[i]); b.h(data[i]); break;
      default: break;
    }
    b.measure(data[i], body.num_clbits + i);
  }
  sample.circuit = b.finalize();
  return sample;
}

ScoreResult dfe_clifford_score(const GeneratedBenchmark& bench, const DfeConfig& cfg,
                               const NoiseModel& nm, uint64_t seed) {
  if (cfg.k < 1) throw std::invalid_argument("DFE needs k >= 1 samples");
  const int n_data = static_cast<int>(bench.ideal.data_qubits.size());

  ScoreResult r;
  r.family = family_name(bench.family);
  double total = 0;
  for (int s = 0; s < cfg.k; ++s) {
    Rng rng(mix_seed(seed, 0xdfe0 + s));
    PauliString pauli(n_data);
    for (int i = 0; i < n_data; ++i)
      pauli.set_letter(i, static_cast<Pauli>(rng.below(4)));
    DfeSample sample = dfe_sample_circuit(bench, pauli);

    auto shots = run_shots(sample.circuit, cfg.shots_per_sample, nm, mix_seed(seed, 0xe57 + s));
    double acc = 0;
    for (const auto& shot : shots) {
      int parity = 0;
      for (int i = 0; i < n_data; ++i) {
        if (sample.propagated.letter(i) != Pauli::I)
          parity ^= shot.bits[sample.readout_clbit_base + i];
      }
      acc += (parity ? -1.0 : 1.0) * sample.propagated.sign;
    }
    double estimate = acc / static_cast<double>(cfg.shots_per_sample);
    r.details["sample_" + std::to_string(s)] = estimate;
    total += estimate;
  }
  r.score = clamp01(total / cfg.k);
  return r;
}

ScoreResult qft_score(Family family, int n, const NoiseModel& nm, uint64_t seed, long shots) {
  if (family != Family::QFT_M && family != Family::PARTIAL_QFT_M)
    throw std::invalid_argument("qft_score handles the QFT families only");
  if (n < 2) throw std::invalid_argument("QFT score needs n >= 2");
  ScoreResult r;
  r.family = family_name(family);
  double total = 0;
  for (int rep = 0; rep < 3; ++rep) {
    Rng rng(mix_seed(seed, 0x0f7 + rep));
    std::string s(n, '0');
    for (char& c : s) c = rng.below(2) ? '1' : '0';
    auto bench = family == Family::QFT_M ? gen_qft_m(n, s) : gen_partial_qft_m(n, s);
    auto result = run(bench.circuit, shots, nm, mix_seed(seed, 0xab0 + rep),
                      bench.readout_clbits);
    double h = hellinger_fidelity(result.register_counts, [&] {
      CountsDistribution ideal;
      ideal.probs[s] = 1.0;
      return ideal;
    }());
    r.details["bitstring_" + std::to_string(rep)] = h;
    total += h;
  }
  r.score = clamp01(total / 3.0);
  return r;
}

std::string ipe_bitstring(double theta, int m) {
  long value = std::lround(theta * std::ldexp(1.0, m));
  value = ((value % (1L << m)) + (1L << m)) % (1L << m);
  std::string s(m, '0');
  for (int i = 0; i < m; ++i) {
    if (value & (1L << (m - 1 - i))) s[i] = '1';
  }
  return s;
}

ScoreResult ipe_score(const CountsDistribution& counts, double theta, int m) {
  ScoreResult r = delta_score(counts, ipe_bitstring(theta, m));
  r.family = "IPE";
  return r;
}

ScoreResult tfim_score(double observed_mz, double ideal_mz) {
  if (ideal_mz == 0.0)
    throw std::invalid_argument(
        "TFIM score undefined for <M_z> = 0; pick different (n, steps, dt)");
  ScoreResult r;
  r.family = "TFIM";
  r.details["ideal"] = ideal_mz;
  r.details["observed"] = observed_mz;
  r.score = clamp01(1.0 - std::abs(ideal_mz - observed_mz) / std::abs(2.0 * ideal_mz));
  return r;
}

double ideal_tfim_mz(int n, int steps, double J, double h, double dt) {
  StateVector sv(n);
  auto rx = gate_matrix_1q(GateId::Rx, {2 * h * dt});
  auto rzz = gate_matrix_2q(GateId::Rzz, {2 * J * dt});
  for (int st = 0; st < steps; ++st) {
    for (int q = 0; q < n; ++q) sv.apply_1q(q, rx);
    for (int q = 0; q + 1 < n; ++q) sv.apply_2q(q, q + 1, rzz);
  }
  double mz = 0;
  for (int q = 0; q < n; ++q) mz += sv.expectation_z({q});
  return mz / n;
}

CodeTables code_tables_by_name(const std::string& name) {
  if (name == "rep3") return rep_code_tables(3);
  if (name == "rep5") return rep_code_tables(5);
  if (name == "five_qubit") return five_qubit_code_tables();
  if (name == "steane") return steane_code_tables();
  throw std::invalid_argument("unknown code: " + name);
}

ScoreResult qec_score(const CountsDistribution& records, const CodeTables& tables,
                      CodeInitial initial) {
  require_normalized(records, "records");
  const int nc = tables.num_checks();
  const int nd = tables.num_data;
  const Pauli basis = initial == CodeInitial::Plus ? Pauli::X : Pauli::Z;
  const PauliString& logical =
      initial == CodeInitial::Plus ? tables.logical_x : tables.logical_z;
  const int expected_parity = initial == CodeInitial::One ? 1 : 0;

  // Checks that are diagonal in the readout basis are re-evaluated from the
  // transversal bits; anything violating them is outside the code space.
  std::vector<const PauliString*> diagonal_checks;
  for (const auto& stab : tables.stabilizers) {
    bool diagonal = true;
    for (int q = 0; q < nd; ++q) {
      Pauli l = stab.letter(q);
      if (l != Pauli::I && l != basis) diagonal = false;
    }
    if (diagonal) diagonal_checks.push_back(&stab);
  }

  ScoreResult r;
  r.family = tables.name;
  double good = 0;
  std::map<std::string, double> syndrome_hist;
  for (const auto& [key, p] : records.probs) {
    if (static_cast<int>(key.size()) != nc + nd)
      throw std::invalid_argument("malformed QEC record");
    syndrome_hist[key.substr(0, nc)] += p;
    bool in_code_space = true;
    for (const auto* stab : diagonal_checks) {
      int parity = 0;
      for (int q = 0; q < nd; ++q) {
        if (stab->letter(q) != Pauli::I) parity ^= key[nc + q] == '1';
      }
      if (parity != 0) in_code_space = false;
    }
    int logical_parity = 0;
    for (int q = 0; q < nd; ++q) {
      if (logical.letter(q) != Pauli::I) logical_parity ^= key[nc + q] == '1';
    }
    if (in_code_space && logical_parity == expected_parity) good += p;
  }
  for (const auto& [synd, p] : syndrome_hist) r.details["synd_" + synd] = p;
  r.score = clamp01(good);
  return r;
}

ScoreResult score_benchmark(const GeneratedBenchmark& bench, const SimResult& result,
                            const NoiseModel& nm, uint64_t seed) {
  ScoreResult r;
  switch (bench.ideal.type) {
    case IdealReference::Type::GhzDist:
      r = ghz_score(result.register_counts, bench.ideal.n);
      break;
    case IdealReference::Type::Clifford:
      r = dfe_clifford_score(bench, DfeConfig{}, nm, seed);
      break;
    case IdealReference::Type::Delta:
      r = delta_score(result.register_counts, bench.ideal.bitstring);
      break;
    case IdealReference::Type::Tfim: {
      std::vector<ZTerm> terms;
      for (int i = 0; i < bench.ideal.n; ++i)
        terms.push_back({{i}, 1.0 / bench.ideal.n});
      double observed = expectation_z(result.register_counts, terms);
      double ideal = ideal_tfim_mz(bench.ideal.n, bench.ideal.steps, bench.ideal.J,
                                   bench.ideal.h, bench.ideal.dt);
      r = tfim_score(observed, ideal);
      break;
    }
    case IdealReference::Type::Code: {
      auto tables = code_tables_by_name(bench.ideal.code_name);
      r = qec_score(result.register_counts, tables, bench.ideal.initial);
      break;
    }
  }
  r.family = family_name(bench.family);
  return r;
}

}  // namespace dynabench
