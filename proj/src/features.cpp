#include "dynabench/features.hpp"

#include <cmath>
#include <stdexcept>

#include "dynabench/schedule.hpp"

namespace dynabench {

const std::array<std::string_view, 24>& FeatureVector::names() {
  static const std::array<std::string_view, 24> kNames = {
      "f00_depth_noff",      "f01_depth_ff",        "f02_ops_unitary",
      "f03_ops_quantum",     "f04_ops_all",         "f05_system_qubits",
      "f06_total_qubits",    "f07_liveness_noff",   "f08_liveness_ff",
      "f09_system_qubit_ratio", "f10_critical_q",   "f11_critical_qc",
      "f12_dyn_depth_noff",  "f13_dyn_depth_ff",    "f14_parallelism_noff",
      "f15_parallelism_ff",  "f16_q_comm",          "f17_qc_comm",
      "f18_q_ent_unitary",   "f19_q_ent_quantum",   "f20_q_ent_all",
      "f21_qc_ent_unitary",  "f22_qc_ent_quantum",  "f23_qc_ent_all",
  };
  return kNames;
}

namespace {

bool is_two_qubit_gate(const Instruction& instr) {
  return instr.is_gate() && instr.gate().qubits.size() == 2;
}

struct BodyCounts {
  double gates = 0, two_q = 0, one_q = 0, measures = 0, resets = 0;
};

BodyCounts count_body(const std::vector<Instruction>& body) {
  BodyCounts counts;
  for (const auto& instr : body) {
    if (instr.is_gate()) {
      counts.gates += 1;
      (instr.gate().qubits.size() == 2 ? counts.two_q : counts.one_q) += 1;
    } else if (instr.is_measure()) {
      counts.measures += 1;
    } else if (instr.is_reset()) {
      counts.resets += 1;
    }
  }
  return counts;
}

}  // namespace

double expected_depth(const Circuit& c, const BranchModel& bm, bool include_ff) {
  auto sched = layer_schedule(c, include_ff);
  auto probs = branch_probabilities(c, bm);
  double depth = sched.base_depth + (include_ff ? sched.ff_layer_count : 0);
  for (size_t i = 0; i < probs.size(); ++i) depth += probs[i] * sched.branch_depths[i];
  return depth;
}

double expected_ops(const Circuit& c, const BranchModel& bm, OpVariant variant) {
  auto probs = branch_probabilities(c, bm);
  double ops = 0;
  int cond = 0;
  for (const auto& instr : c.instructions) {
    if (instr.is_gate()) {
      ops += 1;
    } else if (instr.is_measure() || instr.is_reset()) {
      if (variant != OpVariant::Unitary) ops += 1;
    } else {
      auto counts = count_body(instr.conditional().body);
      double branch = counts.gates;
      if (variant != OpVariant::Unitary) branch += counts.measures + counts.resets;
      ops += probs[cond] * branch;
      if (variant == OpVariant::All) ops += 1;  // the feed-forward itself
      ++cond;
    }
  }
  return ops;
}

double expected_two_qubit_gates(const Circuit& c, const BranchModel& bm) {
  auto probs = branch_probabilities(c, bm);
  double total = 0;
  int cond = 0;
  for (const auto& instr : c.instructions) {
    if (is_two_qubit_gate(instr)) total += 1;
    if (instr.is_conditional()) total += probs[cond++] * count_body(instr.conditional().body).two_q;
  }
  return total;
}

std::array<double, 6> entanglement_features(const Circuit& c, const BranchModel& bm) {
  auto probs = branch_probabilities(c, bm);
  double g2q_base = 0, branch_gates = 0;
  int cond = 0;
  for (const auto& instr : c.instructions) {
    if (is_two_qubit_gate(instr)) g2q_base += 1;
    if (instr.is_conditional())
      branch_gates += probs[cond++] * count_body(instr.conditional().body).gates;
  }
  std::array<double, 6> out{};
  const OpVariant variants[] = {OpVariant::Unitary, OpVariant::Quantum, OpVariant::All};
  for (int v = 0; v < 3; ++v) {
    double denom = expected_ops(c, bm, variants[v]);
    if (denom == 0.0) throw std::invalid_argument("entanglement ratio undefined: zero operations");
    out[v] = g2q_base / denom;
    out[3 + v] = (g2q_base + branch_gates) / denom;
  }
  return out;
}

double system_qubit_ratio(const Circuit& c) {
  return static_cast<double>(c.system_qubits.size()) / c.num_qubits;
}

namespace {

// Longest-path DP node state: path length first, weighted two-qubit count
// as tie-break, so the critical path is the depth-setting one.
struct PathState {
  long len = 0;
  double two_q = 0;
};
PathState max_state(const PathState& a, const PathState& b) {
  if (a.len != b.len) return a.len > b.len ? a : b;
  return a.two_q >= b.two_q ? a : b;
}

// Critical-path two-qubit count over a plain instruction list (qubit
// dependencies only). Returns {crit_2q, total_2q}.
std::pair<double, double> crit_two_q(const std::vector<Instruction>& instrs) {
  std::map<int, PathState> qubit_state;  // state of last instruction per qubit
  PathState best;
  double total = 0;
  for (const auto& instr : instrs) {
    bool two_q = is_two_qubit_gate(instr);
    total += two_q ? 1 : 0;
    PathState in;
    for (int q : instr.qubits()) in = max_state(in, qubit_state[q]);
    PathState node{in.len + 1, in.two_q + (two_q ? 1 : 0)};
    for (int q : instr.qubits()) qubit_state[q] = node;
    best = max_state(best, node);
  }
  return {best.two_q, total};
}

}  // namespace

double critical_two_qubit(const Circuit& c, const BranchModel& bm, bool include_ff_ordering) {
  auto probs = branch_probabilities(c, bm);

  double denom = 0;
  {
    int cond = 0;
    for (const auto& instr : c.instructions) {
      if (is_two_qubit_gate(instr)) denom += 1;
      if (instr.is_conditional())
        denom += probs[cond++] * count_body(instr.conditional().body).two_q;
    }
  }
  if (denom == 0.0) return 0.0;

  double numer = 0;
  if (!include_ff_ordering) {
    // Separable form: base path on the quantum DAG, branch paths on their
    // own body DAGs, probability weighted.
    std::vector<Instruction> base;
    for (const auto& instr : c.instructions)
      if (!instr.is_conditional()) base.push_back(instr);
    numer = crit_two_q(base).first;
    int cond = 0;
    for (const auto& instr : c.instructions) {
      if (!instr.is_conditional()) continue;
      numer += probs[cond++] * crit_two_q(instr.conditional().body).first;
    }
  } else {
    // Global DAG: feed-forward nodes depend on the measures writing their
    // condition bits; branch gates carry probability-weighted 2q counts.
    std::vector<PathState> qubit_state(c.num_qubits);
    std::vector<PathState> clbit_state(std::max(c.num_clbits, 1));
    PathState best;
    int cond = 0;
    for (const auto& instr : c.instructions) {
      if (instr.is_conditional()) {
        double p = probs[cond++];
        PathState in;
        for (int b : instr.conditional().cond.clbits) in = max_state(in, clbit_state[b]);
        PathState ff{in.len + 1, in.two_q};  // classical op, no 2q weight
        for (const auto& body_instr : instr.conditional().body) {
          PathState bin = ff;
          for (int q : body_instr.qubits()) bin = max_state(bin, qubit_state[q]);
          double w = is_two_qubit_gate(body_instr) ? p : 0;
          PathState node{bin.len + 1, bin.two_q + w};
          for (int q : body_instr.qubits()) qubit_state[q] = node;
          best = max_state(best, node);
        }
        best = max_state(best, ff);
        continue;
      }
      PathState in;
      for (int q : instr.qubits()) in = max_state(in, qubit_state[q]);
      PathState node{in.len + 1, in.two_q + (is_two_qubit_gate(instr) ? 1.0 : 0.0)};
      for (int q : instr.qubits()) qubit_state[q] = node;
      if (instr.is_measure()) clbit_state[instr.measure().clbit] = node;
      best = max_state(best, node);
    }
    numer = best.two_q;
  }
  return numer / denom;
}

double dynamic_depth_ratio(const Circuit& c, const BranchModel& bm, bool include_ff) {
  auto sched = layer_schedule(c, include_ff);
  double total = expected_depth(c, bm, include_ff);
  if (total == 0.0) throw std::invalid_argument("dynamic depth ratio undefined: zero depth");
  return (sched.mcm_layer_count + (include_ff ? sched.ff_layer_count : 0)) / total;
}

Eigen::MatrixXd comm_matrix(const Circuit& c, const BranchModel& bm, bool include_classical) {
  if (c.num_qubits < 2) throw std::invalid_argument("communication requires >= 2 qubits");
  auto probs = branch_probabilities(c, bm);
  // Track miss probability per pair; A = 1 - prod(1 - p_g).
  Eigen::MatrixXd miss = Eigen::MatrixXd::Ones(c.num_qubits, c.num_qubits);
  auto add = [&](int i, int j, double p) {
    if (i == j) return;
    miss(i, j) *= 1.0 - p;
    miss(j, i) = miss(i, j);
  };
  std::vector<int> clbit_writer(std::max(c.num_clbits, 1), -1);
  int cond = 0;
  for (const auto& instr : c.instructions) {
    if (instr.is_gate() && instr.gate().qubits.size() == 2) {
      add(instr.gate().qubits[0], instr.gate().qubits[1], 1.0);
    } else if (instr.is_measure()) {
      clbit_writer[instr.measure().clbit] = instr.measure().qubit;
    } else if (instr.is_conditional()) {
      double p = probs[cond++];
      if (!include_classical) continue;
      std::set<int> mcm_qubits;
      for (int b : instr.conditional().cond.clbits) {
        if (clbit_writer[b] >= 0) mcm_qubits.insert(clbit_writer[b]);
      }
      for (const auto& body_instr : instr.conditional().body) {
        if (is_two_qubit_gate(body_instr))
          add(body_instr.gate().qubits[0], body_instr.gate().qubits[1], p);
        for (int q : body_instr.qubits())
          for (int mq : mcm_qubits) add(q, mq, p);
      }
    }
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(c.num_qubits, c.num_qubits) - miss;
  a.diagonal().setZero();
  return a;
}

double communication(const Circuit& c, const BranchModel& bm, bool include_classical) {
  Eigen::MatrixXd a = comm_matrix(c, bm, include_classical);
  double n = c.num_qubits;
  return a.sum() / (n * (n - 1.0));
}

double liveness(const Circuit& c, const BranchModel& bm, bool include_ff) {
  Circuit stripped = strip_final_measurements(c);
  auto probs = branch_probabilities(stripped, bm);

  double live = 0;
  int cond = 0;
  for (const auto& instr : stripped.instructions) {
    if (instr.is_gate()) {
      live += instr.gate().qubits.size() == 2 ? 2 : 1;
    } else if (instr.is_measure() || instr.is_reset()) {
      live += 1;
    } else {
      auto counts = count_body(instr.conditional().body);
      live += probs[cond++] * (counts.one_q + 2 * counts.two_q + counts.resets + counts.measures);
    }
  }

  auto classes = classify_qubits(stripped);
  auto sched = layer_schedule(stripped, include_ff);
  double exec = 0;
  for (size_t i = 0; i < classes.n1_qubits.size(); ++i) {
    // Depth preceding the MCM, with earlier feed-forward blocks contributing
    // their expected branch layers (and one FF layer each when counted).
    double pre = classes.pre_depths[i];
    for (size_t k = 0; k < sched.conditional_indices.size(); ++k) {
      if (sched.conditional_indices[k] < classes.last_measure_pos[i]) {
        pre += probs[k] * sched.branch_depths[k] + (include_ff ? 1.0 : 0.0);
      }
    }
    exec += pre;
  }
  exec += classes.n2 * expected_depth(stripped, bm, include_ff);
  if (exec == 0.0) throw std::invalid_argument("liveness undefined: zero execution time");
  return live / exec;
}

double parallelism(const Circuit& c, const BranchModel& bm, bool include_ff) {
  if (c.num_qubits < 2) throw std::invalid_argument("parallelism requires >= 2 qubits");
  double ops = expected_ops(c, bm, include_ff ? OpVariant::All : OpVariant::Quantum);
  double depth = expected_depth(c, bm, include_ff);
  if (depth == 0.0) throw std::invalid_argument("parallelism undefined: zero depth");
  return (ops / depth - 1.0) / (c.num_qubits - 1.0);
}

double renyi2_normalized(const CountsDistribution& counts, int n_a) {
  if (counts.probs.empty()) throw std::invalid_argument("empty counts");
  if (n_a < 1) throw std::invalid_argument("n_a must be >= 1");
  double collision = 0;
  for (const auto& [k, p] : counts.probs) collision += p * p;
  double h2 = -std::log2(collision);
  return std::clamp(h2 / n_a, 0.0, 1.0) + 0.0;  // avoid -0 for point masses
}

FeatureVector feature_vector(const Circuit& c, const BranchModel& bm) {
  FeatureVector f;
  f[0] = expected_depth(c, bm, false);
  f[1] = expected_depth(c, bm, true);
  f[2] = expected_ops(c, bm, OpVariant::Unitary);
  f[3] = expected_ops(c, bm, OpVariant::Quantum);
  f[4] = expected_ops(c, bm, OpVariant::All);
  f[5] = static_cast<double>(c.system_qubits.size());
  f[6] = c.num_qubits;
  f[7] = liveness(c, bm, false);
  f[8] = liveness(c, bm, true);
  f[9] = system_qubit_ratio(c);
  f[10] = critical_two_qubit(c, bm, false);
  f[11] = critical_two_qubit(c, bm, true);
  f[12] = dynamic_depth_ratio(c, bm, false);
  f[13] = dynamic_depth_ratio(c, bm, true);
  f[14] = parallelism(c, bm, false);
  f[15] = parallelism(c, bm, true);
  f[16] = communication(c, bm, false);
  f[17] = communication(c, bm, true);
  auto ent = entanglement_features(c, bm);
  for (int i = 0; i < 6; ++i) f[18 + i] = ent[i];
  return f;
}

}  // namespace dynabench
