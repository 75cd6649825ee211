#include "dynabench/sim.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "dynabench/schedule.hpp"

namespace dynabench {

namespace {
constexpr int kMaxQubits = 25;
using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};
}  // namespace

uint64_t Rng::next() {
  // splitmix64
  state += 0x9E3779B97F4A7C15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

uint64_t Rng::below(uint64_t bound) { return next() % bound; }

uint64_t mix_seed(uint64_t seed, uint64_t stream) {
  Rng r(seed ^ (0xD1B54A32D192ED03ULL * (stream + 1)));
  return r.next();
}

StateVector::StateVector(int num_qubits) : n_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits)
    throw std::invalid_argument("qubit budget exceeded (1..25)");
  amp_ = Eigen::VectorXcd::Zero(int64_t{1} << num_qubits);
  amp_(0) = 1.0;
}

void StateVector::apply_1q(int q, const Eigen::Matrix2cd& m) {
  const int64_t bit = int64_t{1} << q;
  const int64_t size = amp_.size();
  for (int64_t i = 0; i < size; ++i) {
    if (i & bit) continue;
    cplx a0 = amp_(i), a1 = amp_(i | bit);
    amp_(i) = m(0, 0) * a0 + m(0, 1) * a1;
    amp_(i | bit) = m(1, 0) * a0 + m(1, 1) * a1;
  }
}

void StateVector::apply_2q(int q0, int q1, const Eigen::Matrix4cd& m) {
  const int64_t b0 = int64_t{1} << q0;
  const int64_t b1 = int64_t{1} << q1;
  const int64_t size = amp_.size();
  for (int64_t i = 0; i < size; ++i) {
    if (i & (b0 | b1)) continue;
    const int64_t idx[4] = {i, i | b0, i | b1, i | b0 | b1};
    cplx a[4];
    for (int k = 0; k < 4; ++k) a[k] = amp_(idx[k]);
    for (int r = 0; r < 4; ++r) {
      amp_(idx[r]) = m(r, 0) * a[0] + m(r, 1) * a[1] + m(r, 2) * a[2] + m(r, 3) * a[3];
    }
  }
}

Eigen::Matrix2cd gate_matrix_1q(GateId id, const std::vector<double>& params) {
  Eigen::Matrix2cd m;
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  switch (id) {
    case GateId::H: m << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2; return m;
    case GateId::X: m << 0, 1, 1, 0; return m;
    case GateId::Y: m << 0, -kI, kI, 0; return m;
    case GateId::Z: m << 1, 0, 0, -1; return m;
    case GateId::S: m << 1, 0, 0, kI; return m;
    case GateId::Sdg: m << 1, 0, 0, -kI; return m;
    case GateId::T: m << 1, 0, 0, std::exp(kI * (std::numbers::pi / 4)); return m;
    case GateId::Rx: {
      double t = params[0] / 2;
      m << std::cos(t), -kI * std::sin(t), -kI * std::sin(t), std::cos(t);
      return m;
    }
    case GateId::Ry: {
      double t = params[0] / 2;
      m << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
      return m;
    }
    case GateId::Rz: {
      double t = params[0] / 2;
      m << std::exp(-kI * t), 0, 0, std::exp(kI * t);
      return m;
    }
    case GateId::P: m << 1, 0, 0, std::exp(kI * params[0]); return m;
    default: throw std::invalid_argument("not a single-qubit gate");
  }
}

Eigen::Matrix4cd gate_matrix_2q(GateId id, const std::vector<double>& params) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  switch (id) {
    case GateId::Cx:
      // qubit order (q0=control, q1=target); basis index = q1*2 + q0 with
      // apply_2q's idx packing (bit0 = first operand).
      m(0, 0) = 1; m(1, 3) = 1; m(2, 2) = 1; m(3, 1) = 1;
      return m;
    case GateId::Cz:
      m(0, 0) = 1; m(1, 1) = 1; m(2, 2) = 1; m(3, 3) = -1;
      return m;
    case GateId::Swap:
      m(0, 0) = 1; m(1, 2) = 1; m(2, 1) = 1; m(3, 3) = 1;
      return m;
    case GateId::Rzz: {
      double t = params[0] / 2;
      cplx minus = std::exp(-kI * t), plus = std::exp(kI * t);
      m(0, 0) = minus; m(1, 1) = plus; m(2, 2) = plus; m(3, 3) = minus;
      return m;
    }
    default: throw std::invalid_argument("not a two-qubit gate");
  }
}

void StateVector::apply_gate(const GateOp& g) {
  if (g.qubits.size() == 1) {
    apply_1q(g.qubits[0], gate_matrix_1q(g.id, g.params));
  } else {
    apply_2q(g.qubits[0], g.qubits[1], gate_matrix_2q(g.id, g.params));
  }
}

double StateVector::prob_one(int q) const {
  const int64_t bit = int64_t{1} << q;
  double p = 0;
  for (int64_t i = 0; i < amp_.size(); ++i) {
    if (i & bit) p += std::norm(amp_(i));
  }
  return p;
}

void StateVector::project(int q, int outcome) {
  const int64_t bit = int64_t{1} << q;
  double p = 0;
  for (int64_t i = 0; i < amp_.size(); ++i) {
    bool one = (i & bit) != 0;
    if (one != (outcome != 0)) {
      amp_(i) = 0;
    } else {
      p += std::norm(amp_(i));
    }
  }
  if (p <= 0) throw std::runtime_error("projection onto zero-probability outcome");
  amp_ /= std::sqrt(p);
}

double StateVector::expectation_z(const std::vector<int>& qubits) const {
  int64_t mask = 0;
  for (int q : qubits) mask |= int64_t{1} << q;
  double e = 0;
  for (int64_t i = 0; i < amp_.size(); ++i) {
    double p = std::norm(amp_(i));
    if (p == 0) continue;
    e += (std::popcount(static_cast<uint64_t>(i & mask)) & 1) ? -p : p;
  }
  return e;
}

namespace {

const Eigen::Matrix2cd& pauli_matrix(int which) {  // 1=X, 2=Y, 3=Z
  static const Eigen::Matrix2cd mats[3] = {
      gate_matrix_1q(GateId::X, {}),
      gate_matrix_1q(GateId::Y, {}),
      gate_matrix_1q(GateId::Z, {}),
  };
  return mats[which - 1];
}

struct ShotEngine {
  const Circuit& c;
  const NoiseModel& nm;
  const LayeredSchedule& sched;
  const std::vector<std::vector<int>>& body_layers;  // per conditional: layer of each body instr
  StateVector state;
  Rng rng;
  std::vector<uint8_t> reg;
  std::vector<int> qubit_clock;  // next base layer index available per qubit
  ShotResult result;

  ShotEngine(const Circuit& circuit, const NoiseModel& noise, const LayeredSchedule& schedule,
             const std::vector<std::vector<int>>& bodies, uint64_t shot_seed)
      : c(circuit),
        nm(noise),
        sched(schedule),
        body_layers(bodies),
        state(circuit.num_qubits),
        rng(shot_seed),
        reg(std::max(circuit.num_clbits, 0), 0),
        qubit_clock(circuit.num_qubits, 0) {}

  void depolarize_1(int q, double p) {
    if (p > 0 && rng.uniform() < p) {
      state.apply_1q(q, pauli_matrix(1 + static_cast<int>(rng.below(3))));
    }
  }

  void depolarize_2(int q0, int q1) {
    if (nm.p2 > 0 && rng.uniform() < nm.p2) {
      int pick = 1 + static_cast<int>(rng.below(15));
      int l0 = pick & 3, l1 = (pick >> 2) & 3;
      if (l0) state.apply_1q(q0, pauli_matrix(l0));
      if (l1) state.apply_1q(q1, pauli_matrix(l1));
    }
  }

  void idle_until(int layer, const std::vector<int>& qubits) {
    if (nm.pidle <= 0) {
      for (int q : qubits) qubit_clock[q] = layer + 1;
      return;
    }
    for (int q : qubits) {
      for (int missed = layer - qubit_clock[q]; missed > 0; --missed)
        depolarize_1(q, nm.pidle);
      qubit_clock[q] = layer + 1;
    }
  }

  void run_gate(const GateOp& g) {
    state.apply_gate(g);
    if (g.qubits.size() == 1) {
      depolarize_1(g.qubits[0], nm.p1);
    } else {
      depolarize_2(g.qubits[0], g.qubits[1]);
    }
  }

  int measure(int q) {
    double p1 = state.prob_one(q);
    int outcome = rng.uniform() < p1 ? 1 : 0;
    state.project(q, outcome);
    return outcome;
  }

  void run_measure(const MeasureOp& mop, bool record_history) {
    int outcome = measure(mop.qubit);
    uint8_t recorded = static_cast<uint8_t>(outcome);
    if (nm.pm > 0 && rng.uniform() < nm.pm) recorded ^= 1;
    reg[mop.clbit] = recorded;
    if (record_history) result.mcm_history[mop.clbit].push_back(recorded);
  }

  void run_reset(int q) {
    if (measure(q) == 1) state.apply_1q(q, pauli_matrix(1));
  }

  void run_body(const std::vector<Instruction>& body, const std::vector<int>& layers) {
    // Branch layers: idle noise hits every qubit not busy in a taken layer.
    int depth = 0;
    std::vector<std::set<int>> busy;
    for (size_t i = 0; i < body.size(); ++i) {
      depth = std::max(depth, layers[i] + 1);
      if (static_cast<int>(busy.size()) < depth) busy.resize(depth);
      for (int q : body[i].qubits()) busy[layers[i]].insert(q);
    }
    for (size_t i = 0; i < body.size(); ++i) {
      const auto& instr = body[i];
      if (instr.is_gate()) {
        run_gate(instr.gate());
      } else if (instr.is_measure()) {
        run_measure(instr.measure(), true);
      } else if (instr.is_reset()) {
        run_reset(instr.reset().qubit);
      }
    }
    if (nm.pidle > 0) {
      for (int layer = 0; layer < depth; ++layer) {
        for (int q = 0; q < c.num_qubits; ++q) {
          if (!busy[layer].count(q)) depolarize_1(q, nm.pidle);
        }
      }
    }
  }

  void run_all() {
    int cond = 0;
    for (size_t i = 0; i < c.instructions.size(); ++i) {
      const auto& instr = c.instructions[i];
      if (instr.is_conditional()) {
        const auto& op = instr.conditional();
        if (op.cond.matches(reg)) run_body(op.body, body_layers[cond]);
        ++cond;
        continue;
      }
      idle_until(sched.instr_layer[i], instr.qubits());
      if (instr.is_gate()) {
        run_gate(instr.gate());
      } else if (instr.is_measure()) {
        run_measure(instr.measure(), true);
      } else {
        run_reset(instr.reset().qubit);
      }
    }
    if (nm.pidle > 0) {
      for (int q = 0; q < c.num_qubits; ++q) {
        for (int missed = sched.base_depth - qubit_clock[q]; missed > 0; --missed)
          depolarize_1(q, nm.pidle);
      }
    }
    result.bits = reg;
  }
};

}  // namespace

std::vector<ShotResult> run_shots(const Circuit& c, long shots, const NoiseModel& nm,
                                  uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (c.num_qubits > kMaxQubits) throw std::invalid_argument("qubit budget exceeded (1..25)");
  c.validate();

  auto sched = layer_schedule(c, true);
  std::vector<std::vector<int>> body_layers;
  for (int idx : sched.conditional_indices) {
    std::vector<int> layers;
    layer_depth(c.instructions[idx].conditional().body, &layers);
    body_layers.push_back(std::move(layers));
  }

  std::vector<ShotResult> results;
  results.reserve(shots);
  for (long shot = 0; shot < shots; ++shot) {
    ShotEngine engine(c, nm, sched, body_layers, mix_seed(seed, static_cast<uint64_t>(shot)));
    engine.run_all();
    results.push_back(std::move(engine.result));
  }
  return results;
}

SimResult run(const Circuit& c, long shots, const NoiseModel& nm, uint64_t seed,
              std::vector<int> readout) {
  if (readout.empty()) {
    for (int b = c.num_clbits - 1; b >= 0; --b) readout.push_back(b);
  }
  Circuit stripped = strip_final_measurements(c);
  std::set<int> mcm_set;
  for (const auto& instr : stripped.instructions) {
    if (instr.is_measure()) mcm_set.insert(instr.measure().clbit);
  }

  SimResult out;
  out.readout = readout;
  out.mcm_clbits.assign(mcm_set.begin(), mcm_set.end());
  out.shots = shots;
  out.seed = seed;
  out.noise = nm;

  std::map<std::string, long> reg_raw, joint_raw;
  auto shots_data = run_shots(c, shots, nm, seed);
  for (const auto& shot : shots_data) {
    std::string key(readout.size(), '0');
    for (size_t i = 0; i < readout.size(); ++i) key[i] = shot.bits[readout[i]] ? '1' : '0';
    ++reg_raw[key];
    if (!out.mcm_clbits.empty()) {
      std::string jkey(out.mcm_clbits.size(), '0');
      for (size_t i = 0; i < out.mcm_clbits.size(); ++i)
        jkey[i] = shot.bits[out.mcm_clbits[i]] ? '1' : '0';
      ++joint_raw[jkey];
      for (int b : out.mcm_clbits) ++out.mcm_marginals[b][shot.bits[b] ? 1 : 0];
    }
  }
  out.register_counts = CountsDistribution::from_raw(reg_raw);
  if (!joint_raw.empty()) out.mcm_joint = CountsDistribution::from_raw(joint_raw);
  return out;
}

double expectation_z(const CountsDistribution& counts, const std::vector<ZTerm>& terms) {
  if (!counts.normalized()) throw std::invalid_argument("counts not normalized");
  double total = 0;
  for (const auto& [key, p] : counts.probs) {
    double eigen = 0;
    for (const auto& term : terms) {
      int parity = 0;
      for (int pos : term.positions) {
        if (pos < 0 || pos >= static_cast<int>(key.size()))
          throw std::invalid_argument("qubit index out of range");
        parity ^= key[pos] == '1';
      }
      eigen += term.coef * (parity ? -1.0 : 1.0);
    }
    total += p * eigen;
  }
  return total;
}

}  // namespace dynabench
