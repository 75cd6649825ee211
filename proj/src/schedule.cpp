#include "dynabench/schedule.hpp"

#include <algorithm>
#include <set>

namespace dynabench {

int layer_depth(const std::vector<Instruction>& instrs, std::vector<int>* layers) {
  std::vector<int> ready;  // next free layer per qubit, grown on demand
  if (layers) layers->assign(instrs.size(), -1);
  int depth = 0;
  for (size_t i = 0; i < instrs.size(); ++i) {
    auto qs = instrs[i].qubits();
    int layer = 0;
    for (int q : qs) {
      if (q >= static_cast<int>(ready.size())) ready.resize(q + 1, 0);
      layer = std::max(layer, ready[q]);
    }
    for (int q : qs) ready[q] = layer + 1;
    if (layers) (*layers)[i] = layer;
    depth = std::max(depth, layer + 1);
  }
  return depth;
}

LayeredSchedule layer_schedule(const Circuit& c, bool include_ff) {
  LayeredSchedule sched;
  sched.instr_layer.assign(c.instructions.size(), -1);
  std::vector<int> ready(c.num_qubits, 0);

  for (size_t i = 0; i < c.instructions.size(); ++i) {
    const auto& instr = c.instructions[i];
    if (instr.is_conditional()) {
      sched.conditional_indices.push_back(static_cast<int>(i));
      sched.branch_depths.push_back(layer_depth(instr.conditional().body));
      continue;
    }
    int layer = 0;
    auto qs = instr.qubits();
    for (int q : qs) layer = std::max(layer, ready[q]);
    for (int q : qs) ready[q] = layer + 1;
    if (layer >= static_cast<int>(sched.base_layers.size()))
      sched.base_layers.resize(layer + 1);
    sched.base_layers[layer].push_back(static_cast<int>(i));
    sched.instr_layer[i] = layer;
  }

  sched.base_depth = static_cast<int>(sched.base_layers.size());
  for (const auto& layer : sched.base_layers) {
    bool has_measure = std::any_of(layer.begin(), layer.end(), [&](int idx) {
      return c.instructions[idx].is_measure();
    });
    sched.mcm_layer_count += has_measure;
  }
  sched.ff_layer_count =
      include_ff ? static_cast<int>(sched.conditional_indices.size()) : 0;
  return sched;
}

Circuit strip_final_measurements(const Circuit& c) {
  std::set<int> referenced;
  for (const auto& instr : c.instructions) {
    if (instr.is_conditional()) {
      for (int b : instr.conditional().cond.clbits) referenced.insert(b);
    }
  }
  Circuit out = c;
  while (!out.instructions.empty()) {
    const auto& last = out.instructions.back();
    if (!last.is_measure() || referenced.count(last.measure().clbit)) break;
    out.instructions.pop_back();
  }
  return out;
}

QubitClasses classify_qubits(const Circuit& c) {
  auto sched = layer_schedule(c, false);
  // Last MCM layer per qubit and the index of that instruction.
  std::vector<int> last_mcm_layer(c.num_qubits, -1);
  std::vector<int> last_mcm_pos(c.num_qubits, -1);
  for (size_t i = 0; i < c.instructions.size(); ++i) {
    if (!c.instructions[i].is_measure()) continue;
    int q = c.instructions[i].measure().qubit;
    last_mcm_layer[q] = sched.instr_layer[i];
    last_mcm_pos[q] = static_cast<int>(i);
  }
  // A qubit is reused if any later instruction (branch bodies included)
  // touches it after its last measurement.
  std::vector<uint8_t> reused(c.num_qubits, 0);
  for (size_t i = 0; i < c.instructions.size(); ++i) {
    for (int q : c.instructions[i].qubits()) {
      if (last_mcm_pos[q] >= 0 && static_cast<int>(i) > last_mcm_pos[q]) reused[q] = 1;
    }
  }
  QubitClasses cls;
  for (int q = 0; q < c.num_qubits; ++q) {
    if (last_mcm_pos[q] >= 0 && !reused[q]) {
      cls.n1_qubits.push_back(q);
      cls.pre_depths.push_back(last_mcm_layer[q]);  // layers strictly before the MCM
      cls.last_measure_pos.push_back(last_mcm_pos[q]);
    }
  }
  cls.n1 = static_cast<int>(cls.n1_qubits.size());
  cls.n2 = c.num_qubits - cls.n1;
  return cls;
}

}  // namespace dynabench
