#include "dynabench/branch.hpp"

#include <cmath>
#include <stdexcept>

namespace dynabench {

BranchModel BranchModel::uniform(int n_a) {
  BranchModel bm;
  bm.kind = Kind::Uniform;
  bm.n_a = n_a;
  return bm;
}

BranchModel BranchModel::qec_noise(double p, double m, double s, std::map<int, int> weights) {
  BranchModel bm;
  bm.kind = Kind::QecNoise;
  bm.p = p;
  bm.m = m;
  bm.s = s;
  bm.weights = std::move(weights);
  return bm;
}

BranchModel BranchModel::explicit_probs(std::map<int, double> probs) {
  BranchModel bm;
  bm.kind = Kind::Explicit;
  bm.probs = std::move(probs);
  for (auto& [idx, p] : bm.probs) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("branch probability outside [0,1]");
  }
  return bm;
}

namespace {

double qec_bit_rate(const BranchModel& bm, int clbit) {
  auto it = bm.weights.find(clbit);
  if (it == bm.weights.end())
    throw std::invalid_argument("QecNoise model has no stabilizer weight for condition bit");
  double q = it->second * bm.p + bm.m + bm.s;
  return std::clamp(q, 0.0, 1.0);
}

}  // namespace

double branch_probability(const BranchModel& bm, const Condition& cond, int cond_index) {
  switch (bm.kind) {
    case BranchModel::Kind::Uniform:
      if (cond.pred == Condition::Pred::ParityEquals) return 0.5;
      return std::ldexp(1.0, -static_cast<int>(cond.clbits.size()));
    case BranchModel::Kind::QecNoise: {
      if (cond.pred == Condition::Pred::EqualsValue) {
        double prob = 1.0;
        for (size_t i = 0; i < cond.clbits.size(); ++i) {
          double q = qec_bit_rate(bm, cond.clbits[i]);
          prob *= cond.value[i] ? q : (1.0 - q);
        }
        return prob;
      }
      // Parity of independent Bernoulli bits.
      double prod = 1.0;
      for (int b : cond.clbits) prod *= 1.0 - 2.0 * qec_bit_rate(bm, b);
      double odd = 0.5 * (1.0 - prod);
      return cond.parity ? odd : 1.0 - odd;
    }
    case BranchModel::Kind::Explicit: {
      auto it = bm.probs.find(cond_index);
      if (it == bm.probs.end())
        throw std::invalid_argument("explicit branch model does not cover conditional");
      return it->second;
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<double> branch_probabilities(const Circuit& c, const BranchModel& bm) {
  std::vector<double> out;
  int idx = 0;
  for (const auto& instr : c.instructions) {
    if (!instr.is_conditional()) continue;
    out.push_back(branch_probability(bm, instr.conditional().cond, idx));
    ++idx;
  }
  return out;
}

}  // namespace dynabench
