#include "dynabench/benchmarks.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "dynabench/sim.hpp"

namespace dynabench {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> kAll = {
      Family::GHZ,          Family::GHZ_RESET,       Family::LR_CNOT,
      Family::LR_CNOT_SPARSE, Family::CNOT_LADDER,   Family::FANOUT,
      Family::QFT_M,        Family::PARTIAL_QFT_M,   Family::IPE,
      Family::TFIM,         Family::REP_CODE,        Family::FIVE_QUBIT_CODE,
      Family::STEANE_CODE,
  };
  return kAll;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::GHZ: return "GHZ";
    case Family::GHZ_RESET: return "GHZ_RESET";
    case Family::LR_CNOT: return "LR_CNOT";
    case Family::LR_CNOT_SPARSE: return "LR_CNOT_SPARSE";
    case Family::CNOT_LADDER: return "CNOT_LADDER";
    case Family::FANOUT: return "FANOUT";
    case Family::QFT_M: return "QFT_M";
    case Family::PARTIAL_QFT_M: return "PARTIAL_QFT_M";
    case Family::IPE: return "IPE";
    case Family::TFIM: return "TFIM";
    case Family::REP_CODE: return "REP_CODE";
    case Family::FIVE_QUBIT_CODE: return "FIVE_QUBIT_CODE";
    case Family::STEANE_CODE: return "STEANE_CODE";
  }
  throw std::logic_error("unreachable");
}

std::optional<Family> family_from_name(const std::string& name) {
  for (Family f : all_families()) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

int distinct_condition_bits(const Circuit& c) {
  std::set<int> bits;
  for (const auto& instr : c.instructions) {
    if (!instr.is_conditional()) continue;
    for (int b : instr.conditional().cond.clbits) bits.insert(b);
  }
  return static_cast<int>(bits.size());
}

namespace {

Condition parity_or_equals(std::vector<int> clbits) {
  if (clbits.size() == 1) return Condition::equals_one(clbits[0]);
  return Condition::parity_equals(std::move(clbits), 1);
}

void finish_uniform(GeneratedBenchmark& bench) {
  bench.branch_model = BranchModel::uniform(distinct_condition_bits(bench.circuit));
}

}  // namespace

GeneratedBenchmark gen_ghz(int n_data) {
  if (n_data < 2) throw std::invalid_argument("GHZ needs at least 2 data qubits");
  const int n_anc = n_data - 1;
  const int n = 2 * n_data - 1;
  CircuitBuilder b(n, n_anc + n_data);
  auto data = [](int j) { return 2 * j; };
  auto anc = [](int j) { return 2 * j + 1; };

  for (int j = 0; j < n_data; ++j) b.h(data(j));
  for (int j = 0; j < n_anc; ++j) b.cx(data(j), anc(j));
  for (int j = 0; j < n_anc; ++j) b.cx(data(j + 1), anc(j));
  for (int j = 0; j < n_anc; ++j) b.measure(anc(j), j);
  for (int j = 1; j < n_data; ++j) {
    std::vector<int> bits;
    for (int i = 0; i < j; ++i) bits.push_back(i);
    b.conditional(parity_or_equals(std::move(bits)), {make_gate(GateId::X, {data(j)})});
  }
  GeneratedBenchmark bench;
  for (int j = 0; j < n_data; ++j) {
    b.measure(data(j), n_anc + j);
    bench.readout_clbits.push_back(n_anc + j);
  }
  std::set<int> system;
  for (int j = 0; j < n_data; ++j) system.insert(data(j));
  b.set_system_qubits(std::move(system));
  b.set_name("ghz").set_param("n_data", n_data);

  bench.family = Family::GHZ;
  bench.circuit = b.finalize();
  bench.ideal.type = IdealReference::Type::GhzDist;
  bench.ideal.n = n_data;
  finish_uniform(bench);
  return bench;
}

GeneratedBenchmark gen_ghz_reset(int n_total) {
  if (n_total < 2) throw std::invalid_argument("GHZ_RESET needs at least 2 qubits");
  const int n_primary = (n_total + 1) / 2;    // even indices
  const int n_stitches_used = n_primary - 1;  // odd qubits acting as parity checks
  CircuitBuilder b(n_total, n_stitches_used + n_total);

  for (int j = 0; j < n_primary; ++j) b.h(2 * j);
  for (int j = 0; j < n_stitches_used; ++j) b.cx(2 * j, 2 * j + 1);
  for (int j = 0; j < n_stitches_used; ++j) b.cx(2 * j + 2, 2 * j + 1);
  for (int j = 0; j < n_stitches_used; ++j) b.measure(2 * j + 1, j);
  for (int j = 1; j < n_primary; ++j) {
    std::vector<int> bits;
    for (int i = 0; i < j; ++i) bits.push_back(i);
    b.conditional(parity_or_equals(std::move(bits)), {make_gate(GateId::X, {2 * j})});
  }
  // Reuse: measured stitches rejoin the state, plus a fresh trailing qubit
  // when n_total is even.
  for (int j = 0; j < n_stitches_used; ++j) b.reset(2 * j + 1);
  for (int a = 1; a < n_total; a += 2) {
    if (a < 2 * n_stitches_used + 1 || a == n_total - 1) b.cx(a - 1, a);
  }

  GeneratedBenchmark bench;
  for (int q = 0; q < n_total; ++q) {
    b.measure(q, n_stitches_used + q);
    bench.readout_clbits.push_back(n_stitches_used + q);
  }
  std::set<int> system;
  for (int q = 0; q < n_total; ++q) system.insert(q);
  b.set_system_qubits(std::move(system));
  b.set_name("ghz_reset").set_param("n_total", n_total);

  bench.family = Family::GHZ_RESET;
  bench.circuit = b.finalize();
  bench.ideal.type = IdealReference::Type::GhzDist;
  bench.ideal.n = n_total;
  finish_uniform(bench);
  return bench;
}

namespace {

GeneratedBenchmark finish_lr_cnot(CircuitBuilder& b, GeneratedBenchmark bench, int n,
                                  std::vector<int> z_clbits, std::vector<int> x_clbits,
                                  int next_clbit) {
  b.conditional(parity_or_equals(std::move(z_clbits)), {make_gate(GateId::X, {n - 1})});
  b.conditional(parity_or_equals(std::move(x_clbits)), {make_gate(GateId::Z, {0})});
  b.measure(0, next_clbit);
  b.measure(n - 1, next_clbit + 1);
  bench.readout_clbits = {next_clbit, next_clbit + 1};
  b.set_system_qubits({0, n - 1});

  bench.circuit = b.finalize();
  bench.ideal.type = IdealReference::Type::Clifford;
  bench.ideal.clifford_ops = {make_gate(GateId::Cx, {0, 1})};
  bench.ideal.data_qubits = {0, n - 1};
  finish_uniform(bench);
  return bench;
}

}  // namespace

GeneratedBenchmark gen_lr_cnot(int n_total) {
  if (n_total < 4) throw std::invalid_argument("LR_CNOT needs at least 4 qubits");
  const int n = n_total;
  const int k = n - 2;
  CircuitBuilder b(n, k + 2);
  b.set_name("lr_cnot").set_param("n_total", n_total);

  // Bell halves: the H'd half receives the incoming hop and is Z-measured,
  // its partner controls the outgoing hop and is X-measured.
  std::vector<int> bell_a, bell_b;  // physical qubits
  int serial_hook = -1;             // odd chain: first intermediate feeds pair 0
  if (k % 2 == 0) {
    for (int i = 0; i < k / 2; ++i) {
      bell_a.push_back(1 + 2 * i);
      bell_b.push_back(2 + 2 * i);
    }
  } else {
    serial_hook = 1;
    for (int i = 0; i < (k - 1) / 2; ++i) {
      bell_a.push_back(2 + 2 * i);
      bell_b.push_back(3 + 2 * i);
    }
  }
  for (int a : bell_a) b.h(a);
  for (size_t i = 0; i < bell_a.size(); ++i) b.cx(bell_a[i], bell_b[i]);
  if (serial_hook >= 0) {
    b.cx(0, serial_hook);
    b.cx(serial_hook, bell_a[0]);
  } else {
    b.cx(0, bell_a[0]);
  }
  for (size_t i = 0; i + 1 < bell_a.size(); ++i) b.cx(bell_b[i], bell_a[i + 1]);
  b.cx(bell_b.back(), n - 1);

  std::vector<int> z_clbits, x_clbits;
  int clbit = 0;
  for (int a : bell_a) {
    b.measure(a, clbit);
    z_clbits.push_back(clbit++);
  }
  std::vector<int> x_qubits = bell_b;
  if (serial_hook >= 0) x_qubits.insert(x_qubits.begin(), serial_hook);
  for (int q : x_qubits) {
    b.h(q);
    b.measure(q, clbit);
    x_clbits.push_back(clbit++);
  }

  GeneratedBenchmark bench;
  bench.family = Family::LR_CNOT;
  return finish_lr_cnot(b, std::move(bench), n, std::move(z_clbits), std::move(x_clbits),
                        clbit);
}

GeneratedBenchmark gen_lr_cnot_sparse(int n_total) {
  if (n_total < 5 || n_total % 3 != 2)
    throw std::invalid_argument("LR_CNOT_SPARSE sizes are n = 3k+2, n >= 5");
  const int n = n_total;
  const int k = (n - 2) / 3;  // Bell pairs; one unitary relay per junction
  CircuitBuilder b(n, 2 * k + 2);
  b.set_name("lr_cnot_sparse").set_param("n_total", n_total);

  auto bell_a = [](int i) { return 1 + 3 * i; };
  auto bell_b = [](int i) { return 2 + 3 * i; };
  auto relay = [](int i) { return 3 + 3 * i; };

  for (int i = 0; i < k; ++i) b.h(bell_a(i));
  for (int i = 0; i < k; ++i) b.cx(bell_a(i), bell_b(i));
  b.cx(0, bell_a(0));
  for (int i = 0; i < k; ++i) {
    int out = i + 1 < k ? bell_a(i + 1) : n - 1;
    b.cx(bell_b(i), relay(i));
    b.cx(relay(i), out);
    b.cx(bell_b(i), relay(i));  // relay returns to |0>
  }

  std::vector<int> z_clbits, x_clbits;
  int clbit = 0;
  for (int i = 0; i < k; ++i) {
    b.measure(bell_a(i), clbit);
    z_clbits.push_back(clbit++);
  }
  for (int i = 0; i < k; ++i) {
    b.h(bell_b(i));
    b.measure(bell_b(i), clbit);
    x_clbits.push_back(clbit++);
  }

  GeneratedBenchmark bench;
  bench.family = Family::LR_CNOT_SPARSE;
  return finish_lr_cnot(b, std::move(bench), n, std::move(z_clbits), std::move(x_clbits),
                        clbit);
}

GeneratedBenchmark gen_cnot_ladder(int n_total) {
  if (n_total < 3 || n_total % 2 == 0)
    throw std::invalid_argument("CNOT_LADDER needs an odd total of at least 3");
  const int n_data = (n_total + 1) / 2;
  const int n_anc = n_data - 1;
  CircuitBuilder b(n_total, n_anc + n_data);
  auto data = [](int j) { return 2 * j; };
  auto anc = [](int j) { return 2 * j + 1; };

  for (int j = 0; j < n_anc; ++j) b.h(anc(j));
  for (int j = 0; j < n_anc; ++j) b.cx(anc(j), data(j + 1));
  for (int j = 0; j < n_anc; ++j) b.cx(data(j), anc(j));
  for (int j = 0; j < n_anc; ++j) b.measure(anc(j), j);
  for (int j = 1; j < n_data; ++j) {
    std::vector<int> bits;
    for (int i = 0; i < j; ++i) bits.push_back(i);
    b.conditional(parity_or_equals(std::move(bits)), {make_gate(GateId::X, {data(j)})});
  }

  GeneratedBenchmark bench;
  for (int j = 0; j < n_data; ++j) {
    b.measure(data(j), n_anc + j);
    bench.readout_clbits.push_back(n_anc + j);
  }
  std::set<int> system;
  for (int j = 0; j < n_data; ++j) system.insert(data(j));
  b.set_system_qubits(std::move(system));
  b.set_name("cnot_ladder").set_param("n_total", n_total);

  bench.family = Family::CNOT_LADDER;
  bench.circuit = b.finalize();
  bench.ideal.type = IdealReference::Type::Clifford;
  for (int j = 0; j + 1 < n_data; ++j)
    bench.ideal.clifford_ops.push_back(make_gate(GateId::Cx, {j, j + 1}));
  for (int j = 0; j < n_data; ++j) bench.ideal.data_qubits.push_back(data(j));
  finish_uniform(bench);
  return bench;
}

GeneratedBenchmark gen_fanout(int n_total) {
  if (n_total < 5 || n_total % 2 == 0)
    throw std::invalid_argument("FANOUT needs an odd total of at least 5");
  const int m = (n_total - 1) / 2;  // targets
  CircuitBuilder b(n_total, (m - 1) + m + (m + 1));
  auto anc = [](int j) { return 2 * j - 1; };   // j = 1..m
  auto tgt = [](int j) { return 2 * j; };       // j = 1..m

  // Phase 1: inverse staircase over the targets. Each |0> ancilla copies
  // its left neighbor, applies it to the right neighbor, and is removed by
  // an X-basis measurement whose Z back-action lands on the source.
  for (int j = 2; j <= m; ++j) b.cx(tgt(j - 1), anc(j));
  for (int j = 2; j <= m; ++j) b.cx(anc(j), tgt(j));
  for (int j = 2; j <= m; ++j) b.h(anc(j));
  for (int j = 2; j <= m; ++j) b.measure(anc(j), j - 2);
  // The copied value is a prefix parity of the rewritten targets, so the
  // Z back-action accumulates: target i needs Z when the XOR of the later
  // phase-1 outcomes is odd.
  for (int i = 1; i < m; ++i) {
    std::vector<int> bits;
    for (int j = i + 1; j <= m; ++j) bits.push_back(j - 2);
    b.conditional(parity_or_equals(std::move(bits)), {make_gate(GateId::Z, {tgt(i)})});
  }

  // Phase 2: staircase over (control, targets); ancillas reused after reset.
  const int p2 = m - 1;  // first phase-2 clbit
  for (int j = 2; j <= m; ++j) b.reset(anc(j));
  for (int j = 1; j <= m; ++j) b.h(anc(j));
  for (int j = 1; j <= m; ++j) b.cx(anc(j), tgt(j));
  for (int j = 1; j <= m; ++j) b.cx(j == 1 ? 0 : tgt(j - 1), anc(j));
  for (int j = 1; j <= m; ++j) b.measure(anc(j), p2 + j - 1);

  // Cumulative parity corrections of the staircase.
  for (int j = 1; j <= m; ++j) {
    std::vector<int> bits;
    for (int i = 1; i <= j; ++i) bits.push_back(p2 + i - 1);
    b.conditional(parity_or_equals(std::move(bits)), {make_gate(GateId::X, {tgt(j)})});
  }

  GeneratedBenchmark bench;
  const int fin = 2 * m - 1;
  b.measure(0, fin);
  bench.readout_clbits.push_back(fin);
  for (int j = 1; j <= m; ++j) {
    b.measure(tgt(j), fin + j);
    bench.readout_clbits.push_back(fin + j);
  }
  std::set<int> system = {0};
  for (int j = 1; j <= m; ++j) system.insert(tgt(j));
  b.set_system_qubits(std::move(system));
  b.set_name("fanout").set_param("n_total", n_total);

  bench.family = Family::FANOUT;
  bench.circuit = b.finalize();
  bench.ideal.type = IdealReference::Type::Clifford;
  for (int j = 1; j <= m; ++j)
    bench.ideal.clifford_ops.push_back(make_gate(GateId::Cx, {0, j}));
  bench.ideal.data_qubits.push_back(0);
  for (int j = 1; j <= m; ++j) bench.ideal.data_qubits.push_back(tgt(j));
  finish_uniform(bench);
  return bench;
}

namespace {

void check_bitstring(const std::string& s, int n) {
  if (static_cast<int>(s.size()) != n)
    throw std::invalid_argument("bitstring length must equal qubit count");
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("bitstring must be binary");
  }
}

// Fourier-basis encoding of s: qubit j carries phase 2*pi*0.s_{j+1}..s_n.
void qft_encode(CircuitBuilder& b, int n, const std::string& s) {
  for (int j = 0; j < n; ++j) b.h(j);
  for (int j = 0; j < n; ++j) {
    double phase = 0;
    for (int t = j + 1; t <= n; ++t) {
      if (s[t - 1] == '1') phase += std::ldexp(1.0, -(t - j));
    }
    b.p(j, kTau * phase);
  }
}

GeneratedBenchmark finish_qft(CircuitBuilder& b, Family family, int n, const std::string& s) {
  GeneratedBenchmark bench;
  bench.family = family;
  for (int j = 0; j < n; ++j) bench.readout_clbits.push_back(n - 1 - j);
  std::set<int> system;
  for (int q = 0; q < n; ++q) system.insert(q);
  b.set_system_qubits(std::move(system));
  bench.circuit = b.finalize();
  bench.ideal.type = IdealReference::Type::Delta;
  bench.ideal.bitstring = s;
  finish_uniform(bench);
  return bench;
}

}  // namespace

GeneratedBenchmark gen_qft_m(int n, const std::string& s) {
  if (n < 2) throw std::invalid_argument("QFT_M needs at least 2 qubits");
  check_bitstring(s, n);
  CircuitBuilder b(n, n);
  b.set_name("qft_m").set_param("n", n);
  qft_encode(b, n, s);
  // Dynamic inverse QFT: every controlled rotation becomes a classically
  // controlled phase on the not-yet-measured qubit.
  for (int j = n - 1; j >= 0; --j) {
    for (int t = n - 1; t > j; --t) {
      b.conditional(Condition::equals_one(n - 1 - t),
                    {make_gate(GateId::P, {j}, {-kTau * std::ldexp(1.0, -(t - j + 1))})});
    }
    b.h(j);
    b.measure(j, n - 1 - j);
  }
  return finish_qft(b, Family::QFT_M, n, s);
}

GeneratedBenchmark gen_partial_qft_m(int n, const std::string& s) {
  if (n < 2) throw std::invalid_argument("PARTIAL_QFT_M needs at least 2 qubits");
  check_bitstring(s, n);
  const int k_dyn = (n + 1) / 2;  // measured-first qubits handled dynamically
  CircuitBuilder b(n, n);
  b.set_name("partial_qft_m").set_param("n", n);
  qft_encode(b, n, s);
  for (int j = n - 1; j >= n - k_dyn; --j) {
    for (int t = n - 1; t > j; --t) {
      b.conditional(Condition::equals_one(n - 1 - t),
                    {make_gate(GateId::P, {j}, {-kTau * std::ldexp(1.0, -(t - j + 1))})});
    }
    b.h(j);
    b.measure(j, n - 1 - j);
  }
  for (int j = n - k_dyn - 1; j >= 0; --j) {
    for (int t = n - 1; t > j; --t) {
      double lambda = -kTau * std::ldexp(1.0, -(t - j + 1));
      if (t >= n - k_dyn) {
        b.conditional(Condition::equals_one(n - 1 - t),
                      {make_gate(GateId::P, {j}, {lambda})});
      } else {
        // Controlled phase from the still-unitary half, without a native
        // CP gate: CP(l) = P(l/2) x P(l/2) . RZZ(-l/2) up to global phase.
        b.p(t, lambda / 2);
        b.p(j, lambda / 2);
        b.rzz(t, j, -lambda / 2);
      }
    }
    b.h(j);
  }
  for (int j = n - k_dyn - 1; j >= 0; --j) b.measure(j, n - 1 - j);
  return finish_qft(b, Family::PARTIAL_QFT_M, n, s);
}

GeneratedBenchmark gen_ipe(double theta, int m_bits) {
  if (theta < 0.0 || theta >= 1.0) throw std::invalid_argument("theta must be in [0,1)");
  if (m_bits < 1) throw std::invalid_argument("m_bits must be >= 1");
  CircuitBuilder b(2, m_bits);
  b.set_name("ipe").set_param("theta", theta).set_param("m_bits", m_bits);
  b.x(1);  // eigenstate |1> of the phase gate
  for (int r = 1; r <= m_bits; ++r) {
    if (r > 1) b.reset(0);
    b.h(0);
    double lambda = kTau * theta * std::ldexp(1.0, m_bits - r);  // controlled-U^(2^(m-r))
    b.p(0, lambda / 2);
    b.p(1, lambda / 2);
    b.rzz(0, 1, -lambda / 2);
    for (int j = 1; j < r; ++j) {
      b.conditional(Condition::equals_one(j - 1),
                    {make_gate(GateId::P, {0}, {-kTau * std::ldexp(1.0, -(r - j + 1))})});
    }
    b.h(0);
    b.measure(0, r - 1);
  }
  b.set_system_qubits({1});

  GeneratedBenchmark bench;
  bench.family = Family::IPE;
  for (int r = m_bits; r >= 1; --r) bench.readout_clbits.push_back(r - 1);
  bench.circuit = b.finalize();
  bench.ideal.type = IdealReference::Type::Delta;
  long value = std::lround(theta * std::ldexp(1.0, m_bits));
  value = ((value % (1L << m_bits)) + (1L << m_bits)) % (1L << m_bits);
  std::string s(m_bits, '0');
  for (int i = 0; i < m_bits; ++i) {
    if (value & (1L << (m_bits - 1 - i))) s[i] = '1';
  }
  bench.ideal.bitstring = s;
  finish_uniform(bench);
  return bench;
}

GeneratedBenchmark gen_tfim(int n_data, int steps, double J, double h, double dt) {
  if (n_data < 2) throw std::invalid_argument("TFIM needs at least 2 data qubits");
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  const int n_anc = n_data - 1;
  const int n_total = 2 * n_data - 1;
  CircuitBuilder b(n_total, steps * n_anc + n_data);
  auto data = [](int j) { return 2 * j; };
  auto anc = [](int j) { return 2 * j + 1; };
  b.set_name("tfim")
      .set_param("n_data", n_data)
      .set_param("steps", steps)
      .set_param("J", J)
      .set_param("h", h)
      .set_param("dt", dt);

  for (int st = 0; st < steps; ++st) {
    for (int j = 0; j < n_data; ++j) b.rx(data(j), 2 * h * dt);
    if (st > 0) {
      for (int j = 0; j < n_anc; ++j) b.reset(anc(j));
    }
    // Dynamic RZZ(2 J dt) on every adjacent data pair through its parity
    // ancilla: two CX layers, a phase on the ancilla, X-basis readout, and
    // a conditional ZZ frame fix.
    for (int j = 0; j < n_anc; ++j) b.cx(data(j), anc(j));
    for (int j = 0; j < n_anc; ++j) b.cx(data(j + 1), anc(j));
    for (int j = 0; j < n_anc; ++j) b.rz(anc(j), 2 * J * dt);
    for (int j = 0; j < n_anc; ++j) b.h(anc(j));
    for (int j = 0; j < n_anc; ++j) b.measure(anc(j), st * n_anc + j);
    for (int j = 0; j < n_anc; ++j) {
      b.conditional(Condition::equals_one(st * n_anc + j),
                    {make_gate(GateId::Z, {data(j)}), make_gate(GateId::Z, {data(j + 1)})});
    }
  }

  GeneratedBenchmark bench;
  for (int j = 0; j < n_data; ++j) {
    b.measure(data(j), steps * n_anc + j);
    bench.readout_clbits.push_back(steps * n_anc + j);
  }
  std::set<int> system;
  for (int j = 0; j < n_data; ++j) system.insert(data(j));
  b.set_system_qubits(std::move(system));

  bench.family = Family::TFIM;
  bench.circuit = b.finalize();
  bench.ideal.type = IdealReference::Type::Tfim;
  bench.ideal.n = n_data;
  bench.ideal.steps = steps;
  bench.ideal.J = J;
  bench.ideal.h = h;
  bench.ideal.dt = dt;
  finish_uniform(bench);
  return bench;
}

namespace {

// Shared QEC scaffolding: encode, one syndrome round, lookup corrections,
// transversal readout in the logical basis.
GeneratedBenchmark build_code_benchmark(Family family, const CodeTables& code,
                                        CodeInitial initial, int n_total, int spare_qubits,
                                        bool uniform_branch) {
  const int nd = code.num_data;
  const int nc = code.num_checks();
  if (n_total != nd + nc + spare_qubits) throw std::logic_error("code layout mismatch");
  const bool interleaved = family == Family::REP_CODE;
  auto data = [&](int j) { return interleaved ? 2 * j : j; };
  auto anc = [&](int i) { return interleaved ? 2 * i + 1 : nd + i; };

  CircuitBuilder b(n_total, nc + nd);
  b.set_name(code.name).set_param("initial", static_cast<double>(initial));

  // State preparation / encoding.
  if (family == Family::REP_CODE) {
    if (initial == CodeInitial::One) {
      for (int j = 0; j < nd; ++j) b.x(data(j));
    } else {  // |+>_L is the GHZ state of the data qubits
      b.h(data(0));
      for (int j = 0; j + 1 < nd; ++j) b.cx(data(j), data(j + 1));
    }
  } else {
    std::vector<PauliString> targets = code.stabilizers;
    if (initial == CodeInitial::Plus) {
      targets.push_back(code.logical_x);
    } else {
      PauliString lz = code.logical_z;
      lz.sign = initial == CodeInitial::One ? -1 : 1;
      targets.push_back(lz);
    }
    for (const auto& instr : stabilizer_prep_circuit(std::move(targets))) {
      // Synthesized on data-local indices; remap onto physical data qubits.
      std::vector<int> qs;
      for (int q : instr.gate().qubits) qs.push_back(data(q));
      b.gate(instr.gate().id, std::move(qs), instr.gate().params);
    }
  }

  // One round of syndrome extraction, one ancilla per check.
  for (int i = 0; i < nc; ++i) {
    const PauliString& stab = code.stabilizers[i];
    bool z_only = true;
    for (int q = 0; q < nd; ++q) {
      Pauli l = stab.letter(q);
      if (l == Pauli::X || l == Pauli::Y) z_only = false;
    }
    if (z_only) {
      // Parity accumulates onto the ancilla directly.
      for (int q = 0; q < nd; ++q) {
        if (stab.letter(q) == Pauli::Z) b.cx(data(q), anc(i));
      }
      b.measure(anc(i), i);
    } else {
      b.h(anc(i));
      for (int q = 0; q < nd; ++q) {
        switch (stab.letter(q)) {
          case Pauli::I: break;
          case Pauli::X: b.cx(anc(i), data(q)); break;
          case Pauli::Z: b.cz(anc(i), data(q)); break;
          case Pauli::Y:
            b.sdg(data(q));
            b.cx(anc(i), data(q));
            b.s(data(q));
            break;
        }
      }
      b.h(anc(i));
      b.measure(anc(i), i);
    }
  }

  // Lookup-table corrections: one conditional per nonzero syndrome.
  int n_conditionals = 0;
  for (const auto& [syndrome, corr] : code.decoder) {
    if (syndrome == 0 || corr.is_identity()) continue;
    std::vector<int> bits;
    std::vector<uint8_t> value;
    for (int i = 0; i < nc; ++i) {
      bits.push_back(i);
      value.push_back((syndrome >> i) & 1);
    }
    std::vector<Instruction> body;
    for (int q = 0; q < nd; ++q) {
      switch (corr.letter(q)) {
        case Pauli::I: break;
        case Pauli::X: body.push_back(make_gate(GateId::X, {data(q)})); break;
        case Pauli::Y: body.push_back(make_gate(GateId::Y, {data(q)})); break;
        case Pauli::Z: body.push_back(make_gate(GateId::Z, {data(q)})); break;
      }
    }
    b.conditional(Condition::equals(std::move(bits), std::move(value)), std::move(body));
    ++n_conditionals;
  }

  // Transversal logical readout (X basis for |+>_L preparations).
  GeneratedBenchmark bench;
  if (initial == CodeInitial::Plus) {
    for (int q = 0; q < nd; ++q) b.h(data(q));
  }
  for (int q = 0; q < nd; ++q) {
    b.measure(data(q), nc + q);
  }
  for (int i = 0; i < nc + nd; ++i) bench.readout_clbits.push_back(i);

  std::set<int> system;
  for (int q = 0; q < nd; ++q) system.insert(data(q));
  b.set_system_qubits(std::move(system));

  bench.family = family;
  bench.circuit = b.finalize();
  bench.ideal.type = IdealReference::Type::Code;
  bench.ideal.code_name = code.name;
  bench.ideal.initial = initial;

  if (uniform_branch) {
    std::map<int, double> probs;
    for (int i = 0; i < n_conditionals; ++i) probs[i] = 1.0 / 16.0;
    bench.branch_model = BranchModel::explicit_probs(std::move(probs));
  } else {
    // Backend medians; featurization re-instantiates these from the active
    // noise preset.
    std::map<int, int> weights;
    for (int i = 0; i < nc; ++i) weights[i] = code.check_weights[i];
    bench.branch_model = BranchModel::qec_noise(1e-3, 5e-3, 1e-4, std::move(weights));
  }
  return bench;
}

}  // namespace

GeneratedBenchmark gen_rep_code(int n_data, CodeInitial initial) {
  if (initial == CodeInitial::Zero)
    throw std::invalid_argument("repetition code benchmarks encode |1> or |+>");
  auto code = rep_code_tables(n_data);
  return build_code_benchmark(Family::REP_CODE, code, initial, 2 * n_data - 1, 0, false);
}

GeneratedBenchmark gen_five_qubit_code(CodeInitial initial, bool uniform_branch) {
  if (initial == CodeInitial::Plus)
    throw std::invalid_argument("five-qubit code benchmarks encode |0> or |1>");
  auto code = five_qubit_code_tables();
  return build_code_benchmark(Family::FIVE_QUBIT_CODE, code, initial, 11, 2, uniform_branch);
}

GeneratedBenchmark gen_steane_code(CodeInitial initial) {
  if (initial == CodeInitial::Zero)
    throw std::invalid_argument("Steane benchmarks encode |1> or |+>");
  auto code = steane_code_tables();
  return build_code_benchmark(Family::STEANE_CODE, code, initial, 14, 1, false);
}

namespace {

struct SizeRule {
  int min = 2;
  int modulus = 1;   // admissible when n % modulus == remainder
  int remainder = 0;
  int lo = 2, hi = 61;  // advisory (published) range
  std::vector<int> fixed;  // when nonempty, only these totals are valid
};

SizeRule size_rule(Family f) {
  switch (f) {
    case Family::GHZ: return {3, 2, 1, 3, 59, {}};
    case Family::GHZ_RESET: return {2, 1, 0, 3, 59, {}};
    case Family::LR_CNOT: return {4, 1, 0, 4, 32, {}};
    case Family::LR_CNOT_SPARSE: return {5, 3, 2, 5, 61, {}};
    case Family::CNOT_LADDER: return {3, 2, 1, 3, 59, {}};
    case Family::FANOUT: return {5, 2, 1, 5, 61, {}};
    case Family::QFT_M: return {2, 1, 0, 2, 20, {}};
    case Family::PARTIAL_QFT_M: return {2, 1, 0, 2, 20, {}};
    case Family::IPE: return {2, 1, 0, 2, 2, {2}};
    case Family::TFIM: return {3, 2, 1, 5, 59, {}};
    case Family::REP_CODE: return {5, 1, 0, 5, 9, {5, 9}};
    case Family::FIVE_QUBIT_CODE: return {11, 1, 0, 11, 11, {11}};
    case Family::STEANE_CODE: return {14, 1, 0, 14, 14, {14}};
  }
  throw std::logic_error("unreachable");
}

}  // namespace

void check_size(Family f, int n_total) {
  auto rule = size_rule(f);
  if (!rule.fixed.empty()) {
    for (int n : rule.fixed) {
      if (n == n_total) return;
    }
    throw std::invalid_argument("invalid qubit count for family " + family_name(f));
  }
  if (n_total < rule.min || n_total % rule.modulus != rule.remainder)
    throw std::invalid_argument("invalid qubit count for family " + family_name(f));
}

std::optional<std::string> size_advisory(Family f, int n_total) {
  auto rule = size_rule(f);
  if (n_total < rule.lo || n_total > rule.hi) {
    return family_name(f) + " size " + std::to_string(n_total) +
           " is outside the published range [" + std::to_string(rule.lo) + ", " +
           std::to_string(rule.hi) + "]";
  }
  return std::nullopt;
}

GeneratedBenchmark generate_benchmark(const BenchmarkSpec& spec, uint64_t seed) {
  return generate_benchmark(spec.family, spec.n_total, spec.params, seed);
}

GeneratedBenchmark generate_benchmark(Family f, int n_total,
                                      const std::map<std::string, double>& params,
                                      uint64_t seed) {
  check_size(f, n_total);
  auto get = [&](const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  Rng rng(mix_seed(seed, 0x9f7));
  auto random_bits = [&](int n) {
    std::string s(n, '0');
    for (char& c : s) c = rng.below(2) ? '1' : '0';
    return s;
  };

  switch (f) {
    case Family::GHZ: return gen_ghz((n_total + 1) / 2);
    case Family::GHZ_RESET: return gen_ghz_reset(n_total);
    case Family::LR_CNOT: return gen_lr_cnot(n_total);
    case Family::LR_CNOT_SPARSE: return gen_lr_cnot_sparse(n_total);
    case Family::CNOT_LADDER: return gen_cnot_ladder(n_total);
    case Family::FANOUT: return gen_fanout(n_total);
    case Family::QFT_M: return gen_qft_m(n_total, random_bits(n_total));
    case Family::PARTIAL_QFT_M: return gen_partial_qft_m(n_total, random_bits(n_total));
    case Family::IPE: {
      int m = static_cast<int>(get("m_bits", 3));
      double theta = get("theta", -1);
      if (theta < 0) {
        theta = std::ldexp(static_cast<double>(rng.below(uint64_t{1} << m)), -m);
      }
      return gen_ipe(theta, m);
    }
    case Family::TFIM:
      return gen_tfim((n_total + 1) / 2, static_cast<int>(get("steps", 2)), get("J", 1.0),
                      get("h", 1.0), get("dt", 0.1));
    case Family::REP_CODE:
      return gen_rep_code((n_total + 1) / 2,
                          get("initial", 1) >= 1.5 ? CodeInitial::Plus : CodeInitial::One);
    case Family::FIVE_QUBIT_CODE:
      return gen_five_qubit_code(get("initial", 0) >= 0.5 ? CodeInitial::One
                                                          : CodeInitial::Zero,
                                 get("uniform_branch", 0) >= 0.5);
    case Family::STEANE_CODE:
      return gen_steane_code(get("initial", 1) >= 1.5 ? CodeInitial::Plus
                                                      : CodeInitial::One);
  }
  throw std::logic_error("unreachable");
}

}  // namespace dynabench
