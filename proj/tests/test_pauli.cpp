#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynabench/codes.hpp"
#include "dynabench/pauli.hpp"
#include "dynabench/sim.hpp"
#include "test_helpers.hpp"

using namespace dynabench;
using dynabench::testing::dense_pauli;
using dynabench::testing::dense_unitary;
using dynabench::testing::random_clifford_ops;

TEST_CASE("textbook conjugations") {
  SUBCASE("CX spreads X from control") {
    auto p = propagate_pauli(std::vector<Instruction>{make_gate(GateId::Cx, {0, 1})},
                             PauliString::parse("XI"));
    CHECK(p.str() == "+XX");
  }
  SUBCASE("H exchanges X and Z") {
    auto p = propagate_pauli(std::vector<Instruction>{make_gate(GateId::H, {0})},
                             PauliString::parse("X"));
    CHECK(p.str() == "+Z");
  }
  SUBCASE("S sends X to Y and Y to -X") {
    std::vector<Instruction> s = {make_gate(GateId::S, {0})};
    CHECK(propagate_pauli(s, PauliString::parse("X")).str() == "+Y");
    CHECK(propagate_pauli(s, PauliString::parse("Y")).str() == "-X");
  }
  SUBCASE("CX on Y.Y gives -X.Z") {
    auto p = propagate_pauli(std::vector<Instruction>{make_gate(GateId::Cx, {0, 1})},
                             PauliString::parse("YY"));
    CHECK(p.str() == "-XZ");
  }
}

TEST_CASE("non-Clifford gates are rejected") {
  std::vector<Instruction> ops = {make_gate(GateId::T, {0})};
  CHECK_THROWS_AS(propagate_pauli(ops, PauliString::parse("X")), std::invalid_argument);
}

TEST_CASE("random Clifford conjugation matches the dense oracle") {
  Rng rng(314);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng.below(6));
    auto ops = random_clifford_ops(n, 3 + static_cast<int>(rng.below(15)), rng);
    PauliString p(n);
    for (int q = 0; q < n; ++q) p.set_letter(q, static_cast<Pauli>(rng.below(4)));

    PauliString conj = propagate_pauli(ops, p);
    // U P = P' U catches both the letters and the sign without forming UPU+.
    Eigen::MatrixXcd u = dense_unitary(n, ops);
    Eigen::MatrixXcd lhs = u * dense_pauli(p);
    Eigen::MatrixXcd rhs = dense_pauli(conj) * u;
    CAPTURE(trial);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("eigenstate preparation prefixes") {
  SUBCASE("Z is trivial") { CHECK(prepare_pauli_eigenstate(Pauli::Z, 0).empty()); }
  SUBCASE("X gives |+>") {
    StateVector sv(1);
    for (const auto& instr : prepare_pauli_eigenstate(Pauli::X, 0))
      sv.apply_gate(instr.gate());
    StateVector hsv(1);
    hsv.apply_1q(0, gate_matrix_1q(GateId::H, {}));
    CHECK((sv.amplitudes() - hsv.amplitudes()).norm() < 1e-12);
  }
  SUBCASE("Y eigenstate has <Y> = 1") {
    StateVector sv(1);
    for (const auto& instr : prepare_pauli_eigenstate(Pauli::Y, 0))
      sv.apply_gate(instr.gate());
    Eigen::Vector2cd amp = sv.amplitudes();
    Eigen::Matrix2cd y = gate_matrix_1q(GateId::Y, {});
    std::complex<double> exp_y = amp.adjoint() * y * amp;
    CHECK(exp_y.real() == doctest::Approx(1.0));
  }
}

TEST_CASE("tableau stays symplectically orthonormal") {
  Rng rng(555);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(rng.below(4));
    Tableau t(n);
    for (const auto& instr : random_clifford_ops(n, 20, rng)) t.apply(instr);
    CHECK(t.symplectic_ok());
  }
}

TEST_CASE("tableau group membership") {
  // Bell pair stabilizers.
  Tableau t(2);
  t.apply(GateId::H, {0});
  t.apply(GateId::Cx, {0, 1});
  CHECK(t.contains(PauliString::parse("XX")) == Tableau::Membership::PlusSign);
  CHECK(t.contains(PauliString::parse("ZZ")) == Tableau::Membership::PlusSign);
  CHECK(t.contains(PauliString::parse("YY")) == Tableau::Membership::MinusSign);
  CHECK(t.contains(PauliString::parse("XZ")) == Tableau::Membership::NotInGroup);
}

namespace {

void check_prep(const std::vector<PauliString>& targets) {
  auto prep = stabilizer_prep_circuit(targets);
  Tableau t(targets[0].size());
  for (const auto& instr : prep) t.apply(instr);
  for (const auto& g : targets) {
    CAPTURE(g.str());
    CHECK(t.contains(g) == Tableau::Membership::PlusSign);
  }
}

}  // namespace

TEST_CASE("stabilizer state synthesis") {
  SUBCASE("GHZ-3 group") {
    check_prep({PauliString::parse("XXX"), PauliString::parse("ZZI"),
                PauliString::parse("IZZ")});
  }
  SUBCASE("signed single-qubit targets") {
    check_prep({PauliString::parse("-Z")});
    check_prep({PauliString::parse("+X")});
    check_prep({PauliString::parse("-Y")});
  }
  SUBCASE("five-qubit codewords") {
    auto code = five_qubit_code_tables();
    for (int sign : {1, -1}) {
      auto targets = code.stabilizers;
      PauliString lz = code.logical_z;
      lz.sign = sign;
      targets.push_back(lz);
      check_prep(targets);
    }
  }
  SUBCASE("Steane codewords") {
    auto code = steane_code_tables();
    auto targets = code.stabilizers;
    targets.push_back(code.logical_x);  // |+>_L
    check_prep(targets);
  }
  SUBCASE("random stabilizer groups round-trip") {
    Rng rng(777);
    for (int trial = 0; trial < 40; ++trial) {
      int n = 1 + static_cast<int>(rng.below(5));
      // Conjugate the computational-basis group through a random Clifford.
      auto ops = random_clifford_ops(n, 12, rng);
      std::vector<PauliString> targets;
      for (int q = 0; q < n; ++q)
        targets.push_back(propagate_pauli(ops, PauliString::single(n, q, Pauli::Z)));
      check_prep(targets);
    }
  }
}

TEST_CASE("five-qubit prep lands in the codespace (statevector check)") {
  auto code = five_qubit_code_tables();
  auto targets = code.stabilizers;
  targets.push_back(code.logical_z);  // |0>_L
  auto prep = stabilizer_prep_circuit(targets);
  StateVector sv(5);
  for (const auto& instr : prep) sv.apply_gate(instr.gate());
  Eigen::VectorXcd amp = sv.amplitudes();
  for (const auto& g : targets) {
    Eigen::VectorXcd g_amp = dense_pauli(g) * amp;
    CHECK((g_amp - amp).norm() < 1e-10);
  }
}

TEST_CASE("decoder tables verify") {
  verify_decoder(rep_code_tables(3));
  verify_decoder(rep_code_tables(5));
  verify_decoder(five_qubit_code_tables());
  verify_decoder(steane_code_tables());
}
