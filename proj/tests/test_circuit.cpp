#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "dmetvqe/circuit.hpp"
#include "dmetvqe/pauli.hpp"
#include "oracles.hpp"

using namespace dmetvqe;
using circuit::GateKind;
using circuit::make_gate;
using pauli::PauliSum;

namespace {

std::string golden(const std::string& name) {
  std::ifstream f(std::string(GOLDEN_DIR) + "/" + name);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Max deviation between two unitaries after removing a global phase.
double phase_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  const Complex phase = a(r, c) / b(r, c);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

const PauliSum kA = pauli::parse_pauli_sum("2.0*X0*X1");
const PauliSum kB = pauli::parse_pauli_sum("-0.5*X0*Z2");

}  // namespace

TEST_CASE("program text round trip") {
  const auto g = circuit::parse_program("RZ(4.0) 1\nCNOT 0 1\n");
  REQUIRE(g.size() == 2);
  CHECK(g.instructions[0] == make_gate(GateKind::RZ, {1}, {4.0}));
  CHECK(g.instructions[1] == make_gate(GateKind::CNOT, {0, 1}));

  const std::string sample = golden("sample16.txt");
  CHECK(circuit::print_program(circuit::parse_program(sample)) == sample);
  CHECK(circuit::parse_program("\nH 0\n\nX 1\n").size() == 2);

  CHECK_THROWS_AS(circuit::parse_program("FOO 1"), ParseError);
  CHECK_THROWS_AS(circuit::parse_program("CNOT 1"), ParseError);
  CHECK_THROWS_AS(circuit::parse_program("RZ 1"), ParseError);
  CHECK_THROWS_AS(circuit::parse_program("CNOT 1 1"), ParseError);
  try {
    circuit::parse_program("H 0\nRZ(abc) 1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("exponentiate golden listings") {
  CHECK(circuit::print_program(circuit::exponentiate_sum(kA)) == golden("exponentiate.txt"));
  CHECK(circuit::print_program(circuit::exponentiate_sum(kB)) == "H 0\nCNOT 0 2\nRZ(-1.0) 2\nCNOT 0 2\nH 0\n");
  CHECK(circuit::print_program(circuit::trotterize(kA, kB)) == golden("trotterize.txt"));
  CHECK(circuit::exponentiate_sum(PauliSum()).empty());
  CHECK_THROWS_AS(circuit::exponentiate_term(pauli::PauliTerm::single(pauli::Label::X, 0, Complex(0.0, 1.0))),
                  InvalidArgument);
}

TEST_CASE("exponentiate_term implements exp(-i c P)") {
  const std::vector<std::string> cases{"2.0*X0*X1", "-0.5*X0*Z2", "0.3*Y0*X1*Z2", "0.7*Y1", "-1.1*Z0*Y2",
                                       "0.25*Y0*Y1*Y2"};
  for (const auto& text : cases) {
    const PauliSum s = pauli::parse_pauli_sum(text);
    const ComplexMatrix expect = oracle::expm_hermitian(oracle::sum_matrix(s, 3), 1.0);
    const ComplexMatrix got = oracle::program_unitary(circuit::exponentiate_sum(s), 3);
    CHECK_MESSAGE(phase_distance(got, expect) < 1e-12, text);
  }
}

TEST_CASE("trotterize matches the exact exponential for commuting sums") {
  const PauliSum a = pauli::parse_pauli_sum("0.4*Z0*Z1 + 0.3*X2");
  const PauliSum b = pauli::parse_pauli_sum("-0.2*Z0 + 0.9*Z1*X2");
  REQUIRE(pauli::commutator(a, b).empty());
  const ComplexMatrix expect = oracle::expm_hermitian(oracle::sum_matrix(a + b, 3), 1.0);
  CHECK(phase_distance(oracle::program_unitary(circuit::trotterize(a, b), 3), expect) < 1e-10);
}

TEST_CASE("Trotter error decreases with steps and order") {
  const PauliSum a = pauli::parse_pauli_sum("0.6*X0*X1 + 0.4*Y1");
  const PauliSum b = pauli::parse_pauli_sum("0.5*Z0 + 0.3*Z1*X0");
  const ComplexMatrix exact = oracle::expm_hermitian(oracle::sum_matrix(a + b, 2), 1.0);
  for (int order : {1, 2}) {
    double previous = 1e9;
    for (int steps = 1; steps <= 8; steps *= 2) {
      const double err = phase_distance(oracle::program_unitary(circuit::trotterize(a, b, order, steps), 2), exact);
      CHECK(err < previous);
      previous = err;
    }
  }
  const double e1 = phase_distance(oracle::program_unitary(circuit::trotterize(a, b, 1, 4), 2), exact);
  const double e2 = phase_distance(oracle::program_unitary(circuit::trotterize(a, b, 2, 4), 2), exact);
  CHECK(e2 < e1);
  CHECK_THROWS_AS(circuit::trotterize(a, b, 3, 1), InvalidArgument);
  CHECK_THROWS_AS(circuit::trotterize(a, b, 1, 0), InvalidArgument);
}

TEST_CASE("parallelize reproduces the 10-slice schedule") {
  const auto sample = circuit::parse_program(golden("sample16.txt"));
  const auto tp = circuit::parallelize(sample);
  CHECK(tp.slices.size() == 10);
  CHECK(circuit::print_time_sliced(tp) == golden("sample16_sliced.txt"));
  const auto stats = circuit::gate_stats(tp);
  CHECK(stats.slice_count == 10);
  CHECK(stats.one_qubit_per_slice == doctest::Approx(0.9));
  CHECK(stats.two_qubit_per_slice == doctest::Approx(0.7));

  const auto back = circuit::parse_time_sliced(golden("sample16_sliced.txt"));
  CHECK(back.slices == tp.slices);

  const auto empty = circuit::gate_stats(circuit::parallelize(circuit::Program{}));
  CHECK(empty.slice_count == 0);
  CHECK(empty.one_qubit_per_slice == 0.0);
}

TEST_CASE("parallelize preserves semantics on random programs") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<Index> width(1, 6);
  std::uniform_int_distribution<std::size_t> length(0, 40);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = width(rng);
    const auto p = oracle::random_program(rng, n, length(rng));
    const auto tp = circuit::parallelize(p);
    const auto flat = tp.flatten();
    REQUIRE(flat.size() == p.size());
    for (const auto& slice : tp.slices) {
      std::vector<int> used(static_cast<std::size_t>(n), 0);
      for (const auto& g : slice)
        for (Index q : g.qubits) CHECK(++used[q] == 1);
    }
    CHECK((oracle::program_unitary(flat, n) - oracle::program_unitary(p, n)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(circuit::parse_time_sliced(circuit::print_time_sliced(tp)).slices == tp.slices);
  }
}

TEST_CASE("gate validation") {
  CHECK_THROWS_AS(make_gate(GateKind::RZ, {0}), InvalidArgument);
  CHECK_THROWS_AS(make_gate(GateKind::H, {0, 1}), InvalidArgument);
  CHECK_THROWS_AS(make_gate(GateKind::CNOT, {2, 2}), InvalidArgument);
  CHECK(make_gate(GateKind::CNOT, {0, 3}).is_two_qubit());
  CHECK(circuit::print_gate(make_gate(GateKind::RX, {5}, {-1.5707963267948966})) == "RX(-1.5707963267948966) 5");
  CHECK(circuit::print_gate(make_gate(GateKind::RZ, {5}, {1e-5})) == "RZ(0.00001) 5");
}
