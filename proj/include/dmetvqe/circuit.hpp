#pragma once

#include <string>
#include <vector>

#include "dmetvqe/pauli.hpp"
#include "dmetvqe/types.hpp"

namespace dmetvqe::circuit {

enum class GateKind { X, Y, Z, H, RX, RZ, CNOT };

std::string gate_name(GateKind kind);

struct Gate {
  GateKind kind = GateKind::X;
  std::vector<double> params;
  std::vector<Index> qubits;

  /// Throws InvalidArgument when the parameter or qubit count does not match
  /// the gate.
  void validate() const;

  bool is_two_qubit() const noexcept { return qubits.size() == 2; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

Gate make_gate(GateKind kind, std::vector<Index> qubits, std::vector<double> params = {});

struct Program {
  std::vector<Gate> instructions;

  std::size_t size() const noexcept { return instructions.size(); }
  bool empty() const noexcept { return instructions.empty(); }
  Index qubit_span() const noexcept;

  Program& append(const Program& other);
  Program& append(Gate g);

  friend bool operator==(const Program&, const Program&) = default;
};

struct TimeSlicedProgram {
  std::vector<std::vector<Gate>> slices;

  /// Slices concatenated in order.
  Program flatten() const;
};

struct GateStats {
  std::size_t slice_count = 0;
  double one_qubit_per_slice = 0.0;
  double two_qubit_per_slice = 0.0;
};

/// Newline-separated instructions, "NAME[(param)] q [q2]". Blank lines are
/// skipped.
Program parse_program(const std::string& text);

/// One instruction per line with a trailing newline; parameters in their
/// shortest round-trip form.
std::string print_program(const Program& program);
std::string print_gate(const Gate& gate);

/// Circuit for exp(-i c P) up to a global phase, where t = c P and c is real:
/// basis change (H for X, RX(pi/2) for Y), a CNOT ladder onto the highest
/// support qubit, RZ(2c) there, then the mirror image.
Program exponentiate_term(const pauli::PauliTerm& term);

/// Concatenation of exponentiate_term over the canonical term order of `sum`,
/// with every coefficient multiplied by `scale`.
Program exponentiate_sum(const pauli::PauliSum& sum, double scale = 1.0);

/// Order 1: N x [exp(a/N) exp(b/N)]. Order 2: N x [exp(a/2N) exp(b/N) exp(a/2N)].
Program trotterize(const pauli::PauliSum& a, const pauli::PauliSum& b, int order = 1,
                   int steps = 1);

/// Greedy earliest-slot schedule under the disjoint-qubit commutation rule.
TimeSlicedProgram parallelize(const Program& program);

GateStats gate_stats(const TimeSlicedProgram& tp);

/// "Time Slice #k: " listing with continuation lines aligned under the first
/// gate.
std::string print_time_sliced(const TimeSlicedProgram& tp);

/// Parses print_time_sliced output back into slices.
TimeSlicedProgram parse_time_sliced(const std::string& text);

}  // namespace dmetvqe::circuit
