#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "dmetvqe/circuit.hpp"
#include "dmetvqe/pauli.hpp"
#include "dmetvqe/types.hpp"

namespace dmetvqe::qvm {

/// Amplitudes over 2^n basis states; qubit 0 is the least significant bit of
/// the basis-state index.
class StateVector {
 public:
  explicit StateVector(Index n_qubits);
  StateVector(Index n_qubits, ComplexVector amplitudes);

  /// |bits> with qubit q set when bit q of `bits` is set.
  static StateVector basis_state(Index n_qubits, std::uint64_t bits);

  Index qubit_count() const noexcept { return n_qubits_; }
  const ComplexVector& amplitudes() const noexcept { return amps_; }
  Complex amplitude(std::uint64_t index) const { return amps_(static_cast<Eigen::Index>(index)); }
  double norm() const { return amps_.norm(); }

  void apply(const circuit::Gate& gate);
  void apply(const circuit::Program& program);

  /// exp(i angle P) applied directly, P a Pauli word. Used as an independent
  /// route in tests.
  void apply_pauli_rotation(const pauli::Word& word, double angle);

 private:
  Index n_qubits_;
  ComplexVector amps_;
};

struct ShotRecord {
  /// Bitstrings written qubit 0 first.
  std::map<std::string, std::size_t> counts;
  std::uint64_t seed = 0;
  std::size_t shots = 0;
};

/// Runs `program` from |0...0>.
StateVector run(const circuit::Program& program, Index n_qubits);

/// Runs `program` starting from `initial`.
StateVector run(const circuit::Program& program, StateVector initial);

/// <psi|h|psi> for a Hermitian Pauli sum. Throws InvalidArgument when the
/// simplified sum has a coefficient with |Im| > 1e-10.
double expectation(const StateVector& state, const pauli::PauliSum& h);

/// <psi|P|psi> for a single term, complex in general.
Complex term_expectation(const StateVector& state, const pauli::PauliTerm& term);

/// Multinomial z-basis sampling; identical output for identical seeds.
ShotRecord sample_z(const StateVector& state, std::size_t shots, std::uint64_t seed);

}  // namespace dmetvqe::qvm
