#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dmetvqe/circuit.hpp"
#include "dmetvqe/fermion.hpp"
#include "dmetvqe/optimize.hpp"
#include "dmetvqe/pauli.hpp"
#include "dmetvqe/qvm.hpp"
#include "dmetvqe/rdm.hpp"
#include "dmetvqe/types.hpp"

namespace dmetvqe::vqe {

/// Spin-adapted UCCSD over a closed-shell reference in which the lowest
/// `n_occupied` spatial orbitals are doubly occupied.
///
/// Amplitude layout for the n_s = n_occ * n_virt spatial excitations (a <- i):
///   [0, n_s)             singles, shared by both spins
///   [n_s, 2 n_s)         paired doubles (a_alpha a_beta <- i_alpha i_beta)
///   [2 n_s, ...)         doubles from two distinct spatial excitations, one
///                        amplitude driving all four spin combinations
/// For two occupied and two virtual orbitals this gives 14 amplitudes.
struct UCCSDAnsatz {
  Index n_spatial = 0;
  Index n_occupied = 0;
  int trotter_order = 1;
  int trotter_steps = 1;

  Index qubit_count() const noexcept { return 2 * n_spatial; }
  Index electron_count() const noexcept { return 2 * n_occupied; }
  Index virtual_count() const noexcept { return n_spatial - n_occupied; }
  Index excitation_count() const noexcept { return n_occupied * virtual_count(); }
  Index amplitude_count() const noexcept;

  /// (virtual, occupied) spatial pairs in amplitude order.
  std::vector<std::pair<Index, Index>> excitations() const;
  /// Pairs of excitation indices for the unpaired doubles, in amplitude order.
  std::vector<std::pair<Index, Index>> excitation_pairs() const;

  /// Occupied spin-orbital bitmask of the reference determinant.
  std::uint64_t reference_occupation() const noexcept;
};

/// X on every occupied qubit.
circuit::Program reference_program(std::uint64_t occupation);

struct ClusterGenerator {
  fermion::FermionSum singles;  // T1 - T1†
  fermion::FermionSum doubles;  // T2 - T2†

  fermion::FermionSum total() const { return singles + doubles; }
};

/// Anti-Hermitian generator T(theta) - T(theta)† split into singles and
/// doubles. Zero amplitudes contribute no terms.
ClusterGenerator cluster_generator(const Vector& theta, const UCCSDAnsatz& ansatz);

/// Pauli images prepared once per ansatz so that each circuit is a cheap
/// linear combination. exp(G) = exp(-i A) with A = i JW(G) Hermitian.
class CompiledAnsatz {
 public:
  explicit CompiledAnsatz(UCCSDAnsatz ansatz);

  const UCCSDAnsatz& ansatz() const noexcept { return ansatz_; }

  /// Hermitian sums A_s, A_d with exp(G_s) = exp(-i A_s), likewise doubles.
  std::pair<pauli::PauliSum, pauli::PauliSum> rotation_sums(const Vector& theta) const;

  /// Reference preparation followed by trotterize(A_s, A_d).
  circuit::Program program(const Vector& theta) const;

  qvm::StateVector state(const Vector& theta) const;

 private:
  UCCSDAnsatz ansatz_;
  std::vector<pauli::PauliSum> unit_images_;  // i * JW(generator unit k)
};

circuit::Program ansatz_program(const Vector& theta, const UCCSDAnsatz& ansatz);

/// Restricted Fock diagonal of the reference determinant for spatial
/// integrals `ts` (orbital basis), per spatial orbital.
Vector reference_orbital_energies(const fermion::IntegralTensors& ts, Index n_occupied);

/// MP2 first-order doubles mapped onto the singlet amplitude layout; singles
/// are zero. Denominators below 1e-8 give a zero guess.
Vector mp2_guess(const fermion::IntegralTensors& ts, const UCCSDAnsatz& ansatz);

/// <a†_i a†_j a_l a_k> for all pairs measured as QVM expectations of the JW
/// images; the 1-RDM follows by contraction. `max_asymmetry` receives the
/// largest (anti)symmetry violation removed by symmetrization.
RDMPair measure_rdms(const qvm::StateVector& state, Index n_electrons, double* max_asymmetry = nullptr);

struct VQEOptions {
  optimize::BFGSOptions bfgs{};
  bool mp2_start = true;
};

struct VQEResult {
  Vector theta;
  double energy = 0.0;
  RDMPair rdms;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  double rdm_asymmetry = 0.0;
};

/// Minimizes <psi(theta)|H|psi(theta)> with H built from the orbital-basis
/// spatial integrals `ts` (reference = lowest orbitals). `theta0` overrides
/// the MP2 start when non-empty.
VQEResult minimize(const fermion::IntegralTensors& ts, const UCCSDAnsatz& ansatz,
                   const VQEOptions& options = {}, const Vector& theta0 = Vector());

/// Qubit Hamiltonian of `ts`.
pauli::PauliSum qubit_hamiltonian(const fermion::IntegralTensors& ts);

/// Spin-orbital RDMs expressed in a rotated spatial basis: with new orbital
/// p = sum_i R(i, p) old_i, returns RDMs over the old orbitals given RDMs
/// over the new ones.
RDMPair rotate_rdms(const RDMPair& rdms, const Matrix& rotation);

/// Spatial integrals expressed in the orbitals given by the columns of
/// `rotation`.
fermion::IntegralTensors rotate_integrals(const fermion::IntegralTensors& ts, const Matrix& rotation);

}  // namespace dmetvqe::vqe
