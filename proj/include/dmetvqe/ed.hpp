#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Sparse>

#include "dmetvqe/fermion.hpp"
#include "dmetvqe/rdm.hpp"
#include "dmetvqe/types.hpp"

namespace dmetvqe::ed {

/// Fixed (N_alpha, N_beta) block of the Fock space over interleaved
/// spin-orbitals. Determinants are bitmasks, bit p == spin-orbital p.
class Sector {
 public:
  Sector(Index n_spatial, Index n_alpha, Index n_beta);

  Index spatial_count() const noexcept { return n_spatial_; }
  Index alpha_count() const noexcept { return n_alpha_; }
  Index beta_count() const noexcept { return n_beta_; }
  std::size_t dimension() const noexcept { return dets_.size(); }
  const std::vector<std::uint64_t>& determinants() const noexcept { return dets_; }

  /// Position of `det` in determinants(), or npos if it lies outside.
  std::size_t index_of(std::uint64_t det) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  Index n_spatial_;
  Index n_alpha_;
  Index n_beta_;
  std::size_t beta_dim_;
  std::vector<std::uint64_t> dets_;
  std::vector<std::vector<std::size_t>> binom_;
};

inline constexpr Index kMaxSpinOrbitals = 24;
inline constexpr std::size_t kDenseLimit = 400;

struct GroundState {
  double energy = 0.0;
  RDMPair rdms;
  /// Eigenvector in Sector::determinants() order, largest component positive.
  Vector coefficients;
  std::vector<std::uint64_t> determinants;
};

/// Sector Hamiltonian assembled once; solve() may add a diagonal one-body
/// shift (per spatial orbital, both spins) without rebuilding.
class ExactSolver {
 public:
  ExactSolver(const fermion::IntegralTensors& ts, Index n_electrons, int twice_sz = 0);

  const Sector& sector() const noexcept { return sector_; }
  std::size_t dimension() const noexcept { return sector_.dimension(); }
  const Eigen::SparseMatrix<double>& hamiltonian() const noexcept { return h_; }

  /// Lowest eigenpair of H + sum_p shift(p) n_p, with RDMs of that state.
  /// `shift` may be empty.
  GroundState solve(const Vector& shift = Vector()) const;

  /// Dense matrix of the sector Hamiltonian (tests and small problems).
  Matrix dense_hamiltonian() const { return Matrix(h_); }

 private:
  Sector sector_;
  Index n_electrons_;
  double constant_;
  Eigen::SparseMatrix<double> h_;
};

GroundState ground_state(const fermion::IntegralTensors& ts, Index n_electrons, int twice_sz = 0);

/// Spin-orbital RDMs of the sector state `coefficients`.
RDMPair compute_rdms(const Sector& sector, const Vector& coefficients);

/// Fermionic sign and result of applying a creation (or annihilation) on
/// `mode`; returns 0 when the operator annihilates the determinant.
int apply_ladder(std::uint64_t& det, Index mode, bool creation);

}  // namespace dmetvqe::ed
