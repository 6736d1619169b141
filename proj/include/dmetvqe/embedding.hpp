#pragma once

#include <vector>

#include "dmetvqe/fermion.hpp"
#include "dmetvqe/meanfield.hpp"
#include "dmetvqe/types.hpp"

namespace dmetvqe::embedding {

/// Lattice sites (spatial) forming one fragment.
struct FragmentSpec {
  std::vector<Index> sites;

  Index size() const noexcept { return sites.size(); }
  /// Throws InvalidArgument on duplicates or sites >= lattice_sites.
  void validate(Index lattice_sites) const;

  /// Sites [first, first + count).
  static FragmentSpec contiguous(Index first, Index count);
};

/// Fragment + bath orbitals of a mean-field determinant.
struct EmbeddingBasis {
  /// Lattice x (n_F + n_bath); fragment unit vectors first, then bath.
  Matrix c;
  /// Eigenvalues of the occupied-space fragment overlap, descending.
  Vector delta;
  /// Per-spin density of the frozen core orbitals (lattice x lattice).
  Matrix core_density;
  /// Per-spin mean-field density projected onto the embedding orbitals.
  Matrix embedded_density;
  Index n_fragment = 0;
  Index n_bath = 0;
  /// Occupied orbitals with no fragment weight.
  Index n_core = 0;
  /// Occupied orbitals living entirely on the fragment.
  Index n_full = 0;

  Index orbital_count() const noexcept { return n_fragment + n_bath; }
  /// Electrons left to the embedded problem after freezing the core.
  Index electron_count() const noexcept { return 2 * (n_bath + n_full); }
};

inline constexpr double kCoreTolerance = 1e-8;
inline constexpr double kFullTolerance = 1e-8;

/// S(p,q) = sum over fragment sites of D(mu,p) D(mu,q), occupied p, q.
Matrix fragment_overlap(const meanfield::MeanFieldSolution& sol, const FragmentSpec& frag);

/// Occupied orbitals with delta < tol_core are frozen core; delta > 1 -
/// tol_full marks an orbital already inside the fragment, which needs no bath
/// partner. The others give one normalized bath orbital each, supported on
/// the environment only.
EmbeddingBasis build_basis(const meanfield::MeanFieldSolution& sol, const FragmentSpec& frag,
                           double tol_core = kCoreTolerance, double tol_full = kFullTolerance);

struct EmbeddedHamiltonian {
  /// Spatial integrals over the embedding orbitals; h1 = C^T h C + f_core.
  fermion::IntegralTensors integrals;
  /// C^T h C.
  Matrix h_bare;
  /// Mean-field interaction with the frozen core, embedding basis.
  Matrix f_core;
  /// Energy of the frozen core.
  double e_core = 0.0;
  /// Per-spin mean-field density, embedding basis.
  Matrix mf_density;
  Index n_electrons = 0;
  Index n_fragment = 0;

  Index orbital_count() const noexcept { return integrals.orbital_count(); }
};

/// Core Fock matrix of per-spin density `rho` on spatial integrals `v`:
/// F(i,k) = sum_jl 2 V(i,j,k,l) rho(j,l) - V(i,j,l,k) rho(j,l).
Matrix core_fock(const fermion::TwoBodyTensor& v, const Matrix& rho);

/// Projects the lattice Hamiltonian `ts` (spatial, without the embedding
/// potential) onto the embedding orbitals, with the full two-body transform.
EmbeddedHamiltonian build_embedded_hamiltonian(const fermion::IntegralTensors& ts, const EmbeddingBasis& basis);

}  // namespace dmetvqe::embedding
