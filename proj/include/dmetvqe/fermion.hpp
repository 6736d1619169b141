#pragma once

#include <array>
#include <map>
#include <vector>

#include "dmetvqe/fermion_operator.hpp"
#include "dmetvqe/types.hpp"

namespace dmetvqe::fermion {

enum class Boundary { Periodic, AntiPeriodic, Open };
enum class BasisKind { SiteSpatial, SiteSpinOrbital, Momentum, Embedded };

/// Spin-orbital index of spatial orbital `p` with spin 0 (alpha) or 1 (beta).
/// Spins are interleaved: 0a, 0b, 1a, 1b, ...
constexpr Index spin_orbital(Index p, Index spin) { return 2 * p + spin; }

/// Sparse rank-4 tensor V(i,j,k,l), the coefficient of a†_i a†_j a_l a_k in
/// (1/2) sum V(i,j,k,l) a†_i a†_j a_l a_k.
class TwoBodyTensor {
 public:
  using Key = std::array<Index, 4>;

  TwoBodyTensor() = default;
  explicit TwoBodyTensor(Index dim) : dim_(dim) {}

  Index dim() const noexcept { return dim_; }
  std::size_t nonzeros() const noexcept { return entries_.size(); }
  const std::map<Key, double>& entries() const noexcept { return entries_; }

  double operator()(Index i, Index j, Index k, Index l) const;
  void add(Index i, Index j, Index k, Index l, double value);

  /// Basis change: W(a,b,c,d) = sum V(i,j,k,l) C(i,a) C(j,b) C(k,c) C(l,d).
  TwoBodyTensor transformed(const Matrix& c, double drop_tol = 1e-14) const;

  /// max |V(i,j,k,l) - V(k,l,i,j)|.
  double hermiticity_residual() const;

  bool is_zero() const noexcept { return entries_.empty(); }

 private:
  Index dim_ = 0;
  std::map<Key, double> entries_;
};

/// One- and two-body integrals of H = sum h(i,j) a†_i a_j
///                                 + 1/2 sum V(i,j,k,l) a†_i a†_j a_l a_k.
/// In a spatial basis the spin sum is implicit: V(i,j,k,l) couples
/// (i s, j t; k s, l t) for every spin pair (s, t).
struct IntegralTensors {
  Matrix h1;
  TwoBodyTensor v2;
  BasisKind basis = BasisKind::SiteSpatial;
  double constant = 0.0;

  Index orbital_count() const noexcept { return static_cast<Index>(h1.rows()); }
  bool is_spatial() const noexcept { return basis != BasisKind::SiteSpinOrbital; }

  /// Throws InvalidArgument on a Hermiticity violation beyond `tol`.
  void validate(double tol = 1e-10) const;
};

IntegralTensors hubbard_tensors(Index sites, double hopping, double interaction,
                                Boundary boundary);

/// Expands spatial integrals onto interleaved spin-orbitals. Spin-orbital
/// input is returned unchanged.
IntegralTensors to_spin_orbital(const IntegralTensors& ts);

/// Second-quantized operator for `ts`, including the 1/2 on two-body terms.
/// Each two-body product is brought to a canonical orientation (first
/// creation index below the second) and equal products merged, so the
/// Hubbard on-site term appears once with coefficient U.
FermionSum tensors_to_fermion_sum(const IntegralTensors& ts);

/// h1 <- h1 + u.
IntegralTensors add_potential(const IntegralTensors& ts, const Matrix& u);

/// Plane-wave momenta (radians, in (-pi, pi]) of an L-site ring, in the
/// orbital order used by momentum_transform.
std::vector<double> lattice_momenta(const IntegralTensors& ts);

/// Fourier transform of a translation-invariant ring Hamiltonian (periodic or
/// anti-periodic twist, detected from the integrals). Momentum orbitals are
/// ordered by one-body energy, then by momentum. Throws InvalidArgument for
/// non-invariant input or non-real transformed integrals.
IntegralTensors momentum_transform(const IntegralTensors& ts);

}  // namespace dmetvqe::fermion
