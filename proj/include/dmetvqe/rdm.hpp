#pragma once

#include <vector>

#include "dmetvqe/fermion.hpp"
#include "dmetvqe/types.hpp"

namespace dmetvqe {

/// Dense rank-4 array with row-major (i, j, k, l) layout.
class DenseTensor4 {
 public:
  DenseTensor4() = default;
  explicit DenseTensor4(Index n) : n_(n), data_(n * n * n * n, 0.0) {}

  Index dim() const noexcept { return n_; }
  double& operator()(Index i, Index j, Index k, Index l) { return data_[((i * n_ + j) * n_ + k) * n_ + l]; }
  double operator()(Index i, Index j, Index k, Index l) const {
    return data_[((i * n_ + j) * n_ + k) * n_ + l];
  }
  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

 private:
  Index n_ = 0;
  std::vector<double> data_;
};

/// Spin-orbital reduced density matrices.
///   one_rdm(i, j)       = <a†_i a_j>
///   two_rdm(i, j, k, l) = <a†_i a†_j a_l a_k>
struct RDMPair {
  Matrix one_rdm;
  DenseTensor4 two_rdm;

  Index mode_count() const noexcept { return static_cast<Index>(one_rdm.rows()); }
};

namespace rdm {

/// 1-RDM from the 2-RDM: D1(i,j) = 1/(N-1) sum_a D2(i,a,j,a), N the particle
/// number. Needs N >= 2.
Matrix contract_one_rdm(const DenseTensor4& two_rdm, double n_electrons);

/// max |D2(ij,kl) + D2(ji,kl)| and |D2(ij,kl) + D2(ij,lk)|.
double antisymmetry_residual(const DenseTensor4& two_rdm);

/// Spin-summed spatial 1-RDM from the interleaved spin-orbital one.
Matrix spatial_one_rdm(const Matrix& spin_orbital_rdm);

/// E = sum h D1 + 1/2 sum V D2 + constant, with `ts` expanded to
/// spin-orbitals when spatial.
double energy(const fermion::IntegralTensors& ts, const RDMPair& rdms);

/// Enforces D1 = D1^T and the 2-RDM (anti)symmetries by averaging. Returns
/// the largest asymmetry removed.
double symmetrize(RDMPair& rdms);

}  // namespace rdm
}  // namespace dmetvqe
