#include "dmetvqe/rdm.hpp"

#include <algorithm>
#include <cmath>

namespace dmetvqe::rdm {

Matrix contract_one_rdm(const DenseTensor4& two_rdm, double n_electrons) {
  if (n_electrons < 2.0) throw InvalidArgument("2-RDM contraction needs at least two particles");
  const Index n = two_rdm.dim();
  const auto nn = static_cast<Eigen::Index>(n);
  Matrix d1 = Matrix::Zero(nn, nn);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      double s = 0.0;
      for (Index a = 0; a < n; ++a) s += two_rdm(i, a, j, a);
      d1(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s / (n_electrons - 1.0);
    }
  }
  return d1;
}

double antisymmetry_residual(const DenseTensor4& two_rdm) {
  const Index n = two_rdm.dim();
  double worst = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l) {
          const double v = two_rdm(i, j, k, l);
          worst = std::max({worst, std::abs(v + two_rdm(j, i, k, l)), std::abs(v + two_rdm(i, j, l, k))});
        }
  return worst;
}

Matrix spatial_one_rdm(const Matrix& d) {
  const Eigen::Index n = d.rows() / 2;
  Matrix out(n, n);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q) out(p, q) = d(2 * p, 2 * q) + d(2 * p + 1, 2 * q + 1);
  return out;
}

double energy(const fermion::IntegralTensors& ts, const RDMPair& rdms) {
  const fermion::IntegralTensors so = fermion::to_spin_orbital(ts);
  if (so.h1.rows() != rdms.one_rdm.rows()) throw InvalidArgument("RDM dimension mismatch");
  double e = so.constant + (so.h1.array() * rdms.one_rdm.array()).sum();
  for (const auto& [key, v] : so.v2.entries()) {
    const auto [i, j, k, l] = key;
    e += 0.5 * v * rdms.two_rdm(i, j, k, l);
  }
  return e;
}

double symmetrize(RDMPair& rdms) {
  double worst = (rdms.one_rdm - rdms.one_rdm.transpose()).cwiseAbs().maxCoeff();
  rdms.one_rdm = 0.5 * (rdms.one_rdm + rdms.one_rdm.transpose()).eval();
  DenseTensor4& d = rdms.two_rdm;
  const Index n = d.dim();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l) {
          // Orbit under i<->j, k<->l antisymmetry and (ij)<->(kl) transposition.
          const double vals[8] = {d(i, j, k, l),  -d(j, i, k, l), -d(i, j, l, k), d(j, i, l, k),
                                  d(k, l, i, j),  -d(l, k, i, j), -d(k, l, j, i), d(l, k, j, i)};
          double mean = 0.0;
          for (double v : vals) mean += v;
          mean /= 8.0;
          for (double v : vals) worst = std::max(worst, std::abs(v - mean));
        }
  DenseTensor4 out(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l) {
          out(i, j, k, l) = (d(i, j, k, l) - d(j, i, k, l) - d(i, j, l, k) + d(j, i, l, k) +
                             d(k, l, i, j) - d(l, k, i, j) - d(k, l, j, i) + d(l, k, j, i)) /
                            8.0;
        }
  d = std::move(out);
  return worst;
}

}  // namespace dmetvqe::rdm
