#include "dmetvqe/fermion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>

namespace dmetvqe::fermion {

double TwoBodyTensor::operator()(Index i, Index j, Index k, Index l) const {
  auto it = entries_.find(Key{i, j, k, l});
  return it == entries_.end() ? 0.0 : it->second;
}

void TwoBodyTensor::add(Index i, Index j, Index k, Index l, double value) {
  if (i >= dim_ || j >= dim_ || k >= dim_ || l >= dim_) {
    throw InvalidArgument("two-body index out of range");
  }
  if (value == 0.0) return;
  auto [it, inserted] = entries_.try_emplace(Key{i, j, k, l}, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0.0) entries_.erase(it);
  }
}

TwoBodyTensor TwoBodyTensor::transformed(const Matrix& c, double drop_tol) const {
  if (static_cast<Index>(c.rows()) != dim_) {
    throw InvalidArgument("basis transform row count does not match tensor dimension");
  }
  const auto m = static_cast<Index>(c.cols());
  std::vector<double> dense(m * m * m * m, 0.0);
  for (const auto& [key, v] : entries_) {
    const auto [i, j, k, l] = key;
    for (Index a = 0; a < m; ++a) {
      const double va = v * c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a));
      if (va == 0.0) continue;
      for (Index b = 0; b < m; ++b) {
        const double vb = va * c(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(b));
        if (vb == 0.0) continue;
        for (Index cc = 0; cc < m; ++cc) {
          const double vc = vb * c(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(cc));
          if (vc == 0.0) continue;
          double* row = &dense[((a * m + b) * m + cc) * m];
          for (Index d = 0; d < m; ++d) {
            row[d] += vc * c(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(d));
          }
        }
      }
    }
  }
  TwoBodyTensor out(m);
  for (Index idx = 0; idx < dense.size(); ++idx) {
    if (std::abs(dense[idx]) <= drop_tol) continue;
    const Index d = idx % m;
    const Index cc = (idx / m) % m;
    const Index b = (idx / (m * m)) % m;
    const Index a = idx / (m * m * m);
    out.entries_.emplace(Key{a, b, cc, d}, dense[idx]);
  }
  return out;
}

double TwoBodyTensor::hermiticity_residual() const {
  double worst = 0.0;
  for (const auto& [key, v] : entries_) {
    const auto [i, j, k, l] = key;
    worst = std::max(worst, std::abs(v - (*this)(k, l, i, j)));
  }
  return worst;
}

void IntegralTensors::validate(double tol) const {
  if (h1.rows() != h1.cols()) throw InvalidArgument("one-body matrix is not square");
  if (v2.dim() != 0 && v2.dim() != orbital_count()) {
    throw InvalidArgument("two-body dimension does not match one-body dimension");
  }
  if ((h1 - h1.transpose()).cwiseAbs().maxCoeff() > tol) {
    throw InvalidArgument("one-body matrix is not Hermitian");
  }
  if (v2.hermiticity_residual() > tol) {
    throw InvalidArgument("two-body tensor violates V(ij,kl) = V(kl,ij)");
  }
}

IntegralTensors hubbard_tensors(Index sites, double hopping, double interaction,
                                Boundary boundary) {
  if (sites < 2) throw InvalidArgument("Hubbard chain needs at least 2 sites");
  if (hopping < 0.0) throw InvalidArgument("hopping must be non-negative");
  const auto n = static_cast<Eigen::Index>(sites);
  IntegralTensors ts;
  ts.basis = BasisKind::SiteSpatial;
  ts.h1 = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    ts.h1(i, i + 1) -= hopping;
    ts.h1(i + 1, i) -= hopping;
  }
  if (boundary != Boundary::Open) {
    // Anti-periodic: the wrap-around bond carries the opposite sign.
    const double wrap = boundary == Boundary::Periodic ? -hopping : hopping;
    ts.h1(n - 1, 0) += wrap;
    ts.h1(0, n - 1) += wrap;
  }
  ts.v2 = TwoBodyTensor(sites);
  for (Index i = 0; i < sites; ++i) ts.v2.add(i, i, i, i, interaction);
  return ts;
}

IntegralTensors to_spin_orbital(const IntegralTensors& ts) {
  if (!ts.is_spatial()) return ts;
  const Index n = ts.orbital_count();
  IntegralTensors out;
  out.basis = BasisKind::SiteSpinOrbital;
  out.constant = ts.constant;
  out.h1 = Matrix::Zero(static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(2 * n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      for (Index s = 0; s < 2; ++s) {
        out.h1(static_cast<Eigen::Index>(spin_orbital(i, s)),
               static_cast<Eigen::Index>(spin_orbital(j, s))) =
            ts.h1(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
  }
  out.v2 = TwoBodyTensor(2 * n);
  for (const auto& [key, v] : ts.v2.entries()) {
    const auto [i, j, k, l] = key;
    for (Index s = 0; s < 2; ++s) {
      for (Index t = 0; t < 2; ++t) {
        out.v2.add(spin_orbital(i, s), spin_orbital(j, t), spin_orbital(k, s),
                   spin_orbital(l, t), v);
      }
    }
  }
  return out;
}

FermionSum tensors_to_fermion_sum(const IntegralTensors& ts) {
  const IntegralTensors so = to_spin_orbital(ts);
  FermionSum out;
  const auto n = so.h1.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double h = so.h1(i, j);
      if (h != 0.0) {
        out.add(h, {create(static_cast<Index>(i)), annihilate(static_cast<Index>(j))});
      }
    }
  }
  for (const auto& [key, v] : so.v2.entries()) {
    auto [i, j, k, l] = key;
    if (i == j || k == l) continue;  // Pauli exclusion
    // a†_j a†_i a_k a_l == a†_i a†_j a_l a_k: swap both pairs together.
    if (i > j) {
      std::swap(i, j);
      std::swap(k, l);
    }
    out.add(0.5 * v, {create(i), create(j), annihilate(l), annihilate(k)});
  }
  if (so.constant != 0.0) out.add(so.constant, {});
  return out.simplified();
}

IntegralTensors add_potential(const IntegralTensors& ts, const Matrix& u) {
  if (u.rows() != ts.h1.rows() || u.cols() != ts.h1.cols()) {
    throw InvalidArgument("potential dimension does not match one-body matrix");
  }
  IntegralTensors out = ts;
  out.h1 += u;
  return out;
}

namespace {

// Site-translation twist s such that T c_x = c_{x+1}, T c_{L-1} = s c_0
// leaves the integrals invariant.
std::optional<double> translation_twist(const IntegralTensors& ts, double tol) {
  const Index n = ts.orbital_count();
  for (double s : {1.0, -1.0}) {
    auto phase = [&](Index x) { return x + 1 == n ? s : 1.0; };
    bool ok = true;
    for (Index i = 0; i < n && ok; ++i) {
      for (Index j = 0; j < n && ok; ++j) {
        const double lhs = ts.h1(static_cast<Eigen::Index>((i + 1) % n),
                                 static_cast<Eigen::Index>((j + 1) % n));
        const double rhs =
            phase(i) * phase(j) * ts.h1(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        ok = std::abs(lhs - rhs) <= tol;
      }
    }
    for (const auto& [key, v] : ts.v2.entries()) {
      if (!ok) break;
      const auto [i, j, k, l] = key;
      const double shifted = ts.v2((i + 1) % n, (j + 1) % n, (k + 1) % n, (l + 1) % n);
      ok = std::abs(shifted - phase(i) * phase(j) * phase(k) * phase(l) * v) <= tol;
    }
    if (ok) return s;
  }
  return std::nullopt;
}

struct PlaneWaves {
  ComplexMatrix vectors;  // sites x momenta
  std::vector<double> momenta;
};

PlaneWaves plane_waves(const IntegralTensors& ts) {
  if (!ts.is_spatial() || ts.basis != BasisKind::SiteSpatial) {
    throw InvalidArgument("momentum transform needs site-basis spatial integrals");
  }
  const Index n = ts.orbital_count();
  const auto twist = translation_twist(ts, 1e-12);
  if (!twist) throw InvalidArgument("integrals are not translation invariant");
  const double offset = *twist > 0 ? 0.0 : std::numbers::pi / static_cast<double>(n);
  std::vector<double> ks(n);
  for (Index m = 0; m < n; ++m) {
    double k = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n) + offset;
    if (k > std::numbers::pi + 1e-12) k -= 2.0 * std::numbers::pi;
    ks[m] = k;
  }
  const auto nn = static_cast<Eigen::Index>(n);
  ComplexMatrix p(nn, nn);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index x = 0; x < nn; ++x) {
    for (Eigen::Index m = 0; m < nn; ++m) {
      p(x, m) = std::polar(norm, ks[static_cast<Index>(m)] * static_cast<double>(x));
    }
  }
  const ComplexMatrix hk = p.adjoint() * ts.h1.cast<Complex>() * p;
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    const double ea = hk(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)).real();
    const double eb = hk(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)).real();
    if (std::abs(ea - eb) > 1e-10) return ea < eb;
    return ks[a] < ks[b];
  });
  PlaneWaves out;
  out.vectors.resize(nn, nn);
  for (Index m = 0; m < n; ++m) {
    out.vectors.col(static_cast<Eigen::Index>(m)) = p.col(static_cast<Eigen::Index>(order[m]));
    out.momenta.push_back(ks[order[m]]);
  }
  return out;
}

}  // namespace

std::vector<double> lattice_momenta(const IntegralTensors& ts) { return plane_waves(ts).momenta; }

IntegralTensors momentum_transform(const IntegralTensors& ts) {
  const PlaneWaves pw = plane_waves(ts);
  const ComplexMatrix& p = pw.vectors;
  const ComplexMatrix hk = p.adjoint() * ts.h1.cast<Complex>() * p;
  constexpr double kImagTol = 1e-10;
  if (hk.imag().cwiseAbs().maxCoeff() > kImagTol) {
    throw InvalidArgument("momentum-basis one-body integrals are not real");
  }
  IntegralTensors out;
  out.basis = BasisKind::Momentum;
  out.constant = ts.constant;
  out.h1 = hk.real();
  const Index n = ts.orbital_count();
  out.v2 = TwoBodyTensor(n);
  // W(a,b,c,d) = sum V(i,j,k,l) conj(P_ia) conj(P_jb) P_kc P_ld.
  std::vector<Complex> dense(n * n * n * n, Complex{});
  for (const auto& [key, v] : ts.v2.entries()) {
    const auto [i, j, k, l] = key;
    for (Index a = 0; a < n; ++a) {
      for (Index b = 0; b < n; ++b) {
        const Complex ab = v * std::conj(p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a))) *
                           std::conj(p(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(b)));
        for (Index c = 0; c < n; ++c) {
          const Complex abc = ab * p(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c));
          for (Index d = 0; d < n; ++d) {
            dense[((a * n + b) * n + c) * n + d] +=
                abc * p(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(d));
          }
        }
      }
    }
  }
  for (Index idx = 0; idx < dense.size(); ++idx) {
    if (std::abs(dense[idx].imag()) > kImagTol) {
      throw InvalidArgument("momentum-basis two-body integrals are not real");
    }
    const double v = dense[idx].real();
    if (std::abs(v) <= 1e-12) continue;
    out.v2.add(idx / (n * n * n), (idx / (n * n)) % n, (idx / n) % n, idx % n, v);
  }
  return out;
}

}  // namespace dmetvqe::fermion
