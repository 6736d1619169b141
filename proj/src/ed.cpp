#include "dmetvqe/ed.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

namespace dmetvqe::ed {

namespace {

std::uint64_t spin_bits(std::uint64_t det, Index n_spatial, Index spin) {
  std::uint64_t out = 0;
  for (Index p = 0; p < n_spatial; ++p) {
    if ((det >> (2 * p + spin)) & 1U) out |= std::uint64_t{1} << p;
  }
  return out;
}

std::vector<std::uint64_t> combinations(Index n, Index k) {
  std::vector<std::uint64_t> out;
  if (k > n) return out;
  if (k == 0) return {0};
  std::uint64_t v = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (v < limit) {
    out.push_back(v);
    // Gosper's hack: next integer with the same popcount.
    const std::uint64_t c = v & (~v + 1);
    const std::uint64_t r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }
  return out;
}

}  // namespace

int apply_ladder(std::uint64_t& det, Index mode, bool creation) {
  const std::uint64_t bit = std::uint64_t{1} << mode;
  const bool occupied = (det & bit) != 0;
  if (occupied == creation) return 0;
  const int sign = (std::popcount(det & (bit - 1)) & 1) ? -1 : 1;
  det ^= bit;
  return sign;
}

Sector::Sector(Index n_spatial, Index n_alpha, Index n_beta)
    : n_spatial_(n_spatial), n_alpha_(n_alpha), n_beta_(n_beta) {
  if (2 * n_spatial > kMaxSpinOrbitals) throw InvalidArgument("too many spin-orbitals for exact diagonalization");
  if (n_alpha > n_spatial || n_beta > n_spatial) throw InvalidArgument("empty sector");
  binom_.assign(n_spatial + 1, std::vector<std::size_t>(n_spatial + 2, 0));
  for (Index n = 0; n <= n_spatial; ++n) {
    binom_[n][0] = 1;
    for (Index k = 1; k <= n; ++k) binom_[n][k] = binom_[n - 1][k - 1] + (k <= n - 1 ? binom_[n - 1][k] : 0);
  }
  const auto alphas = combinations(n_spatial, n_alpha);
  const auto betas = combinations(n_spatial, n_beta);
  beta_dim_ = betas.size();
  dets_.reserve(alphas.size() * betas.size());
  for (std::uint64_t a : alphas) {
    for (std::uint64_t b : betas) {
      std::uint64_t det = 0;
      for (Index p = 0; p < n_spatial; ++p) {
        if ((a >> p) & 1U) det |= std::uint64_t{1} << (2 * p);
        if ((b >> p) & 1U) det |= std::uint64_t{1} << (2 * p + 1);
      }
      dets_.push_back(det);
    }
  }
}

std::size_t Sector::index_of(std::uint64_t det) const {
  const std::uint64_t a = spin_bits(det, n_spatial_, 0);
  const std::uint64_t b = spin_bits(det, n_spatial_, 1);
  if (std::popcount(a) != static_cast<int>(n_alpha_) || std::popcount(b) != static_cast<int>(n_beta_)) return npos;
  // Colex rank, matching the Gosper enumeration order.
  auto rank = [&](std::uint64_t bits) {
    std::size_t r = 0;
    Index k = 0;
    for (Index p = 0; p < n_spatial_; ++p) {
      if ((bits >> p) & 1U) {
        ++k;
        r += binom_[p][k];
      }
    }
    return r;
  };
  return rank(a) * beta_dim_ + rank(b);
}

ExactSolver::ExactSolver(const fermion::IntegralTensors& ts, Index n_electrons, int twice_sz)
    : sector_([&] {
        const Index n_spatial = ts.is_spatial() ? ts.orbital_count() : ts.orbital_count() / 2;
        const long long na2 = static_cast<long long>(n_electrons) + twice_sz;
        if (na2 < 0 || na2 % 2 != 0 || na2 / 2 > static_cast<long long>(n_electrons)) {
          throw InvalidArgument("electron count and Sz are inconsistent");
        }
        const auto na = static_cast<Index>(na2 / 2);
        return Sector(n_spatial, na, n_electrons - na);
      }()),
      n_electrons_(n_electrons),
      constant_(ts.constant) {
  const fermion::IntegralTensors so = fermion::to_spin_orbital(ts);
  const Index n = static_cast<Index>(so.h1.rows());
  // Antisymmetrized W(i,j,k,l) = V(i,j,k,l) - V(i,j,l,k); H_2 = sum_{i<j,k<l} W a†_i a†_j a_l a_k.
  std::vector<double> w(n * n * n * n, 0.0);
  auto widx = [n](Index i, Index j, Index k, Index l) { return ((i * n + j) * n + k) * n + l; };
  for (const auto& [key, v] : so.v2.entries()) {
    const auto [i, j, k, l] = key;
    w[widx(i, j, k, l)] += v;
    w[widx(i, j, l, k)] -= v;
  }
  // The two orderings of (i, j) both appear in the sum over V; fold them.
  const double half = 0.5;
  const std::size_t dim = sector_.dimension();
  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<double> column(dim, 0.0);
  std::vector<char> seen(dim, 0);
  std::vector<std::size_t> touched;
  auto add = [&](std::size_t row, double v) {
    if (!seen[row]) {
      seen[row] = 1;
      touched.push_back(row);
    }
    column[row] += v;
  };
  const auto& dets = sector_.determinants();
  for (std::size_t col = 0; col < dim; ++col) {
    const std::uint64_t det = dets[col];
    for (Index j = 0; j < n; ++j) {
      if (!((det >> j) & 1U)) continue;
      for (Index i = 0; i < n; ++i) {
        const double h = so.h1(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (h == 0.0) continue;
        std::uint64_t d = det;
        int s = apply_ladder(d, j, false);
        if (s == 0) continue;
        const int s2 = apply_ladder(d, i, true);
        if (s2 == 0) continue;
        const std::size_t row = sector_.index_of(d);
        if (row != Sector::npos) add(row, h * s * s2);
      }
    }
    for (Index k = 0; k < n; ++k) {
      if (!((det >> k) & 1U)) continue;
      for (Index l = k + 1; l < n; ++l) {
        if (!((det >> l) & 1U)) continue;
        std::uint64_t d0 = det;
        const int sk = apply_ladder(d0, k, false);
        const int sl = apply_ladder(d0, l, false);
        for (Index i = 0; i < n; ++i) {
          if ((d0 >> i) & 1U) continue;
          for (Index j = i + 1; j < n; ++j) {
            if ((d0 >> j) & 1U) continue;
            const double v = half * (w[widx(i, j, k, l)] + w[widx(j, i, l, k)]);
            if (v == 0.0) continue;
            std::uint64_t d = d0;
            const int sj = apply_ladder(d, j, true);
            const int si = apply_ladder(d, i, true);
            const std::size_t row = sector_.index_of(d);
            if (row != Sector::npos) add(row, v * sk * sl * sj * si);
          }
        }
      }
    }
    for (std::size_t row : touched) {
      if (column[row] != 0.0) triplets.emplace_back(static_cast<int>(row), static_cast<int>(col), column[row]);
      column[row] = 0.0;
      seen[row] = 0;
    }
    touched.clear();
  }
  h_.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  h_.setFromTriplets(triplets.begin(), triplets.end());
}

namespace {

// Restarted Lanczos with full reorthogonalization for the lowest eigenpair.
std::pair<double, Vector> lanczos_ground(const Eigen::SparseMatrix<double>& h, const Vector& diag_shift) {
  const Eigen::Index dim = h.rows();
  auto apply = [&](const Vector& x) -> Vector {
    Vector y = h * x;
    if (diag_shift.size() != 0) y += diag_shift.cwiseProduct(x);
    return y;
  };
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Vector start(dim);
  for (Eigen::Index i = 0; i < dim; ++i) start(i) = uni(rng);
  start.normalize();
  const Eigen::Index krylov = std::min<Eigen::Index>(dim, 160);
  double energy = 0.0;
  Vector ground = start;
  for (int restart = 0; restart < 50; ++restart) {
    Matrix q(dim, krylov);
    Vector alpha = Vector::Zero(krylov);
    Vector beta = Vector::Zero(krylov);
    q.col(0) = start;
    Eigen::Index m = 0;
    for (; m < krylov; ++m) {
      Vector w = apply(q.col(m));
      alpha(m) = q.col(m).dot(w);
      // Full reorthogonalization, twice for stability.
      for (int pass = 0; pass < 2; ++pass) w -= q.leftCols(m + 1) * (q.leftCols(m + 1).transpose() * w);
      if (m + 1 == krylov) {
        ++m;
        break;
      }
      beta(m) = w.norm();
      if (beta(m) < 1e-12) {
        ++m;
        break;
      }
      q.col(m + 1) = w / beta(m);
    }
    Matrix t = Matrix::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      t(i, i) = alpha(i);
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta(i);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(t);
    energy = eig.eigenvalues()(0);
    ground = q.leftCols(m) * eig.eigenvectors().col(0);
    ground.normalize();
    const double residual = (apply(ground) - energy * ground).norm();
    if (residual < 1e-10) break;
    start = ground;
  }
  return {energy, ground};
}

}  // namespace

GroundState ExactSolver::solve(const Vector& shift) const {
  const std::size_t dim = sector_.dimension();
  if (dim == 0) throw InvalidArgument("empty sector");
  Vector diag;
  if (shift.size() != 0) {
    if (static_cast<Index>(shift.size()) != sector_.spatial_count()) {
      throw InvalidArgument("shift length must equal the spatial orbital count");
    }
    diag.resize(static_cast<Eigen::Index>(dim));
    const auto& dets = sector_.determinants();
    for (std::size_t x = 0; x < dim; ++x) {
      double s = 0.0;
      for (Index p = 0; p < sector_.spatial_count(); ++p) {
        const int occ = static_cast<int>((dets[x] >> (2 * p)) & 1U) + static_cast<int>((dets[x] >> (2 * p + 1)) & 1U);
        s += occ * shift(static_cast<Eigen::Index>(p));
      }
      diag(static_cast<Eigen::Index>(x)) = s;
    }
  }
  GroundState gs;
  if (dim <= kDenseLimit) {
    Matrix dense(h_);
    if (diag.size() != 0) dense.diagonal() += diag;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(dense);
    if (eig.info() != Eigen::Success) throw NumericalError("sector diagonalization failed");
    gs.energy = eig.eigenvalues()(0);
    gs.coefficients = eig.eigenvectors().col(0);
  } else {
    auto [e, v] = lanczos_ground(h_, diag);
    gs.energy = e;
    gs.coefficients = std::move(v);
  }
  Eigen::Index arg = 0;
  gs.coefficients.cwiseAbs().maxCoeff(&arg);
  if (gs.coefficients(arg) < 0.0) gs.coefficients *= -1.0;
  gs.energy += constant_;
  gs.determinants = sector_.determinants();
  gs.rdms = compute_rdms(sector_, gs.coefficients);
  return gs;
}

GroundState ground_state(const fermion::IntegralTensors& ts, Index n_electrons, int twice_sz) {
  return ExactSolver(ts, n_electrons, twice_sz).solve();
}

RDMPair compute_rdms(const Sector& sector, const Vector& c) {
  const Index n = 2 * sector.spatial_count();
  const auto nn = static_cast<Eigen::Index>(n);
  RDMPair out;
  out.one_rdm = Matrix::Zero(nn, nn);
  out.two_rdm = DenseTensor4(n);
  const auto& dets = sector.determinants();
  for (std::size_t col = 0; col < dets.size(); ++col) {
    const double cc = c(static_cast<Eigen::Index>(col));
    if (cc == 0.0) continue;
    const std::uint64_t det = dets[col];
    for (Index j = 0; j < n; ++j) {
      if (!((det >> j) & 1U)) continue;
      for (Index i = 0; i < n; ++i) {
        std::uint64_t d = det;
        const int s1 = apply_ladder(d, j, false);
        const int s2 = apply_ladder(d, i, true);
        if (s2 == 0) continue;
        const std::size_t row = sector.index_of(d);
        if (row == Sector::npos) continue;
        out.one_rdm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
            c(static_cast<Eigen::Index>(row)) * cc * s1 * s2;
      }
    }
    for (Index k = 0; k < n; ++k) {
      if (!((det >> k) & 1U)) continue;
      for (Index l = k + 1; l < n; ++l) {
        if (!((det >> l) & 1U)) continue;
        std::uint64_t d0 = det;
        const int sk = apply_ladder(d0, k, false);
        const int sl = apply_ladder(d0, l, false);
        for (Index i = 0; i < n; ++i) {
          if ((d0 >> i) & 1U) continue;
          for (Index j = i + 1; j < n; ++j) {
            if ((d0 >> j) & 1U) continue;
            std::uint64_t d = d0;
            const int sj = apply_ladder(d, j, true);
            const int si = apply_ladder(d, i, true);
            const std::size_t row = sector.index_of(d);
            if (row == Sector::npos) continue;
            out.two_rdm(i, j, k, l) += c(static_cast<Eigen::Index>(row)) * cc * sk * sl * sj * si;
          }
        }
      }
    }
  }
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        for (Index l = k + 1; l < n; ++l) {
          const double v = out.two_rdm(i, j, k, l);
          out.two_rdm(j, i, k, l) = -v;
          out.two_rdm(i, j, l, k) = -v;
          out.two_rdm(j, i, l, k) = v;
        }
  return out;
}

}  // namespace dmetvqe::ed
