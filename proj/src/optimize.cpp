#include "dmetvqe/optimize.hpp"

#include <algorithm>
#include <cmath>

namespace dmetvqe::optimize {

Vector central_difference_gradient(const Objective& f, const Vector& x, double step, int* evaluations) {
  Vector g(x.size());
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + step;
    const double up = f(probe);
    probe(i) = x(i) - step;
    const double down = f(probe);
    probe(i) = x(i);
    g(i) = (up - down) / (2.0 * step);
  }
  if (evaluations != nullptr) *evaluations += 2 * static_cast<int>(x.size());
  return g;
}

namespace {

struct Point {
  double alpha = 0.0;
  double value = 0.0;
  double slope = 0.0;  // directional derivative along the search direction
  Vector gradient;
};

class LineSearch {
 public:
  LineSearch(const Objective& f, const Vector& x, const Vector& dir, const BFGSOptions& opt, int& evals)
      : f_(f), x_(x), dir_(dir), opt_(opt), evals_(evals) {}

  Point evaluate(double alpha, bool with_gradient) {
    Point p;
    p.alpha = alpha;
    const Vector trial = x_ + alpha * dir_;
    p.value = f_(trial);
    ++evals_;
    if (with_gradient) {
      p.gradient = central_difference_gradient(f_, trial, opt_.fd_step, &evals_);
      p.slope = p.gradient.dot(dir_);
    }
    return p;
  }

  // Strong Wolfe search; falls back to the best sufficient-decrease point.
  Point run(const Point& start) {
    Point prev = start;
    double alpha = 1.0;
    for (int i = 0; i < 20; ++i) {
      Point cur = evaluate(alpha, false);
      if (!std::isfinite(cur.value) || cur.value > start.value + opt_.c1 * alpha * start.slope ||
          (i > 0 && cur.value >= prev.value)) {
        return zoom(start, prev, cur);
      }
      cur = with_gradient(cur);
      if (std::abs(cur.slope) <= -opt_.c2 * start.slope) return cur;
      if (cur.slope >= 0.0) return zoom(start, cur, prev);
      prev = cur;
      alpha *= 2.0;
    }
    return with_gradient(prev);
  }

 private:
  Point with_gradient(Point p) {
    if (p.gradient.size() == 0) {
      p.gradient = central_difference_gradient(f_, x_ + p.alpha * dir_, opt_.fd_step, &evals_);
      p.slope = p.gradient.dot(dir_);
    }
    return p;
  }

  Point zoom(const Point& start, Point lo, Point hi) {
    if (lo.alpha > 0.0) lo = with_gradient(lo);
    for (int i = 0; i < 30; ++i) {
      double alpha = 0.5 * (lo.alpha + hi.alpha);
      // Quadratic interpolation through lo (value, slope) and hi (value).
      if (lo.gradient.size() != 0 && std::isfinite(hi.value)) {
        const double d = hi.alpha - lo.alpha;
        const double denom = 2.0 * (hi.value - lo.value - lo.slope * d);
        if (denom > 0.0) {
          const double cand = lo.alpha - lo.slope * d * d / denom;
          const double a = std::min(lo.alpha, hi.alpha);
          const double b = std::max(lo.alpha, hi.alpha);
          if (cand > a + 0.1 * (b - a) && cand < b - 0.1 * (b - a)) alpha = cand;
        }
      }
      Point cur = evaluate(alpha, false);
      if (cur.value > start.value + opt_.c1 * alpha * start.slope || cur.value >= lo.value) {
        hi = cur;
      } else {
        cur = with_gradient(cur);
        if (std::abs(cur.slope) <= -opt_.c2 * start.slope) return cur;
        if (cur.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
        lo = cur;
      }
      if (std::abs(hi.alpha - lo.alpha) < 1e-14) break;
    }
    return lo.alpha > 0.0 ? with_gradient(lo) : lo;
  }

  const Objective& f_;
  const Vector& x_;
  const Vector& dir_;
  const BFGSOptions& opt_;
  int& evals_;
};

}  // namespace

OptimizationResult bfgs_minimize(const Objective& f, const Vector& x0, const BFGSOptions& opt) {
  OptimizationResult res;
  res.x = x0;
  const Eigen::Index n = x0.size();
  res.value = f(res.x);
  ++res.evaluations;
  if (n == 0) {
    res.converged = true;
    res.gradient = Vector();
    return res;
  }
  res.gradient = central_difference_gradient(f, res.x, opt.fd_step, &res.evaluations);
  Matrix hinv = Matrix::Identity(n, n);
  bool first_step = true;
  for (res.iterations = 0; res.iterations < opt.max_iterations; ++res.iterations) {
    if (res.gradient.cwiseAbs().maxCoeff() < opt.gradient_tolerance) {
      res.converged = true;
      break;
    }
    Vector dir = -hinv * res.gradient;
    if (dir.dot(res.gradient) >= 0.0) {
      hinv.setIdentity();
      dir = -res.gradient;
    }
    Point start;
    start.value = res.value;
    start.slope = res.gradient.dot(dir);
    start.gradient = res.gradient;
    LineSearch search(f, res.x, dir, opt, res.evaluations);
    const Point next = search.run(start);
    if (next.alpha == 0.0 || !(next.value <= res.value)) {
      // No progress along this direction; restart from steepest descent once.
      if (!hinv.isIdentity()) {
        hinv.setIdentity();
        continue;
      }
      break;
    }
    const Vector s = next.alpha * dir;
    const Vector y = next.gradient - res.gradient;
    const double change = res.value - next.value;
    res.x += s;
    res.value = next.value;
    res.gradient = next.gradient;
    const double sy = s.dot(y);
    if (sy > 1e-16) {
      if (first_step) {
        hinv *= sy / y.squaredNorm();
        first_step = false;
      }
      const double rho = 1.0 / sy;
      const Matrix ident = Matrix::Identity(n, n);
      hinv = (ident - rho * s * y.transpose()) * hinv * (ident - rho * y * s.transpose()) +
             rho * s * s.transpose();
    }
    if (change < opt.value_tolerance) {
      ++res.iterations;
      res.converged = true;
      break;
    }
  }
  if (!res.converged && res.gradient.cwiseAbs().maxCoeff() < opt.gradient_tolerance) res.converged = true;
  return res;
}

}  // namespace dmetvqe::optimize
