#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wardrop {

using Vec = std::vector<double>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense row-major matrix. Everything in this library is desk-scale, so there
// is no sparsity and no blocking anywhere.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const double& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Vec row(std::size_t i) const {
    return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  Vec col(std::size_t j) const {
    Vec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  Vec data_;
};

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec matvec(const Mat& m, const Vec& x) {
  Vec y(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

// m^T x
inline Vec tmatvec(const Mat& m, const Vec& x) {
  Vec y(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) y[j] += m(i, j) * x[i];
  return y;
}

inline double inf_norm(const Vec& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::fabs(x));
  return s;
}

inline double max_abs(const Mat& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s = std::max(s, std::fabs(m(i, j)));
  return s;
}

// Solves a x = b by Gaussian elimination with partial pivoting.
// Returns nullopt when the matrix is numerically singular.
inline std::optional<Vec> lu_solve(Mat a, Vec b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw Error("lu_solve: shape mismatch");
  double scale = max_abs(a);
  if (scale == 0.0) scale = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(a(i, k)) > std::fabs(a(piv, k))) piv = i;
    if (std::fabs(a(piv, k)) <= 1e-13 * scale) return std::nullopt;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  Vec x(n, 0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
    x[ii] = s / a(ii, ii);
  }
  return x;
}

// Least squares via Householder QR with column pivoting. Returns a basic
// solution: zeros on columns outside the detected rank. Rank-deficient and
// non-square systems are fine, which is what the KKT polish needs.
inline Vec lstsq(const Mat& a, const Vec& b, double rank_tol = 1e-12) {
  const std::size_t m = a.rows(), n = a.cols();
  if (b.size() != m) throw Error("lstsq: shape mismatch");
  Mat r = a;
  Vec qtb = b;
  std::vector<std::size_t> perm(n);
  for (std::size_t j = 0; j < n; ++j) perm[j] = j;

  const std::size_t kmax = std::min(m, n);
  std::size_t rank = 0;
  double scale0 = 0.0;
  Vec v(m);
  for (std::size_t k = 0; k < kmax; ++k) {
    // column pivot: largest remaining norm, recomputed exactly
    std::size_t jbest = k;
    double best = -1.0;
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += r(i, j) * r(i, j);
      if (s > best) {
        best = s;
        jbest = j;
      }
    }
    double cnorm = std::sqrt(std::max(best, 0.0));
    if (k == 0) scale0 = cnorm;
    if (cnorm <= rank_tol * std::max(scale0, 1e-300)) break;
    if (jbest != k) {
      for (std::size_t i = 0; i < m; ++i) std::swap(r(i, k), r(i, jbest));
      std::swap(perm[k], perm[jbest]);
    }
    double alpha = r(k, k) >= 0.0 ? -cnorm : cnorm;
    double v0 = r(k, k) - alpha;
    double vnorm2 = v0 * v0;
    v[0] = v0;
    for (std::size_t i = k + 1; i < m; ++i) {
      v[i - k] = r(i, k);
      vnorm2 += r(i, k) * r(i, k);
    }
    if (vnorm2 > 0.0) {
      double beta = 2.0 / vnorm2;
      for (std::size_t j = k; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = k; i < m; ++i) s += v[i - k] * r(i, j);
        s *= beta;
        for (std::size_t i = k; i < m; ++i) r(i, j) -= s * v[i - k];
      }
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += v[i - k] * qtb[i];
      s *= beta;
      for (std::size_t i = k; i < m; ++i) qtb[i] -= s * v[i - k];
    }
    r(k, k) = alpha;
    ++rank;
  }

  Vec y(rank, 0.0);
  for (std::size_t ii = rank; ii-- > 0;) {
    double s = qtb[ii];
    for (std::size_t j = ii + 1; j < rank; ++j) s -= r(ii, j) * y[j];
    y[ii] = s / r(ii, ii);
  }
  Vec x(n, 0.0);
  for (std::size_t i = 0; i < rank; ++i) x[perm[i]] = y[i];
  return x;
}

// Indices of a maximal set of numerically independent rows of h, found by
// modified Gram-Schmidt. Used to strip redundant balance rows before KKT
// solves.
inline std::vector<std::size_t> independent_rows(const Mat& h, double tol = 1e-10) {
  std::vector<std::size_t> keep;
  if (h.empty()) return keep;
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    Vec r = h.row(i);
    double norm0 = std::sqrt(dot(r, r));
    if (norm0 <= tol) continue;
    for (const Vec& q : basis) {
      double c = dot(r, q);
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= c * q[j];
    }
    double norm1 = std::sqrt(dot(r, r));
    if (norm1 > tol * std::max(1.0, norm0)) {
      for (double& x : r) x /= norm1;
      basis.push_back(r);
      keep.push_back(i);
    }
  }
  return keep;
}

// min ||x||_2 over the polytope {e x = f, x >= 0}, starting from a feasible
// point. Lawson-Hanson style active set; finite termination on these sizes.
inline Vec min_norm_on_face(const Mat& e, const Vec& f, Vec x, double tol = 1e-10) {
  const std::size_t n = x.size();
  if (e.cols() != n || e.rows() != f.size()) throw Error("min_norm_on_face: shape mismatch");
  std::vector<bool> free(n);
  for (std::size_t j = 0; j < n; ++j) free[j] = x[j] > tol;

  auto gram_solve = [&](Vec& z, Vec& nu) {
    // minimal-norm solution of e_F z_F = f via z = e^T (e e^T)^+ f
    const std::size_t mrows = e.rows();
    Mat g(mrows, mrows, 0.0);
    for (std::size_t i = 0; i < mrows; ++i)
      for (std::size_t k2 = 0; k2 < mrows; ++k2) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
          if (free[j]) s += e(i, j) * e(k2, j);
        g(i, k2) = s;
      }
    nu = lstsq(g, f);
    z.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
      if (free[j]) {
        double s = 0.0;
        for (std::size_t i = 0; i < mrows; ++i) s += e(i, j) * nu[i];
        z[j] = s;
      }
  };

  Vec z, nu;
  for (std::size_t iter = 0; iter < 10 * n + 20; ++iter) {
    gram_solve(z, nu);
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (free[j]) worst = std::min(worst, z[j]);
    if (worst >= -tol) {
      for (std::size_t j = 0; j < n; ++j) x[j] = free[j] ? std::max(z[j], 0.0) : 0.0;
      // release test for bound components: need e_j . nu <= 0
      std::size_t jrel = n;
      double most = tol;
      for (std::size_t j = 0; j < n; ++j)
        if (!free[j]) {
          double s = 0.0;
          for (std::size_t i = 0; i < e.rows(); ++i) s += e(i, j) * nu[i];
          if (s > most) {
            most = s;
            jrel = j;
          }
        }
      if (jrel == n) return x;
      free[jrel] = true;
      continue;
    }
    // step toward z until the first free coordinate hits zero
    double alpha = 1.0;
    for (std::size_t j = 0; j < n; ++j)
      if (free[j] && z[j] < 0.0 && x[j] - z[j] > 0.0)
        alpha = std::min(alpha, x[j] / (x[j] - z[j]));
    for (std::size_t j = 0; j < n; ++j)
      if (free[j]) {
        x[j] += alpha * (z[j] - x[j]);
        if (x[j] <= tol) {
          x[j] = 0.0;
          free[j] = false;
        }
      }
  }
  return x;  // iteration cap; x is still feasible
}

}  // namespace wardrop
