#include "fluxmodes/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fluxmodes {

namespace {

double hypot2(double a, double b) { return std::hypot(a, b); }

// Implicit-shift QL sweeps on a symmetric tridiagonal matrix. `first_row`,
// when non-null, is updated as the first row of the accumulated rotation
// product (enough to recover Gauss weights without the full eigenbasis).
void ql_implicit(std::vector<double>& d, std::vector<double>& e,
                 std::vector<double>* first_row) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return;
  e.push_back(0.0);  // e[n-1] sentinel
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    for (;;) {
      int m = l;
      for (; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-300 || std::abs(e[m]) <= 1e-15 * dd) break;
      }
      if (m == l) break;
      if (++iter > 60) throw std::runtime_error("tridiagonal QL failed to converge");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = hypot2(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = hypot2(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        if (first_row) {
          const double fi = (*first_row)[i];
          const double fi1 = (*first_row)[i + 1];
          (*first_row)[i + 1] = s * fi + c * fi1;
          (*first_row)[i] = c * fi - s * fi1;
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  e.pop_back();
}

}  // namespace

std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag,
                                            std::vector<double> off) {
  ql_implicit(diag, off, nullptr);
  std::sort(diag.begin(), diag.end());
  return diag;
}

TridiagonalEigen tridiagonal_eigen_first_row(std::vector<double> diag,
                                             std::vector<double> off) {
  std::vector<double> first(diag.size(), 0.0);
  if (!first.empty()) first[0] = 1.0;
  ql_implicit(diag, off, &first);
  std::vector<int> order(diag.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return diag[i] < diag[j]; });
  TridiagonalEigen out;
  out.values.reserve(diag.size());
  out.first_components.reserve(diag.size());
  for (int i : order) {
    out.values.push_back(diag[i]);
    out.first_components.push_back(first[i]);
  }
  return out;
}

SymmetricEigen jacobi_symmetric_eigen(const Matrix& a, bool want_vectors) {
  const int n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("jacobi_symmetric_eigen: not square");
  Matrix m = a;
  Matrix v(n, n);
  for (int i = 0; i < n; ++i) v(i, i) = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double offnorm = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) offnorm += m(i, j) * m(i, j);
    if (offnorm < 1e-300) break;
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(m(i, i)));
    if (std::sqrt(offnorm) <= 1e-15 * std::max(scale, 1.0)) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(m(p, q)) <= 1e-300) continue;
        const double theta = 0.5 * (m(q, q) - m(p, p)) / m(p, q);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (int k = 0; k < n; ++k) {
          const double mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return m(i, i) < m(j, j); });
  SymmetricEigen out;
  out.values.reserve(n);
  for (int i : order) out.values.push_back(m(i, i));
  if (want_vectors) {
    out.vectors = Matrix(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

Matrix cholesky(const Matrix& s) {
  const int n = s.rows();
  if (n != s.cols()) throw std::invalid_argument("cholesky: not square");
  Matrix l(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = s(i, j);
      for (int k = 0; k < j; ++k) sum -= l(i, k) * l(j, k);
      if (i == j) {
        if (sum <= 0.0) throw std::runtime_error("cholesky: matrix not positive definite");
        l(i, i) = std::sqrt(sum);
      } else {
        l(i, j) = sum / l(j, j);
      }
    }
  }
  return l;
}

std::vector<double> solve_lower(const Matrix& l, std::vector<double> b) {
  const int n = l.rows();
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < i; ++k) b[i] -= l(i, k) * b[k];
    b[i] /= l(i, i);
  }
  return b;
}

std::vector<double> solve_lower_transposed(const Matrix& l, std::vector<double> b) {
  const int n = l.rows();
  for (int i = n - 1; i >= 0; --i) {
    for (int k = i + 1; k < n; ++k) b[i] -= l(k, i) * b[k];
    b[i] /= l(i, i);
  }
  return b;
}

}  // namespace fluxmodes
