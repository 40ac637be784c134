#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <type_traits>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "dynlforge/errors.hpp"
#include "dynlforge/matrix.hpp"

namespace dynlforge {

/// Default condition threshold marking the computational boundary of U.
inline constexpr double kCondMax = 1e8;

/// 1-norm condition number estimate of a real square matrix (LAPACK-style
/// estimate via Eigen's PartialPivLU::rcond). Returns +inf for singular input.
double condition_estimate(const MatD& a);

/// LU factorization with partial pivoting chosen on the value part, so that
/// dual-number and series entries follow the same elimination path.
template <class T>
struct LuFactor {
  Mat<T> lu;
  std::vector<Eigen::Index> perm;
};

template <class T>
LuFactor<T> lu_factor(Mat<T> a) {
  const Eigen::Index n = a.rows();
  std::vector<Eigen::Index> perm(n);
  for (Eigen::Index i = 0; i < n; ++i) perm[i] = i;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = k;
    double best = std::abs(value_of(a(k, k)));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      double v = std::abs(value_of(a(i, k)));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (piv != k) {
      a.row(k).swap(a.row(piv));
      std::swap(perm[k], perm[piv]);
    }
    if (best == 0.0) continue;
    const T inv = T(1) / a(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (value_of(a(i, k)) == 0.0 && a(i, k) == T(0)) continue;
      a(i, k) = a(i, k) * inv;
      const T f = a(i, k);
      for (Eigen::Index j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return {std::move(a), std::move(perm)};
}

template <class T>
Mat<T> lu_solve(const LuFactor<T>& f, const Mat<T>& b) {
  const Eigen::Index n = f.lu.rows();
  Mat<T> x(n, b.cols());
  for (Eigen::Index i = 0; i < n; ++i) x.row(i) = b.row(f.perm[i]);
  for (Eigen::Index c = 0; c < b.cols(); ++c) {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < i; ++j) x(i, c) -= f.lu(i, j) * x(j, c);
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      for (Eigen::Index j = i + 1; j < n; ++j) x(i, c) -= f.lu(i, j) * x(j, c);
      x(i, c) = x(i, c) / f.lu(i, i);
    }
  }
  return x;
}

/// Solves A X = B with partial pivoting after checking the condition number
/// of the value part of A against `cond_max`.
template <class T>
Mat<T> solve_block(const Mat<T>& a, const Mat<T>& b, double cond_max = kCondMax) {
  if (a.rows() != a.cols() || a.rows() != b.rows())
    throw std::invalid_argument("solve_block: dimension mismatch");
  if (a.rows() == 0) return Mat<T>(0, b.cols());
  const double cond = condition_estimate(values(a));
  if (!(cond <= cond_max))
    throw OutsideAnalyticDomain(cond, "solve_block: condition estimate " + std::to_string(cond) +
                                          " exceeds threshold");
  return lu_solve(lu_factor(a), b);
}

/// For series matrices with vanishing value part: the truncation order, so
/// that matrix functions can be summed exactly as finite Taylor sums.
/// Returns -1 for every other scalar type or when some value is nonzero.
template <class T>
int nilpotent_series_order(const Mat<T>& a) {
  if constexpr (std::is_same_v<T, Series>) {
    int order = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        if (a(i, j).value() != 0.0) return -1;
        if (a(i, j).layout()) order = std::max(order, a(i, j).layout()->order());
      }
    return order;
  } else {
    (void)a;
    return -1;
  }
}

/// sum_{j <= terms} a^j / (j + k)!
template <class T>
Mat<T> phi_taylor(const Mat<T>& a, int k, int terms) {
  const Eigen::Index n = a.rows();
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  Mat<T> power = identity<T>(n);
  Mat<T> out = identity<T>(n) * (1.0 / f);
  for (int j = 1; j <= terms; ++j) {
    power = power * a;
    f *= (j + k);
    out += power * (1.0 / f);
  }
  return out;
}

/// Matrix exponential by scaling and squaring with the degree-13 Pade
/// approximant; the scaling is chosen from the value part.
template <class T>
Mat<T> expm(const Mat<T>& a) {
  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;
  const Eigen::Index n = a.rows();
  if (n == 0) return a;
  if (const int ord = nilpotent_series_order(a); ord >= 0) return phi_taylor(a, 0, ord);
  const double norm1 = values(a).cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm1 > theta13) s = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  Mat<T> x = a;
  if (s > 0) x = x * std::ldexp(1.0, -s);
  const Mat<T> id = identity<T>(n);
  const Mat<T> x2 = x * x;
  const Mat<T> x4 = x2 * x2;
  const Mat<T> x6 = x4 * x2;
  Mat<T> inner = x6 * b[13] + x4 * b[11] + x2 * b[9];
  Mat<T> u = x * (x6 * inner + x6 * b[7] + x4 * b[5] + x2 * b[3] + id * b[1]);
  Mat<T> inner_v = x6 * b[12] + x4 * b[10] + x2 * b[8];
  Mat<T> v = x6 * inner_v + x6 * b[6] + x4 * b[4] + x2 * b[2] + id * b[0];
  Mat<T> r = lu_solve(lu_factor<T>(v - u), Mat<T>(v + u));
  for (int k = 0; k < s; ++k) r = r * r;
  return r;
}

/// phi_0(A) = e^A, phi_1(A) = (e^A - 1)/A, phi_2(A) = (e^A - 1 - A)/A^2.
template <class T>
struct PhiSet {
  Mat<T> phi0, phi1, phi2;
};

/// All three phi-functions from one exponential of the augmented block
/// matrix [[A, I, 0], [0, 0, I], [0, 0, 0]].
template <class T>
PhiSet<T> phi_functions(const Mat<T>& a) {
  if (const int ord = nilpotent_series_order(a); ord >= 0)
    return {phi_taylor(a, 0, ord), phi_taylor(a, 1, ord), phi_taylor(a, 2, ord)};
  const Eigen::Index n = a.rows();
  Mat<T> big = zeros<T>(3 * n, 3 * n);
  big.block(0, 0, n, n) = a;
  for (Eigen::Index i = 0; i < n; ++i) {
    big(i, n + i) = T(1);
    big(n + i, 2 * n + i) = T(1);
  }
  const Mat<T> e = expm(big);
  return {e.block(0, 0, n, n), e.block(0, n, n, n), e.block(0, 2 * n, n, n)};
}

/// phi_k(A) for k in {0, 1, 2}.
template <class T>
Mat<T> phi_func(const Mat<T>& a, int k) {
  if (k != 0 && k != 1 && k != 2) throw std::invalid_argument("phi_func: k must be 0, 1 or 2");
  if (k == 0) return expm(a);
  if (const int ord = nilpotent_series_order(a); ord >= 0) return phi_taylor(a, k, ord);
  const Eigen::Index n = a.rows();
  const Eigen::Index m = (k + 1) * n;
  Mat<T> big = zeros<T>(m, m);
  big.block(0, 0, n, n) = a;
  for (int blk = 0; blk < k; ++blk)
    for (Eigen::Index i = 0; i < n; ++i) big(blk * n + i, (blk + 1) * n + i) = T(1);
  return expm(big).block(0, k * n, n, n);
}

}  // namespace dynlforge
