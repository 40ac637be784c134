#pragma once

#include <cstdint>
#include <vector>

#include "dynlforge/lcan.hpp"
#include "dynlforge/rng.hpp"

namespace dynlforge {

/// Polynomial map l* -> g (or any R^nvars -> R^dim) as a sum of monomials
/// with vector coefficients.
struct PolyMap {
  struct Term {
    std::vector<int> exps;
    VecD coeff;
  };
  int nvars = 0;
  int dim = 0;
  std::vector<Term> terms;

  PolyMap() = default;
  PolyMap(int nvars_, int dim_) : nvars(nvars_), dim(dim_) {}

  /// Adds coeff * p^exps, merging with an existing term of equal exponents.
  void add(const std::vector<int>& exps, const VecD& coeff);
  int degree() const;
  /// Lowest degree carrying a nonzero coefficient (-1 for the zero map).
  int min_degree() const;

  template <class T>
  Vec<T> evaluate(const Vec<T>& p) const {
    Vec<T> out = Vec<T>::Constant(dim, T(0));
    for (const Term& t : terms) {
      T mono(1);
      for (int i = 0; i < nvars; ++i)
        for (int e = 0; e < t.exps[i]; ++e) mono = mono * p(i);
      for (int r = 0; r < dim; ++r)
        if (t.coeff(r) != 0.0) out(r) += mono * t.coeff(r);
    }
    return out;
  }

  /// dim x nvars matrix of partial derivatives.
  template <class T>
  Mat<T> jacobian(const Vec<T>& p) const {
    Mat<T> out = zeros<T>(dim, nvars);
    for (const Term& t : terms)
      for (int v = 0; v < nvars; ++v) {
        if (t.exps[v] == 0) continue;
        T mono(static_cast<double>(t.exps[v]));
        for (int i = 0; i < nvars; ++i) {
          const int e = t.exps[i] - (i == v ? 1 : 0);
          for (int j = 0; j < e; ++j) mono = mono * p(i);
        }
        for (int r = 0; r < dim; ++r)
          if (t.coeff(r) != 0.0) out(r, v) += mono * t.coeff(r);
      }
    return out;
  }
};

/// ad_x on g for a generic scalar type.
template <class T>
Mat<T> ad_g(const QuasiBialgebra& g, const Vec<T>& x) {
  const int n = g.n();
  Mat<T> out = zeros<T>(n, n);
  for (int i = 0; i < n; ++i) {
    if (value_of(x(i)) == 0.0 && x(i) == T(0)) continue;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (g.c(i, j, k) != 0.0) out(k, j) += x(i) * g.c(i, j, k);
  }
  return out;
}

/// varpi_x = sum_k x_k W_k for a generic scalar type.
template <class T>
Mat<T> cobracket_of(const QuasiBialgebra& g, const Vec<T>& x) {
  const int n = g.n();
  Mat<T> out = zeros<T>(n, n);
  for (int k = 0; k < n; ++k) {
    if (value_of(x(k)) == 0.0 && x(k) == T(0)) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (g.w[k](i, j) != 0.0) out(i, j) += x(k) * g.w[k](i, j);
  }
  return out;
}

/// pi_{exp x} = phi_1(D_x) varpi_x with D_x T = ad_x T + T ad_x^T, computed as
/// int_0^1 e^{s ad_x} varpi_x e^{s ad_x^T} ds from one exponential of the
/// block matrix [[ad_x, varpi_x], [0, -ad_x^T]].
template <class T>
Mat<T> group_cocycle(const QuasiBialgebra& g, const Vec<T>& x) {
  const int n = g.n();
  bool trivial = true;
  for (const MatD& w : g.w) trivial = trivial && max_abs(w) == 0.0;
  if (trivial) return zeros<T>(n, n);
  const Mat<T> W = cobracket_of(g, x);
  const Mat<T> A = ad_g(g, x);
  Mat<T> big = zeros<T>(2 * n, 2 * n);
  big.topLeftCorner(n, n) = A;
  big.topRightCorner(n, n) = W;
  big.bottomRightCorner(n, n) = -A.transpose();
  const Mat<T> F = expm(big);
  return F.topRightCorner(n, n) * F.topLeftCorner(n, n).transpose();
}

/// Reference implementation through the n^2 x n^2 Kronecker operator.
MatD group_cocycle_kron(const QuasiBialgebra& g, const VecD& x);

/// l^sigma_p = Ad L Ad^T + theta + pi for sigma_p = exp(Sigma_p), with
/// rho = phi_1(ad_Sigma) d Sigma and theta = rho i* Ad^T - i*^T rho^T.
template <class T>
Mat<T> gauge_matrix(const QuasiBialgebra& g, const Mat<T>& L, const Vec<T>& sigma, const Mat<T>& dsigma) {
  const int n = g.n(), nl = g.nl();
  const Mat<T> A = ad_g(g, sigma);
  const PhiSet<T> ph = phi_functions(A);
  const Mat<T>& Ad = ph.phi0;
  const Mat<T> rho = ph.phi1 * dsigma;  // n x nl
  Mat<T> rho_istar = zeros<T>(n, n);
  rho_istar.leftCols(nl) = rho;
  Mat<T> out = Ad * L * Ad.transpose() + rho_istar * Ad.transpose() - rho_istar.transpose();
  return out + group_cocycle(g, sigma);
}

LValue gauge_apply(const QuasiBialgebra& g, const LEvaluator& l, const PolyMap& sigma, const VecD& p);
LEvaluator gauged_evaluator(const QuasiBialgebra& g, const LEvaluator& l, const PolyMap& sigma);

/// Random l-equivariant polynomial map with monomials of degree in
/// [min_degree, max_degree]: sigma(ad*_z p) derivative + ad_z sigma(p) = 0.
PolyMap random_equivariant_polymap(const QuasiBialgebra& g, int min_degree, int max_degree, SplitMix64& rng,
                                   double scale = 1.0);

struct GaugeNormalization {
  PolyMap sigma;                   ///< accumulated gauge map, degrees 2 .. order + 1
  std::vector<VecD> sigma_jet;     ///< Sigma along t p0 by degree
  LJet normalized;                 ///< jet of the normalized l along t p0
  std::vector<double> step_residuals;  ///< max coefficient of [l]_k sp after normalization
};

/// Degree-by-degree normalization [l]_k sp = 0 by gauging with
/// Sigma_{k+1} = -(1/(k+1)) p_m [l]_k sp - (1/(k+2)) p_l [l]_k sp. The input
/// is propagated as a multivariate series in l*, since every derivative
/// direction of Sigma enters the gauge action.
GaugeNormalization gauge_normalize_jets(const QuasiBialgebra& g, const LEvaluator& l, const VecD& p0, int order);

}  // namespace dynlforge
