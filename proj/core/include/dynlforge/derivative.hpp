#pragma once

#include <vector>

#include "dynlforge/matrix.hpp"

namespace dynlforge {

/// Matrix-valued truncated Taylor series in one variable t.
struct MatrixJet {
  std::vector<MatD> coeffs;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  MatD evaluate(double t) const;
  /// Truncated Cauchy product (order = min of both orders).
  friend MatrixJet operator*(const MatrixJet& a, const MatrixJet& b);
};

/// Seeds a real vector as duals x + eps*dir.
inline Vec<Dual1> seed(const VecD& x, const VecD& dir) {
  Vec<Dual1> out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out(i) = Dual1(x(i), dir(i));
  return out;
}

/// Exact directional derivative d_p f(dir) by dual-number evaluation.
template <class F>
MatD dir_derivative(F&& f, const VecD& p, const VecD& dir) {
  return tangents(f(seed(p, dir)));
}

/// Central finite difference at steps h and h/2 combined by Richardson
/// extrapolation (fourth order).
template <class F>
MatD fd_derivative(F&& f, const VecD& p, const VecD& dir, double h = 1e-3) {
  auto central = [&](double s) -> MatD {
    MatD fp = f(VecD(p + s * dir));
    MatD fm = f(VecD(p - s * dir));
    return (fp - fm) / (2.0 * s);
  };
  MatD d1 = central(h);
  MatD d2 = central(h / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

/// Taylor coefficients of t -> f(t p0) up to order K, propagated through the
/// same computation with univariate truncated series.
template <class F>
MatrixJet ray_jet(F&& f, const VecD& p0, int order) {
  auto layout = SeriesLayout::get(1, order);
  const Series t = Series::variable(layout, 0);
  Vec<Series> pt(p0.size());
  for (Eigen::Index i = 0; i < p0.size(); ++i) pt(i) = t * p0(i);
  Mat<Series> m = f(pt);
  MatrixJet jet;
  jet.coeffs.assign(order + 1, MatD::Zero(m.rows(), m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (int k = 0; k <= order; ++k) jet.coeffs[k](i, j) = m(i, j).coeff(std::vector<int>{k});
  return jet;
}

}  // namespace dynlforge
