#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "dynlforge/derivative.hpp"
#include "dynlforge/double_algebra.hpp"
#include "dynlforge/linalg.hpp"

namespace dynlforge {

/// Intermediate operators of the closed form at p, all as maps on d:
/// K (dim_l x 2n), R (dim_m x 2n), S (dim_l x 2n), and the resulting L (n x n).
template <class T>
struct LcanParts {
  Mat<T> K, R, S, L;
};

template <class T>
LcanParts<T> lcan_parts(const DoubleAlgebra& d, const Vec<T>& p, double cond_max = kCondMax,
                        double* max_cond = nullptr) {
  const int n = d.n(), nl = d.nl(), nm = d.nm(), N = 2 * n;
  const Mat<T> x = d.ad_sp(p);
  const PhiSet<T> neg = phi_functions<T>(Mat<T>(-x));
  const Mat<T>& E = neg.phi0;     // e^{-x}
  const Mat<T> P1 = -neg.phi1;    // (e^{-x} - 1) / x
  const Mat<T>& P2 = neg.phi2;    // (e^{-x} - 1 + x) / x^2
  const Mat<T> Q = phi_func<T>(x, 1) - identity<T>(N);  // (e^x - 1 - x) / x

  auto track = [max_cond](const Mat<T>& a) {
    if (max_cond) *max_cond = std::max(*max_cond, condition_estimate(values(a)));
  };
  LcanParts<T> out;
  const Mat<T> plP1 = P1.topRows(nl);
  const Mat<T> lhs_l = plP1.leftCols(nl);
  Mat<T> rhs_l(nl, 2 * N);
  rhs_l << plP1, Mat<T>(P2.topRows(nl));
  track(lhs_l);
  const Mat<T> sk = solve_block(lhs_l, rhs_l, cond_max);
  out.S = sk.leftCols(N);
  out.K = sk.rightCols(N);
  const Mat<T> pmE = E.middleRows(nl, nm);
  const Mat<T> lhs_m = pmE.middleCols(nl, nm);
  track(lhs_m);
  out.R = solve_block(lhs_m, pmE, cond_max);

  const Mat<T>& S = out.S;
  const Mat<T>& K = out.K;
  const Mat<T>& R = out.R;
  const Mat<T> S_m = S.middleCols(nl, nm);
  const Mat<T> R_l = R.leftCols(nl);
  const Mat<T> Al = identity<T>(nl) - S_m * R_l;
  const Mat<T> Am = identity<T>(nm) - R_l * S_m;
  track(Al);
  track(Am);

  // Columns n + nl .. 2n (l^perp) and n .. n + nl (m^perp) of the data.
  const Mat<T> S_lp = S.rightCols(nm), R_lp = R.rightCols(nm);
  const Mat<T> SK_mp = S.middleCols(n, nl) + K.middleCols(n, nl);
  const Mat<T> RQ_mp = R * Q.middleCols(n, nl);

  out.L = zeros<T>(n, n);
  out.L.block(0, 0, nl, nl) = -solve_block(Al, Mat<T>(SK_mp + S_m * RQ_mp), cond_max);
  out.L.block(nl, 0, nm, nl) = solve_block(Am, Mat<T>(R_l * SK_mp + RQ_mp), cond_max);
  out.L.block(0, nl, nl, nm) = solve_block(Al, Mat<T>(S_m * R_lp - S_lp), cond_max);
  out.L.block(nl, nl, nm, nm) = solve_block(Am, Mat<T>(R_l * S_lp - R_lp), cond_max);
  return out;
}

/// Closed-form canonical l-matrix l_p : g* -> g as an n x n matrix.
template <class T>
Mat<T> lcan_matrix(const DoubleAlgebra& d, const Vec<T>& p, double cond_max = kCondMax) {
  return lcan_parts(d, p, cond_max).L;
}

struct KRSOperators {
  VecD p;
  MatD K;  ///< dim_l x 2n, meaningful on m^perp
  MatD R;  ///< dim_m x 2n
  MatD S;  ///< dim_l x 2n
};

KRSOperators krs_operators(const DoubleAlgebra& d, const VecD& p, double cond_max = kCondMax);

struct LValue {
  VecD p;
  MatD L;
  double skew_residual = 0.0;           ///< max |L + L^T|
  double normalization_residual = 0.0;  ///< |l_p(sp)|
};

/// Residual bookkeeping shared by every evaluated l-matrix.
LValue make_lvalue(const VecD& p, MatD L, int dim_l);

LValue lcan_eval(const DoubleAlgebra& d, const VecD& p, double cond_max = kCondMax);

/// Type-erased map p -> l_p evaluable on doubles, first-order duals and
/// truncated series (the last one is optional).
class LEvaluator {
 public:
  using FnD = std::function<MatD(const VecD&)>;
  using Fn1 = std::function<Mat<Dual1>(const Vec<Dual1>&)>;
  using FnS = std::function<Mat<Series>(const Vec<Series>&)>;

  LEvaluator() = default;
  LEvaluator(FnD fd, Fn1 f1, FnS fs = {}) : fd_(std::move(fd)), f1_(std::move(f1)), fs_(std::move(fs)) {}

  /// Wraps a generic callable usable for all three scalar types.
  template <class F>
  static LEvaluator from_generic(const F& f) {
    return LEvaluator(FnD(f), Fn1(f), FnS(f));
  }

  MatD operator()(const VecD& p) const { return fd_(p); }
  Mat<Dual1> operator()(const Vec<Dual1>& p) const { return f1_(p); }
  Mat<Series> operator()(const Vec<Series>& p) const;
  bool has_series() const { return static_cast<bool>(fs_); }

  /// d_p l(dir), exact up to rounding.
  MatD derivative(const VecD& p, const VecD& dir) const { return tangents(f1_(seed(p, dir))); }
  /// p -> l_p + c for a constant matrix c.
  LEvaluator plus_constant(const MatD& c) const;

 private:
  FnD fd_;
  Fn1 f1_;
  FnS fs_;
};

LEvaluator lcan_evaluator(const DoubleAlgebra& d, double cond_max = kCondMax);

/// Coordinates of ad*_z p in l*: (ad*_z p)_b = sum_a p_a c(z, b, a).
VecD coad_l(const QuasiBialgebra& g, const VecD& z, const VecD& p);

/// Max over basis triples of the cyclic CDYB defect against phi.
double cdybe_residual(const DoubleAlgebra& d, const LEvaluator& l, const VecD& p);
/// 2-norm of d_p l(ad*_z p) + varpi_z + ad_z l_p + l_p ad*_z.
double equivariance_residual(const DoubleAlgebra& d, const LEvaluator& l, const VecD& p, const VecD& z);
/// Max over basis covectors of the defect in the characterizing ODE.
double ode_residual(const DoubleAlgebra& d, const LEvaluator& l, const VecD& p);

struct PmadtauResiduals {
  double r[4] = {0.0, 0.0, 0.0, 0.0};
  double max() const;
};
/// The four projection identities, maximized over `samples` random X_p and alpha.
PmadtauResiduals pmadtau_residuals(const DoubleAlgebra& d, const LEvaluator& l, const VecD& p, int samples,
                                   std::uint64_t seed);

/// Taylor jet of t -> l_{t p0}.
struct LJet {
  VecD p0;
  MatrixJet jet;
};

/// Degree-by-degree construction from the formal recursion (K <= 32).
LJet lcan_jets(const DoubleAlgebra& d, const VecD& p0, int order);
/// Jet of an arbitrary evaluator along the ray, via series propagation.
LJet evaluator_jet(const LEvaluator& l, const VecD& p0, int order);

/// Largest condition estimate among the solves of the closed form at p
/// (+inf when one of them is singular).
double lcan_condition(const DoubleAlgebra& d, const VecD& p);

/// Radius of the ball around 0 in l* on which the closed form stays well
/// conditioned: along `directions` random rays, the first parameter at which
/// the condition estimate reaches `cond_probe` or has a sharp local maximum
/// (a nearby singularity off the sampled points). Capped at `cap`.
double conditioning_radius(const DoubleAlgebra& d, std::uint64_t seed, int directions = 16,
                           double cond_probe = 1e3, double cap = 8.0);

/// Deterministic grid of `count` points in the ball of the given radius.
std::vector<VecD> ball_grid(int dim, double radius, int count, std::uint64_t seed);

}  // namespace dynlforge
