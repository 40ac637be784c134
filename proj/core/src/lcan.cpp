#include "dynlforge/lcan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dynlforge/rng.hpp"

namespace dynlforge {

KRSOperators krs_operators(const DoubleAlgebra& d, const VecD& p, double cond_max) {
  LcanParts<double> parts = lcan_parts(d, p, cond_max);
  return {p, std::move(parts.K), std::move(parts.R), std::move(parts.S)};
}

LValue make_lvalue(const VecD& p, MatD L, int dim_l) {
  LValue v;
  v.p = p;
  v.skew_residual = max_abs(MatD(L + L.transpose()));
  v.normalization_residual = (L.leftCols(dim_l) * p).norm();
  v.L = std::move(L);
  return v;
}

LValue lcan_eval(const DoubleAlgebra& d, const VecD& p, double cond_max) {
  return make_lvalue(p, lcan_matrix(d, p, cond_max), d.nl());
}

Mat<Series> LEvaluator::operator()(const Vec<Series>& p) const {
  if (!fs_) throw std::logic_error("LEvaluator: no series evaluation available");
  return fs_(p);
}

LEvaluator LEvaluator::plus_constant(const MatD& c) const {
  LEvaluator out;
  auto fd = fd_;
  auto f1 = f1_;
  auto fs = fs_;
  out.fd_ = [fd, c](const VecD& p) { return MatD(fd(p) + c); };
  out.f1_ = [f1, c](const Vec<Dual1>& p) { return Mat<Dual1>(f1(p) + lift<Dual1>(c)); };
  if (fs) out.fs_ = [fs, c](const Vec<Series>& p) { return Mat<Series>(fs(p) + lift<Series>(c)); };
  return out;
}

LEvaluator lcan_evaluator(const DoubleAlgebra& d, double cond_max) {
  auto dd = std::make_shared<const DoubleAlgebra>(d);
  return LEvaluator::from_generic([dd, cond_max](const auto& p) { return lcan_matrix(*dd, p, cond_max); });
}

VecD coad_l(const QuasiBialgebra& g, const VecD& z, const VecD& p) {
  const int nl = g.nl();
  VecD out = VecD::Zero(nl);
  for (int i = 0; i < z.size(); ++i) {
    if (z(i) == 0.0) continue;
    for (int b = 0; b < nl; ++b)
      for (int a = 0; a < nl; ++a) out(b) += z(i) * p(a) * g.c(i, b, a);
  }
  return out;
}

namespace {

VecD pad(const VecD& v, int n) {
  VecD out = VecD::Zero(n);
  out.head(v.size()) = v;
  return out;
}

}  // namespace

double cdybe_residual(const DoubleAlgebra& d, const LEvaluator& l, const VecD& p) {
  const QuasiBialgebra& g = d.source();
  const int n = d.n(), nl = d.nl(), N = 2 * n;
  const MatD L = l(p);
  std::vector<MatD> dL(nl);
  for (int a = 0; a < nl; ++a) dL[a] = l.derivative(p, VecD::Unit(nl, a));
  MatD Y(N, n);
  Y << L, MatD::Identity(n, n);
  // t[a](c, b) = (d l(e_a) e^b)_c - ([l e^a, l e^b + e^b]_d)_c
  std::vector<MatD> t(n);
  for (int a = 0; a < n; ++a) {
    VecD xa = VecD::Zero(N);
    xa.head(n) = L.col(a);
    t[a] = -(d.ad(xa) * Y).topRows(n);
    if (a < nl) t[a] += dL[a];
  }
  double r = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const double v = t[a](c, b) + t[b](a, c) + t[c](b, a) - g.phi(a, b, c);
        r = std::max(r, std::abs(v));
      }
  return r;
}

double equivariance_residual(const DoubleAlgebra& d, const LEvaluator& l, const VecD& p, const VecD& z) {
  const QuasiBialgebra& g = d.source();
  const VecD zf = pad(z, d.n());
  const MatD A = g.ad(zf);
  const MatD L = l(p);
  const MatD r = l.derivative(p, coad_l(g, zf, p)) + g.cobracket(zf) + A * L + L * A.transpose();
  return norm2(r);
}

double ode_residual(const DoubleAlgebra& d, const LEvaluator& l, const VecD& p) {
  const int n = d.n(), nl = d.nl();
  const MatD L = l(p);
  const MatD x = d.ad_sp(p);
  MatD Z(2 * n, n);
  Z << L, MatD::Identity(n, n);
  const MatD Y = x * Z;
  MatD rhs = Y.topRows(n) - L * Y.bottomRows(n);
  rhs.topRows(nl) -= L.topRows(nl);
  rhs.leftCols(nl) -= L.leftCols(nl);
  const MatD diff = l.derivative(p, p) - rhs;
  double r = 0.0;
  for (int j = 0; j < n; ++j) r = std::max(r, diff.col(j).norm());
  return r;
}

double PmadtauResiduals::max() const { return std::max({r[0], r[1], r[2], r[3]}); }

PmadtauResiduals pmadtau_residuals(const DoubleAlgebra& d, const LEvaluator& l, const VecD& p, int samples,
                                   std::uint64_t seed) {
  const int n = d.n(), nl = d.nl(), nm = d.nm(), N = 2 * n;
  const MatD L = l(p);
  const MatD x = d.ad_sp(p);
  const PhiSet<double> neg = phi_functions<double>(MatD(-x));
  const MatD& E = neg.phi0;
  const MatD P1 = -neg.phi1;
  const MatD& P2 = neg.phi2;
  auto tau = [&](const VecD& X) {
    VecD out = X;
    out.head(n) += L * X.tail(n);
    return out;
  };
  SplitMix64 rng(seed);
  PmadtauResiduals res;
  for (int s = 0; s < samples; ++s) {
    VecD z = VecD::Zero(N);
    if (nl > 0) z.head(nl) = rng.normal_vector(nl).normalized();
    VecD X = z + x * z;
    if (nm > 0) X.tail(nm) += rng.normal_vector(nm).normalized();
    const VecD tX = tau(X);
    res.r[0] = std::max(res.r[0], (E * tX).segment(nl, nm).norm());
    res.r[1] = std::max(res.r[1], ((P1 * tX).head(nl) + X.head(nl)).norm());
    if (nl == 0) continue;
    const VecD sa = d.s_embed(VecD(rng.normal_vector(nl).normalized()));
    const VecD tsa = tau(sa);
    res.r[2] = std::max(res.r[2], (E * tsa + P1 * sa).segment(nl, nm).norm());
    res.r[3] = std::max(res.r[3], (P1 * tsa + P2 * sa).head(nl).norm());
  }
  return res;
}

LJet lcan_jets(const DoubleAlgebra& d, const VecD& p0, int order) {
  if (order < 0 || order > 32) throw std::invalid_argument("lcan_jets: order must lie in [0, 32]");
  const int n = d.n(), nl = d.nl();
  const MatD x0 = d.ad_sp(p0);
  const MatD Xgg = x0.topLeftCorner(n, n), Xggs = x0.topRightCorner(n, n);
  const MatD Xgsg = x0.bottomLeftCorner(n, n), Xgsgs = x0.bottomRightCorner(n, n);
  LJet out;
  out.p0 = p0;
  std::vector<MatD>& l = out.jet.coeffs;
  l.assign(order + 1, MatD::Zero(n, n));
  for (int k = 1; k <= order; ++k) {
    MatD Lk = Xgg * l[k - 1] - l[k - 1] * Xgsgs;
    if (k == 1) Lk += Xggs;
    for (int i = 0; i <= k - 1; ++i) Lk -= l[i] * Xgsg * l[k - 1 - i];
    Lk.topLeftCorner(nl, nl) /= (k + 2.0);
    Lk.topRightCorner(nl, n - nl) /= (k + 1.0);
    Lk.bottomLeftCorner(n - nl, nl) /= (k + 1.0);
    Lk.bottomRightCorner(n - nl, n - nl) /= static_cast<double>(k);
    l[k] = Lk;
  }
  return out;
}

LJet evaluator_jet(const LEvaluator& l, const VecD& p0, int order) {
  return {p0, ray_jet(l, p0, order)};
}

double lcan_condition(const DoubleAlgebra& d, const VecD& p) {
  double c = 1.0;
  try {
    lcan_parts(d, p, std::numeric_limits<double>::infinity(), &c);
  } catch (const OutsideAnalyticDomain&) {
    return std::numeric_limits<double>::infinity();
  }
  return c;
}

double conditioning_radius(const DoubleAlgebra& d, std::uint64_t seed, int directions, double cond_probe,
                           double cap) {
  const int nl = d.nl();
  if (nl == 0) return cap;
  constexpr double kStep = 0.05;
  SplitMix64 rng(seed);
  double radius = cap;
  for (int i = 0; i < directions; ++i) {
    const VecD u = rng.normal_vector(nl).normalized();
    auto cond = [&](double t) { return lcan_condition(d, VecD(t * u)); };
    // First parameter in [lo, hi] where cond reaches the probe (cond(lo) below it).
    auto crossing = [&](double lo, double hi) {
      for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        (cond(mid) >= cond_probe ? hi : lo) = mid;
      }
      return lo;
    };
    double t_prev = 0.0, c_prev = 1.0, c_cur = cond(kStep);
    for (double t = kStep; t < radius; t += kStep) {
      if (c_cur >= cond_probe) {
        radius = std::min(radius, crossing(t_prev, t));
        break;
      }
      const double c_next = cond(t + kStep);
      if (c_cur > c_prev && c_cur >= c_next) {
        // Golden-section search for the peak on [t - step, t + step].
        double a = t - kStep, b = t + kStep;
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - g * (b - a), x2 = a + g * (b - a);
        double f1 = cond(x1), f2 = cond(x2);
        for (int it = 0; it < 80 && f1 < cond_probe && f2 < cond_probe; ++it) {
          if (f1 > f2) {
            b = x2, x2 = x1, f2 = f1;
            x1 = b - g * (b - a), f1 = cond(x1);
          } else {
            a = x1, x1 = x2, f1 = f2;
            x2 = a + g * (b - a), f2 = cond(x2);
          }
        }
        const double peak = f1 >= f2 ? x1 : x2;
        if (std::max(f1, f2) >= cond_probe) {
          radius = std::min(radius, crossing(t - kStep, peak));
          break;
        }
      }
      t_prev = t, c_prev = c_cur, c_cur = c_next;
    }
  }
  return radius;
}

std::vector<VecD> ball_grid(int dim, double radius, int count, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<VecD> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) pts.push_back(rng.ball(dim, radius));
  return pts;
}

}  // namespace dynlforge
