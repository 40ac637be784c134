#include "dynlforge/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include <Eigen/SVD>

namespace dynlforge {

void PolyMap::add(const std::vector<int>& exps, const VecD& coeff) {
  if (static_cast<int>(exps.size()) != nvars || coeff.size() != dim)
    throw std::invalid_argument("PolyMap::add: shape mismatch");
  for (Term& t : terms)
    if (t.exps == exps) {
      t.coeff += coeff;
      return;
    }
  terms.push_back({exps, coeff});
}

int PolyMap::degree() const {
  int d = 0;
  for (const Term& t : terms) {
    int s = 0;
    for (int e : t.exps) s += e;
    d = std::max(d, s);
  }
  return d;
}

int PolyMap::min_degree() const {
  int d = -1;
  for (const Term& t : terms) {
    if (t.coeff.cwiseAbs().maxCoeff() == 0.0) continue;
    int s = 0;
    for (int e : t.exps) s += e;
    d = d < 0 ? s : std::min(d, s);
  }
  return d;
}

MatD group_cocycle_kron(const QuasiBialgebra& g, const VecD& x) {
  const int n = g.n();
  const MatD A = g.ad(x);
  const MatD I = MatD::Identity(n, n);
  MatD D(n * n, n * n);
  // Row-major vec: vec(A T + T A^T) = (A (x) I + I (x) A) vec(T).
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) D.block(i * n, j * n, n, n) = A(i, j) * I + (i == j ? A : MatD::Zero(n, n));
  const MatD w = g.cobracket(x);
  VecD vw(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) vw(i * n + j) = w(i, j);
  const VecD v = phi_func<double>(D, 1) * vw;
  MatD out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = v(i * n + j);
  return out;
}

LValue gauge_apply(const QuasiBialgebra& g, const LEvaluator& l, const PolyMap& sigma, const VecD& p) {
  return make_lvalue(p, gauge_matrix<double>(g, l(p), sigma.evaluate(p), sigma.jacobian(p)), g.nl());
}

LEvaluator gauged_evaluator(const QuasiBialgebra& g, const LEvaluator& l, const PolyMap& sigma) {
  auto gp = std::make_shared<const QuasiBialgebra>(g);
  return LEvaluator::from_generic([gp, l, sigma](const auto& p) {
    using T = typename std::decay_t<decltype(p)>::Scalar;
    return gauge_matrix<T>(*gp, l(p), sigma.evaluate(p), sigma.jacobian(p));
  });
}

namespace {

void monomials_of_degree(int nvars, int degree, std::vector<int>& cur, int var,
                         std::vector<std::vector<int>>& out) {
  if (var == nvars - 1) {
    cur[var] = degree;
    out.push_back(cur);
    return;
  }
  for (int e = degree; e >= 0; --e) {
    cur[var] = e;
    monomials_of_degree(nvars, degree - e, cur, var + 1, out);
  }
}

}  // namespace

PolyMap random_equivariant_polymap(const QuasiBialgebra& g, int min_degree, int max_degree, SplitMix64& rng,
                                   double scale) {
  const int n = g.n(), nl = g.nl();
  PolyMap out(nl, n);
  if (nl == 0) return out;
  std::vector<std::vector<int>> monos;
  for (int deg = min_degree; deg <= max_degree; ++deg) {
    std::vector<int> cur(nl, 0);
    monomials_of_degree(nl, deg, cur, 0, monos);
  }
  const int nm = static_cast<int>(monos.size());
  const int unknowns = nm * n;
  const int points = nm + 4;
  std::vector<VecD> ps;
  for (int s = 0; s < points; ++s) ps.push_back(rng.normal_vector(nl));
  // Constraint rows: for each point and each basis z of l, d sigma(ad*_z p) + ad_z sigma(p).
  MatD C = MatD::Zero(static_cast<Eigen::Index>(points) * nl * n, unknowns);
  for (int u = 0; u < unknowns; ++u) {
    PolyMap basis(nl, n);
    basis.add(monos[u / n], VecD::Unit(n, u % n));
    int row = 0;
    for (const VecD& p : ps) {
      const VecD val = basis.evaluate(p);
      const MatD jac = basis.jacobian(p);
      for (int z = 0; z < nl; ++z) {
        const VecD ez = VecD::Unit(n, z);
        C.block(row, u, n, 1) = jac * coad_l(g, ez, p) + g.ad(ez) * val;
        row += n;
      }
    }
  }
  Eigen::JacobiSVD<MatD> svd(C, Eigen::ComputeFullV);
  const VecD& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  VecD coeffs = VecD::Zero(unknowns);
  for (int k = 0; k < unknowns; ++k) {
    const double s = k < sv.size() ? sv(k) : 0.0;
    if (s <= 1e-10 * std::max(1.0, top)) coeffs += rng.normal() * svd.matrixV().col(k);
  }
  const double nc = coeffs.norm();
  if (nc > 0.0) coeffs *= scale / nc;
  for (int m = 0; m < nm; ++m) out.add(monos[m], coeffs.segment(m * n, n));
  return out;
}

GaugeNormalization gauge_normalize_jets(const QuasiBialgebra& g, const LEvaluator& l, const VecD& p0, int order) {
  const int n = g.n(), nl = g.nl();
  if (order < 0 || order > 32) throw std::invalid_argument("gauge_normalize_jets: order must lie in [0, 32]");
  GaugeNormalization out;
  out.sigma = PolyMap(nl, n);
  out.normalized.p0 = p0;
  if (nl == 0) {
    out.normalized = evaluator_jet(l, p0, order);
    out.sigma_jet.assign(order + 2, VecD::Zero(n));
    out.step_residuals.assign(order + 1, 0.0);
    return out;
  }
  auto layout = SeriesLayout::get(nl, order + 1);
  Vec<Series> P(nl);
  for (int i = 0; i < nl; ++i) P(i) = Series::variable(layout, i);
  const Mat<Series> L0 = l(P);
  auto current = [&]() {
    return gauge_matrix<Series>(g, L0, out.sigma.evaluate(P), out.sigma.jacobian(P));
  };
  // h_k(p) = [l]_k(p) sp, homogeneous of degree k + 1.
  auto hk = [&](const Mat<Series>& L, int k) {
    Vec<Series> h = Vec<Series>::Constant(n, Series(0.0));
    for (int r = 0; r < n; ++r)
      for (int a = 0; a < nl; ++a) h(r) += L(r, a).homogeneous(k) * P(a);
    return h;
  };
  for (int k = 1; k <= order; ++k) {
    const Vec<Series> h = hk(current(), k);
    const int b = layout->degree_begin(k + 1);
    const int e = k + 2 <= layout->order() ? layout->degree_begin(k + 2) : layout->size();
    for (int idx = b; idx < e; ++idx) {
      VecD coeff(n);
      for (int r = 0; r < n; ++r) coeff(r) = -h(r).coeff(idx) / (r < nl ? k + 2.0 : k + 1.0);
      if (coeff.cwiseAbs().maxCoeff() == 0.0) continue;
      std::vector<int> exps(nl);
      for (int v = 0; v < nl; ++v) exps[v] = layout->exponent(idx, v);
      out.sigma.add(exps, coeff);
    }
  }
  const Mat<Series> Lf = current();
  auto ray_value = [&](const Series& s, int k) {
    double acc = 0.0;
    const int b = layout->degree_begin(k);
    const int e = k + 1 <= layout->order() ? layout->degree_begin(k + 1) : layout->size();
    for (int idx = b; idx < e; ++idx) {
      double mono = s.coeff(idx);
      for (int v = 0; v < nl; ++v) mono *= std::pow(p0(v), layout->exponent(idx, v));
      acc += mono;
    }
    return acc;
  };
  out.normalized.jet.coeffs.assign(order + 1, MatD::Zero(n, n));
  for (int k = 0; k <= order; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.normalized.jet.coeffs[k](i, j) = ray_value(Lf(i, j), k);
  const Vec<Series> sig = out.sigma.evaluate(P);
  out.sigma_jet.assign(order + 2, VecD::Zero(n));
  for (int k = 0; k <= order + 1; ++k)
    for (int r = 0; r < n; ++r) out.sigma_jet[k](r) = ray_value(sig(r), k);
  out.step_residuals.assign(order + 1, 0.0);
  for (int k = 1; k <= order; ++k) {
    const Vec<Series> h = hk(Lf, k);
    double m = 0.0;
    for (int r = 0; r < n; ++r)
      for (int idx = 0; idx < layout->size(); ++idx) m = std::max(m, std::abs(h(r).coeff(idx)));
    out.step_residuals[k] = m;
  }
  return out;
}

}  // namespace dynlforge
