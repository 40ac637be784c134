#include "dynlforge/duality.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dynlforge/errors.hpp"

namespace dynlforge {

namespace {

VecD pad(const VecD& v, int n) {
  VecD out = VecD::Zero(n);
  out.head(v.size()) = v;
  return out;
}

// phi(xi, eta, .) as a vector of g.
VecD phi_contract(const QuasiBialgebra& g, const VecD& xi, const VecD& eta) {
  const int n = g.n();
  VecD out = VecD::Zero(n);
  for (int a = 0; a < n; ++a) {
    if (xi(a) == 0.0) continue;
    for (int b = 0; b < n; ++b) {
      if (eta(b) == 0.0) continue;
      for (int c = 0; c < n; ++c) out(c) += g.phi(a, b, c) * xi(a) * eta(b);
    }
  }
  return out;
}

// w_k = xi^T W_k eta.
VecD cobracket_pairing(const QuasiBialgebra& g, const VecD& xi, const VecD& eta) {
  VecD out(g.n());
  for (int k = 0; k < g.n(); ++k) out(k) = xi.dot(g.w[k] * eta);
  return out;
}

VecD tau(const MatD& L, const VecD& X, double sign) {
  const int n = static_cast<int>(L.rows());
  VecD out = X;
  out.head(n) += sign * (L * X.tail(n));
  return out;
}

void require_member(const DoubleAlgebra& d, const VertexElement& x, double tol, const char* what) {
  const double r = membership_residual(d, x);
  if (r > tol * std::max(1.0, x.xi.norm() + x.z.norm()))
    throw MembershipError(std::string(what) + " is not in g*_p (defect " + std::to_string(r) + ")");
}

}  // namespace

VecD VertexElement::in_double(int n) const {
  VecD out = VecD::Zero(2 * n);
  out.head(z.size()) = z;
  out.tail(n) = xi;
  return out;
}

double membership_residual(const DoubleAlgebra& d, const VertexElement& x) {
  const int n = d.n(), nl = d.nl();
  const VecD X = x.in_double(n);
  const VecD adz = d.ad_sp(x.p) * pad(x.z, 2 * n);
  return (X.segment(n, nl) - adz.segment(n, nl)).norm();
}

VertexElement make_vertex_element(const DoubleAlgebra& d, const VecD& p, const VecD& z, const VecD& xi0) {
  const int n = d.n(), nl = d.nl();
  VecD X = pad(z, 2 * n) + d.ad_sp(p) * pad(z, 2 * n);
  X.segment(nl, d.nm()).setZero();
  X.tail(d.nm()) += xi0;
  return vertex_from_double(d, p, X);
}

VertexElement vertex_from_double(const DoubleAlgebra& d, const VecD& p, const VecD& X) {
  const int n = d.n(), nl = d.nl();
  return {p, VecD(X.head(nl)), VecD(X.tail(n))};
}

VertexElement vertex_bracket(const DoubleAlgebra& d, const LEvaluator& l, const VecD& p, const VertexElement& x,
                             const VertexElement& y, double tol) {
  const QuasiBialgebra& g = d.source();
  const int n = d.n(), nl = d.nl();
  require_member(d, x, tol, "left argument");
  require_member(d, y, tol, "right argument");
  const MatD L = l(p);
  const VecD z = pad(x.z, n), zp = pad(y.z, n);
  const VecD& xi = x.xi;
  const VecD& xp = y.xi;
  const VecD Lx = L * xi, Lxp = L * xp;
  const MatD Az = g.ad(z), Azp = g.ad(zp), ALx = g.ad(Lx), ALxp = g.ad(Lxp);
  const VecD w = cobracket_pairing(g, xi, xp);

  VecD gpart = Az * zp;
  gpart += g.cobracket(z) * xp + Az * Lxp + L * (Az.transpose() * xp);
  gpart -= g.cobracket(zp) * xi + Azp * Lx + L * (Azp.transpose() * xi);
  gpart += ALx * Lxp + L * (ALx.transpose() * xp) - L * (ALxp.transpose() * xi);
  gpart += g.cobracket(Lx) * xp - g.cobracket(Lxp) * xi;
  gpart += L * w + phi_contract(g, xi, xp);

  VecD spart = -Az.transpose() * xp + Azp.transpose() * xi - w;
  spart += -ALx.transpose() * xp + ALxp.transpose() * xi;

  if (gpart.tail(n - nl).norm() > tol * std::max(1.0, gpart.norm()))
    throw MembershipError("bracket has a nonzero m-component");
  VertexElement out{p, VecD(gpart.head(nl)), spart};
  require_member(d, out, tol, "bracket");
  return out;
}

VecD vertex_bracket_twisted(const DoubleAlgebra& d, const MatD& L, const VecD& X, const VecD& Y) {
  return tau(L, d.bracket(tau(L, X, 1.0), tau(L, Y, 1.0)), -1.0);
}

VertexElement vertex_iso(const DoubleAlgebra& d, const LEvaluator& l, const VecD& p, const VertexElement& x,
                         double tol) {
  const int n = d.n(), nl = d.nl();
  require_member(d, x, tol, "argument");
  const MatD E = expm(MatD(-d.ad_sp(p)));
  const VecD Y = E * tau(l(p), x.in_double(n), 1.0);
  VertexElement out{VecD::Zero(nl), VecD(Y.head(nl)), VecD(Y.tail(n))};
  if (Y.segment(nl, d.nm()).norm() > tol * std::max(1.0, Y.norm()))
    throw MembershipError("image has a nonzero m-component");
  require_member(d, out, tol, "image");
  return out;
}

VertexElement vertex_iso_inv(const DoubleAlgebra& d, const VecD& p, const VertexElement& x0, double tol) {
  const int n = d.n(), nl = d.nl();
  require_member(d, x0, tol, "argument");
  const PhiSet<double> ph = phi_functions<double>(d.ad_sp(p));
  const VecD X0 = x0.in_double(n);
  const VecD a = ph.phi1 * X0, b = ph.phi0 * X0;
  VertexElement out{p, VecD(a.head(nl)), VecD(b.tail(n))};
  require_member(d, out, tol, "image");
  return out;
}

NUElement nabla(const DoubleAlgebra& d, const VecD& p, const VecD& alpha) {
  const NablaParts<double> np = nabla_parts<double>(d, p);
  return {VecD(np.u * alpha), VecD(np.stilde * alpha)};
}

FlatnessResiduals flatness_residual(const DoubleAlgebra& d, const LEvaluator& l, const VecD& p) {
  const int n = d.n(), nl = d.nl(), N = 2 * n;
  const NablaParts<double> np = nabla_parts<double>(d, p);
  const MatD L = l(p);
  std::vector<MatD> dL(nl), du(nl), ds(nl);
  for (int a = 0; a < nl; ++a) {
    const VecD e = VecD::Unit(nl, a);
    dL[a] = l.derivative(p, e);
    const NablaParts<Dual1> nd = nabla_parts<Dual1>(d, seed(p, e));
    du[a] = tangents(nd.u);
    ds[a] = tangents(nd.stilde);
  }
  auto in_g = [&](const VecD& v) { return pad(v, N); };
  auto in_gs = [&](const VecD& v) {
    VecD out = VecD::Zero(N);
    out.tail(n) = v;
    return out;
  };
  FlatnessResiduals res;
  for (int a = 0; a < nl; ++a) {
    const VecD ua = np.u.col(a), sa = np.stilde.col(a);
    const VecD lemma = np.u.col(a) - (np.h.col(a) - L * sa).head(nl);
    res.lemma_uh = std::max(res.lemma_uh, lemma.norm());
    for (int b = 0; b < nl; ++b) {
      const VecD ub = np.u.col(b), sb = np.stilde.col(b);
      // d_p(u beta)(alpha) = sum_c alpha_c d_c u beta with alpha = e_a.
      VecD f1 = du[a].col(b) - du[b].col(a) - d.bracket(in_g(ua), in_g(ub)).head(nl);
      for (int c = 0; c < nl; ++c) f1(c) += sa.dot(dL[c] * sb);
      VecD f2 = ds[a].col(b) - ds[b].col(a);
      const VecD Lsa = in_g(L * sa), Lsb = in_g(L * sb);
      const VecD br = d.bracket(in_g(ua), in_gs(sb)) + d.bracket(in_gs(sa), in_g(ub)) +
                      d.bracket(in_gs(sa), in_gs(sb)) + d.bracket(Lsa, in_gs(sb)) + d.bracket(in_gs(sa), Lsb);
      f2 -= br.tail(n);
      res.flat1 = std::max(res.flat1, f1.norm());
      res.flat2 = std::max(res.flat2, f2.norm());
    }
  }
  return res;
}

NUElement trivialize(const DoubleAlgebra& d, const VecD& p, const VecD& alpha, const VecD& x0) {
  auto r = trivialize_t<double>(d, p, alpha, x0);
  return {std::move(r.first), std::move(r.second)};
}

NUElement trivialize_with_l(const DoubleAlgebra& d, const LEvaluator& l, const VecD& p, const VecD& alpha,
                            const VecD& x0) {
  const int nl = d.nl();
  const NUElement nab = nabla(d, p, alpha);
  const VecD ex = expm(d.ad_sp(p)) * x0;
  const VecD t = tau(l(p), ex, -1.0);
  return {VecD(nab.z - t.head(nl)), VecD(nab.xi - ex.tail(d.n()))};
}

namespace {

void monomials(int nvars, int degree, std::vector<int>& cur, int var, std::vector<std::vector<int>>& out) {
  if (var == nvars) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= degree; ++e) {
    cur[var] = e;
    monomials(nvars, degree - e, cur, var + 1, out);
  }
  cur[var] = 0;
}

}  // namespace

SectionPoly random_section(const DoubleAlgebra& d, int degree, SplitMix64& rng) {
  const int nl = d.nl(), n = d.n();
  SectionPoly s{PolyMap(nl, nl), PolyMap(nl, n)};
  std::vector<std::vector<int>> monos;
  std::vector<int> cur(nl, 0);
  monomials(nl, degree, cur, 0, monos);
  for (const auto& m : monos) {
    s.alpha.add(m, rng.normal_vector(nl));
    s.x.add(m, rng.normal_vector(n));
  }
  return s;
}

MorphismResidual algebroid_morphism_residual(const DoubleAlgebra& d, const LEvaluator& l, const SectionPoly& s1,
                                             const SectionPoly& s2, const VecD& p, bool use_identity) {
  const QuasiBialgebra& g = d.source();
  const int n = d.n(), nl = d.nl(), nm = d.nm(), N = 2 * n;

  // g*_0 coordinates (l, l^perp) -> double vector.
  auto embed0 = [&](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    Vec<T> X = Vec<T>::Constant(N, T(0));
    X.head(nl) = x.head(nl);
    X.tail(nm) = x.tail(nm);
    return X;
  };
  auto apply_t = [&](const auto& q, const auto& alpha, const auto& x) {
    using T = typename std::decay_t<decltype(q)>::Scalar;
    const Vec<T> X0 = embed0(x);
    if (use_identity) {
      Vec<T> xi = d.s_embed(alpha).tail(n);
      xi += X0.tail(n);
      return std::pair<Vec<T>, Vec<T>>{Vec<T>(X0.head(nl)), xi};
    }
    return trivialize_t<T>(d, q, alpha, X0);
  };
  auto section = [&](const SectionPoly& s, const auto& q) {
    return apply_t(q, s.alpha.evaluate(q), s.x.evaluate(q));
  };
  auto anchor = [&](const VecD& z, const VecD& xi) { return VecD(xi.head(nl) - coad_l(g, pad(z, n), p)); };
  auto derivative = [&](const SectionPoly& s, const VecD& dir) {
    const auto r = section(s, seed(p, dir));
    return std::pair<VecD, VecD>{tangents(r.first), tangents(r.second)};
  };

  const auto t1 = section(s1, p), t2 = section(s2, p);
  const VecD& z1 = t1.first;
  const VecD& xi1 = t1.second;
  const VecD& z2 = t2.first;
  const VecD& xi2 = t2.second;
  const VecD a1 = anchor(z1, xi1), a2 = anchor(z2, xi2);
  const auto d2a1 = derivative(s2, a1), d1a2 = derivative(s1, a2);

  // Bracket of N(U).
  const MatD L = l(p);
  const VecD z1f = pad(z1, n), z2f = pad(z2, n);
  const MatD A1 = g.ad(z1f), A2 = g.ad(z2f);
  VecD zb = d2a1.first - d1a2.first - (A1 * z2f).head(nl);
  for (int c = 0; c < nl; ++c) zb(c) += xi1.dot(l.derivative(p, VecD::Unit(nl, c)) * xi2);
  const VecD Lx1 = L * xi1, Lx2 = L * xi2;
  VecD sb = d2a1.second - d1a2.second + A1.transpose() * xi2 - A2.transpose() * xi1 +
            cobracket_pairing(g, xi1, xi2) + g.ad(Lx1).transpose() * xi2 - g.ad(Lx2).transpose() * xi1;

  // Bracket of the trivial algebroid at p.
  const VecD al1 = s1.alpha.evaluate(p), al2 = s2.alpha.evaluate(p);
  const VecD x1 = s1.x.evaluate(p), x2 = s2.x.evaluate(p);
  const VecD al3 = s2.alpha.jacobian(p) * al1 - s1.alpha.jacobian(p) * al2;
  VecD x3 = s2.x.jacobian(p) * al1 - s1.x.jacobian(p) * al2;
  const VecD br = d.bracket(embed0(x1), embed0(x2));
  x3.head(nl) += br.head(nl);
  x3.tail(nm) += br.tail(nm);
  const auto t3 = apply_t(p, al3, x3);

  MorphismResidual res;
  res.bracket = std::max((t3.first - zb).norm(), (t3.second - sb).norm());
  res.anchor = std::max((a1 - al1).norm(), (a2 - al2).norm());
  return res;
}

DualData dual_over_l(const QuasiBialgebra& g) {
  const int n = g.n(), nl = g.nl(), N = 2 * n;
  if (!is_bidynamical(g, g.tol("structure", 1e-10) * g.scale()))
    throw NotBidynamical("bidynamical", "dual over l requires a bidynamical quasi-bialgebra");
  const DoubleAlgebra d(g);
  std::vector<int> order;
  for (int i = 0; i < nl; ++i) order.push_back(i);
  for (int i = n + nl; i < N; ++i) order.push_back(i);
  for (int i = n; i < n + nl; ++i) order.push_back(i);
  for (int i = nl; i < n; ++i) order.push_back(i);
  DualData out;
  out.pi = MatD::Zero(N, N);
  for (int col = 0; col < N; ++col) out.pi(order[col], col) = 1.0;
  LagrangianSplitting split{MatD(out.pi.leftCols(n)), MatD(out.pi.rightCols(n)), nl};
  out.gstar = extract_from_splitting(d, split, 1e-9 * g.scale());
  for (MatD& w : out.gstar.w) w = -w;
  out.gstar.name = g.name.empty() ? std::string() : g.name + "*";
  out.gstar.tolerances = g.tolerances;
  out.gstar.bidynamical = is_bidynamical(out.gstar, g.tol("structure", 1e-10) * out.gstar.scale());
  out.k = MatD::Zero(N, N);
  for (int r = 0; r < N; ++r) out.k(r, r) = (r < nl || r >= n + nl) ? 1.0 : -1.0;
  out.m = out.k * out.pi;
  const DoubleAlgebra ds(out.gstar);
  for (int i = 0; i < N; ++i) {
    const MatD lhs = out.m * ds.ad_basis(i);
    const MatD rhs = d.ad(VecD(out.m.col(i))) * out.m;
    out.iso_residual = std::max(out.iso_residual, max_abs(MatD(lhs - rhs)));
  }
  return out;
}

namespace {

MatD half_rmx(int n) {
  MatD R = MatD::Zero(2 * n, 2 * n);
  R.topRightCorner(n, n) = -0.5 * MatD::Identity(n, n);
  R.bottomLeftCorner(n, n) = 0.5 * MatD::Identity(n, n);
  return R;
}

MatD link_shift(int n, int nl) {
  // (p_l - p_{m^perp}) composed with the form.
  const int N = 2 * n;
  MatD P = MatD::Zero(N, N);
  for (int i = 0; i < nl; ++i) P(i, i) = 1.0, P(n + i, n + i) = -1.0;
  MatD om = MatD::Zero(N, N);
  om.topRightCorner(n, n) = MatD::Identity(n, n);
  om.bottomLeftCorner(n, n) = MatD::Identity(n, n);
  return P * om;
}

}  // namespace

DoubleBidyn double_bidyn(const QuasiBialgebra& g) {
  const int n = g.n(), nl = g.nl(), N = 2 * n;
  const DoubleAlgebra d(g);
  std::vector<std::string> labels = g.basis.labels;
  for (int i = 0; i < n; ++i) labels.push_back(g.basis.labels.size() == static_cast<std::size_t>(n)
                                                    ? g.basis.labels[i] + "*"
                                                    : "e" + std::to_string(i) + "*");
  DecomposedBasis basis{nl, N - nl, labels};
  if (basis.labels.size() != static_cast<std::size_t>(N)) basis = DecomposedBasis::with_default_labels(nl, N - nl);
  DoubleBidyn out{QuasiBialgebra::zero(basis, g.name.empty() ? std::string() : g.name + "^(2)"), half_rmx(n)};
  QuasiBialgebra& g2 = out.g2;
  g2.c = d.bracket_tensor();
  for (int k = 0; k < N; ++k) {
    const MatD A = d.ad_basis(k);
    g2.w[k] = A * out.rmx + out.rmx * A.transpose();
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) g2.phi(a, b, c) = g.phi(a, b, c);
  g2.tolerances = g.tolerances;
  g2.bidynamical = is_bidynamical(g2, g.tol("structure", 1e-10) * g2.scale());
  return out;
}

RmxRelation rmx_relation(const QuasiBialgebra& g) {
  const int n = g.n(), nl = g.nl();
  const DualData dd = dual_over_l(g);
  const MatD R = half_rmx(n);
  const MatD KRK = dd.m * half_rmx(n) * dd.m.transpose();
  const MatD shift = link_shift(n, nl);
  return {max_abs(MatD(KRK + R - shift)), max_abs(MatD(KRK - R - shift))};
}

LinkContext::LinkContext(const QuasiBialgebra& g)
    : g_(g),
      dual_(dual_over_l(g)),
      bidyn_(double_bidyn(g)),
      d_(std::make_shared<const DoubleAlgebra>(g_)),
      dstar_(std::make_shared<const DoubleAlgebra>(dual_.gstar)),
      d2_(std::make_shared<const DoubleAlgebra>(bidyn_.g2)) {}

LinkResult LinkContext::evaluate(const VecD& p) const {
  const int n = g_.n(), nl = g_.nl(), N = 2 * n;
  const QuasiBialgebra& g2 = bidyn_.g2;
  MatD J = MatD::Zero(N, n);
  J.topRows(n) = MatD::Identity(n, n);
  const MatD L = lcan_matrix(*d_, p);
  const MatD Ls = lcan_matrix(*dstar_, p);
  const MatD JLJ = J * L * J.transpose();

  LinkResult res;
  res.functoriality = max_abs(MatD(JLJ - lcan_matrix(*d2_, p)));

  const MatD lhs = dual_.m * (J * Ls * J.transpose()) * dual_.m.transpose();
  const VecD sigma = -d_->s_embed(p);
  MatD dsigma = MatD::Zero(N, nl);
  dsigma.middleRows(n, nl) = -MatD::Identity(nl, nl);
  const MatD A = g2.ad(sigma);
  const PhiSet<double> ph = phi_functions<double>(A);
  const MatD& Ad = ph.phi0;
  MatD rho_istar = MatD::Zero(N, N);
  rho_istar.leftCols(nl) = ph.phi1 * dsigma;
  const MatD theta = rho_istar * Ad.transpose() - rho_istar.transpose();
  const MatD& R = bidyn_.rmx;
  const MatD pi = Ad * R * Ad.transpose() - R;
  res.cocycle_consistency = max_abs(MatD(pi - group_cocycle<double>(g2, sigma)));
  const MatD rhs = Ad * JLJ * Ad.transpose() + theta + pi - link_shift(n, nl);
  res.link = max_abs(MatD(lhs - rhs));
  return res;
}

LinkResult link_residual(const QuasiBialgebra& g, const VecD& p) { return LinkContext(g).evaluate(p); }

}  // namespace dynlforge
