#include "dynlforge/double_algebra.hpp"

#include <algorithm>
#include <cmath>

#include "dynlforge/errors.hpp"
#include "dynlforge/linalg.hpp"

namespace dynlforge {

QuadraticLieAlgebra::QuadraticLieAlgebra(Tensor3 bracket, MatD omega)
    : bracket_(std::move(bracket)), omega_(std::move(omega)) {
  const int n = bracket_.size();
  nonzeros_.resize(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (bracket_(a, b, c) != 0.0) nonzeros_[a].push_back({c, b, bracket_(a, b, c)});
}

MatD QuadraticLieAlgebra::ad_basis(int a) const { return ad(VecD(VecD::Unit(dim(), a))); }

double QuadraticLieAlgebra::jacobi_residual() const {
  const int n = dim();
  std::vector<MatD> ads(n);
  for (int a = 0; a < n; ++a) ads[a] = ad_basis(a);
  double r = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      VecD v = ads[a].col(b);
      MatD lhs = ad(v);
      MatD rhs = ads[a] * ads[b] - ads[b] * ads[a];
      r = std::max(r, max_abs(MatD(lhs - rhs)));
    }
  return r;
}

double QuadraticLieAlgebra::invariance_residual() const {
  double r = 0.0;
  for (int a = 0; a < dim(); ++a) {
    MatD m = ad_basis(a);
    r = std::max(r, max_abs(MatD(m.transpose() * omega_ + omega_ * m)));
  }
  return r;
}

namespace {

Tensor3 double_bracket(const QuasiBialgebra& g) {
  const int n = g.n();
  Tensor3 d(2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) d(i, j, k) = g.c(i, j, k);
  // [x_i, e^j] = varpi_{x_i} e^j - ad*_{x_i} e^j, with (ad*_{x_i} e^j)_k = c(i,k,j).
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        d(i, n + j, k) = g.w[i](k, j);
        d(i, n + j, n + k) = -g.c(i, k, j);
      }
      for (int k = 0; k < 2 * n; ++k) d(n + j, i, k) = -d(i, n + j, k);
    }
  // [e^a, e^b] = <e^a (x) e^b (x) 1, phi> - <e^a, varpi_. e^b>.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) {
        d(n + a, n + b, k) = g.phi(a, b, k);
        d(n + a, n + b, n + k) = -g.w[k](a, b);
      }
  return d;
}

MatD canonical_omega(int n) {
  MatD om = MatD::Zero(2 * n, 2 * n);
  om.topRightCorner(n, n).setIdentity();
  om.bottomLeftCorner(n, n).setIdentity();
  return om;
}

MatD diag_proj(int N, int begin, int count) {
  MatD p = MatD::Zero(N, N);
  for (int i = begin; i < begin + count; ++i) p(i, i) = 1.0;
  return p;
}

}  // namespace

DoubleAlgebra::DoubleAlgebra(const QuasiBialgebra& g)
    : QuadraticLieAlgebra(double_bracket(g), canonical_omega(g.n())),
      source_(std::make_shared<const QuasiBialgebra>(g)) {}

MatD DoubleAlgebra::proj_l() const { return diag_proj(dim(), 0, nl()); }
MatD DoubleAlgebra::proj_m() const { return diag_proj(dim(), nl(), nm()); }
MatD DoubleAlgebra::proj_mperp() const { return diag_proj(dim(), n(), nl()); }
MatD DoubleAlgebra::proj_lperp() const { return diag_proj(dim(), n() + nl(), nm()); }
MatD DoubleAlgebra::proj_g() const { return diag_proj(dim(), 0, n()); }
MatD DoubleAlgebra::proj_gstar() const { return diag_proj(dim(), n(), n()); }

DoubleAlgebra build_double(const QuasiBialgebra& g) {
  DoubleAlgebra d(g);
  const double tol = g.tol("structure", 1e-10) * g.scale();
  const double jac = d.jacobi_residual();
  if (!(jac <= tol))
    throw AxiomError("double_jacobi", "double Jacobi residual " + format_residual(jac) + " exceeds " +
                                          format_residual(tol));
  const double inv = d.invariance_residual();
  if (!(inv <= tol))
    throw AxiomError("double_invariance", "pairing invariance residual " + format_residual(inv) +
                                              " exceeds " + format_residual(tol));
  return d;
}

QuasiBialgebra extract_from_splitting(const QuadraticLieAlgebra& d, const LagrangianSplitting& split,
                                      double tol) {
  const int N = d.dim();
  const MatD& A = split.a;
  const MatD& B = split.b;
  if (N % 2 != 0 || A.rows() != N || B.rows() != N || A.cols() != N / 2 || B.cols() != N / 2)
    throw SplitError("splitting must consist of two n-dimensional subspaces of a 2n-dimensional space");
  const int n = N / 2;
  if (split.dim_l < 0 || split.dim_l > n) throw SplitError("dim_l out of range");
  const MatD& om = d.omega();
  const double iso_a = max_abs(MatD(A.transpose() * om * A));
  const double iso_b = max_abs(MatD(B.transpose() * om * B));
  if (iso_a > tol) throw SplitError("subspace a is not isotropic (" + std::to_string(iso_a) + ")");
  if (iso_b > tol) throw SplitError("subspace b is not isotropic (" + std::to_string(iso_b) + ")");
  const MatD M = A.transpose() * om * B;
  if (condition_estimate(M) > 1e10) throw SplitError("pairing between a and b is degenerate");
  const MatD Bp = B * M.inverse();
  MatD P(N, N);
  P << A, Bp;
  const MatD Pinv = P.inverse();

  // Structure constants in the adapted basis: D'(i, j, :) = P^{-1} [P_i, P_j].
  std::vector<MatD> adP(N);
  for (int i = 0; i < N; ++i) adP[i] = d.ad(VecD(P.col(i)));
  Tensor3 dp(N);
  for (int i = 0; i < N; ++i) {
    MatD cols = Pinv * adP[i] * P;  // column j = coordinates of [P_i, P_j]
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) dp(i, j, k) = cols(k, j);
  }
  double closure = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = n; k < N; ++k) closure = std::max(closure, std::abs(dp(i, j, k)));
  if (closure > tol) throw SplitError("subspace a is not a subalgebra (" + std::to_string(closure) + ")");

  QuasiBialgebra g = QuasiBialgebra::zero(DecomposedBasis::with_default_labels(split.dim_l, n - split.dim_l));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        g.c(i, j, k) = dp(i, j, k);
        g.phi(i, j, k) = dp(n + i, n + j, k);
        g.w[k](i, j) = -dp(n + i, n + j, n + k);
      }
  return g;
}

QuasiBialgebra twist(const QuasiBialgebra& g, const MatD& t) {
  const int n = g.n();
  DoubleAlgebra d(g);
  LagrangianSplitting split;
  split.a = MatD::Zero(2 * n, n);
  split.a.topRows(n).setIdentity();
  split.b = MatD::Zero(2 * n, n);
  split.b.topRows(n) = t;
  split.b.bottomRows(n).setIdentity();
  split.dim_l = g.nl();
  QuasiBialgebra out = extract_from_splitting(d, split, 1e-9 * std::max(1.0, max_abs(t)) * g.scale());
  out.name = g.name.empty() ? std::string() : g.name + "^t";
  out.basis = g.basis;
  out.tolerances = g.tolerances;
  out.bidynamical = is_bidynamical(out, g.tol("structure", 1e-10) * out.scale());
  return out;
}

QuasiBialgebra opposite(const QuasiBialgebra& g) {
  const int n = g.n(), nl = g.nl();
  auto o = [nl](int i) { return i < nl ? 1.0 : -1.0; };
  QuasiBialgebra out = g;
  out.name = g.name.empty() ? std::string() : g.name + "^op";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        out.c(i, j, k) = o(i) * o(j) * o(k) * g.c(i, j, k);
        out.phi(i, j, k) = o(i) * o(j) * o(k) * g.phi(i, j, k);
        out.w[k](i, j) = o(k) * o(i) * o(j) * g.w[k](i, j);
      }
  return out;
}

}  // namespace dynlforge
