#pragma once

#include <cstdint>
#include <utility>

#include "dynlforge/gauge.hpp"

namespace dynlforge {

/// Element z + xi of the vertex algebra g*_p, subject to i* xi = ad*_z p.
struct VertexElement {
  VecD p;   ///< point of l*
  VecD z;   ///< l-component (dim_l)
  VecD xi;  ///< g*-component (n)

  /// Coordinates in the double (2n).
  VecD in_double(int n) const;
};

/// Membership defect |xi_{m^perp} - (ad_{sp} z)_{m^perp}|.
double membership_residual(const DoubleAlgebra& d, const VertexElement& x);
/// Builds z + ad_{sp} z + xi0 with xi0 in l^perp (dim_m).
VertexElement make_vertex_element(const DoubleAlgebra& d, const VecD& p, const VecD& z, const VecD& xi0);
/// Reads a double vector with vanishing m-part as a vertex element at p.
VertexElement vertex_from_double(const DoubleAlgebra& d, const VecD& p, const VecD& X);

/// [X, Y]*_p term by term from the closed form. Throws MembershipError
/// when an input or the output leaves g*_p (tolerance `tol`).
VertexElement vertex_bracket(const DoubleAlgebra& d, const LEvaluator& l, const VecD& p, const VertexElement& x,
                             const VertexElement& y, double tol = 1e-8);
/// Independent evaluation tau_{-l}[tau_l X, tau_l Y]_d.
VecD vertex_bracket_twisted(const DoubleAlgebra& d, const MatD& L, const VecD& X, const VecD& Y);

/// phi_p(X) = e^{-ad_sp} tau_{l_p} X, landing in g*_0.
VertexElement vertex_iso(const DoubleAlgebra& d, const LEvaluator& l, const VecD& p, const VertexElement& x,
                         double tol = 1e-8);
/// Inverse (p_l phi_1(ad_sp) + p_{g*} e^{ad_sp}) X0.
VertexElement vertex_iso_inv(const DoubleAlgebra& d, const VecD& p, const VertexElement& x0, double tol = 1e-8);

/// Section value (z, xi) of N(U) = U x l x g*.
struct NUElement {
  VecD z;   ///< dim_l
  VecD xi;  ///< n
};

/// u_p alpha = p_l phi_2(ad_sp) s alpha, s~_p alpha = p_{g*} phi_1(ad_sp) s alpha
/// and h_p alpha = p_g phi_1(ad_sp) s alpha, for a generic scalar type.
template <class T>
struct NablaParts {
  Mat<T> u;       ///< dim_l x dim_l
  Mat<T> stilde;  ///< n x dim_l
  Mat<T> h;       ///< n x dim_l
};

template <class T>
NablaParts<T> nabla_parts(const DoubleAlgebra& d, const Vec<T>& p) {
  const int n = d.n(), nl = d.nl();
  const Mat<T> x = d.ad_sp(p);
  const PhiSet<T> ph = phi_functions(x);
  NablaParts<T> out;
  out.u = ph.phi2.block(0, n, nl, nl);
  out.stilde = ph.phi1.block(n, n, n, nl);
  out.h = ph.phi1.block(0, n, n, nl);
  return out;
}

/// nabla_p(alpha) = (u_p alpha, s~_p alpha).
NUElement nabla(const DoubleAlgebra& d, const VecD& p, const VecD& alpha);

struct FlatnessResiduals {
  double flat1 = 0.0;
  double flat2 = 0.0;
  double lemma_uh = 0.0;  ///< |u_p alpha - (h_p alpha - l_p s~_p alpha)_l|
};
/// Both flatness identities over basis pairs alpha, beta, with dual-number
/// derivatives, and the identity u = h - l s~ on the l-block.
FlatnessResiduals flatness_residual(const DoubleAlgebra& d, const LEvaluator& l, const VecD& p);

/// T_p(alpha, X0) in the form without l (X0 a double vector in l + l^perp).
template <class T>
std::pair<Vec<T>, Vec<T>> trivialize_t(const DoubleAlgebra& d, const Vec<T>& p, const Vec<T>& alpha,
                                       const Vec<T>& x0) {
  const int n = d.n(), nl = d.nl();
  const Mat<T> x = d.ad_sp(p);
  const PhiSet<T> ph = phi_functions(x);
  const Vec<T> sa = d.s_embed(alpha);
  const Vec<T> a2 = ph.phi2 * sa, a1 = ph.phi1 * sa, c1 = ph.phi1 * x0, c0 = ph.phi0 * x0;
  return {Vec<T>(a2.head(nl) - c1.head(nl)), Vec<T>(a1.tail(n) - c0.tail(n))};
}

NUElement trivialize(const DoubleAlgebra& d, const VecD& p, const VecD& alpha, const VecD& x0);
/// The form (u_p alpha - p_l tau_{-l} e^{ad_sp} X0, s~_p alpha - p_{g*} e^{ad_sp} X0).
NUElement trivialize_with_l(const DoubleAlgebra& d, const LEvaluator& l, const VecD& p, const VecD& alpha,
                            const VecD& x0);

/// Polynomial section of the trivial algebroid U x (l* + g*_0): alpha(p) in
/// l* and x(p) in g*_0 = l + l^perp (coordinates: l-block then l^perp-block).
struct SectionPoly {
  PolyMap alpha;
  PolyMap x;
};

/// Random section with coefficients of degree <= degree.
SectionPoly random_section(const DoubleAlgebra& d, int degree, SplitMix64& rng);

struct MorphismResidual {
  double bracket = 0.0;
  double anchor = 0.0;
  double max() const { return std::max(bracket, anchor); }
};

/// Compares T([s, s']_trivial) with [T s, T s']_{N(U)} and the anchors at p.
/// With `use_identity` the trivialization is replaced by the naive map
/// (alpha, z + xi) -> (z, s alpha + xi) (negative control).
MorphismResidual algebroid_morphism_residual(const DoubleAlgebra& d, const LEvaluator& l, const SectionPoly& s1,
                                             const SectionPoly& s2, const VecD& p, bool use_identity = false);

/// G* = dual over l and its identification with G.
struct DualData {
  QuasiBialgebra gstar;
  MatD pi;  ///< d*-coordinates -> d-coordinates (permutation)
  MatD k;   ///< sign diagonal in d-coordinates (+1 on l + l^perp)
  MatD m;   ///< k * pi, the Lie algebra isomorphism d* -> d
  double iso_residual = 0.0;
};

/// Reads G* from the splitting (l + l^perp, m^perp + m), negates the
/// cobracket and checks the isomorphism of doubles. Requires G bidynamical.
DualData dual_over_l(const QuasiBialgebra& g);

struct DoubleBidyn {
  QuasiBialgebra g2;
  MatD rmx;  ///< 1/2 (p_{g*} - p_g) as a map d* -> d in double coordinates
};

/// G^(2) = (d, [,]_d, coboundary of rmx, j^(3) phi) with reductive split
/// d = l + (m + g*).
DoubleBidyn double_bidyn(const QuasiBialgebra& g);

struct LinkResult {
  double link = 0.0;                ///< |K j* l*(G*) j** K* - (j l j*)^{s^{-1}} + p_l - p_{m^perp}|
  double functoriality = 0.0;       ///< |j lcan(G) j* - lcan(G^(2))|
  double cocycle_consistency = 0.0; ///< coboundary vs phi_1 integration of pi
};

struct RmxRelation {
  double plus = 0.0;   ///< |K rmx* K* + rmx - (p_l - p_{m^perp})|
  double minus = 0.0;  ///< |K rmx* K* - rmx - (p_l - p_{m^perp})|
};

/// The rmx relation between G^(2) and (G*)^(2).
RmxRelation rmx_relation(const QuasiBialgebra& g);

/// Context holding the derived structures for repeated link evaluations.
class LinkContext {
 public:
  explicit LinkContext(const QuasiBialgebra& g);
  LinkResult evaluate(const VecD& p) const;
  const DualData& dual() const { return dual_; }
  const DoubleBidyn& bidyn() const { return bidyn_; }

 private:
  QuasiBialgebra g_;
  DualData dual_;
  DoubleBidyn bidyn_;
  std::shared_ptr<const DoubleAlgebra> d_, dstar_, d2_;
};

LinkResult link_residual(const QuasiBialgebra& g, const VecD& p);

}  // namespace dynlforge
