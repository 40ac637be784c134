#pragma once

#include <memory>
#include <vector>

#include "dynlforge/quasi_bialgebra.hpp"

namespace dynlforge {

/// A finite-dimensional Lie algebra with an invariant symmetric form.
class QuadraticLieAlgebra {
 public:
  QuadraticLieAlgebra() = default;
  QuadraticLieAlgebra(Tensor3 bracket, MatD omega);

  int dim() const { return bracket_.size(); }
  const Tensor3& bracket_tensor() const { return bracket_; }
  const MatD& omega() const { return omega_; }

  /// Matrix of ad_X: column j holds [X, e_j].
  template <class T>
  Mat<T> ad(const Vec<T>& x) const {
    const int n = dim();
    Mat<T> out = zeros<T>(n, n);
    for (int a = 0; a < n; ++a) {
      if (value_of(x(a)) == 0.0 && x(a) == T(0)) continue;
      for (const auto& e : nonzeros_[a]) out(e.row, e.col) += x(a) * e.v;
    }
    return out;
  }
  MatD ad_basis(int a) const;
  template <class T>
  Vec<T> bracket(const Vec<T>& x, const Vec<T>& y) const {
    return ad(x) * y;
  }
  double pairing(const VecD& x, const VecD& y) const { return x.dot(omega_ * y); }

  double jacobi_residual() const;
  double invariance_residual() const;

 private:
  struct Entry {
    int row, col;
    double v;
  };
  Tensor3 bracket_;
  MatD omega_;
  std::vector<std::vector<Entry>> nonzeros_;
};

/// The Drinfel'd double d = g + g* of a quasi-bialgebra, with the canonical
/// pairing (x + xi, y + eta) = <xi, y> + <eta, x>.
class DoubleAlgebra : public QuadraticLieAlgebra {
 public:
  /// Builds the bracket without checking axioms (see build_double).
  explicit DoubleAlgebra(const QuasiBialgebra& g);

  const QuasiBialgebra& source() const { return *source_; }
  std::shared_ptr<const QuasiBialgebra> source_ptr() const { return source_; }
  const DecomposedBasis& basis() const { return source_->basis; }
  int n() const { return source_->n(); }
  int nl() const { return source_->nl(); }
  int nm() const { return source_->nm(); }

  /// s p for p in l*: places p on the m^perp block.
  template <class T>
  Vec<T> s_embed(const Vec<T>& p) const {
    Vec<T> out = Vec<T>::Constant(dim(), T(0));
    for (int i = 0; i < nl(); ++i) out(n() + i) = p(i);
    return out;
  }
  template <class T>
  Mat<T> ad_sp(const Vec<T>& p) const {
    return ad(s_embed(p));
  }

  /// Coordinate projections on the double.
  MatD proj_l() const;
  MatD proj_m() const;
  MatD proj_mperp() const;
  MatD proj_lperp() const;
  MatD proj_g() const;
  MatD proj_gstar() const;

 private:
  std::shared_ptr<const QuasiBialgebra> source_;
};

/// Builds d and verifies Jacobi and pairing invariance (AxiomError otherwise).
DoubleAlgebra build_double(const QuasiBialgebra& g);

/// A pair (a, b) of n-dimensional subspaces of a 2n-dimensional quadratic Lie
/// algebra given by spanning columns; a must be a subalgebra, both isotropic.
struct LagrangianSplitting {
  MatD a;
  MatD b;
  int dim_l = 0;  ///< first dim_l columns of a span the l-part of the result
};

/// Reads off the quasi-bialgebra on a (b identified with a* via the form).
QuasiBialgebra extract_from_splitting(const QuadraticLieAlgebra& d, const LagrangianSplitting& split,
                                      double tol = 1e-9);

/// G^t: complement g* replaced by the graph {t xi + xi}.
QuasiBialgebra twist(const QuasiBialgebra& g, const MatD& t);

/// Conjugation by op = +1 on l, -1 on m.
QuasiBialgebra opposite(const QuasiBialgebra& g);

}  // namespace dynlforge
