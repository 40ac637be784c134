#pragma once

#include <Eigen/Dense>

#include "dynlforge/dual.hpp"
#include "dynlforge/series.hpp"

namespace dynlforge {

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
using MatD = Mat<double>;
using VecD = Vec<double>;

template <class T>
struct scalar_of {
  using type = typename T::Scalar;
};
template <class M>
using scalar_t = typename scalar_of<std::decay_t<M>>::type;

template <class T>
Mat<T> zeros(Eigen::Index r, Eigen::Index c) {
  return Mat<T>::Constant(r, c, T(0));
}
template <class T>
Mat<T> identity(Eigen::Index n) {
  Mat<T> m = zeros<T>(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = T(1);
  return m;
}

/// Value part of a matrix of (possibly nested) dual numbers or series.
template <class Derived>
MatD values(const Eigen::MatrixBase<Derived>& a) {
  MatD out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = value_of(a(i, j));
  return out;
}

/// Derivative part of a matrix of first-order duals.
inline MatD tangents(const Mat<Dual1>& a) {
  MatD out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = a(i, j).d;
  return out;
}

template <class T, class Derived>
Mat<T> lift(const Eigen::MatrixBase<Derived>& a) {
  Mat<T> out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = T(a(i, j));
  return out;
}

/// Largest absolute entry (0 for empty matrices).
template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
  return a.size() == 0 ? 0.0 : values(a).cwiseAbs().maxCoeff();
}

/// Spectral norm (largest singular value) of a real matrix.
double norm2(const MatD& a);

}  // namespace dynlforge
