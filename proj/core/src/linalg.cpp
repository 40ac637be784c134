#include "dynlforge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace dynlforge {

double condition_estimate(const MatD& a) {
  if (a.size() == 0) return 1.0;
  if (!a.allFinite()) return std::numeric_limits<double>::infinity();
  Eigen::PartialPivLU<MatD> lu(a);
  // The rcond estimator misses exactly zero pivots, so check them first.
  const auto piv = lu.matrixLU().diagonal().cwiseAbs();
  if (!(piv.minCoeff() > 0.0)) return std::numeric_limits<double>::infinity();
  const double rc = lu.rcond();
  if (!(rc > 0.0) || !std::isfinite(rc)) return std::numeric_limits<double>::infinity();
  return std::max(1.0 / rc, piv.maxCoeff() / piv.minCoeff());
}

double norm2(const MatD& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<MatD> svd(a);
  return svd.singularValues()(0);
}

}  // namespace dynlforge
