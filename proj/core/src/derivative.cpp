#include "dynlforge/derivative.hpp"

#include <algorithm>
#include <stdexcept>

namespace dynlforge {

MatD MatrixJet::evaluate(double t) const {
  if (coeffs.empty()) return MatD();
  // Horner.
  MatD acc = coeffs.back();
  for (int k = order() - 1; k >= 0; --k) acc = acc * t + coeffs[k];
  return acc;
}

MatrixJet operator*(const MatrixJet& a, const MatrixJet& b) {
  if (a.coeffs.empty() || b.coeffs.empty()) return {};
  if (a.coeffs[0].cols() != b.coeffs[0].rows())
    throw std::invalid_argument("MatrixJet: dimension mismatch");
  const int order = std::min(a.order(), b.order());
  MatrixJet out;
  out.coeffs.assign(order + 1, MatD::Zero(a.coeffs[0].rows(), b.coeffs[0].cols()));
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  return out;
}

}  // namespace dynlforge
