#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace dynlforge {

/// Compact scientific formatting for residual messages.
inline std::string format_residual(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed setup document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A structural invariant (antisymmetry, Jacobi, reductivity, ...) is violated.
/// `residual()` names the failing check.
class StructureError : public Error {
 public:
  StructureError(std::string residual, const std::string& what)
      : Error(what), residual_(std::move(residual)) {}
  const std::string& residual() const { return residual_; }

 private:
  std::string residual_;
};

/// The bidynamical flag was requested but varpi_l != 0 or phi is not 0 mod l.
class NotBidynamical : public StructureError {
 public:
  using StructureError::StructureError;
};

/// (g, varpi, phi) does not define a Lie quasi-bialgebra.
class AxiomError : public StructureError {
 public:
  using StructureError::StructureError;
};

/// A lagrangian splitting fails isotropy, complementarity or closure.
class SplitError : public Error {
 public:
  using Error::Error;
};

/// A linear solve exceeded the condition threshold: p lies outside the
/// computational domain of analyticity.
class OutsideAnalyticDomain : public Error {
 public:
  OutsideAnalyticDomain(double cond, const std::string& what) : Error(what), cond_(cond) {}
  double condition() const { return cond_; }

 private:
  double cond_;
};

/// An element does not satisfy the vertex-algebra membership constraint.
class MembershipError : public Error {
 public:
  using Error::Error;
};

/// Unknown catalog entry or suite name.
class UnknownName : public Error {
 public:
  using Error::Error;
};

}  // namespace dynlforge
