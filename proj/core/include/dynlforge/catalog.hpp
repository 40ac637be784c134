#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dynlforge/quasi_bialgebra.hpp"

namespace dynlforge {

using Rational = boost::multiprecision::cpp_rational;

/// Polynomial in one parameter a with rational coefficients (index = power).
using RatPoly = std::vector<Rational>;

/// Truncated univariate power series in x whose coefficients are
/// polynomials in a parameter a (constant polynomials for plain series).
class ParamSeries {
 public:
  ParamSeries() = default;
  explicit ParamSeries(int terms) : c_(terms, RatPoly{Rational(0)}) {}
  static ParamSeries constant(int terms, const Rational& v);
  static ParamSeries x(int terms);
  static ParamSeries param(int terms);  ///< the series equal to a

  int terms() const { return static_cast<int>(c_.size()); }
  const RatPoly& coeff(int k) const { return c_[k]; }
  RatPoly& coeff(int k) { return c_[k]; }
  /// Coefficient of x^k a^j.
  Rational at(int k, int j = 0) const;
  /// Numeric value of the x^k coefficient at a given parameter value.
  double coeff_value(int k, double a = 0.0) const;

  ParamSeries truncated(int terms) const;
  ParamSeries derivative() const;
  /// Multiplication by x^s (s >= 0) or division by x^{-s} (requires zeros).
  ParamSeries shifted(int s) const;
  int valuation() const;  ///< index of the first nonzero coefficient (-1 if zero)

  friend ParamSeries operator+(const ParamSeries& a, const ParamSeries& b);
  friend ParamSeries operator-(const ParamSeries& a, const ParamSeries& b);
  friend ParamSeries operator-(const ParamSeries& a);
  friend ParamSeries operator*(const ParamSeries& a, const ParamSeries& b);
  friend ParamSeries operator*(const Rational& s, const ParamSeries& a);
  /// Division; the leading coefficient of b must be a nonzero constant and the
  /// valuation of a at least that of b.
  friend ParamSeries operator/(const ParamSeries& a, const ParamSeries& b);
  /// Largest |coefficient| over all x- and a-powers (exact).
  Rational max_abs() const;
  bool is_zero() const;

 private:
  std::vector<RatPoly> c_;
};

/// Elementary series with `terms` coefficients.
ParamSeries series_exp(int terms, int sign = 1);
ParamSeries series_sin(int terms);
ParamSeries series_cos(int terms);
ParamSeries series_sinh(int terms);
ParamSeries series_cosh(int terms);
ParamSeries series_tanh(int terms);

struct ScalarSeries {
  std::string name;
  ParamSeries series;
  int support_mod = 0;      ///< 0 means no declared pattern
  int support_residue = 0;  ///< nonzero coefficients only at k = residue mod `support_mod`
  /// True when every nonzero coefficient sits on the declared support.
  bool support_holds() const;
  /// Evaluates sum c_k z^k at a = param (truncated sum).
  double evaluate(double z, double param = 0.0) const;
};

/// Names: F, G, H, Fstar, Gstar, Hstar, cothm, tanh, ev (1/(coth x - a)) and
/// coth_shift (coth(x + b) in the parameter beta = coth b). Coefficients of
/// x^0 .. x^N are exact. Results are memoized (thread-safe).
ScalarSeries scalar_series(const std::string& name, int N);

struct ScalarOdeResidual {
  std::string system;
  Rational max_abs;  ///< exact maximum over residual coefficients through order N
  bool zero() const { return max_abs == 0; }
};

/// Systems: FGH, FGHstar, ev_coth_given, ev_coth, ev_l_given, ev_l,
/// ev_l_reflected. The *_given systems use the stated differential equations,
/// which the functions do not satisfy; ev_coth / ev_l are the equations they
/// do satisfy; ev_l_reflected applies the stated equation to x -> 1/(coth(-x) - a).
ScalarOdeResidual scalar_ode_residual(const std::string& system, int N);
std::vector<std::string> scalar_ode_systems();

/// Built-in setups: sl2-cartan, sl2-cocomm-compat, so3-quadratic-AM,
/// heisenberg-degenerate, sl2-ev-twist, sl2-ev-twist(alpha,MU),
/// sl2-ev-twist(none,+1|-1). Throws UnknownName otherwise.
QuasiBialgebra catalog_get(const std::string& name);
std::vector<std::string> catalog_names();

/// Etingof-Varchenko r-matrix on sl2 (basis h, e, f) at p with shift mu:
/// -1/4 coth(p/4 + mu/4) on the (f, e*) entry and its negative on (e, f*).
MatD ev_r_matrix(double p, double mu);
/// The same shape with coth(mu/4) replaced by t_alpha (rEV_0 for given t).
MatD ev_r_constant(double t_alpha);

}  // namespace dynlforge
