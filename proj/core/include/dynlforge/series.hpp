#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

namespace dynlforge {

/// Monomial table for truncated power series in `nvars` variables with total
/// degree <= `order`. Monomials are graded: all degree-k monomials occupy the
/// contiguous index range [degree_begin(k), degree_begin(k+1)).
class SeriesLayout {
 public:
  struct Product {
    int i, j, k;
  };
  struct Deriv {
    int src, dst;
    double factor;
  };

  SeriesLayout(int nvars, int order);

  /// Shared, cached layout; thread-safe.
  static std::shared_ptr<const SeriesLayout> get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(degree_.size()); }
  int degree(int idx) const { return degree_[idx]; }
  int degree_begin(int k) const { return start_[k]; }
  int exponent(int idx, int var) const { return exps_[idx * nvars_ + var]; }
  /// Index of the monomial with the given exponents, or -1 if its degree exceeds the order.
  int index_of(const std::vector<int>& e) const;
  int variable_index(int var) const { return var_index_[var]; }

  const std::vector<Product>& products() const { return products_; }
  const std::vector<Deriv>& derivative_table(int var) const { return deriv_[var]; }

 private:
  int nvars_, order_;
  std::vector<int> exps_;
  std::vector<int> degree_;
  std::vector<int> start_;
  std::vector<int> var_index_;
  std::vector<Product> products_;
  std::vector<std::vector<Deriv>> deriv_;
};

/// Truncated multivariate Taylor series with double coefficients. A series
/// without layout is a plain constant and adapts to the layout of the other
/// operand in mixed arithmetic.
class Series {
 public:
  using LayoutPtr = std::shared_ptr<const SeriesLayout>;

  Series() : c_(1, 0.0) {}
  template <class U>
    requires std::is_arithmetic_v<U>
  Series(U x) : c_(1, static_cast<double>(x)) {}
  explicit Series(LayoutPtr layout);

  static Series constant(const LayoutPtr& layout, double value);
  /// value + x_var
  static Series variable(const LayoutPtr& layout, int var, double value = 0.0);

  const LayoutPtr& layout() const { return layout_; }
  bool is_constant_only() const { return layout_ == nullptr; }
  double value() const { return c_[0]; }
  double coeff(int idx) const { return layout_ ? c_[idx] : (idx == 0 ? c_[0] : 0.0); }
  double& coeff_ref(int idx) { return c_[idx]; }
  double coeff(const std::vector<int>& exps) const;
  const std::vector<double>& coeffs() const { return c_; }

  /// Homogeneous part of degree k.
  Series homogeneous(int k) const;
  /// Partial derivative in variable var (order drops are truncated consistently).
  Series derivative(int var) const;
  /// Sum of coefficient magnitudes of degree k.
  double degree_norm(int k) const;
  /// Evaluate the polynomial at a point.
  double evaluate(const std::vector<double>& x) const;

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(const Series& o);
  Series& operator/=(const Series& o);
  Series& operator*=(double s);

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator/(Series a, const Series& b) { return a /= b; }
  friend Series operator-(Series a) {
    for (double& x : a.c_) x = -x;
    return a;
  }
  friend Series operator+(const Series& a) { return a; }
  template <class U>
    requires std::is_arithmetic_v<U>
  friend Series operator*(Series a, U s) {
    return a *= static_cast<double>(s);
  }
  template <class U>
    requires std::is_arithmetic_v<U>
  friend Series operator*(U s, Series a) {
    return a *= static_cast<double>(s);
  }
  template <class U>
    requires std::is_arithmetic_v<U>
  friend Series operator/(Series a, U s) {
    return a *= 1.0 / static_cast<double>(s);
  }

  friend bool operator==(const Series& a, const Series& b);
  friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }
  friend bool operator<(const Series& a, const Series& b) { return a.value() < b.value(); }
  friend bool operator>(const Series& a, const Series& b) { return a.value() > b.value(); }
  friend bool operator<=(const Series& a, const Series& b) { return a.value() <= b.value(); }
  friend bool operator>=(const Series& a, const Series& b) { return a.value() >= b.value(); }

 private:
  void promote(const LayoutPtr& layout);
  Series reciprocal() const;

  LayoutPtr layout_;
  std::vector<double> c_;
};

inline double value_of(const Series& s) { return s.value(); }

}  // namespace dynlforge

namespace Eigen {

template <>
struct NumTraits<dynlforge::Series> : GenericNumTraits<dynlforge::Series> {
  using Real = dynlforge::Series;
  using NonInteger = Real;
  using Nested = Real;
  using Literal = Real;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 16,
    MulCost = 64
  };
  static Real epsilon() { return Real(std::numeric_limits<double>::epsilon()); }
  static Real dummy_precision() { return Real(1e-12); }
  static Real highest() { return Real(std::numeric_limits<double>::max()); }
  static Real lowest() { return Real(std::numeric_limits<double>::lowest()); }
  static int digits10() { return std::numeric_limits<double>::digits10; }
};

}  // namespace Eigen
