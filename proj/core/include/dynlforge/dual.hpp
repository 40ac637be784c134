#pragma once

#include <cmath>
#include <limits>
#include <type_traits>

#include <Eigen/Core>

namespace dynlforge {

/// First-order dual number v + d*eps with eps^2 = 0. Nesting Dual<Dual<double>>
/// gives second derivatives.
template <class T>
class Dual {
 public:
  T v{};
  T d{};

  Dual() : v(0), d(0) {}
  template <class U>
    requires std::is_arithmetic_v<U>
  Dual(U x) : v(static_cast<double>(x)), d(0) {}
  Dual(const T& value, const T& deriv) : v(value), d(deriv) {}

  /// The variable x0 + eps.
  static Dual variable(const T& x0) { return Dual(x0, T(1)); }

  Dual& operator+=(const Dual& o) {
    v += o.v;
    d += o.d;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    d -= o.d;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    d = d * o.v + v * o.d;
    v *= o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    T inv = T(1) / o.v;
    v = v * inv;
    d = (d - v * o.d) * inv;
    return *this;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
  friend Dual operator-(const Dual& a) { return Dual(-a.v, -a.d); }
  friend Dual operator+(const Dual& a) { return a; }

  template <class U>
    requires std::is_arithmetic_v<U>
  friend Dual operator*(const Dual& a, U s) {
    return Dual(a.v * static_cast<double>(s), a.d * static_cast<double>(s));
  }
  template <class U>
    requires std::is_arithmetic_v<U>
  friend Dual operator*(U s, const Dual& a) {
    return a * s;
  }
  template <class U>
    requires std::is_arithmetic_v<U>
  friend Dual operator/(const Dual& a, U s) {
    return a * (1.0 / static_cast<double>(s));
  }

  friend bool operator==(const Dual& a, const Dual& b) { return a.v == b.v && a.d == b.d; }
  friend bool operator!=(const Dual& a, const Dual& b) { return !(a == b); }
  // Ordering compares values only; Eigen needs it for a few reductions.
  friend bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
  friend bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }
  friend bool operator<=(const Dual& a, const Dual& b) { return a.v <= b.v; }
  friend bool operator>=(const Dual& a, const Dual& b) { return a.v >= b.v; }
};

using Dual1 = Dual<double>;
using Dual2 = Dual<Dual<double>>;

inline double value_of(double x) { return x; }
template <class T>
double value_of(const Dual<T>& x) {
  return value_of(x.v);
}

template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  using std::sqrt;
  T s = sqrt(x.v);
  return Dual<T>(s, x.d / (2.0 * s));
}
template <class T>
Dual<T> abs(const Dual<T>& x) {
  return value_of(x) < 0 ? -x : x;
}

}  // namespace dynlforge

namespace Eigen {

template <class T>
struct NumTraits<dynlforge::Dual<T>> : GenericNumTraits<dynlforge::Dual<T>> {
  using Real = dynlforge::Dual<T>;
  using NonInteger = Real;
  using Nested = Real;
  using Literal = Real;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2 * NumTraits<T>::ReadCost,
    AddCost = 2 * NumTraits<T>::AddCost,
    MulCost = 3 * NumTraits<T>::MulCost
  };
  static Real epsilon() { return Real(std::numeric_limits<double>::epsilon()); }
  static Real dummy_precision() { return Real(1e-12); }
  static Real highest() { return Real(std::numeric_limits<double>::max()); }
  static Real lowest() { return Real(std::numeric_limits<double>::lowest()); }
  static int digits10() { return std::numeric_limits<double>::digits10; }
};

}  // namespace Eigen
