#include "dynlforge/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <regex>
#include <stdexcept>

#include "dynlforge/double_algebra.hpp"
#include "dynlforge/errors.hpp"

namespace dynlforge {

namespace {

void trim(RatPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
  if (p.empty()) p.push_back(Rational(0));
}

RatPoly poly_add(const RatPoly& a, const RatPoly& b, const Rational& sb = Rational(1)) {
  RatPoly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += sb * b[i];
  trim(out);
  return out;
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  RatPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

bool poly_zero(const RatPoly& p) {
  return std::all_of(p.begin(), p.end(), [](const Rational& r) { return r == 0; });
}

Rational factorial(int k) {
  Rational f(1);
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

ParamSeries scaled(const ParamSeries& s, const Rational& factor) {
  ParamSeries out = s;
  Rational f(1);
  for (int k = 0; k < s.terms(); ++k) {
    for (Rational& c : out.coeff(k)) c *= f;
    f *= factor;
  }
  return out;
}

}  // namespace

ParamSeries ParamSeries::constant(int terms, const Rational& v) {
  ParamSeries s(terms);
  if (terms > 0) s.c_[0] = RatPoly{v};
  return s;
}

ParamSeries ParamSeries::x(int terms) {
  ParamSeries s(terms);
  if (terms > 1) s.c_[1] = RatPoly{Rational(1)};
  return s;
}

ParamSeries ParamSeries::param(int terms) {
  ParamSeries s(terms);
  if (terms > 0) s.c_[0] = RatPoly{Rational(0), Rational(1)};
  return s;
}

Rational ParamSeries::at(int k, int j) const {
  if (k < 0 || k >= terms() || j < 0 || j >= static_cast<int>(c_[k].size())) return Rational(0);
  return c_[k][j];
}

double ParamSeries::coeff_value(int k, double a) const {
  double acc = 0.0;
  for (int j = static_cast<int>(c_[k].size()) - 1; j >= 0; --j) acc = acc * a + c_[k][j].convert_to<double>();
  return acc;
}

ParamSeries ParamSeries::truncated(int t) const {
  ParamSeries out = *this;
  out.c_.resize(std::min(t, terms()));
  return out;
}

ParamSeries ParamSeries::derivative() const {
  ParamSeries out(std::max(terms() - 1, 0));
  for (int k = 1; k < terms(); ++k) {
    RatPoly p = c_[k];
    for (Rational& c : p) c *= k;
    out.c_[k - 1] = p;
  }
  return out;
}

ParamSeries ParamSeries::shifted(int s) const {
  if (s >= 0) {
    ParamSeries out(terms());
    for (int k = 0; k + s < terms(); ++k) out.c_[k + s] = c_[k];
    return out;
  }
  for (int k = 0; k < std::min(-s, terms()); ++k)
    if (!poly_zero(c_[k])) throw std::domain_error("ParamSeries::shifted: nonzero low-order coefficient");
  ParamSeries out(std::max(terms() + s, 0));
  for (int k = -s; k < terms(); ++k) out.c_[k + s] = c_[k];
  return out;
}

int ParamSeries::valuation() const {
  for (int k = 0; k < terms(); ++k)
    if (!poly_zero(c_[k])) return k;
  return -1;
}

ParamSeries operator+(const ParamSeries& a, const ParamSeries& b) {
  ParamSeries out(std::min(a.terms(), b.terms()));
  for (int k = 0; k < out.terms(); ++k) out.c_[k] = poly_add(a.c_[k], b.c_[k]);
  return out;
}

ParamSeries operator-(const ParamSeries& a, const ParamSeries& b) {
  ParamSeries out(std::min(a.terms(), b.terms()));
  for (int k = 0; k < out.terms(); ++k) out.c_[k] = poly_add(a.c_[k], b.c_[k], Rational(-1));
  return out;
}

ParamSeries operator-(const ParamSeries& a) { return Rational(-1) * a; }

ParamSeries operator*(const ParamSeries& a, const ParamSeries& b) {
  const int t = std::min(a.terms(), b.terms());
  ParamSeries out(t);
  for (int i = 0; i < t; ++i) {
    if (poly_zero(a.c_[i])) continue;
    for (int j = 0; i + j < t; ++j) {
      if (poly_zero(b.c_[j])) continue;
      out.c_[i + j] = poly_add(out.c_[i + j], poly_mul(a.c_[i], b.c_[j]));
    }
  }
  return out;
}

ParamSeries operator*(const Rational& s, const ParamSeries& a) {
  ParamSeries out = a;
  for (RatPoly& p : out.c_) {
    for (Rational& c : p) c *= s;
    trim(p);
  }
  return out;
}

ParamSeries operator/(const ParamSeries& a, const ParamSeries& b) {
  const int v = b.valuation();
  if (v < 0) throw std::domain_error("ParamSeries: division by zero series");
  const ParamSeries num = a.shifted(-v);
  const ParamSeries den = b.shifted(-v);
  const RatPoly& lead = den.c_[0];
  if (lead.size() != 1 || lead[0] == 0)
    throw std::domain_error("ParamSeries: leading divisor coefficient must be a nonzero constant");
  const Rational inv = Rational(1) / lead[0];
  const int t = std::min(num.terms(), den.terms());
  ParamSeries q(t);
  for (int k = 0; k < t; ++k) {
    RatPoly acc = num.c_[k];
    for (int j = 1; j <= k; ++j)
      if (!poly_zero(den.c_[j])) acc = poly_add(acc, poly_mul(den.c_[j], q.c_[k - j]), Rational(-1));
    for (Rational& c : acc) c *= inv;
    trim(acc);
    q.c_[k] = acc;
  }
  return q;
}

Rational ParamSeries::max_abs() const {
  Rational m(0);
  for (const RatPoly& p : c_)
    for (const Rational& c : p) m = std::max(m, Rational(abs(c)));
  return m;
}

bool ParamSeries::is_zero() const { return valuation() < 0; }

ParamSeries series_exp(int terms, int sign) {
  ParamSeries s(terms);
  for (int k = 0; k < terms; ++k) s.coeff(k) = RatPoly{Rational((sign < 0 && k % 2) ? -1 : 1) / factorial(k)};
  return s;
}

namespace {

// sum over k = offset mod 2 of sgn^{(k - offset)/2} x^k / k!
ParamSeries trig_like(int terms, int offset, int sgn) {
  ParamSeries s(terms);
  for (int k = offset; k < terms; k += 2) {
    const int m = (k - offset) / 2;
    s.coeff(k) = RatPoly{Rational((sgn < 0 && m % 2) ? -1 : 1) / factorial(k)};
  }
  return s;
}

}  // namespace

ParamSeries series_sin(int terms) { return trig_like(terms, 1, -1); }
ParamSeries series_cos(int terms) { return trig_like(terms, 0, -1); }
ParamSeries series_sinh(int terms) { return trig_like(terms, 1, 1); }
ParamSeries series_cosh(int terms) { return trig_like(terms, 0, 1); }
ParamSeries series_tanh(int terms) { return series_sinh(terms) / series_cosh(terms); }

bool ScalarSeries::support_holds() const {
  if (support_mod == 0) return true;
  for (int k = 0; k < series.terms(); ++k)
    if (((k % support_mod) + support_mod) % support_mod != support_residue)
      for (const Rational& c : series.coeff(k))
        if (c != 0) return false;
  return true;
}

double ScalarSeries::evaluate(double z, double param) const {
  double acc = 0.0;
  for (int k = series.terms() - 1; k >= 0; --k) acc = acc * z + series.coeff_value(k, param);
  return acc;
}

namespace {

ScalarSeries compute_series(const std::string& name, int N) {
  const int T = N + 12;  // headroom for valuation shifts in divisions
  const ParamSeries s = series_sin(T), c = series_cos(T), sh = series_sinh(T), ch = series_cosh(T);
  const ParamSeries z = ParamSeries::x(T);
  const ParamSeries one = ParamSeries::constant(T, Rational(1));
  const ParamSeries den = ch * s + c * sh;
  ScalarSeries out;
  out.name = name;
  if (name == "F") {
    out.series = (ch * c - one) / den;
    out.support_mod = 4, out.support_residue = 3;
  } else if (name == "G") {
    out.series = (sh * s) / den;
    out.support_mod = 4, out.support_residue = 1;
  } else if (name == "H") {
    out.series = (c * (z * ch - sh) - s * ch + z) / (z * den);
    out.support_mod = 4, out.support_residue = 3;
  } else if (name == "Fstar") {
    out.series = Rational(2) * (s * sh) / den;
    out.support_mod = 4, out.support_residue = 1;
  } else if (name == "Gstar") {
    const ParamSeries w = s * ch - c * sh;
    const ParamSeries ch2 = scaled(ch, Rational(2)), c2 = scaled(c, Rational(2));
    out.series = Rational(-2) * (w * w) / (ch2 * c2 - one);
    out.support_mod = 4, out.support_residue = 2;
  } else if (name == "Hstar") {
    out.series = (Rational(2) * z * c * ch - s * ch - c * sh) / (z * den);
    out.support_mod = 4, out.support_residue = 3;
  } else if (name == "cothm") {
    out.series = (z * ch - sh) / (z * sh);
    out.support_mod = 2, out.support_residue = 1;
  } else if (name == "tanh") {
    out.series = sh / ch;
    out.support_mod = 2, out.support_residue = 1;
  } else if (name == "ev") {
    const ParamSeries t = sh / ch;
    out.series = t / (one - ParamSeries::param(T) * t);
  } else if (name == "ev_reflected") {
    const ParamSeries t = sh / ch;
    out.series = -(t / (one + ParamSeries::param(T) * t));
  } else if (name == "coth_shift") {
    const ParamSeries t = sh / ch;
    const ParamSeries beta = ParamSeries::param(T);
    out.series = (beta + t) / (one + beta * t);
  } else {
    throw UnknownName("unknown scalar series '" + name + "'");
  }
  out.series = out.series.truncated(N + 1);
  if (out.series.terms() < N + 1) throw std::logic_error("scalar_series: insufficient headroom");
  return out;
}

}  // namespace

ScalarSeries scalar_series(const std::string& name, int N) {
  if (N < 0 || N > 64) throw std::invalid_argument("scalar_series: N must lie in [0, 64]");
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, ScalarSeries> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({name, N});
    if (it != memo.end()) return it->second;
  }
  ScalarSeries s = compute_series(name, N);
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(std::make_pair(name, N), std::move(s)).first->second;
}

std::vector<std::string> scalar_ode_systems() {
  return {"FGH", "FGHstar", "ev_coth_given", "ev_coth", "ev_l_given", "ev_l", "ev_l_reflected"};
}

ScalarOdeResidual scalar_ode_residual(const std::string& system, int N) {
  // Series are taken one order higher so that derivatives are exact through x^N.
  auto get = [N](const char* n) { return scalar_series(n, std::min(N + 1, 64)).series; };
  std::vector<ParamSeries> res;
  const int T = std::min(N + 1, 64) + 1;
  const ParamSeries z = ParamSeries::x(T), one = ParamSeries::constant(T, Rational(1));
  if (system == "FGH") {
    const ParamSeries F = get("F"), G = get("G"), H = get("H");
    res.push_back(z * F.derivative() + z * (F * F + G * G));
    res.push_back(z * G.derivative() - z + z * G * (H + F) + G);
    res.push_back(z * H.derivative() + z * G * G + z * H * H + Rational(2) * H);
  } else if (system == "FGHstar") {
    const ParamSeries F = get("Fstar"), G = get("Gstar"), H = get("Hstar");
    res.push_back(z * F.derivative() - z * (one + G * G));
    res.push_back(z * G.derivative() - z * F + z * G * H + G);
    res.push_back(z * H.derivative() + Rational(2) * z * G + z * H * H + Rational(2) * H);
  } else if (system == "ev_coth_given" || system == "ev_coth") {
    const ParamSeries f = get("coth_shift");
    const ParamSeries sq = f * f;
    res.push_back(system == "ev_coth" ? f.derivative() + sq - one : f.derivative() - sq - one);
  } else if (system == "ev_l_given" || system == "ev_l" || system == "ev_l_reflected") {
    const ParamSeries f = get(system == "ev_l_reflected" ? "ev_reflected" : "ev");
    const ParamSeries a = ParamSeries::param(T);
    const ParamSeries q = (a * a - one) * f * f + Rational(2) * a * f;
    res.push_back(system == "ev_l" ? f.derivative() - one - q : f.derivative() + q + one);
  } else {
    throw UnknownName("unknown scalar ODE system '" + system + "'");
  }
  ScalarOdeResidual out{system, Rational(0)};
  for (const ParamSeries& r : res) out.max_abs = std::max(out.max_abs, r.truncated(N + 1).max_abs());
  return out;
}

MatD ev_r_constant(double t_alpha) {
  MatD r = MatD::Zero(3, 3);
  r(2, 1) = -t_alpha / 4.0;
  r(1, 2) = t_alpha / 4.0;
  return r;
}

MatD ev_r_matrix(double p, double mu) { return ev_r_constant(1.0 / std::tanh(p / 4.0 + mu / 4.0)); }

namespace {

QuasiBialgebra make_sl2(const std::string& name, double kappa) {
  DecomposedBasis b{1, 2, {"h", "e", "f"}};
  QuasiBialgebra g = QuasiBialgebra::zero(b, name);
  add_bracket(g.c, 0, 1, 1, 2.0);
  add_bracket(g.c, 0, 2, 2, -2.0);
  add_bracket(g.c, 1, 2, 0, 1.0);
  add_wedge3(g.phi, 0, 1, 2, kappa);
  g.bidynamical = true;
  return g;
}

QuasiBialgebra make_so3() {
  DecomposedBasis b{3, 0, {"e1", "e2", "e3"}};
  QuasiBialgebra g = QuasiBialgebra::zero(b, "so3-quadratic-AM");
  add_bracket(g.c, 0, 1, 2, 1.0);
  add_bracket(g.c, 1, 2, 0, 1.0);
  add_bracket(g.c, 2, 0, 1, 1.0);
  add_wedge3(g.phi, 0, 1, 2, 0.25);
  g.bidynamical = true;
  return g;
}

QuasiBialgebra make_heisenberg() {
  DecomposedBasis b{2, 3, {"x1", "x2", "y1", "y2", "z"}};
  QuasiBialgebra g = QuasiBialgebra::zero(b, "heisenberg-degenerate");
  add_bracket(g.c, 0, 2, 4, 1.0);
  add_bracket(g.c, 1, 3, 4, 1.0);
  add_wedge3(g.phi, 0, 1, 4, 1.0);
  add_wedge3(g.phi, 0, 3, 4, 0.5);
  g.bidynamical = true;
  return g;
}

QuasiBialgebra make_ev_twist(const std::string& name, double t_alpha) {
  QuasiBialgebra base = make_sl2("sl2-cartan", -1.0 / 16.0);
  QuasiBialgebra g = twist(base, ev_r_constant(t_alpha));
  g.name = name;
  g.bidynamical = true;
  return g;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"sl2-cartan", "sl2-cocomm-compat", "so3-quadratic-AM", "sl2-ev-twist", "heisenberg-degenerate"};
}

QuasiBialgebra catalog_get(const std::string& name) {
  QuasiBialgebra g;
  if (name == "sl2-cartan") {
    g = make_sl2(name, -1.0 / 16.0);
  } else if (name == "sl2-cocomm-compat") {
    g = make_sl2(name, 1.0);
  } else if (name == "so3-quadratic-AM") {
    g = make_so3();
  } else if (name == "heisenberg-degenerate") {
    g = make_heisenberg();
  } else if (name == "sl2-ev-twist") {
    g = make_ev_twist(name, 1.0 / std::tanh(0.25));
  } else {
    static const std::regex alpha_re(R"(sl2-ev-twist\(\s*(alpha|\{alpha\})\s*,\s*([-+0-9.eE]+)\s*\))");
    static const std::regex none_re(R"(sl2-ev-twist\(\s*(none|\{\}|empty)\s*,\s*([+-]?1)\s*\))");
    std::smatch m;
    if (std::regex_match(name, m, alpha_re)) {
      double mu = 0.0;
      try {
        mu = std::stod(m[2].str());
      } catch (const std::exception&) {
        throw UnknownName("bad shift in catalog name '" + name + "'");
      }
      if (mu == 0.0 || !std::isfinite(mu)) throw UnknownName("shift must be finite and nonzero in '" + name + "'");
      g = make_ev_twist(name, 1.0 / std::tanh(mu / 4.0));
    } else if (std::regex_match(name, m, none_re)) {
      g = make_ev_twist(name, m[2].str() == "-1" ? -1.0 : 1.0);
    } else {
      throw UnknownName("unknown catalog entry '" + name + "'");
    }
  }
  validate(g);
  return g;
}

}  // namespace dynlforge
