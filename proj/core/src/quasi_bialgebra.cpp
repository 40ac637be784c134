#include "dynlforge/quasi_bialgebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "dynlforge/double_algebra.hpp"
#include "dynlforge/errors.hpp"
#include "json.hpp"

namespace dynlforge {

DecomposedBasis DecomposedBasis::with_default_labels(int dim_l, int dim_m) {
  DecomposedBasis b;
  b.dim_l = dim_l;
  b.dim_m = dim_m;
  for (int i = 0; i < dim_l; ++i) b.labels.push_back("z" + std::to_string(i));
  for (int j = 0; j < dim_m; ++j) b.labels.push_back("u" + std::to_string(j));
  return b;
}

double Tensor3::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

MatD QuasiBialgebra::ad(const VecD& x) const {
  const int N = n();
  MatD out = MatD::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) out(k, j) += x(i) * c(i, j, k);
  }
  return out;
}

MatD QuasiBialgebra::ad_basis(int i) const { return ad(VecD::Unit(n(), i)); }

MatD QuasiBialgebra::cobracket(const VecD& x) const {
  MatD out = MatD::Zero(n(), n());
  for (int i = 0; i < n(); ++i)
    if (x(i) != 0.0) out += x(i) * w[i];
  return out;
}

double QuasiBialgebra::scale() const {
  double s = std::max({1.0, c.max_abs(), phi.max_abs()});
  for (const auto& m : w) s = std::max(s, max_abs(m));
  return s;
}

double tolerance_scale() {
  const char* env = std::getenv("DYNLFORGE_TOL_SCALE");
  if (!env) return 1.0;
  char* end = nullptr;
  double v = std::strtod(env, &end);
  if (end == env || !(v > 0.0) || !std::isfinite(v)) return 1.0;
  return v;
}

double QuasiBialgebra::tol(const std::string& key, double fallback) const {
  auto it = tolerances.find(key);
  return (it == tolerances.end() ? fallback : it->second) * tolerance_scale();
}

QuasiBialgebra QuasiBialgebra::zero(const DecomposedBasis& basis, std::string name) {
  QuasiBialgebra g;
  g.name = std::move(name);
  g.basis = basis;
  g.c = Tensor3(basis.n());
  g.phi = Tensor3(basis.n());
  g.w.assign(basis.n(), MatD::Zero(basis.n(), basis.n()));
  return g;
}

namespace {

std::vector<SparseEntry> sparse_of(const Tensor3& t) {
  std::vector<SparseEntry> out;
  const int n = t.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (t(i, j, k) != 0.0) out.push_back({i, j, k, t(i, j, k)});
  return out;
}

}  // namespace

std::vector<SparseEntry> QuasiBialgebra::sparse_brackets() const { return sparse_of(c); }
std::vector<SparseEntry> QuasiBialgebra::sparse_phi() const { return sparse_of(phi); }
std::vector<SparseEntry> QuasiBialgebra::sparse_cobracket() const {
  std::vector<SparseEntry> out;
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j)
      for (int k = 0; k < n(); ++k)
        if (w[i](j, k) != 0.0) out.push_back({i, j, k, w[i](j, k)});
  return out;
}

void add_wedge3(Tensor3& phi, int a, int b, int c, double v) {
  phi(a, b, c) += v;
  phi(b, c, a) += v;
  phi(c, a, b) += v;
  phi(b, a, c) -= v;
  phi(a, c, b) -= v;
  phi(c, b, a) -= v;
}

void add_bracket(Tensor3& c, int i, int j, int k, double v) {
  c(i, j, k) += v;
  c(j, i, k) -= v;
}

double tensor_distance(const QuasiBialgebra& a, const QuasiBialgebra& b) {
  if (a.nl() != b.nl() || a.nm() != b.nm()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  const int n = a.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        d = std::max(d, std::abs(a.c(i, j, k) - b.c(i, j, k)));
        d = std::max(d, std::abs(a.phi(i, j, k) - b.phi(i, j, k)));
        d = std::max(d, std::abs(a.w[i](j, k) - b.w[i](j, k)));
      }
  return d;
}

bool ValidationReport::ok() const {
  return std::all_of(items.begin(), items.end(), [](const Residual& r) { return r.pass(); });
}

const Residual* ValidationReport::find(const std::string& name) const {
  for (const auto& r : items)
    if (r.name == name) return &r;
  return nullptr;
}

bool is_bidynamical(const QuasiBialgebra& g, double tol) {
  const int nl = g.nl(), n = g.n();
  for (int z = 0; z < nl; ++z)
    if (max_abs(g.w[z]) > tol) return false;
  for (int a = nl; a < n; ++a)
    for (int b = nl; b < n; ++b)
      for (int c = nl; c < n; ++c)
        if (std::abs(g.phi(a, b, c)) > tol) return false;
  return true;
}

ValidationReport structure_residuals(const QuasiBialgebra& g) {
  const int n = g.n(), nl = g.nl();
  const double tol = g.tol("structure", 1e-10) * g.scale();
  ValidationReport rep;
  auto add = [&](const std::string& name, double v) { rep.items.push_back({name, v, tol}); };

  double anti = 0.0, lsub = 0.0, red = 0.0, phianti = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        anti = std::max(anti, std::abs(g.c(i, j, k) + g.c(j, i, k)));
        if (i < nl && j < nl && k >= nl) lsub = std::max(lsub, std::abs(g.c(i, j, k)));
        if (i < nl && j >= nl && k < nl) red = std::max(red, std::abs(g.c(i, j, k)));
        phianti = std::max(phianti, std::abs(g.phi(i, j, k) + g.phi(j, i, k)));
        phianti = std::max(phianti, std::abs(g.phi(i, j, k) + g.phi(i, k, j)));
      }
  double skew = 0.0;
  for (const auto& m : g.w) skew = std::max(skew, max_abs(MatD(m + m.transpose())));

  // Jacobi of g.
  double jac = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int o = 0; o < n; ++o) {
          double s = 0.0;
          for (int m = 0; m < n; ++m)
            s += g.c(i, j, m) * g.c(m, k, o) + g.c(j, k, m) * g.c(m, i, o) + g.c(k, i, m) * g.c(m, j, o);
          jac = std::max(jac, std::abs(s));
        }

  add("antisymmetry", anti);
  add("phi_antisymmetry", phianti);
  add("cobracket_skew", skew);
  add("jacobi_g", jac);
  add("l_subalgebra", lsub);
  add("reductivity", red);

  DoubleAlgebra d(g);
  add("double_jacobi", d.jacobi_residual());
  add("double_invariance", d.invariance_residual());

  double wl = 0.0, phil = 0.0;
  for (int z = 0; z < nl; ++z) wl = std::max(wl, max_abs(g.w[z]));
  for (int a = nl; a < n; ++a)
    for (int b = nl; b < n; ++b)
      for (int c = nl; c < n; ++c) phil = std::max(phil, std::abs(g.phi(a, b, c)));
  if (g.bidynamical) {
    add("bidynamical_varpi_l", wl);
    add("bidynamical_phi_mod_l", phil);
  }
  return rep;
}

ValidationReport validate(const QuasiBialgebra& g) {
  if (g.n() < 1) throw StructureError("dimension", "setup must have n >= 1");
  if (static_cast<int>(g.basis.labels.size()) != g.n())
    throw StructureError("labels", "label count differs from dim_l + dim_m");
  ValidationReport rep = structure_residuals(g);
  for (const auto& r : rep.items) {
    if (r.pass()) continue;
    const std::string msg = r.name + " residual " + format_residual(r.value) + " exceeds " +
                            format_residual(r.tol);
    if (r.name == "double_jacobi" || r.name == "double_invariance") throw AxiomError(r.name, msg);
    if (r.name.rfind("bidynamical", 0) == 0) throw NotBidynamical(r.name, msg);
    throw StructureError(r.name, msg);
  }
  return rep;
}

namespace {

using nlohmann::json;

double parse_value(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    try {
      auto slash = s.find('/');
      std::size_t pos = 0;
      if (slash == std::string::npos) {
        double x = std::stod(s, &pos);
        if (pos != s.size()) throw ParseError("bad number '" + s + "'");
        return x;
      }
      double num = std::stod(s.substr(0, slash), &pos);
      if (pos != slash) throw ParseError("bad rational '" + s + "'");
      const std::string den_s = s.substr(slash + 1);
      double den = std::stod(den_s, &pos);
      if (pos != den_s.size() || den == 0.0) throw ParseError("bad rational '" + s + "'");
      return num / den;
    } catch (const std::logic_error&) {
      throw ParseError("bad number '" + s + "'");
    }
  }
  throw ParseError("structure constant must be a number or a numeric string");
}

int parse_index(const json& v, int n) {
  if (!v.is_number_integer()) throw ParseError("index must be an integer");
  int i = v.get<int>();
  if (i < 0 || i >= n) throw ParseError("index " + std::to_string(i) + " out of range");
  return i;
}

}  // namespace

QuasiBialgebra load_setup(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("setup must be a JSON object");
  try {
    for (const char* key : {"dim_l", "dim_m"})
      if (!doc.contains(key) || !doc[key].is_number_integer())
        throw ParseError(std::string("missing integer field '") + key + "'");
    DecomposedBasis basis;
    basis.dim_l = doc["dim_l"].get<int>();
    basis.dim_m = doc["dim_m"].get<int>();
    if (basis.dim_l < 0 || basis.dim_m < 0 || basis.n() < 1)
      throw ParseError("dimensions must satisfy dim_l, dim_m >= 0 and dim_l + dim_m >= 1");
    if (doc.contains("labels")) {
      if (!doc["labels"].is_array()) throw ParseError("labels must be an array");
      for (const auto& l : doc["labels"]) {
        if (!l.is_string()) throw ParseError("labels must be strings");
        basis.labels.push_back(l.get<std::string>());
      }
      if (static_cast<int>(basis.labels.size()) != basis.n())
        throw ParseError("label count differs from dim_l + dim_m");
    } else {
      basis = DecomposedBasis::with_default_labels(basis.dim_l, basis.dim_m);
    }
    const int n = basis.n();
    QuasiBialgebra g = QuasiBialgebra::zero(basis, doc.value("name", std::string("unnamed")));
    auto read4 = [&](const char* key, auto&& sink) {
      if (!doc.contains(key)) return;
      if (!doc[key].is_array()) throw ParseError(std::string(key) + " must be an array");
      for (const auto& e : doc[key]) {
        if (!e.is_array() || e.size() != 4)
          throw ParseError(std::string(key) + " entries must be [i, j, k, value]");
        sink(parse_index(e[0], n), parse_index(e[1], n), parse_index(e[2], n), parse_value(e[3]));
      }
    };
    read4("brackets", [&](int i, int j, int k, double v) { g.c(i, j, k) = v; });
    read4("cobracket", [&](int i, int j, int k, double v) { g.w[i](j, k) = v; });
    read4("phi", [&](int a, int b, int c, double v) { g.phi(a, b, c) = v; });
    if (doc.contains("bidynamical")) {
      if (!doc["bidynamical"].is_boolean()) throw ParseError("bidynamical must be a boolean");
      g.bidynamical = doc["bidynamical"].get<bool>();
    }
    if (doc.contains("tolerances")) {
      if (!doc["tolerances"].is_object()) throw ParseError("tolerances must be an object");
      for (const auto& [k, v] : doc["tolerances"].items()) {
        if (!v.is_number()) throw ParseError("tolerance values must be numbers");
        g.tolerances[k] = v.get<double>();
      }
    }
    validate(g);
    return g;
  } catch (const json::exception& e) {
    throw ParseError(std::string("schema violation: ") + e.what());
  }
}

std::string setup_to_json(const QuasiBialgebra& g, int indent) {
  json doc;
  doc["name"] = g.name;
  doc["dim_l"] = g.nl();
  doc["dim_m"] = g.nm();
  doc["labels"] = g.basis.labels;
  auto dump4 = [](const std::vector<SparseEntry>& es) {
    json arr = json::array();
    for (const auto& e : es) arr.push_back({e.i, e.j, e.k, e.v});
    return arr;
  };
  doc["brackets"] = dump4(g.sparse_brackets());
  doc["cobracket"] = dump4(g.sparse_cobracket());
  doc["phi"] = dump4(g.sparse_phi());
  doc["bidynamical"] = g.bidynamical;
  json tol = json::object();
  for (const auto& [k, v] : g.tolerances) tol[k] = v;
  doc["tolerances"] = tol;
  return doc.dump(indent);
}

}  // namespace dynlforge
