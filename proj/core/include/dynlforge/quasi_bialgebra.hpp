#pragma once

#include <map>
#include <string>
#include <vector>

#include "dynlforge/matrix.hpp"

namespace dynlforge {

/// Basis of g = l + m (l-block first) and of the double d = g + g* in the
/// order l, m, m^perp, l^perp. m^perp carries the dual basis of the l-block,
/// l^perp the dual basis of the m-block.
struct DecomposedBasis {
  int dim_l = 0;
  int dim_m = 0;
  std::vector<std::string> labels;

  int n() const { return dim_l + dim_m; }
  int dim_double() const { return 2 * n(); }
  // Positions in the double.
  int l(int i) const { return i; }
  int m(int j) const { return dim_l + j; }
  int mperp(int i) const { return n() + i; }
  int lperp(int j) const { return n() + dim_l + j; }

  static DecomposedBasis with_default_labels(int dim_l, int dim_m);
};

/// Dense cubic array of side n.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n, 0.0) {}

  int size() const { return n_; }
  double& operator()(int i, int j, int k) { return data_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k]; }
  double operator()(int i, int j, int k) const {
    return data_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k];
  }
  double max_abs() const;
  const std::vector<double>& data() const { return data_; }

 private:
  int n_ = 0;
  std::vector<double> data_;
};

struct SparseEntry {
  int i, j, k;
  double v;
};

/// A Lie quasi-bialgebra G = (g, [,], varpi, phi) with reductive decomposition
/// g = l + m. varpi_{x_i} is stored as the skew matrix w[i] : g* -> g, so that
/// (varpi_{x_i} xi)_j = sum_k w[i](j, k) xi_k.
struct QuasiBialgebra {
  std::string name;
  DecomposedBasis basis;
  Tensor3 c;
  std::vector<MatD> w;
  Tensor3 phi;
  bool bidynamical = false;
  std::map<std::string, double> tolerances;

  int n() const { return basis.n(); }
  int nl() const { return basis.dim_l; }
  int nm() const { return basis.dim_m; }

  /// ad_x on g: column j holds [x, e_j].
  MatD ad(const VecD& x) const;
  MatD ad_basis(int i) const;
  /// varpi_x = sum_i x_i w[i].
  MatD cobracket(const VecD& x) const;
  /// Largest absolute structure constant over c, varpi and phi (at least 1).
  double scale() const;
  /// Tolerance by key with default, multiplied by the environment scale.
  double tol(const std::string& key, double fallback) const;

  /// Empty quasi-bialgebra with zero tensors.
  static QuasiBialgebra zero(const DecomposedBasis& basis, std::string name = "");
  std::vector<SparseEntry> sparse_brackets() const;
  std::vector<SparseEntry> sparse_cobracket() const;
  std::vector<SparseEntry> sparse_phi() const;
};

/// Fill phi with v * (e_a ^ e_b ^ e_c) (all six signed permutations).
void add_wedge3(Tensor3& phi, int a, int b, int c, double v);
/// Set [e_i, e_j] += v e_k and [e_j, e_i] -= v e_k.
void add_bracket(Tensor3& c, int i, int j, int k, double v);

/// Multiplier from DYNLFORGE_TOL_SCALE (1 when unset or invalid).
double tolerance_scale();

/// Max entrywise difference between two quasi-bialgebras of equal shape
/// (+inf if the shapes differ).
double tensor_distance(const QuasiBialgebra& a, const QuasiBialgebra& b);

struct Residual {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool pass() const { return value <= tol; }
};

struct ValidationReport {
  std::vector<Residual> items;
  bool ok() const;
  const Residual* find(const std::string& name) const;
};

/// Computes every structural residual without throwing.
ValidationReport structure_residuals(const QuasiBialgebra& g);

/// Checks all invariants; throws StructureError / AxiomError / NotBidynamical
/// naming the first failing residual, otherwise returns the full report.
ValidationReport validate(const QuasiBialgebra& g);

/// True when varpi_l = 0 and phi vanishes modulo l (up to tol).
bool is_bidynamical(const QuasiBialgebra& g, double tol);

/// Parses and validates a JSON setup document.
QuasiBialgebra load_setup(const std::string& text);
/// Serializes to the JSON setup schema (compact, deterministic).
std::string setup_to_json(const QuasiBialgebra& g, int indent = 2);

}  // namespace dynlforge
