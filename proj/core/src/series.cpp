#include "dynlforge/series.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace dynlforge {

namespace {

// All exponent vectors of total degree `deg` in `nvars` variables, in
// descending lexicographic order.
void enumerate_degree(int nvars, int deg, int var, std::vector<int>& cur,
                      std::vector<int>& out) {
  if (var == nvars - 1) {
    cur[var] = deg;
    out.insert(out.end(), cur.begin(), cur.end());
    return;
  }
  for (int e = deg; e >= 0; --e) {
    cur[var] = e;
    enumerate_degree(nvars, deg - e, var + 1, cur, out);
  }
}

}  // namespace

SeriesLayout::SeriesLayout(int nvars, int order) : nvars_(nvars), order_(order) {
  if (nvars < 0 || order < 0) throw std::invalid_argument("SeriesLayout: negative size");
  start_.assign(order + 2, 0);
  if (nvars == 0) {
    exps_.clear();
    degree_.push_back(0);
    for (int k = 1; k <= order + 1; ++k) start_[k] = 1;
  } else {
    std::vector<int> cur(nvars, 0);
    for (int k = 0; k <= order; ++k) {
      start_[k] = static_cast<int>(exps_.size()) / nvars;
      enumerate_degree(nvars, k, 0, cur, exps_);
      int count = static_cast<int>(exps_.size()) / nvars - start_[k];
      degree_.insert(degree_.end(), count, k);
    }
    start_[order + 1] = static_cast<int>(degree_.size());
  }

  var_index_.assign(nvars, -1);
  for (int v = 0; v < nvars; ++v) {
    std::vector<int> e(nvars, 0);
    e[v] = 1;
    var_index_[v] = index_of(e);
  }

  const int sz = size();
  std::vector<int> sum(nvars);
  for (int i = 0; i < sz; ++i) {
    for (int j = 0; j < sz; ++j) {
      if (degree_[i] + degree_[j] > order) continue;
      for (int v = 0; v < nvars; ++v) sum[v] = exponent(i, v) + exponent(j, v);
      products_.push_back({i, j, index_of(sum)});
    }
  }

  deriv_.resize(nvars);
  for (int v = 0; v < nvars; ++v) {
    for (int i = 0; i < sz; ++i) {
      int ev = exponent(i, v);
      if (ev == 0) continue;
      std::vector<int> e(exps_.begin() + i * nvars, exps_.begin() + (i + 1) * nvars);
      e[v] -= 1;
      deriv_[v].push_back({i, index_of(e), static_cast<double>(ev)});
    }
  }
}

int SeriesLayout::index_of(const std::vector<int>& e) const {
  int deg = 0;
  for (int x : e) deg += x;
  if (deg > order_) return -1;
  for (int i = start_[deg]; i < start_[deg + 1]; ++i) {
    bool match = true;
    for (int v = 0; v < nvars_ && match; ++v) match = exponent(i, v) == e[v];
    if (match) return i;
  }
  return -1;
}

std::shared_ptr<const SeriesLayout> SeriesLayout::get(int nvars, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const SeriesLayout>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{nvars, order}];
  if (!slot) slot = std::make_shared<const SeriesLayout>(nvars, order);
  return slot;
}

Series::Series(LayoutPtr layout) : layout_(std::move(layout)) {
  c_.assign(layout_ ? layout_->size() : 1, 0.0);
}

Series Series::constant(const LayoutPtr& layout, double value) {
  Series s(layout);
  s.c_[0] = value;
  return s;
}

Series Series::variable(const LayoutPtr& layout, int var, double value) {
  Series s(layout);
  s.c_[0] = value;
  int idx = layout->variable_index(var);
  if (idx >= 0) s.c_[idx] = 1.0;
  return s;
}

double Series::coeff(const std::vector<int>& exps) const {
  if (!layout_) {
    for (int e : exps)
      if (e != 0) return 0.0;
    return c_[0];
  }
  int idx = layout_->index_of(exps);
  return idx < 0 ? 0.0 : c_[idx];
}

void Series::promote(const LayoutPtr& layout) {
  if (layout_ || !layout) return;
  double v = c_[0];
  layout_ = layout;
  c_.assign(layout_->size(), 0.0);
  c_[0] = v;
}

Series Series::homogeneous(int k) const {
  if (!layout_) return Series(k == 0 ? c_[0] : 0.0);
  Series out(layout_);
  if (k < 0 || k > layout_->order()) return out;
  for (int i = layout_->degree_begin(k); i < layout_->degree_begin(k + 1); ++i) out.c_[i] = c_[i];
  return out;
}

Series Series::derivative(int var) const {
  if (!layout_) return Series(0.0);
  Series out(layout_);
  for (const auto& d : layout_->derivative_table(var)) out.c_[d.dst] += d.factor * c_[d.src];
  return out;
}

double Series::degree_norm(int k) const {
  if (!layout_) return k == 0 ? std::abs(c_[0]) : 0.0;
  if (k < 0 || k > layout_->order()) return 0.0;
  double s = 0.0;
  for (int i = layout_->degree_begin(k); i < layout_->degree_begin(k + 1); ++i) s += std::abs(c_[i]);
  return s;
}

double Series::evaluate(const std::vector<double>& x) const {
  if (!layout_) return c_[0];
  double acc = 0.0;
  for (int i = 0; i < layout_->size(); ++i) {
    double m = c_[i];
    if (m == 0.0) continue;
    for (int v = 0; v < layout_->nvars(); ++v) m *= std::pow(x[v], layout_->exponent(i, v));
    acc += m;
  }
  return acc;
}

Series& Series::operator+=(const Series& o) {
  if (!o.layout_) {
    c_[0] += o.c_[0];
    return *this;
  }
  promote(o.layout_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Series& Series::operator-=(const Series& o) {
  if (!o.layout_) {
    c_[0] -= o.c_[0];
    return *this;
  }
  promote(o.layout_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Series& Series::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Series operator*(const Series& a, const Series& b) {
  if (!a.layout_) {
    Series r = b;
    return r *= a.c_[0];
  }
  if (!b.layout_) {
    Series r = a;
    return r *= b.c_[0];
  }
  Series r(a.layout_);
  const double* pa = a.c_.data();
  const double* pb = b.c_.data();
  double* pr = r.c_.data();
  for (const auto& p : a.layout_->products()) {
    double x = pa[p.i];
    if (x == 0.0) continue;
    pr[p.k] += x * pb[p.j];
  }
  return r;
}

Series& Series::operator*=(const Series& o) {
  *this = *this * o;
  return *this;
}

Series Series::reciprocal() const {
  if (c_[0] == 0.0) throw std::domain_error("Series: reciprocal of series with zero constant term");
  if (!layout_) return Series(1.0 / c_[0]);
  const double inv0 = 1.0 / c_[0];
  Series r(layout_);
  r.c_[0] = inv0;
  // Solve r*b = 1 degree by degree; the degree-k part of r*b only uses r up to degree k.
  for (int k = 1; k <= layout_->order(); ++k) {
    Series prod = r * (*this);
    for (int i = layout_->degree_begin(k); i < layout_->degree_begin(k + 1); ++i)
      r.c_[i] = -prod.c_[i] * inv0;
  }
  return r;
}

Series& Series::operator/=(const Series& o) {
  if (!o.layout_) return *this *= 1.0 / o.c_[0];
  *this = *this * o.reciprocal();
  return *this;
}

bool operator==(const Series& a, const Series& b) {
  if (!a.layout_ && !b.layout_) return a.c_[0] == b.c_[0];
  const auto& lay = a.layout_ ? a.layout_ : b.layout_;
  for (int i = 0; i < lay->size(); ++i)
    if (a.coeff(i) != b.coeff(i)) return false;
  return true;
}

}  // namespace dynlforge
