// One pass/fail line per acceptance criterion. Criteria whose literal
// statement does not hold are reported as FAIL together with a companion
// line for the corrected statement; the exit code is nonzero only when a
// line outside that documented set fails.
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "dynlforge/catalog.hpp"
#include "dynlforge/duality.hpp"
#include "dynlforge/suites.hpp"

using namespace dynlforge;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Line {
  std::string id;
  bool pass;
  std::string detail;
};

std::vector<Line> lines;

void report(const std::string& id, bool pass, const std::string& detail) {
  lines.push_back({id, pass, detail});
  std::printf("[%s] %s %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// max over records with the given name (all records when empty)
double worst(const ResidualReport& r, const std::string& name = "") {
  double m = 0.0;
  for (const auto& x : r.records)
    if (!x.lower_bound && (name.empty() || x.residual == name)) m = std::max(m, x.value);
  return m;
}

MatD matrix_series(const ScalarSeries& s, const MatD& x, int N) {
  MatD r = MatD::Zero(x.rows(), x.cols());
  for (int k = N; k >= 0; --k) {
    r = r * x;
    r += s.series.coeff_value(k) * MatD::Identity(x.rows(), x.cols());
  }
  return r;
}

void criterion1() {
  const double ts = tolerance_scale();
  double jac = 0.0, inv = 0.0, rt = 0.0;
  for (const auto& name : catalog_names()) {
    const QuasiBialgebra g = catalog_get(name);
    const DoubleAlgebra d = build_double(g);
    jac = std::max(jac, d.jacobi_residual());
    inv = std::max(inv, d.invariance_residual());
    const int n = g.n(), N = 2 * n;
    const MatD I = MatD::Identity(N, N);
    const QuasiBialgebra back = extract_from_splitting(d, {MatD(I.leftCols(n)), MatD(I.rightCols(n)), g.nl()});
    rt = std::max(rt, tensor_distance(back, g));
  }
  report("1 structure", jac <= 1e-10 * ts && inv <= 1e-10 * ts && rt <= 1e-12 * ts,
         fmt("jacobi=%.2e invariance=%.2e extract-build=%.2e", jac, inv, rt));
}

void criterion2() {
  bool ok = true;
  double res = 0.0, skew = 0.0;
  int skipped = 0;
  for (const auto& name : catalog_names()) {
    SuiteOptions opt;
    opt.seed = kSeed;
    const ResidualReport r = run_suite(catalog_get(name), "lcan", opt);
    ok = ok && r.verdict();
    skipped += static_cast<int>(r.skipped.size());
    skew = std::max({skew, worst(r, "skew"), worst(r, "normalization")});
    for (const char* k : {"cdybe", "equivariance", "ode", "pmadtau_1", "pmadtau_2", "pmadtau_3", "pmadtau_4"})
      res = std::max(res, worst(r, k));
  }
  report("2 canonical-l", ok, fmt("max cdybe/eq/ode/pmadtau=%.2e max skew/lsp=%.2e skipped=%g", res, skew, skipped));
}

void criterion3() {
  double min_slope = 1e300;
  std::string where;
  bool ok = true;
  for (const char* name : {"sl2-cartan", "so3-quadratic-AM"}) {
    const QuasiBialgebra g = catalog_get(name);
    const double t0 = std::min(1.0, default_grid_radius(g, kSeed));
    SplitMix64 rng(kSeed);
    for (int dir = 0; dir < 3; ++dir) {
      const VecD u = rng.normal_vector(g.nl()).normalized();
      for (int K : {2, 4, 6}) {
        const double s = jet_convergence(g, u, t0, K).slope;
        ok = ok && s >= K + 0.7;
        if (s - K < min_slope) min_slope = s - K;
      }
    }
  }
  report("3 jets-convergence", ok, fmt("min(slope - K)=%.3f (need >= 0.7)", min_slope));
}

void criterion4() {
  const QuasiBialgebra g = catalog_get("so3-quadratic-AM");
  const DoubleAlgebra d(g);
  const int n = g.n(), N = 64;
  const ScalarSeries cm = scalar_series("cothm", N);
  SplitMix64 rng(kSeed);
  double err = 0.0;
  for (int i = 0; i < 40; ++i) {
    const VecD p = rng.ball(g.nl(), 1.0);
    const MatD C = matrix_series(cm, d.ad_sp(p), N);
    err = std::max(err, max_abs(MatD(lcan_matrix(d, p) - C.block(0, n, n, n))));
  }
  report("4 AM-reproduction", err <= 1e-10 * tolerance_scale(), fmt("max |lcan - (coth x - 1/x)|=%.2e", err));
}

void criterion5() {
  const QuasiBialgebra g = catalog_get("sl2-cartan");
  const DoubleAlgebra d(g);
  const int n = g.n(), nl = g.nl(), nm = g.nm(), N = 64;
  const ScalarSeries cm = scalar_series("cothm", N), th = scalar_series("tanh", N);
  SplitMix64 rng(kSeed);
  double e_lp = 0.0, e_mp = 0.0;
  for (int i = 0; i < 40; ++i) {
    const VecD p = rng.ball(nl, 1.0);
    const MatD x = d.ad_sp(p);
    const MatD L = lcan_matrix(d, p);
    e_mp = std::max(e_mp, max_abs(MatD(L.leftCols(nl) - matrix_series(cm, x, N).block(0, n, n, nl))));
    e_lp = std::max(e_lp, max_abs(MatD(L.rightCols(nm) - matrix_series(th, x, N).block(0, n + nl, n, nm))));
  }
  const double tol = 1e-10 * tolerance_scale();
  report("5 compatible-case", e_lp <= tol && e_mp <= tol,
         fmt("l^perp vs tanh=%.2e m^perp vs coth-1/x=%.2e", e_lp, e_mp));
}

void criterion6() {
  double preserve = 0.0, recover = 0.0;
  for (const auto& name : catalog_names()) {
    const QuasiBialgebra g = catalog_get(name);
    const DoubleAlgebra d(g);
    const LEvaluator l = lcan_evaluator(d);
    const int nl = g.nl();
    SplitMix64 rng(kSeed);
    const double r = std::min(1.0, default_grid_radius(g, kSeed));
    for (int s = 0; s < 5; ++s) {
      const PolyMap sigma = random_equivariant_polymap(g, 1, 3, rng, 0.3);
      const LEvaluator gl = gauged_evaluator(g, l, sigma);
      for (int i = 0; i < 4; ++i) {
        const VecD p = rng.ball(nl, r);
        preserve = std::max(preserve, cdybe_residual(d, gl, p));
        for (int a = 0; a < nl; ++a) preserve = std::max(preserve, equivariance_residual(d, gl, p, VecD::Unit(nl, a)));
      }
      const PolyMap sigma2 = random_equivariant_polymap(g, 2, 3, rng, 0.3);
      const VecD p0 = rng.ball(nl, r);
      const int K = 5;
      const GaugeNormalization gn = gauge_normalize_jets(g, gauged_evaluator(g, l, sigma2), p0, K);
      const LJet ref = lcan_jets(d, p0, K);
      for (int k = 0; k <= K; ++k)
        recover = std::max(recover, max_abs(MatD(gn.normalized.jet.coeffs[k] - ref.jet.coeffs[k])));
    }
  }
  const double ts = tolerance_scale();
  report("6 gauge", preserve <= 1e-7 * ts && recover <= 1e-9 * ts,
         fmt("gauged cdybe/eq=%.2e normalized jet vs lcan jet=%.2e", preserve, recover));
}

void criterion7() {
  double worst_r = 0.0;
  for (const auto& name : catalog_names()) {
    const QuasiBialgebra g = catalog_get(name);
    const DoubleAlgebra d(g);
    const LEvaluator l = lcan_evaluator(d);
    SplitMix64 rng(kSeed);
    std::vector<MatD> ts = {MatD::Zero(g.n(), g.n()), MatD(0.3 * rng.skew(g.n()))};
    if (name.rfind("sl2", 0) == 0) ts.push_back(ev_r_matrix(0.0, 1.0));
    const double r = std::min(1.0, default_grid_radius(g, kSeed));
    for (const MatD& t : ts) {
      const DoubleAlgebra dt(twist(g, t));
      const LEvaluator lt = l.plus_constant(MatD(-t));
      for (int i = 0; i < 8; ++i) worst_r = std::max(worst_r, cdybe_residual(dt, lt, rng.ball(g.nl(), r)));
    }
  }
  report("7 twist", worst_r <= 1e-9 * tolerance_scale(), fmt("max cdybe of lcan - t on G^t=%.2e", worst_r));
}

void criterion8() {
  bool ok = true;
  double iso = 0.0, flat = 0.0, morph = 0.0, opp = 0.0;
  for (const auto& name : catalog_names()) {
    SuiteOptions opt;
    opt.seed = kSeed;
    const ResidualReport r = run_suite(catalog_get(name), "duality", opt);
    ok = ok && r.verdict();
    iso = std::max(iso, worst(r, "vertex_iso_bracket"));
    flat = std::max({flat, worst(r, "flat1"), worst(r, "flat2")});
    morph = std::max({morph, worst(r, "morphism_bracket"), worst(r, "morphism_anchor")});
    opp = std::max(opp, worst(r, "double_dual_opposite"));
  }
  const QuasiBialgebra am = catalog_get("so3-quadratic-AM");
  const double self = tensor_distance(dual_over_l(am).gstar, am);
  ok = ok && self <= 1e-12 * tolerance_scale();
  char buf[256];
  std::snprintf(buf, sizeof buf, "vertex-iso=%.2e flat=%.2e morphism=%.2e (G*)*-G^op=%.2e AM self-duality=%.2e", iso,
                flat, morph, opp, self);
  report("8 duality", ok, buf);
}

void criterion9() {
  const double ts = tolerance_scale();
  double plus = 0.0, minus = 0.0, link = 0.0, fun = 0.0;
  bool grid_ok = true;
  for (const auto& name : catalog_names()) {
    const QuasiBialgebra g = catalog_get(name);
    const RmxRelation rr = rmx_relation(g);
    plus = std::max(plus, rr.plus);
    minus = std::max(minus, rr.minus);
    SuiteOptions opt;
    opt.seed = kSeed;
    const ResidualReport r = run_suite(g, "link", opt);
    grid_ok = grid_ok && r.verdict();
    link = std::max(link, worst(r, "link"));
    fun = std::max(fun, worst(r, "functoriality"));
  }
  report("9 link", plus <= 1e-12 * ts && grid_ok,
         fmt("literal K rmx* K* + rmx - (p_l - p_m^perp)=%.2e link=%.2e functoriality=%.2e", plus, link, fun));
  report("9-corrected link", minus <= 1e-12 * ts && grid_ok,
         fmt("K rmx* K* - rmx - (p_l - p_m^perp)=%.2e link=%.2e functoriality=%.2e", minus, link, fun));
}

void criterion10() {
  const int N = 24;
  bool base = true;
  for (const char* s : {"FGH", "FGHstar"}) base = base && scalar_ode_residual(s, N).zero();
  for (const char* name : {"F", "G", "H", "Fstar", "Gstar", "Hstar"}) base = base && scalar_series(name, N).support_holds();
  const ScalarOdeResidual pc = scalar_ode_residual("ev_coth_given", N);
  const ScalarOdeResidual pl = scalar_ode_residual("ev_l_given", N);
  report("10 scalars", base && pc.zero() && pl.zero(),
         fmt("F/G/H and F*/G*/H* exact=%g; given EV ODEs max coeff=%.4g, %.4g", base ? 1.0 : 0.0,
             pc.max_abs.convert_to<double>(), pl.max_abs.convert_to<double>()));
  bool corrected = base;
  for (const char* s : {"ev_coth", "ev_l", "ev_l_reflected"}) corrected = corrected && scalar_ode_residual(s, N).zero();
  report("10-corrected scalars", corrected,
         "F/G/H, F*/G*/H*, supports and EV ODEs f' + f^2 = 1, f' = 1 + 2af + (a^2-1)f^2 exact through order 24");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  // Literal statements known to be false as written; see README.
  const std::set<std::string> known = {"9 link", "10 scalars"};
  int unexpected = 0, passed = 0;
  for (const auto& l : lines) {
    if (l.pass)
      ++passed;
    else if (!known.count(l.id))
      ++unexpected;
  }
  std::printf("summary: %d/%zu lines pass, %d unexpected failures\n", passed, lines.size(), unexpected);
  return unexpected == 0 ? 0 : 1;
}
