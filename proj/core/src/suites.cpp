#include "dynlforge/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "dynlforge/catalog.hpp"
#include "dynlforge/duality.hpp"
#include "dynlforge/errors.hpp"
#include "dynlforge/gauge.hpp"
#include "dynlforge/lcan.hpp"

namespace dynlforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PointResult {
  std::vector<ResidualRecord> records;
  std::optional<SkipRecord> skip;
};

// Evaluates fn(i) for i < count on a pool of threads; results keep their index.
template <class F>
std::vector<PointResult> parallel_points(int count, int threads, F&& fn) {
  std::vector<PointResult> out(count);
  if (count == 0) return out;
  int workers = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, count);
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

// Runs fn at grid point i; OutsideAnalyticDomain turns the point into a skip.
template <class F>
PointResult guarded(int i, const VecD& p, F&& fn) {
  PointResult r;
  try {
    fn(r.records);
  } catch (const OutsideAnalyticDomain& e) {
    r.records.clear();
    r.skip = SkipRecord{i, std::vector<double>(p.data(), p.data() + p.size()), "OutsideAnalyticDomain",
                        e.condition()};
  }
  return r;
}

std::vector<std::uint64_t> point_seeds(std::uint64_t seed, int count) {
  SplitMix64 rng(seed ^ 0x5DEECE66DULL);
  std::vector<std::uint64_t> out(count);
  for (auto& s : out) s = rng.next();
  return out;
}

ResidualReport new_report(const QuasiBialgebra& g, const std::string& suite, std::uint64_t seed, int points) {
  ResidualReport rep;
  rep.setup_name = g.name;
  rep.setup_hash = setup_hash(g);
  rep.suite = suite;
  rep.seed = seed;
  rep.points = points;
  return rep;
}

void collect(ResidualReport& rep, std::vector<PointResult>&& results) {
  for (auto& r : results) {
    for (auto& rec : r.records) rep.records.push_back(std::move(rec));
    if (r.skip) rep.skipped.push_back(std::move(*r.skip));
  }
}

double radius_of(const QuasiBialgebra& g, const SuiteOptions& opt) {
  return opt.grid_radius ? *opt.grid_radius : default_grid_radius(g, opt.seed);
}

ResidualReport lcan_suite(const QuasiBialgebra& g, const SuiteOptions& opt) {
  const DoubleAlgebra d(g);
  const int nl = g.nl(), count = opt.grid_count.value_or(40);
  const auto grid = ball_grid(nl, radius_of(g, opt), count, opt.seed);
  const auto seeds = point_seeds(opt.seed, count);
  const LEvaluator l = lcan_evaluator(d);
  const double t_skew = g.tol("skew", 1e-10), t_res = g.tol("residual", 1e-8);
  ResidualReport rep = new_report(g, "lcan", opt.seed, count);
  collect(rep, parallel_points(count, opt.threads, [&](int i) {
            const VecD& p = grid[i];
            return guarded(i, p, [&](std::vector<ResidualRecord>& out) {
              const LValue v = make_lvalue(p, l(p), nl);
              out.push_back(ResidualRecord::make(i, p, "skew", v.skew_residual, t_skew));
              out.push_back(ResidualRecord::make(i, p, "normalization", v.normalization_residual, t_skew));
              out.push_back(ResidualRecord::make(i, p, "cdybe", cdybe_residual(d, l, p), t_res));
              double eq = 0.0;
              for (int a = 0; a < nl; ++a) eq = std::max(eq, equivariance_residual(d, l, p, VecD::Unit(nl, a)));
              out.push_back(ResidualRecord::make(i, p, "equivariance", eq, t_res));
              out.push_back(ResidualRecord::make(i, p, "ode", ode_residual(d, l, p), t_res));
              const PmadtauResiduals pm = pmadtau_residuals(d, l, p, 4, seeds[i]);
              for (int k = 0; k < 4; ++k)
                out.push_back(ResidualRecord::make(i, p, "pmadtau_" + std::to_string(k + 1), pm.r[k], t_res));
            });
          }));
  return rep;
}

ResidualReport duality_suite(const QuasiBialgebra& g, const SuiteOptions& opt) {
  const DoubleAlgebra d(g);
  const int n = g.n(), nl = g.nl(), nm = g.nm(), count = opt.grid_count.value_or(40);
  const auto grid = ball_grid(nl, radius_of(g, opt), count, opt.seed);
  const auto seeds = point_seeds(opt.seed, count);
  const LEvaluator l = lcan_evaluator(d);
  const double t_dual = g.tol("duality", 1e-9), t_morph = g.tol("morphism", 1e-8);
  ResidualReport rep = new_report(g, "duality", opt.seed, count);
  const VecD none(0);
  if (g.bidynamical || is_bidynamical(g, g.tol("structure", 1e-10) * g.scale())) {
    const DualData dd = dual_over_l(g);
    rep.records.push_back(ResidualRecord::make(-1, none, "dual_isomorphism", dd.iso_residual, g.tol("structure", 1e-10)));
    const DualData ddd = dual_over_l(dd.gstar);
    rep.records.push_back(ResidualRecord::make(-1, none, "double_dual_opposite",
                                               tensor_distance(ddd.gstar, opposite(g)), g.tol("structure", 1e-10)));
  }
  collect(rep, parallel_points(count, opt.threads, [&](int i) {
            const VecD& p = grid[i];
            return guarded(i, p, [&](std::vector<ResidualRecord>& out) {
              SplitMix64 rng(seeds[i]);
              const MatD L = l(p);
              double oracle = 0.0, iso = 0.0, inv = 0.0;
              for (int s = 0; s < 3; ++s) {
                const auto x = make_vertex_element(d, p, rng.normal_vector(nl), rng.normal_vector(nm));
                const auto y = make_vertex_element(d, p, rng.normal_vector(nl), rng.normal_vector(nm));
                try {
                  const auto b = vertex_bracket(d, l, p, x, y);
                  const VecD o = vertex_bracket_twisted(d, L, x.in_double(n), y.in_double(n));
                  oracle = std::max(oracle, (b.in_double(n) - o).norm());
                  const auto px = vertex_iso(d, l, p, x), py = vertex_iso(d, l, p, y), pb = vertex_iso(d, l, p, b);
                  iso = std::max(iso, (pb.in_double(n) - d.bracket(px.in_double(n), py.in_double(n))).norm());
                  inv = std::max(inv, (vertex_iso_inv(d, p, px).in_double(n) - x.in_double(n)).norm());
                } catch (const MembershipError&) {
                  oracle = iso = inv = kInf;
                }
              }
              out.push_back(ResidualRecord::make(i, p, "vertex_bracket_oracle", oracle, t_dual));
              out.push_back(ResidualRecord::make(i, p, "vertex_iso_bracket", iso, t_dual));
              out.push_back(ResidualRecord::make(i, p, "vertex_iso_inverse", inv, t_dual));
              const FlatnessResiduals fr = flatness_residual(d, l, p);
              out.push_back(ResidualRecord::make(i, p, "flat1", fr.flat1, t_dual));
              out.push_back(ResidualRecord::make(i, p, "flat2", fr.flat2, t_dual));
              out.push_back(ResidualRecord::make(i, p, "nabla_lemma", fr.lemma_uh, t_dual));
              VecD x0 = VecD::Zero(2 * n);
              x0.head(nl) = rng.normal_vector(nl);
              x0.tail(nm) = rng.normal_vector(nm);
              const VecD alpha = rng.normal_vector(nl);
              const NUElement t1 = trivialize(d, p, alpha, x0), t2 = trivialize_with_l(d, l, p, alpha, x0);
              out.push_back(ResidualRecord::make(i, p, "trivialization_forms",
                                                 std::max((t1.z - t2.z).norm(), (t1.xi - t2.xi).norm()), t_dual));
              const SectionPoly s1 = random_section(d, 2, rng), s2 = random_section(d, 2, rng);
              const MorphismResidual mr = algebroid_morphism_residual(d, l, s1, s2, p);
              out.push_back(ResidualRecord::make(i, p, "morphism_bracket", mr.bracket, t_morph));
              out.push_back(ResidualRecord::make(i, p, "morphism_anchor", mr.anchor, t_morph));
              const MorphismResidual mc = algebroid_morphism_residual(d, l, s1, s2, p, true);
              out.push_back(ResidualRecord::make(i, p, "morphism_identity_control", mc.max(), 1e-2, true));
            });
          }));
  return rep;
}

ResidualReport link_suite(const QuasiBialgebra& g, const SuiteOptions& opt) {
  const int nl = g.nl(), count = opt.grid_count.value_or(40);
  const LinkContext ctx(g);
  const auto grid = ball_grid(nl, radius_of(g, opt), count, opt.seed);
  ResidualReport rep = new_report(g, "link", opt.seed, count);
  const VecD none(0);
  const double t_exact = g.tol("structure", 1e-10);
  rep.records.push_back(ResidualRecord::make(-1, none, "dual_isomorphism", ctx.dual().iso_residual, t_exact));
  rep.records.push_back(ResidualRecord::make(-1, none, "rmx_relation", rmx_relation(g).minus, g.tol("rmx", 1e-12)));
  const double t_link = g.tol("link", 1e-8), t_fun = g.tol("functoriality", 1e-9);
  collect(rep, parallel_points(count, opt.threads, [&](int i) {
            const VecD& p = grid[i];
            return guarded(i, p, [&](std::vector<ResidualRecord>& out) {
              const LinkResult r = ctx.evaluate(p);
              out.push_back(ResidualRecord::make(i, p, "link", r.link, t_link));
              out.push_back(ResidualRecord::make(i, p, "functoriality", r.functoriality, t_fun));
              out.push_back(ResidualRecord::make(i, p, "cocycle_consistency", r.cocycle_consistency, t_exact));
            });
          }));
  return rep;
}

ResidualReport jets_suite(const QuasiBialgebra& g, const SuiteOptions& opt) {
  const DoubleAlgebra d(g);
  const int nl = g.nl(), count = opt.grid_count.value_or(6);
  std::vector<int> orders = {2, 4, 6};
  if (opt.order) orders = {*opt.order};
  for (int k : orders)
    if (k < 0 || k > 30) throw std::invalid_argument("jet order must lie in [0, 30]");
  const double t0 = std::min(1.0, radius_of(g, opt));
  SplitMix64 dir_rng(opt.seed);
  std::vector<VecD> dirs;
  for (int i = 0; i < count; ++i) {
    VecD u = dir_rng.normal_vector(nl);
    dirs.push_back(u.norm() > 0 ? VecD(u.normalized()) : u);
  }
  const auto seeds = point_seeds(opt.seed, count);
  const LEvaluator l = lcan_evaluator(d);
  const double t_jet = g.tol("jets", 1e-9);
  ResidualReport rep = new_report(g, "jets", opt.seed, count);
  collect(rep, parallel_points(count, opt.threads, [&](int i) {
            const VecD p0 = t0 * dirs[i];
            return guarded(i, p0, [&](std::vector<ResidualRecord>& out) {
              SplitMix64 rng(seeds[i]);
              for (int K : orders) {
                const std::string k = std::to_string(K);
                const LJet rec = lcan_jets(d, p0, K);
                const LJet ser = evaluator_jet(l, p0, K);
                double agree = 0.0;
                for (int j = 0; j <= K; ++j)
                  agree = std::max(agree, max_abs(MatD(rec.jet.coeffs[j] - ser.jet.coeffs[j])));
                out.push_back(ResidualRecord::make(i, p0, "jet_agreement_K" + k, agree, t_jet));
                const JetConvergence jc = jet_convergence(g, dirs[i], t0, K);
                out.push_back(ResidualRecord::make(i, p0, "jet_slope_K" + k, jc.slope, K + 0.7, true));
                const PolyMap sigma = random_equivariant_polymap(g, 2, std::min(K + 1, 3), rng, 0.3);
                const LEvaluator gauged = gauged_evaluator(g, l, sigma);
                const GaugeNormalization gn = gauge_normalize_jets(g, gauged, p0, K);
                double rec_err = 0.0;
                for (int j = 0; j <= K; ++j)
                  rec_err = std::max(rec_err, max_abs(MatD(gn.normalized.jet.coeffs[j] - rec.jet.coeffs[j])));
                out.push_back(ResidualRecord::make(i, p0, "gauge_normalization_K" + k, rec_err, t_jet));
              }
            });
          }));
  return rep;
}

ResidualReport scalars_suite(const QuasiBialgebra& g, const SuiteOptions& opt) {
  const int N = opt.order.value_or(24);
  if (N < 1 || N > 64) throw std::invalid_argument("scalar order must lie in [1, 64]");
  ResidualReport rep = new_report(g, "scalars", opt.seed, 0);
  const VecD none(0);
  for (const char* sys : {"FGH", "FGHstar", "ev_coth", "ev_l", "ev_l_reflected"}) {
    const ScalarOdeResidual r = scalar_ode_residual(sys, N);
    rep.records.push_back(ResidualRecord::make(-1, none, std::string("ode_") + sys, r.max_abs.convert_to<double>(), 0.0));
  }
  for (const char* name : {"F", "G", "H", "Fstar", "Gstar", "Hstar"}) {
    const ScalarSeries s = scalar_series(name, N);
    rep.records.push_back(
        ResidualRecord::make(-1, none, std::string("support_") + name, s.support_holds() ? 0.0 : 1.0, 0.0));
  }
  return rep;
}

}  // namespace

std::vector<std::string> suite_names() { return {"lcan", "duality", "link", "jets", "scalars"}; }

double default_grid_radius(const QuasiBialgebra& g, std::uint64_t seed) {
  return 0.5 * conditioning_radius(DoubleAlgebra(g), seed);
}

ResidualReport run_suite(const QuasiBialgebra& g, const std::string& suite, const SuiteOptions& opt) {
  if (suite == "lcan") return lcan_suite(g, opt);
  if (suite == "duality") return duality_suite(g, opt);
  if (suite == "link") return link_suite(g, opt);
  if (suite == "jets") return jets_suite(g, opt);
  if (suite == "scalars") return scalars_suite(g, opt);
  throw UnknownName("unknown suite '" + suite + "'");
}

ResidualReport validation_report(const QuasiBialgebra& g) {
  ResidualReport rep = new_report(g, "validate", 0, 0);
  const VecD none(0);
  for (const Residual& r : structure_residuals(g).items)
    rep.records.push_back(ResidualRecord::make(-1, none, r.name, r.value, r.tol));
  return rep;
}

double loglog_slope(const std::vector<double>& t, const std::vector<double>& err, double floor) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (err[i] > floor) x.push_back(std::log(t[i])), y.push_back(std::log(err[i]));
  if (x.size() < 2) return kInf;
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i];
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

JetConvergence jet_convergence(const QuasiBialgebra& g, const VecD& u, double t0, int order, int samples) {
  const DoubleAlgebra d(g);
  const LJet jet = lcan_jets(d, u, order);
  JetConvergence out;
  for (int j = 0; j < samples; ++j) {
    const double t = t0 * std::ldexp(1.0, -j);
    out.t.push_back(t);
    out.err.push_back(max_abs(MatD(lcan_matrix(d, VecD(t * u)) - jet.jet.evaluate(t))));
  }
  out.slope = loglog_slope(out.t, out.err, 1e-12);
  return out;
}

}  // namespace dynlforge
