#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynlforge/report.hpp"

namespace dynlforge {

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::optional<double> grid_radius;  ///< default: half the conditioning radius
  std::optional<int> grid_count;      ///< default: 40 points (6 rays for jets)
  std::optional<int> order;           ///< jets: single K (default 2, 4, 6); scalars: N (default 24)
  int threads = 0;                    ///< 0: hardware concurrency
};

/// lcan, duality, link, jets, scalars.
std::vector<std::string> suite_names();

/// Radius of the sampling ball used when none is given.
double default_grid_radius(const QuasiBialgebra& g, std::uint64_t seed);

/// Runs a residual suite. Points outside the analytic domain are recorded as
/// skipped. Throws UnknownName for an unknown suite and StructureError when
/// the setup lacks a property the suite needs.
ResidualReport run_suite(const QuasiBialgebra& g, const std::string& suite, const SuiteOptions& opt);

/// Structure residuals of a validated setup as a report.
ResidualReport validation_report(const QuasiBialgebra& g);

/// Least-squares slope of log err against log t over the samples with
/// err above `floor` (+inf when fewer than two remain, i.e. exact).
double loglog_slope(const std::vector<double>& t, const std::vector<double>& err, double floor);

/// Truncation error of the order-K jet of lcan along t u for t = t0 / 2^j and
/// its convergence slope.
struct JetConvergence {
  std::vector<double> t, err;
  double slope = 0.0;
};
JetConvergence jet_convergence(const QuasiBialgebra& g, const VecD& u, double t0, int order, int samples = 8);

}  // namespace dynlforge
