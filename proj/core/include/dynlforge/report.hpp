#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dynlforge/quasi_bialgebra.hpp"

namespace dynlforge {

inline constexpr const char* kEngineVersion = "0.1.0";

/// One residual evaluated at one grid point (point = -1 for global checks).
struct ResidualRecord {
  int point = -1;
  std::vector<double> p;
  std::string residual;
  double value = 0.0;
  double tol = 0.0;
  /// When set the check is a lower bound: pass iff value >= tol.
  bool lower_bound = false;
  bool pass = false;

  static ResidualRecord make(int point, const VecD& p, std::string name, double value, double tol,
                             bool lower_bound = false);
};

/// A grid point that was not evaluated.
struct SkipRecord {
  int point = -1;
  std::vector<double> p;
  std::string reason;
  double condition = 0.0;
};

struct ResidualReport {
  std::string setup_name;
  std::string setup_hash;
  std::string suite;
  std::string engine_version = kEngineVersion;
  std::uint64_t seed = 0;
  int points = 0;
  std::vector<ResidualRecord> records;
  std::vector<SkipRecord> skipped;

  double max_value() const;   ///< max over upper-bound records
  double mean_value() const;  ///< mean over upper-bound records
  /// Every record passes and at most half of the points were skipped.
  bool verdict() const;

  /// JSON-lines: a header line, one line per record or skip, summary last.
  std::string to_jsonl() const;
  /// Inverse of to_jsonl (bit-exact for all doubles). Throws ParseError.
  static ResidualReport from_jsonl(const std::string& text);
  friend bool operator==(const ResidualReport& a, const ResidualReport& b);
};

bool operator==(const ResidualRecord& a, const ResidualRecord& b);
bool operator==(const SkipRecord& a, const SkipRecord& b);

/// 64-bit FNV-1a hash.
std::uint64_t fnv1a(const std::string& data);
/// Hex hash of the canonical compact serialization of a setup.
std::string setup_hash(const QuasiBialgebra& g);

}  // namespace dynlforge
