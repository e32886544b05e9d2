#pragma once

// End-to-end checks: tangent-cone probe, connectivity census and the
// consolidated pass/fail report.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "slcyl/assembly.hpp"
#include "slcyl/geom.hpp"
#include "slcyl/sampling.hpp"

namespace slcyl {

double directed_hausdorff(const std::vector<CVec>& from, const std::vector<CVec>& to);
double hausdorff(const std::vector<CVec>& a, const std::vector<CVec>& b);

struct ProbeResult {
  std::vector<double> scales;
  /// rescaled X samples to the cone (exact per plane)
  std::vector<double> forward;
  /// cone samples to X, upper bounds from matched X points
  std::vector<double> reverse;
  /// max(forward, reverse)
  std::vector<double> distances;
  std::vector<std::size_t> counts;
};

/// Probe of X at scales rho_i: samples of X in rho in (rho_i, 2 rho_i) are
/// rescaled by 1/rho_i and compared with (C x R) in rho in (1, 2). Scales
/// must lie in (0, 1/A) and decrease. Throws InsufficientSamplesError when a
/// shell yields fewer than samples / 2 points.
ProbeResult tangent_cone_probe(const Model& model, const std::vector<double>& scales, std::size_t samples,
                               std::uint64_t seed);

/// Same, for any point source: `shell(rho, seed)` returns points with
/// rho in (rho, 2 rho). The reverse distance uses nearest rescaled samples.
ProbeResult tangent_cone_probe(const LawlorParams& params,
                               const std::function<std::vector<CVec>(double, std::uint64_t)>& shell,
                               const std::vector<double>& scales, std::size_t samples, std::uint64_t seed);

/// max r / |u|^b over X2 samples (neck charts) with |u| in (rho, 2 rho), and
/// the largest rescaled r / rho among them.
struct CollapseResult {
  double max_ratio = 0.0;
  double max_rescaled_r = 0.0;
  std::size_t count = 0;
};
CollapseResult x2_collapse(const Model& model, double rho, std::size_t samples, std::uint64_t seed);

struct CensusResult {
  double epsilon = 0.0;
  std::size_t components = 0;
  std::vector<std::size_t> sizes;
  /// hi / lo of the largest interval within [epsilon / sqrt 2, epsilon sqrt 2]
  /// around epsilon that gives the same count (1, sqrt 2 or 2).
  double plateau = 1.0;
};

/// 3 x the median nearest-neighbour distance, relative to r.
double census_epsilon(const std::vector<CVec>& points);

/// Components of the graph joining p, q when |p - q| <= epsilon min(r_p, r_q).
/// Adjacency is relative so that the two ends of a cone never meet away
/// from the axis.
CensusResult connectivity_census(const std::vector<CVec>& points, double epsilon);
CensusResult connectivity_census(const std::vector<CVec>& points);

struct SuiteConfig {
  std::vector<double> lawlor_a{1.0, 1.0, 1.0};
  int a = 2;
  double b = 1.5;
  double A = 32.0;
  /// A-list 2^lo .. 2^hi for the decay fits
  int A_exp_lo = 5;
  int A_exp_hi = 12;
  int depth = 26;
  std::size_t box_samples = 96;
  int probe_lo = 6;
  int probe_hi = 12;
  std::size_t probe_samples = 600;
  std::size_t charts = 100;
  std::uint64_t seed = 20240611;
  /// criteria to run (1..14); empty means all
  std::vector<int> only;

  /// Throws ArgumentError naming the violated constraint.
  void validate() const;
};

struct Check {
  int id = 0;
  std::string name;
  std::string anchor;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string comparison;
  bool pass = false;
  std::string detail;
  std::uint64_t seed = 0;
  double seconds = 0.0;
};

struct Report {
  static constexpr int schema_version = 1;
  SuiteConfig config;
  std::vector<Check> checks;
  bool all_pass() const;
  std::string json() const;
  std::string summary_csv() const;
};

/// Runs the selected criteria. Sub-check errors, including a rejected
/// configuration, are recorded as failing checks and never thrown.
Report run_suite(const SuiteConfig& config);

}  // namespace slcyl
