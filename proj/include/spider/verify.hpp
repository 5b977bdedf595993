#pragma once

#include "spider/model.hpp"

#include <cstdint>
#include <optional>

namespace spider {

struct RankScanReport {
  int samples = 0;
  double min_rel_sigma = 0.0;       // smallest relative sigma_min seen
  std::vector<int> violations;      // sample ids with rel sigma_min < kRankTol
};

// Sample random smooth configurations (interior body, random sign chart) and
// check that the constraint Jacobian has full rank 2n at each.  Deterministic
// in (params, samples, seed) regardless of thread count.
RankScanReport rank_scan(const SpiderParams& params, int samples, std::uint64_t seed);

// Random smooth configuration: body uniform over the open domain interior
// (clear of anchors), each arm's branch an independent coin flip.  Stream
// `index` of `seed` is reproducible in isolation.
Configuration sample_configuration(const SpiderParams& params, std::uint64_t seed,
                                   std::uint64_t index);

// A configuration at R == critical_radius(n) whose Jacobian drops rank: one
// folded arm aligned with one (n even) or two (n odd) stretched arms.
Configuration degenerate_witness(const SpiderParams& params);

struct PathSegment {
  Vec2 start = Vec2::Zero();
  Vec2 end = Vec2::Zero();
  MultiIndex index;               // chart held along the segment
  std::optional<int> flip_arm;    // arm whose sign flips at the segment end
};

struct PathPlan {
  std::vector<PathSegment> segments;
  std::vector<Configuration> waypoints; // dense, continuity-checked samples
  MultiIndex final_index;
  double max_residual = 0.0;            // over all waypoints
  double max_joint_step = 0.0;          // largest joint displacement between
                                        // consecutive waypoints
};

// Drive an arbitrary valid configuration to the canonical one (body at the
// origin, all arms Plus) through explicit sign flips on the domain boundary.
// Generic regimes only.
PathPlan connect_path(const SpiderParams& params, const Configuration& start);

// Counts describing the non-manifold strata in the singular regimes.
struct SingularReport {
  RegimeTag tag = RegimeTag::Empty;
  // R == 0: product structure collapses onto a torus factor.
  long long circles = 0;      // 2^(n-1) circles glued along
  long long torus_dim = 0;    // dimension n - 1 of the torus factor
  long long gluing_points = 0;
  // R == critical_radius(n), n even: pinch points joining the two generic
  // surfaces; each identifies a pair of smooth points.
  long long pinched_handles = 0;
  long long identified_pairs = 0;
  // R == critical_radius(n), n odd: folded circles stitched onto the large
  // surface along arcs.
  long long stitched_discs = 0;
  long long joining_arcs = 0;
  // Genus of the adjacent generic surfaces at the transition.
  long long base_genus_small = -1;
  long long base_genus_large = -1;
  // R >= 2.
  long long points = 0;
};

struct TopologyReport {
  Regime regime;
  bool orientable = true;
  std::optional<long long> genus; // generic regimes
  std::optional<long long> chi;   // generic regimes
  std::optional<SingularReport> singular;
};

// Full classification for any radius: genus/Euler data in the generic
// regimes, stratum counts in the singular ones.  Cross-validates the cell
// complex against the Morse counts in generic regimes and throws
// CrossCheckFailure on disagreement.
TopologyReport classify_topology(const SpiderParams& params);

// Deterministic 64-bit stream generator used for all sampling: the i-th
// stream of a seed is independent of every other and of the thread layout.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t s) : state(s) {}
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index);
  std::uint64_t next();
  double next_double(); // uniform in [0, 1) from the high 53 bits
};

} // namespace spider
