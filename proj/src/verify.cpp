#include "spider/verify.hpp"

#include "spider/cells.hpp"
#include "spider/domain.hpp"
#include "spider/kinematics.hpp"
#include "spider/morse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

namespace spider {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xFF51AFD7ED558CCDULL;
  x ^= x >> 33;
  x *= 0xC4CEB9FE1A85EC53ULL;
  x ^= x >> 33;
  return x;
}

int thread_count(int jobs) {
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SPIDER_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && parsed >= 1) threads = static_cast<int>(parsed);
  }
  return std::clamp(threads, 1, std::max(1, jobs));
}

bool generic_regime(const SpiderParams& params) {
  const RegimeTag tag = classify_regime(params).tag;
  return tag == RegimeTag::GenericSmall || tag == RegimeTag::GenericLarge;
}

long long pow2(int e) { return 1LL << e; }

// Genus of the generic surfaces, usable outside the generic regimes (for the
// transition reports, which name the surfaces on both sides).
long long genus_small_closed(long long n) { return 1 + (5 * n - 4) * pow2(static_cast<int>(n)) / 8; }
long long genus_large_closed(long long n) { return 1 + (n - 4) * pow2(static_cast<int>(n)) / 8; }

} // namespace

SplitMix64 SplitMix64::stream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(mix64(seed ^ mix64(index + 0x9E3779B97F4A7C15ULL)));
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::next_double() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

namespace {

Configuration sample_from_stream(const SpiderParams& params, const BodyDomain& domain,
                                 SplitMix64& rng) {
  const double half = 2.0 + params.R;
  Vec2 body;
  bool found = false;
  for (int attempt = 0; attempt < 200000; ++attempt) {
    body = Vec2(half * (2.0 * rng.next_double() - 1.0), half * (2.0 * rng.next_double() - 1.0));
    if (contains(domain, body).kind != ContainsKind::Interior) continue;
    double clearance = std::numeric_limits<double>::infinity();
    for (const Vec2& a : domain.B) clearance = std::min(clearance, (body - a).norm());
    if (clearance <= 1e-6) continue;
    found = true;
    break;
  }
  if (!found)
    throw Error(ErrorKind::CrossCheckFailure, "sample_configuration: rejection sampling starved");
  const std::uint64_t bits = rng.next();
  MultiIndex mi(params.n);
  for (int k = 0; k < params.n; ++k)
    mi[k] = (bits >> k & 1u) ? ArmIndexValue::Minus : ArmIndexValue::Plus;
  return solve_configuration(params, body, mi);
}

} // namespace

Configuration sample_configuration(const SpiderParams& params, std::uint64_t seed,
                                   std::uint64_t index) {
  if (!generic_regime(params))
    throw Error(ErrorKind::RegimeMismatch, "sample_configuration: generic regimes only");
  const BodyDomain domain = BodyDomain::make(params);
  SplitMix64 rng = SplitMix64::stream(seed, index);
  return sample_from_stream(params, domain, rng);
}

RankScanReport rank_scan(const SpiderParams& params, int samples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorKind::InvalidParameter, "rank_scan: samples must be >= 1");
  if (!generic_regime(params))
    throw Error(ErrorKind::RegimeMismatch, "rank_scan: generic regimes only");
  const BodyDomain domain = BodyDomain::make(params);

  std::vector<double> sigma(static_cast<std::size_t>(samples), 0.0);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&](int lo, int hi) {
    try {
      for (int i = lo; i < hi; ++i) {
        SplitMix64 rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(i));
        const Configuration config = sample_from_stream(params, domain, rng);
        sigma[static_cast<std::size_t>(i)] = relative_sigma_min(jacobian(config));
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  const int threads = thread_count(samples);
  if (threads <= 1) {
    worker(0, samples);
  } else {
    std::vector<std::thread> crew;
    const int chunk = (samples + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int lo = t * chunk;
      const int hi = std::min(samples, lo + chunk);
      if (lo >= hi) break;
      crew.emplace_back(worker, lo, hi);
    }
    for (std::thread& th : crew) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  RankScanReport report;
  report.samples = samples;
  report.min_rel_sigma = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    report.min_rel_sigma = std::min(report.min_rel_sigma, sigma[static_cast<std::size_t>(i)]);
    if (sigma[static_cast<std::size_t>(i)] < kRankTol) report.violations.push_back(i);
  }
  return report;
}

Configuration degenerate_witness(const SpiderParams& params) {
  const Regime regime = classify_regime(params);
  if (regime.tag != RegimeTag::CriticalRn)
    throw Error(ErrorKind::RegimeMismatch,
                "degenerate_witness: exists only at the critical radius");
  const int n = params.n;
  const std::vector<Vec2> B = anchors(params);
  const Vec2 body = B[0];
  Configuration config{params, body, std::vector<Vec2>(static_cast<std::size_t>(n))};

  auto stretch_to = [&](int j) {
    config.joints[static_cast<std::size_t>(j)] = 0.5 * (body + B[static_cast<std::size_t>(j)]);
  };
  if (n % 2 == 0) {
    const int far = n / 2;
    const Vec2 dir = (B[static_cast<std::size_t>(far)] - body).normalized();
    config.joints[0] = body + dir; // folded arm aligned with the stretched one
    stretch_to(far);
    for (int j = 1; j < n; ++j)
      if (j != far) config.joints[static_cast<std::size_t>(j)] = solve_joint(body, B[static_cast<std::size_t>(j)], Branch::Plus);
  } else {
    const int m = (n - 1) / 2;
    config.joints[0] = body - body.normalized(); // folded arm pointing inward
    stretch_to(m);
    stretch_to(m + 1);
    for (int j = 1; j < n; ++j)
      if (j != m && j != m + 1)
        config.joints[static_cast<std::size_t>(j)] = solve_joint(body, B[static_cast<std::size_t>(j)], Branch::Plus);
  }
  return config;
}

namespace {

// Bisect the straight body move between two solved configurations until no
// joint (or the body) jumps farther than max_step.
void refine_leg(const SpiderParams& params, const Configuration& from, const Configuration& to,
                const MultiIndex& mi, double max_step, int depth, PathPlan& plan) {
  double step = (from.body - to.body).norm();
  for (int k = 0; k < params.n; ++k)
    step = std::max(step, (from.joints[static_cast<std::size_t>(k)] -
                           to.joints[static_cast<std::size_t>(k)]).norm());
  if (step <= max_step) {
    plan.max_joint_step = std::max(plan.max_joint_step, step);
    plan.waypoints.push_back(to);
    return;
  }
  if (depth >= 24)
    throw Error(ErrorKind::RoutingFailure, "connect_path: could not bound the joint step");
  const Vec2 mid_body = 0.5 * (from.body + to.body);
  const Configuration mid = solve_configuration(params, mid_body, mi);
  refine_leg(params, from, mid, mi, max_step, depth + 1, plan);
  refine_leg(params, mid, to, mi, max_step, depth + 1, plan);
}

} // namespace

PathPlan connect_path(const SpiderParams& params, const Configuration& start) {
  if (!generic_regime(params))
    throw Error(ErrorKind::RegimeMismatch, "connect_path: generic regimes only");
  if (static_cast<int>(start.joints.size()) != params.n)
    throw Error(ErrorKind::InvalidParameter, "connect_path: joint count != n");
  if (max_residual(start) > 1e-6)
    throw Error(ErrorKind::InvalidParameter, "connect_path: start violates the constraints");

  const bool small = (classify_regime(params).tag == RegimeTag::GenericSmall);
  const BodyDomain domain = BodyDomain::make(params);
  const std::vector<Vec2>& B = domain.B;
  constexpr double kMaxJointStep = 0.05; // half the documented continuity bound

  PathPlan plan;
  Configuration cur = project(params, start).config;
  plan.waypoints.push_back(cur);
  MultiIndex idx = configuration_index(cur);

  auto run_leg = [&](const std::vector<Vec2>& bodies, const MultiIndex& mi,
                     std::optional<int> flip) {
    PathSegment segment;
    segment.start = cur.body;
    segment.index = mi;
    segment.flip_arm = flip;
    for (const Vec2& body : bodies) {
      if ((body - cur.body).norm() < 1e-15) continue;
      const Configuration next = solve_configuration(params, body, mi);
      refine_leg(params, cur, next, mi, kMaxJointStep, 0, plan);
      cur = plan.waypoints.back();
    }
    segment.end = cur.body;
    plan.segments.push_back(segment);
  };

  // Step 1: leave any degenerate stratum (folded arm or stretched arms).
  const std::vector<int> folded = idx.where(ArmIndexValue::Infinity);
  if (!folded.empty()) {
    const int k = folded[0];
    const Vec2 joint_dir = cur.joints[static_cast<std::size_t>(k)] - B[static_cast<std::size_t>(k)];
    const double theta = std::atan2(joint_dir.y(), joint_dir.x());
    // Approaching the anchor from the left of the joint ray is the limit of
    // the Plus branch, so this tiny hop keeps the joint nearly still.
    const Vec2 out_dir(std::cos(theta + std::numbers::pi / 2.0),
                       std::sin(theta + std::numbers::pi / 2.0));
    MultiIndex after = idx;
    after[k] = ArmIndexValue::Plus;
    run_leg({B[static_cast<std::size_t>(k)] + 1e-3 * out_dir}, after, std::nullopt);
    idx = after;
    // Get clear of the anchor before general routing.
    double clearance = std::numeric_limits<double>::infinity();
    for (int j = 0; j < params.n; ++j)
      if (j != k)
        clearance = std::min(clearance, 2.0 - (B[static_cast<std::size_t>(k)] -
                                               B[static_cast<std::size_t>(j)]).norm());
    const double r_out = std::min(2e-2, 0.5 * clearance);
    if (r_out > 1e-3)
      run_leg({B[static_cast<std::size_t>(k)] + r_out * out_dir}, idx, std::nullopt);
  } else if (idx.count(ArmIndexValue::Zero) > 0) {
    MultiIndex after = idx;
    for (int k = 0; k < params.n; ++k)
      if (after[k] == ArmIndexValue::Zero) after[k] = ArmIndexValue::Plus;
    const double dist = cur.body.norm();
    if (dist < 1e-12)
      throw Error(ErrorKind::RoutingFailure, "connect_path: boundary stratum at the origin");
    const Vec2 nudged = cur.body * (1.0 - std::min(1e-3, 0.5 * dist) / dist);
    run_leg({nudged}, after, std::nullopt);
    idx = after;
  }

  // Step 2: flip every Minus arm by touching its reach circle.
  for (int k = 0; k < params.n; ++k) {
    if (idx[k] != ArmIndexValue::Minus) continue;
    const Vec2 w = edge_waypoint(domain, k, 1e-2);
    run_leg(segment_in_domain(domain, cur.body, w, small), idx, std::nullopt);
    const Vec2 touch = B[static_cast<std::size_t>(k)] +
                       2.0 * (w - B[static_cast<std::size_t>(k)]).normalized();
    run_leg(segment_in_domain(domain, cur.body, touch, false), idx, k);
    MultiIndex after = idx;
    after[k] = ArmIndexValue::Plus;
    run_leg(segment_in_domain(domain, cur.body, w, false), after, std::nullopt);
    idx = after;
  }

  // Step 3: drive the body home to the origin in the all-Plus chart.
  if (cur.body.norm() > 1e-15)
    run_leg(segment_in_domain(domain, cur.body, Vec2::Zero(), small), idx, std::nullopt);

  plan.final_index = configuration_index(cur);
  plan.max_residual = 0.0;
  for (const Configuration& wp : plan.waypoints)
    plan.max_residual = std::max(plan.max_residual, max_residual(wp));
  return plan;
}

TopologyReport classify_topology(const SpiderParams& params) {
  const Regime regime = classify_regime(params);
  TopologyReport report;
  report.regime = regime;
  const long long n = params.n;
  switch (regime.tag) {
    case RegimeTag::GenericSmall:
    case RegimeTag::GenericLarge: {
      const CellComplex complex = build_complex(params);
      const long long chi = euler_characteristic(complex);
      const long long genus = genus_from_euler(chi);
      if (genus != genus_formula(params))
        throw Error(ErrorKind::CrossCheckFailure,
                    "classify_topology: cell-complex genus disagrees with the closed form");
      if (morse_euler(params) != chi)
        throw Error(ErrorKind::CrossCheckFailure,
                    "classify_topology: Morse alternating sum disagrees with the cell complex");
      report.chi = chi;
      report.genus = genus;
      break;
    }
    case RegimeTag::Coincident: {
      SingularReport singular;
      singular.tag = regime.tag;
      singular.circles = pow2(params.n - 1);
      singular.torus_dim = n - 1;
      singular.gluing_points = pow2(params.n - 1);
      report.singular = singular;
      break;
    }
    case RegimeTag::CriticalRn: {
      SingularReport singular;
      singular.tag = regime.tag;
      singular.base_genus_small = genus_small_closed(n);
      singular.base_genus_large = genus_large_closed(n);
      if (params.n % 2 == 0) {
        singular.pinched_handles = n * pow2(params.n - 1);
        singular.identified_pairs = n * pow2(params.n - 1);
      } else {
        singular.stitched_discs = n * pow2(params.n - 2);
        singular.joining_arcs = n * pow2(params.n - 2);
      }
      report.singular = singular;
      break;
    }
    case RegimeTag::Point: {
      SingularReport singular;
      singular.tag = regime.tag;
      singular.points = 1;
      report.singular = singular;
      break;
    }
    case RegimeTag::Empty: {
      SingularReport singular;
      singular.tag = regime.tag;
      singular.points = 0;
      report.singular = singular;
      break;
    }
  }
  return report;
}

} // namespace spider
