#include "spider/domain.hpp"

#include "spider/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace spider {

BodyDomain BodyDomain::make(const SpiderParams& params) {
  return BodyDomain{params, anchors(params)};
}

Containment contains(const BodyDomain& domain, const Vec2& C, double tol) {
  const int n = domain.params.n;
  for (int k = 0; k < n; ++k)
    if ((C - domain.B[static_cast<std::size_t>(k)]).norm() > 2.0 + tol)
      return Containment{ContainsKind::Outside, k, -1};
  for (int k = 0; k < n; ++k)
    if ((C - domain.B[static_cast<std::size_t>(k)]).norm() <= tol)
      return Containment{ContainsKind::AtAnchor, k, -1};
  int first = -1, second = -1, count = 0;
  for (int k = 0; k < n; ++k) {
    const double d = (C - domain.B[static_cast<std::size_t>(k)]).norm();
    if (std::abs(d - 2.0) <= tol) {
      ++count;
      if (first < 0)
        first = k;
      else if (second < 0)
        second = k;
    }
  }
  if (count == 0) return Containment{ContainsKind::Interior, -1, -1};
  if (count == 1) return Containment{ContainsKind::OnEdge, first, -1};
  return Containment{ContainsKind::OnVertex, first, second};
}

Vec2 domain_vertex(const BodyDomain& domain, int k, int side) {
  const int n = domain.params.n;
  if (k < 0 || k >= n)
    throw Error(ErrorKind::InvalidParameter, "domain_vertex: anchor id out of range");
  const Vec2& A = domain.B[static_cast<std::size_t>(k)];
  const Vec2& B = domain.B[static_cast<std::size_t>((k + 1) % n)];
  const Vec2 delta = B - A;
  const double d = delta.norm();
  if (d < kAngleTol || d > 4.0 - kAngleTol)
    throw Error(ErrorKind::RegimeMismatch,
                "domain_vertex: adjacent reach circles do not meet transversally");
  const Vec2 mid = 0.5 * (A + B);
  const double h = std::sqrt(std::max(0.0, 4.0 - 0.25 * d * d));
  const Vec2 perp = rot90(delta / d);
  const Vec2 p1 = mid + h * perp;
  const Vec2 p2 = mid - h * perp;
  if (n == 2) {
    if (side != 0 && side != 1)
      throw Error(ErrorKind::InvalidParameter, "domain_vertex: side must be 0 or 1");
    const Vec2 upper = (p1.y() >= p2.y()) ? p1 : p2;
    const Vec2 lower = (p1.y() >= p2.y()) ? p2 : p1;
    return side == 0 ? upper : lower;
  }
  // For n >= 3 exactly one intersection lies in the domain.
  const bool in1 = contains(domain, p1).kind != ContainsKind::Outside;
  const bool in2 = contains(domain, p2).kind != ContainsKind::Outside;
  if (in1 == in2)
    throw Error(ErrorKind::CrossCheckFailure,
                "domain_vertex: expected exactly one intersection inside the domain");
  return in1 ? p1 : p2;
}

Vec2 edge_waypoint(const BodyDomain& domain, int k, double delta) {
  const int n = domain.params.n;
  if (k < 0 || k >= n)
    throw Error(ErrorKind::InvalidParameter, "edge_waypoint: anchor id out of range");
  if (!(delta > 0.0) || delta >= 1.0)
    throw Error(ErrorKind::InvalidParameter, "edge_waypoint: delta must be in (0, 1)");
  if (domain.params.R <= kEpsRegime)
    throw Error(ErrorKind::RegimeMismatch, "edge_waypoint: undefined for coincident anchors");
  const Vec2& Bk = domain.B[static_cast<std::size_t>(k)];
  const Vec2 toward_origin = -Bk / Bk.norm();

  auto anchor_clearance = [&](const Vec2& w) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j)
      best = std::min(best, (w - domain.B[static_cast<std::size_t>(j)]).norm());
    return best;
  };

  // Growing delta slightly keeps the waypoint off any anchor while staying
  // within the documented distance band [2 - 2*delta, 2 - delta] from B_k.
  for (int attempt = 0; attempt <= 6; ++attempt) {
    const double d_eff = delta * (1.0 + static_cast<double>(attempt) / 7.0);
    Vec2 w = Bk + (2.0 - d_eff) * toward_origin;
    if (contains(domain, w).kind != ContainsKind::Interior) {
      // Walk further toward the origin until strictly interior.
      bool fixed = false;
      for (int j = 1; j <= 15; ++j) {
        const double t = 2.0 - d_eff - static_cast<double>(j) * delta / 16.0;
        if (t <= 2.0 - 2.0 * delta) break;
        w = Bk + t * toward_origin;
        if (contains(domain, w).kind == ContainsKind::Interior) {
          fixed = true;
          break;
        }
      }
      if (!fixed) continue;
    }
    if (anchor_clearance(w) > 2e-3) return w;
  }
  throw Error(ErrorKind::RoutingFailure, "edge_waypoint: no interior waypoint clear of anchors");
}

namespace {

struct ArcDetour {
  double s_enter = 0.0; // parameters along the segment, in [0, 1]
  double s_exit = 0.0;
  int anchor = -1;
  double radius = 0.0;
};

// Parameter interval of segment P + s (Q - P), s in [0, 1], inside the disc
// of the given radius around X; empty optional when it misses the disc or the
// closest approach is not below the trigger distance.
std::optional<ArcDetour> detour_interval(const Vec2& P, const Vec2& Q, const Vec2& X,
                                         int anchor, double radius, double trigger) {
  const Vec2 d = Q - P;
  const double a = d.squaredNorm();
  if (a == 0.0) return std::nullopt;
  const Vec2 rel = P - X;
  const double s_star = std::clamp(-rel.dot(d) / a, 0.0, 1.0);
  const double closest = (rel + s_star * d).norm();
  if (closest >= trigger) return std::nullopt;
  const double b = 2.0 * rel.dot(d);
  const double c = rel.squaredNorm() - radius * radius;
  const double disc = b * b - 4.0 * a * c;
  if (disc <= 0.0) return std::nullopt;
  const double root = std::sqrt(disc);
  ArcDetour out;
  out.s_enter = std::max(0.0, (-b - root) / (2.0 * a));
  out.s_exit = std::min(1.0, (-b + root) / (2.0 * a));
  out.anchor = anchor;
  out.radius = radius;
  if (out.s_exit <= out.s_enter) return std::nullopt;
  return out;
}

} // namespace

std::vector<Vec2> segment_in_domain(const BodyDomain& domain, const Vec2& P, const Vec2& Q,
                                    bool avoid_anchors, double step) {
  if (!(step > 0.0))
    throw Error(ErrorKind::InvalidParameter, "segment_in_domain: step must be positive");
  const int n = domain.params.n;

  std::vector<ArcDetour> detours;
  if (avoid_anchors) {
    for (int j = 0; j < n; ++j) {
      // Keep the detour circle well inside the domain even when the anchor
      // sits close to the far reach circles.
      double clearance = std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i)
        clearance = std::min(clearance, 2.0 - (domain.B[static_cast<std::size_t>(j)] -
                                               domain.B[static_cast<std::size_t>(i)])
                                                  .norm());
      const double radius = std::min(1e-2, 0.5 * clearance);
      const double trigger = std::min(1e-3, 0.5 * radius);
      if (!(radius > 0.0)) continue;
      auto hit = detour_interval(P, Q, domain.B[static_cast<std::size_t>(j)], j, radius, trigger);
      if (hit) detours.push_back(*hit);
    }
    std::sort(detours.begin(), detours.end(),
              [](const ArcDetour& a, const ArcDetour& b) { return a.s_enter < b.s_enter; });
    for (std::size_t i = 1; i < detours.size(); ++i)
      if (detours[i].s_enter < detours[i - 1].s_exit)
        throw Error(ErrorKind::RoutingFailure,
                    "segment_in_domain: overlapping anchor detours (anchors too tight)");
  }

  std::vector<Vec2> samples;
  auto emit_line = [&](const Vec2& from, const Vec2& to) {
    const double len = (to - from).norm();
    const int steps = std::max(1, static_cast<int>(std::ceil(len / step)));
    for (int i = 1; i <= steps; ++i)
      samples.push_back(from + (static_cast<double>(i) / steps) * (to - from));
  };
  auto emit_arc = [&](const ArcDetour& det) {
    const Vec2& X = domain.B[static_cast<std::size_t>(det.anchor)];
    const Vec2 E = P + det.s_enter * (Q - P);
    const Vec2 F = P + det.s_exit * (Q - P);
    const double a0 = std::atan2((E - X).y(), (E - X).x());
    double a1 = std::atan2((F - X).y(), (F - X).x());
    // Go the short way around; both sides avoid the anchor equally well.
    while (a1 - a0 > std::numbers::pi) a1 -= 2.0 * std::numbers::pi;
    while (a1 - a0 < -std::numbers::pi) a1 += 2.0 * std::numbers::pi;
    const int steps = std::max(2, static_cast<int>(std::ceil(std::abs(a1 - a0) / 0.02)));
    for (int i = 1; i <= steps; ++i) {
      const double a = a0 + (a1 - a0) * static_cast<double>(i) / steps;
      samples.push_back(X + det.radius * Vec2(std::cos(a), std::sin(a)));
    }
  };

  samples.push_back(P);
  Vec2 cursor = P;
  for (const ArcDetour& det : detours) {
    const Vec2 E = P + det.s_enter * (Q - P);
    emit_line(cursor, E);
    emit_arc(det);
    cursor = P + det.s_exit * (Q - P);
  }
  emit_line(cursor, Q);

  for (const Vec2& s : samples)
    if (contains(domain, s).kind == ContainsKind::Outside)
      throw Error(ErrorKind::RoutingFailure, "segment_in_domain: sample left the domain");
  return samples;
}

} // namespace spider
