#pragma once

#include "spider/model.hpp"

namespace spider {

// The set of reachable body positions: intersection of the n closed discs of
// radius 2 about the anchors.  Convex, contains the origin for R < 2.
struct BodyDomain {
  SpiderParams params;
  std::vector<Vec2> B; // anchor positions

  static BodyDomain make(const SpiderParams& params);
};

enum class ContainsKind {
  Interior,  // strictly inside every disc
  OnEdge,    // on exactly one reach circle
  OnVertex,  // on two reach circles (a corner of the domain)
  AtAnchor,  // coincides with an anchor (only possible in the small regime)
  Outside,   // outside at least one disc
};

struct Containment {
  ContainsKind kind = ContainsKind::Outside;
  int k = -1;  // edge: circle id; vertex: first circle id; anchor: anchor id
  int k2 = -1; // vertex: second circle id
};

// Classify a body position against the domain with tolerance tol on the
// distance to each circle.  AtAnchor takes precedence over everything else.
Containment contains(const BodyDomain& domain, const Vec2& C, double tol = kAngleTol);

// The corner of the domain where the reach circles of anchors k and k+1 meet.
// For n >= 3 exactly one of the two circle intersections lies in the domain
// and is returned; side is ignored.  For n == 2 both intersections are
// corners: side 0 selects the upper one (y > 0), side 1 the lower.
Vec2 domain_vertex(const BodyDomain& domain, int k, int side = 0);

// Interior point at distance 2 - delta from anchor k on the segment from the
// anchor through the origin.  Falls back to a binary search toward the origin
// if the direct formula is not strictly interior.
Vec2 edge_waypoint(const BodyDomain& domain, int k, double delta);

// Sample the straight segment from P to Q at spacing <= step, keeping every
// sample in the closed domain (throws RoutingFailure otherwise).  When
// avoid_anchors is set, portions passing within 1e-3 of an anchor are
// replaced by a detour along a circular arc of radius 1e-2 around it.
std::vector<Vec2> segment_in_domain(const BodyDomain& domain, const Vec2& P,
                                    const Vec2& Q, bool avoid_anchors,
                                    double step = 1e-2);

} // namespace spider
