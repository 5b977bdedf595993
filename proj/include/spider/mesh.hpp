#pragma once

#include "spider/model.hpp"

#include <array>
#include <iosfwd>

namespace spider {

// Triangulated model of the configuration surface in the large regime.  Each
// sign chart is a copy of the body domain triangulated on a radial grid; the
// charts are welded along their shared boundary strata.  The embedding uses
// (x, y, z) with z a chart-separating combination of the arm bend values.
struct SurfaceMesh {
  struct Vertex {
    Eigen::Vector3d position = Eigen::Vector3d::Zero();
    Vec2 body = Vec2::Zero();   // body position this sample came from
    std::uint32_t chart = 0;    // code() of the chart that created it
  };

  int n = 0;                                  // arms
  int resolution = 0;                         // segments per boundary edge
  std::vector<Vertex> vertices;
  std::vector<std::array<int, 3>> triangles;  // vertex ids, oriented
  std::vector<std::uint32_t> triangle_chart;  // chart code per triangle
};

// Build the welded mesh; resolution >= 2 segments per domain edge.  Only
// defined in the large regime (no folded arms, every chart a closed disc).
SurfaceMesh build_mesh(const SpiderParams& params, int resolution);

// Number of undirected edges; with closedness this yields chi = V - E + F.
long long mesh_euler(const SurfaceMesh& mesh);

// True when every undirected edge is shared by exactly two triangles.
bool mesh_closed(const SurfaceMesh& mesh);

struct OrientationReport {
  bool closed = false;        // every edge in exactly two triangles
  bool consistent = false;    // the two incident triangles traverse each
                              // shared edge in opposite directions, as given
  bool chart_signs_match = false; // per-chart winding equals the parity rule
                                  // (-1)^(#Minus), up to one global flip
  bool ok() const { return closed && consistent && chart_signs_match; }
};

// Verify the as-given triangle orientations: closedness, opposite traversal
// of every shared edge, and agreement of each chart's winding in the body
// plane with its multi-index parity.
OrientationReport check_orientation(const SurfaceMesh& mesh);

// Wavefront OBJ with 17-significant-digit vertices; deterministic bytes.
void export_obj(const SurfaceMesh& mesh, std::ostream& out);
void export_obj(const SurfaceMesh& mesh, const std::string& path);

// OFF output with the same vertex/triangle order.
void export_off(const SurfaceMesh& mesh, std::ostream& out);
void export_off(const SurfaceMesh& mesh, const std::string& path);

} // namespace spider
