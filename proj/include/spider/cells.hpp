#pragma once

#include "spider/model.hpp"

#include <array>

namespace spider {

// All multi-indices of one class for n arms, in lexicographic order (entry 0
// most significant, Plus < Minus < Zero < Infinity).
std::vector<MultiIndex> enumerate_index_set(const SpiderParams& params, IndexClass cls);

// The combinatorial cell structure of the configuration surface in a generic
// regime.  Faces are the sign charts (I2), edges have one stretched arm (I1),
// vertices two adjacent stretched arms (I0).  In the small regime each face
// additionally contains the circles of fully folded arms (IS1); they do not
// enter the CW count directly but contribute the handle correction to the
// Euler characteristic.
struct CellComplex {
  SpiderParams params;
  bool small_regime = false;

  std::vector<MultiIndex> faces;
  std::vector<MultiIndex> edges;
  std::vector<MultiIndex> circles; // empty in the large regime
  // Vertices are (multi-index, copy).  The copy is 0 except for n == 2, where
  // the single I0 index (0, 0) labels two geometric corners (upper, lower).
  std::vector<std::pair<MultiIndex, int>> vertices;

  std::vector<std::vector<int>> face_edges;    // closure, n edge ids per face
  std::vector<std::vector<int>> face_vertices; // closure, vertex ids per face
  std::vector<std::vector<int>> face_circles;  // closure, circle ids per face
  std::vector<std::array<int, 2>> edge_faces;  // the 2 faces an edge bounds
  std::vector<std::vector<int>> vertex_faces;  // the 4 faces a vertex bounds

  long long v_count() const { return static_cast<long long>(vertices.size()); }
  long long e_count() const { return static_cast<long long>(edges.size()); }
  long long f_count() const { return static_cast<long long>(faces.size()); }
};

CellComplex build_complex(const SpiderParams& params);

// V - E + F in the large regime; in the small regime the folded-arm circles
// cut n * 2^n handles into the faces, so chi = (V - E + F) - n * 2^n.
long long euler_characteristic(const CellComplex& complex);

// Genus of a closed orientable surface from its Euler characteristic.
long long genus_from_euler(long long chi);

// Closed-form genus by regime: 1 + (5n - 4) * 2^(n-3) in the small regime,
// 1 + (n - 4) * 2^(n-3) in the large regime (exact integers for all n >= 2).
long long genus_formula(const SpiderParams& params);

struct FaceNeighbor {
  int face_id = -1;         // id into complex.faces
  int edge_id = -1;         // shared edge id
  MultiIndex face;          // neighbor sign chart
  MultiIndex shared_edge;   // the edge across which they meet
};

// Neighbors of a face across its n boundary edges; the neighbor differs in
// exactly the entry that the shared edge has stretched.
std::vector<FaceNeighbor> adjacency(const CellComplex& complex, const MultiIndex& face);

} // namespace spider
