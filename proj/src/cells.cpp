#include "spider/cells.hpp"

#include <algorithm>
#include <unordered_map>

namespace spider {

namespace {

// All assignments of Plus/Minus to the free positions of a template index,
// appended to out.
void fill_signs(const MultiIndex& base, const std::vector<int>& free_slots,
                std::vector<MultiIndex>& out) {
  const auto count = static_cast<std::uint32_t>(1u << free_slots.size());
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    MultiIndex mi = base;
    for (std::size_t i = 0; i < free_slots.size(); ++i)
      mi[free_slots[i]] = (bits >> i & 1u) ? ArmIndexValue::Minus : ArmIndexValue::Plus;
    out.push_back(mi);
  }
}

std::vector<int> complement(int n, std::initializer_list<int> fixed) {
  std::vector<int> out;
  for (int k = 0; k < n; ++k)
    if (std::find(fixed.begin(), fixed.end(), k) == fixed.end()) out.push_back(k);
  return out;
}

bool lex_less(const MultiIndex& a, const MultiIndex& b) {
  return a.entries < b.entries; // element type already orders + < - < 0 < x
}

} // namespace

std::vector<MultiIndex> enumerate_index_set(const SpiderParams& params, IndexClass cls) {
  const int n = params.n;
  std::vector<MultiIndex> out;
  switch (cls) {
    case IndexClass::I2:
      fill_signs(MultiIndex(n), complement(n, {}), out);
      break;
    case IndexClass::I1:
      for (int z = 0; z < n; ++z) {
        MultiIndex base(n);
        base[z] = ArmIndexValue::Zero;
        fill_signs(base, complement(n, {z}), out);
      }
      break;
    case IndexClass::I0: {
      const int pairs = (n == 2) ? 1 : n;
      for (int k = 0; k < pairs; ++k) {
        MultiIndex base(n);
        base[k] = ArmIndexValue::Zero;
        base[(k + 1) % n] = ArmIndexValue::Zero;
        fill_signs(base, complement(n, {k, (k + 1) % n}), out);
      }
      break;
    }
    case IndexClass::IS1:
      for (int f = 0; f < n; ++f) {
        MultiIndex base(n);
        base[f] = ArmIndexValue::Infinity;
        fill_signs(base, complement(n, {f}), out);
      }
      break;
    case IndexClass::ISE: {
      if (n % 2 != 0)
        throw Error(ErrorKind::InvalidParameter, "enumerate_index_set: ISE needs even n");
      for (int f = 0; f < n; ++f) {
        const int z = (f + n / 2) % n;
        MultiIndex base(n);
        base[f] = ArmIndexValue::Infinity;
        base[z] = ArmIndexValue::Zero;
        fill_signs(base, complement(n, {f, z}), out);
      }
      break;
    }
    case IndexClass::ISO: {
      if (n % 2 == 0 || n < 3)
        throw Error(ErrorKind::InvalidParameter, "enumerate_index_set: ISO needs odd n >= 3");
      const int m = (n - 1) / 2;
      for (int f = 0; f < n; ++f) {
        const int z1 = (f + m) % n;
        const int z2 = (f + m + 1) % n;
        MultiIndex base(n);
        base[f] = ArmIndexValue::Infinity;
        base[z1] = ArmIndexValue::Zero;
        base[z2] = ArmIndexValue::Zero;
        fill_signs(base, complement(n, {f, z1, z2}), out);
      }
      break;
    }
    case IndexClass::Invalid:
      throw Error(ErrorKind::InvalidParameter, "enumerate_index_set: invalid class");
  }
  std::sort(out.begin(), out.end(), lex_less);
  for (const MultiIndex& mi : out)
    if (mi.classify() != cls)
      throw Error(ErrorKind::CrossCheckFailure,
                  "enumerate_index_set: generated index fails its own classification");
  return out;
}

CellComplex build_complex(const SpiderParams& params) {
  const Regime regime = classify_regime(params);
  if (regime.tag != RegimeTag::GenericSmall && regime.tag != RegimeTag::GenericLarge)
    throw Error(ErrorKind::RegimeMismatch,
                "build_complex: cell decomposition exists only in the generic regimes");
  const int n = params.n;

  CellComplex complex;
  complex.params = params;
  complex.small_regime = (regime.tag == RegimeTag::GenericSmall);
  complex.faces = enumerate_index_set(params, IndexClass::I2);
  complex.edges = enumerate_index_set(params, IndexClass::I1);
  if (complex.small_regime) complex.circles = enumerate_index_set(params, IndexClass::IS1);

  std::unordered_map<std::uint32_t, int> face_id, edge_id, circle_id, vertex_base;
  for (std::size_t i = 0; i < complex.faces.size(); ++i)
    face_id[complex.faces[i].code()] = static_cast<int>(i);
  for (std::size_t i = 0; i < complex.edges.size(); ++i)
    edge_id[complex.edges[i].code()] = static_cast<int>(i);
  for (std::size_t i = 0; i < complex.circles.size(); ++i)
    circle_id[complex.circles[i].code()] = static_cast<int>(i);

  const std::vector<MultiIndex> vertex_indices = enumerate_index_set(params, IndexClass::I0);
  const int copies = (n == 2) ? 2 : 1;
  for (const MultiIndex& mi : vertex_indices) {
    vertex_base[mi.code()] = static_cast<int>(complex.vertices.size());
    for (int c = 0; c < copies; ++c) complex.vertices.emplace_back(mi, c);
  }

  complex.face_edges.resize(complex.faces.size());
  complex.face_vertices.resize(complex.faces.size());
  complex.face_circles.resize(complex.faces.size());
  complex.edge_faces.assign(complex.edges.size(), {-1, -1});
  complex.vertex_faces.resize(complex.vertices.size());

  for (std::size_t fi = 0; fi < complex.faces.size(); ++fi) {
    const MultiIndex& face = complex.faces[fi];
    for (int k = 0; k < n; ++k) {
      MultiIndex edge = face;
      edge[k] = ArmIndexValue::Zero;
      const int ei = edge_id.at(edge.code());
      complex.face_edges[fi].push_back(ei);
      if (complex.edge_faces[static_cast<std::size_t>(ei)][0] < 0)
        complex.edge_faces[static_cast<std::size_t>(ei)][0] = static_cast<int>(fi);
      else if (complex.edge_faces[static_cast<std::size_t>(ei)][1] < 0)
        complex.edge_faces[static_cast<std::size_t>(ei)][1] = static_cast<int>(fi);
      else
        throw Error(ErrorKind::CrossCheckFailure, "build_complex: edge in more than two faces");
    }
    // Corners: both arms of an adjacent pair stretched.  For n == 2 the two
    // geometric corners share one multi-index and are told apart by the copy.
    const int corner_count = (n == 2) ? 2 : n;
    for (int k = 0; k < corner_count; ++k) {
      MultiIndex vert = face;
      vert[k] = ArmIndexValue::Zero;
      vert[(k + 1) % n] = ArmIndexValue::Zero;
      const int vi = vertex_base.at(vert.code()) + ((n == 2) ? k : 0);
      complex.face_vertices[fi].push_back(vi);
      complex.vertex_faces[static_cast<std::size_t>(vi)].push_back(static_cast<int>(fi));
    }
    if (complex.small_regime) {
      for (int k = 0; k < n; ++k) {
        MultiIndex circ = face;
        circ[k] = ArmIndexValue::Infinity;
        complex.face_circles[fi].push_back(circle_id.at(circ.code()));
      }
    }
  }

  for (const auto& ef : complex.edge_faces)
    if (ef[0] < 0 || ef[1] < 0)
      throw Error(ErrorKind::CrossCheckFailure, "build_complex: edge not in two faces");
  for (const auto& vf : complex.vertex_faces)
    if (vf.size() != 4)
      throw Error(ErrorKind::CrossCheckFailure, "build_complex: vertex not in four faces");
  return complex;
}

long long euler_characteristic(const CellComplex& complex) {
  long long chi = complex.v_count() - complex.e_count() + complex.f_count();
  if (complex.small_regime) {
    // Each face chart contains n folded-arm circles; cutting along them and
    // rejoining across sign charts adds n * 2^n to the total handle count.
    chi -= static_cast<long long>(complex.params.n) * (1LL << complex.params.n);
  }
  return chi;
}

long long genus_from_euler(long long chi) {
  if (chi > 2 || chi % 2 != 0)
    throw Error(ErrorKind::CrossCheckFailure,
                "genus_from_euler: not the Euler characteristic of a closed orientable surface");
  return (2 - chi) / 2;
}

long long genus_formula(const SpiderParams& params) {
  const Regime regime = classify_regime(params);
  const long long n = params.n;
  long long scaled; // 8 * (genus - 1), exact in integers
  if (regime.tag == RegimeTag::GenericSmall)
    scaled = (5 * n - 4) * (1LL << n);
  else if (regime.tag == RegimeTag::GenericLarge)
    scaled = (n - 4) * (1LL << n);
  else
    throw Error(ErrorKind::RegimeMismatch, "genus_formula: genus defined only in generic regimes");
  if (scaled % 8 != 0)
    throw Error(ErrorKind::CrossCheckFailure, "genus_formula: non-integer genus");
  return 1 + scaled / 8;
}

std::vector<FaceNeighbor> adjacency(const CellComplex& complex, const MultiIndex& face) {
  if (face.classify() != IndexClass::I2)
    throw Error(ErrorKind::InvalidParameter, "adjacency: not a face index");
  int fi = -1;
  for (std::size_t i = 0; i < complex.faces.size(); ++i)
    if (complex.faces[i] == face) {
      fi = static_cast<int>(i);
      break;
    }
  if (fi < 0) throw Error(ErrorKind::InvalidParameter, "adjacency: face not in complex");
  std::vector<FaceNeighbor> out;
  for (int ei : complex.face_edges[static_cast<std::size_t>(fi)]) {
    const auto& ef = complex.edge_faces[static_cast<std::size_t>(ei)];
    const int other = (ef[0] == fi) ? ef[1] : ef[0];
    FaceNeighbor nb;
    nb.face_id = other;
    nb.edge_id = ei;
    nb.face = complex.faces[static_cast<std::size_t>(other)];
    nb.shared_edge = complex.edges[static_cast<std::size_t>(ei)];
    out.push_back(nb);
  }
  return out;
}

} // namespace spider
