#include "spider/mesh.hpp"

#include "spider/cells.hpp"
#include "spider/domain.hpp"
#include "spider/kinematics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <tuple>
#include <unordered_map>

namespace spider {

namespace {

// Chart-separating embedding coordinate: a weighted sum of the per-arm bend
// values.  It vanishes on stretched arms, so welded boundary points agree.
double bend_coordinate(const Configuration& config, const std::vector<Vec2>& B) {
  double z = 0.0;
  double weight = 0.5;
  for (int k = 0; k < config.params.n; ++k) {
    const Vec2 a = config.body - config.joints[static_cast<std::size_t>(k)];
    const Vec2 b = config.joints[static_cast<std::size_t>(k)] - B[static_cast<std::size_t>(k)];
    z += weight * cross2(b, a);
    weight *= 0.5;
  }
  return z;
}

// Weld keys: (kind, a, b, index code).  Corners and edge-interior samples are
// shared between charts; ring and center vertices stay chart-local.
using WeldKey = std::tuple<int, int, int, std::uint32_t>;

} // namespace

SurfaceMesh build_mesh(const SpiderParams& params, int resolution) {
  const Regime regime = classify_regime(params);
  if (regime.tag != RegimeTag::GenericLarge)
    throw Error(ErrorKind::RegimeMismatch,
                "build_mesh: surface meshing is defined in the large generic regime only");
  if (resolution < 2)
    throw Error(ErrorKind::InvalidParameter, "build_mesh: resolution must be >= 2");
  const int n = params.n;
  const int res = resolution;
  const int P = n * res; // boundary samples per chart
  const std::vector<Vec2> B = anchors(params);
  const BodyDomain domain = BodyDomain::make(params);

  // Corners ordered so that the walk corner[t] -> corner[t+1] runs counter-
  // clockwise along the boundary; the connecting arc lies on circle (t+1).
  std::vector<Vec2> corner(static_cast<std::size_t>(n));
  if (n == 2) {
    corner[0] = domain_vertex(domain, 0, 1); // lower
    corner[1] = domain_vertex(domain, 0, 0); // upper
  } else {
    for (int k = 0; k < n; ++k) corner[static_cast<std::size_t>(k)] = domain_vertex(domain, k);
  }

  std::vector<Vec2> bp(static_cast<std::size_t>(P));
  for (int t = 0; t < n; ++t) {
    const int c = (t + 1) % n;
    const Vec2& center = B[static_cast<std::size_t>(c)];
    const Vec2 from = corner[static_cast<std::size_t>(t)];
    const Vec2 to = corner[static_cast<std::size_t>((t + 1) % n)];
    const double a0 = std::atan2((from - center).y(), (from - center).x());
    const double a1 = std::atan2((to - center).y(), (to - center).x());
    double da = a1 - a0;
    while (da <= 0.0) da += 2.0 * std::numbers::pi;
    Vec2 mid = center + 2.0 * Vec2(std::cos(a0 + 0.5 * da), std::sin(a0 + 0.5 * da));
    if (contains(domain, mid).kind == ContainsKind::Outside) {
      da -= 2.0 * std::numbers::pi;
      mid = center + 2.0 * Vec2(std::cos(a0 + 0.5 * da), std::sin(a0 + 0.5 * da));
      if (contains(domain, mid).kind == ContainsKind::Outside)
        throw Error(ErrorKind::CrossCheckFailure, "build_mesh: neither boundary arc lies in the domain");
    }
    for (int i = 0; i < res; ++i) {
      const double a = a0 + da * static_cast<double>(i) / res;
      bp[static_cast<std::size_t>(t * res + i)] =
          (i == 0) ? from : Vec2(center + 2.0 * Vec2(std::cos(a), std::sin(a)));
    }
  }

  SurfaceMesh mesh;
  mesh.n = n;
  mesh.resolution = res;

  std::map<WeldKey, int> pool;
  const std::vector<MultiIndex> faces = enumerate_index_set(params, IndexClass::I2);

  for (const MultiIndex& face : faces) {
    const std::uint32_t code = face.code();

    auto weld_key = [&](int j, int m) -> WeldKey {
      if (j == 0) return WeldKey{3, 0, 0, code};
      if (j < res) return WeldKey{2, j, m, code};
      // Boundary stratum: shared between charts.
      const int t = m / res;
      const int i = m % res;
      if (i == 0) {
        MultiIndex vert = face;
        vert[t] = ArmIndexValue::Zero;
        vert[(t + 1) % n] = ArmIndexValue::Zero;
        return WeldKey{0, t, 0, vert.code()};
      }
      MultiIndex edge = face;
      edge[(t + 1) % n] = ArmIndexValue::Zero;
      return WeldKey{1, t, i, edge.code()};
    };
    auto body_at = [&](int j, int m) -> Vec2 {
      if (j == 0) return Vec2::Zero();
      const Vec2 rim = bp[static_cast<std::size_t>(m)];
      return (static_cast<double>(j) / res) * rim;
    };

    // Global ids for this chart's grid: gid[0] is the center, then rings
    // j = 1..res each with P entries.
    std::vector<int> gid(static_cast<std::size_t>(1 + res * P), -1);
    auto slot = [&](int j, int m) { return (j == 0) ? 0 : 1 + (j - 1) * P + (m % P); };
    for (int j = 0; j <= res; ++j) {
      for (int m = 0; m < ((j == 0) ? 1 : P); ++m) {
        const WeldKey key = weld_key(j, m);
        auto it = pool.find(key);
        if (it != pool.end()) {
          gid[static_cast<std::size_t>(slot(j, m))] = it->second;
          continue;
        }
        const Vec2 body = body_at(j, m);
        const Configuration config = solve_configuration(params, body, face);
        SurfaceMesh::Vertex v;
        v.body = body;
        v.chart = code;
        v.position = Eigen::Vector3d(body.x(), body.y(), bend_coordinate(config, B));
        const int id = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back(v);
        pool.emplace(key, id);
        gid[static_cast<std::size_t>(slot(j, m))] = id;
      }
    }

    const bool flip = (face.orientation_sign() < 0);
    auto emit = [&](int a, int b, int c) {
      if (flip) std::swap(b, c);
      mesh.triangles.push_back({a, b, c});
      mesh.triangle_chart.push_back(code);
    };
    auto g = [&](int j, int m) { return gid[static_cast<std::size_t>(slot(j, m))]; };
    for (int m = 0; m < P; ++m) emit(g(0, 0), g(1, m), g(1, m + 1));
    for (int j = 1; j < res; ++j)
      for (int m = 0; m < P; ++m) {
        emit(g(j, m), g(j + 1, m), g(j + 1, m + 1));
        emit(g(j, m), g(j + 1, m + 1), g(j, m + 1));
      }
  }
  return mesh;
}

namespace {

struct EdgeUse {
  int count = 0;
  // Direction of the first two traversals: +1 for (lo -> hi), -1 otherwise.
  int dir0 = 0;
  int dir1 = 0;
};

std::unordered_map<std::uint64_t, EdgeUse> edge_uses(const SurfaceMesh& mesh) {
  std::unordered_map<std::uint64_t, EdgeUse> uses;
  uses.reserve(mesh.triangles.size() * 2);
  for (const auto& tri : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      const int a = tri[static_cast<std::size_t>(e)];
      const int b = tri[static_cast<std::size_t>((e + 1) % 3)];
      const std::uint64_t key = (static_cast<std::uint64_t>(std::min(a, b)) << 32) |
                                static_cast<std::uint64_t>(std::max(a, b));
      EdgeUse& use = uses[key];
      const int dir = (a < b) ? +1 : -1;
      if (use.count == 0)
        use.dir0 = dir;
      else if (use.count == 1)
        use.dir1 = dir;
      ++use.count;
    }
  }
  return uses;
}

} // namespace

long long mesh_euler(const SurfaceMesh& mesh) {
  const auto uses = edge_uses(mesh);
  return static_cast<long long>(mesh.vertices.size()) -
         static_cast<long long>(uses.size()) +
         static_cast<long long>(mesh.triangles.size());
}

bool mesh_closed(const SurfaceMesh& mesh) {
  for (const auto& [key, use] : edge_uses(mesh))
    if (use.count != 2) return false;
  return true;
}

OrientationReport check_orientation(const SurfaceMesh& mesh) {
  OrientationReport report;
  report.closed = true;
  report.consistent = true;
  for (const auto& [key, use] : edge_uses(mesh)) {
    if (use.count != 2) report.closed = false;
    // Opposite traversal means one (lo -> hi) and one (hi -> lo).
    if (use.count == 2 && use.dir0 == use.dir1) report.consistent = false;
  }
  if (!report.closed) report.consistent = false;

  // Per-chart winding in the body plane must follow the parity of the number
  // of Minus entries, up to one global flip.
  std::map<std::uint32_t, double> area2;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    const Vec2& a = mesh.vertices[static_cast<std::size_t>(tri[0])].body;
    const Vec2& b = mesh.vertices[static_cast<std::size_t>(tri[1])].body;
    const Vec2& c = mesh.vertices[static_cast<std::size_t>(tri[2])].body;
    area2[mesh.triangle_chart[t]] += cross2(b - a, c - a);
  }
  bool match = !area2.empty();
  int global = 0;
  for (const auto& [code, area] : area2) {
    if (area == 0.0) {
      match = false;
      break;
    }
    const int w = (area > 0.0) ? +1 : -1;
    const int expected = MultiIndex::from_code(code, mesh.n).orientation_sign();
    const int flip = w * expected; // the would-be global flip for this chart
    if (global == 0)
      global = flip;
    else if (global != flip)
      match = false;
  }
  report.chart_signs_match = match;
  return report;
}

namespace {

void write_double3(std::ostream& out, const char* prefix, const Eigen::Vector3d& v) {
  char buffer[128];
  std::snprintf(buffer, sizeof(buffer), "%s%.17g %.17g %.17g\n", prefix, v.x(), v.y(), v.z());
  out << buffer;
}

} // namespace

void export_obj(const SurfaceMesh& mesh, std::ostream& out) {
  out << "# configuration surface mesh: " << mesh.vertices.size() << " vertices, "
      << mesh.triangles.size() << " triangles\n";
  for (const auto& v : mesh.vertices) write_double3(out, "v ", v.position);
  for (const auto& tri : mesh.triangles) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "f %d %d %d\n", tri[0] + 1, tri[1] + 1, tri[2] + 1);
    out << buffer;
  }
}

void export_obj(const SurfaceMesh& mesh, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoFailure, "export_obj: cannot open " + path);
  export_obj(mesh, out);
  if (!out.good()) throw Error(ErrorKind::IoFailure, "export_obj: write failed for " + path);
}

void export_off(const SurfaceMesh& mesh, std::ostream& out) {
  out << "OFF\n"
      << mesh.vertices.size() << ' ' << mesh.triangles.size() << " 0\n";
  for (const auto& v : mesh.vertices) write_double3(out, "", v.position);
  for (const auto& tri : mesh.triangles) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "3 %d %d %d\n", tri[0], tri[1], tri[2]);
    out << buffer;
  }
}

void export_off(const SurfaceMesh& mesh, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoFailure, "export_off: cannot open " + path);
  export_off(mesh, out);
  if (!out.good()) throw Error(ErrorKind::IoFailure, "export_off: write failed for " + path);
}

} // namespace spider
