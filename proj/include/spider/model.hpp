#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spider {

using Vec2 = Eigen::Vector2d;

// z-component of the cross product of two planar vectors.
inline double cross2(const Vec2& a, const Vec2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Rotate a planar vector by +90 degrees.
inline Vec2 rot90(const Vec2& v) { return Vec2(-v.y(), v.x()); }

// Tolerance for classifying the radius into a regime.
inline constexpr double kEpsRegime = 1e-12;
// Tolerance on the signed arm angle for calling an arm stretched/folded.
inline constexpr double kAngleTol = 1e-9;
// Default tolerance on constraint residuals for accepting a configuration.
inline constexpr double kResidualTol = 1e-9;
// Relative singular-value threshold below which the constraint Jacobian is
// considered rank-deficient.
inline constexpr double kRankTol = 1e-8;

enum class ErrorKind {
  InvalidParameter,    // bad n, R, resolution, ...
  Unreachable,         // anchor farther than the two-bar reach
  FoldedIndeterminate, // joint branch undefined because body sits on an anchor
  ChartMismatch,       // requested multi-index incompatible with body position
  RegimeMismatch,      // operation not defined in the current radius regime
  RoutingFailure,      // path planner could not hold its invariants
  DegenerateAngle,     // closed-form formula hit a vanishing denominator
  CrossCheckFailure,   // two independent computations of the same quantity differ
  IoFailure,           // filesystem / serialization problem
};

// All errors thrown by the library carry a machine-readable kind so the CLI
// can map them onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Mechanism parameters: n two-bar arms with unit links, anchors equally
// spaced on a circle of radius R about the origin.
struct SpiderParams {
  int n = 0;      // number of arms, n >= 2
  double R = 0.0; // anchor circle radius, R >= 0

  // Minimal distance between distinct anchors on the unit circle, scaled by R
  // gives the actual minimal anchor gap.  2 for even n, the shortest diagonal
  // of the regular n-gon otherwise is handled in d_min().
  double d_min() const;

  // Radius at which a fully folded arm collides with the reach of the most
  // distant anchor pair; boundary between the small and large generic regimes.
  double critical_R() const;

  static SpiderParams make(int n, double R);
};

// Largest chord length of the regular n-gon inscribed in the unit circle.
double max_chord(int n);

// Radius separating the small regime (folded arms possible) from the large.
double critical_radius(int n);

enum class RegimeTag {
  Coincident,   // R == 0, all anchors at the origin
  GenericSmall, // 0 < R < critical_radius(n), smooth surface, folded arms exist
  CriticalRn,   // R == critical_radius(n), singular transition
  GenericLarge, // critical_radius(n) < R < 2, smooth surface, no folded arms
  Point,        // R == 2, single fully stretched configuration
  Empty,        // R > 2, no configuration at all
};

struct Regime {
  RegimeTag tag = RegimeTag::Empty;
  bool n_even = false;
};

Regime classify_regime(const SpiderParams& params);
const char* regime_name(RegimeTag tag);

// Qualitative state of one arm: sign of the bend, stretched, or folded.
enum class ArmIndexValue : std::uint8_t {
  Plus = 0,     // joint bends to the positive (counter-clockwise) side
  Minus = 1,    // joint bends to the negative side
  Zero = 2,     // stretched: body on the reach circle of its anchor
  Infinity = 3, // folded: body coincides with its anchor
};

char arm_index_char(ArmIndexValue v);

// Class of a multi-index according to which degenerate entries it contains.
enum class IndexClass {
  I2,  // all entries +/-          : 2-cells (face charts)
  I1,  // exactly one 0, rest +/-  : 1-cells (edges)
  I0,  // two adjacent 0s          : 0-cells (vertices)
  IS1, // exactly one folded entry : circles in the small regime
  ISE, // folded + antipodal 0 (even n) : transition points at R == R_n
  ISO, // folded + two opposite 0s (odd n) : transition arcs at R == R_n
  Invalid,
};

// Vector of per-arm index values with the comparison, classification and
// packing helpers used by the cell complex.
struct MultiIndex {
  std::vector<ArmIndexValue> entries;

  MultiIndex() = default;
  explicit MultiIndex(int n) : entries(static_cast<std::size_t>(n), ArmIndexValue::Plus) {}

  int n() const { return static_cast<int>(entries.size()); }
  ArmIndexValue& operator[](int k) { return entries[static_cast<std::size_t>(k)]; }
  ArmIndexValue operator[](int k) const { return entries[static_cast<std::size_t>(k)]; }
  bool operator==(const MultiIndex& other) const = default;

  // Entries packed two bits each, entry 0 in the lowest bits (n <= 16).
  std::uint32_t code() const;
  static MultiIndex from_code(std::uint32_t code, int n);

  IndexClass classify() const;
  int count(ArmIndexValue v) const;
  // Positions of entries equal to v, ascending.
  std::vector<int> where(ArmIndexValue v) const;
  // Chart orientation sign (-1)^(#Minus entries); meaningful for I2 indices.
  int orientation_sign() const;

  // One character per arm: '+', '-', '0', 'x' (folded).
  std::string str() const;
  static MultiIndex parse(const std::string& text);
};

// A full configuration: body position and one joint per arm.
struct Configuration {
  SpiderParams params;
  Vec2 body = Vec2::Zero();
  std::vector<Vec2> joints; // joints[k] belongs to the arm anchored at B_k
};

} // namespace spider
