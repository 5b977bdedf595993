#pragma once

#include "spider/model.hpp"

namespace spider {

// The three shapes a critical point of the height function y(body) can take.
enum class CriticalKind {
  TwoStretched,    // body at a domain corner, arms k and k+1 stretched
  FoldedVertical,  // body on anchor k, that arm folded along the vertical
  StretchedVertical, // body at anchor k +- 2 e_y, that arm stretched vertically
};

const char* critical_kind_name(CriticalKind kind);

struct CriticalPoint {
  Configuration config;
  CriticalKind kind = CriticalKind::TwoStretched;
  MultiIndex index;        // multi-index of the stratum carrying the point
  int k = -1;              // anchor id (TwoStretched: first of the pair k, k+1)
  int side = 0;            // n == 2 corner copy for TwoStretched; else 0
  int dir = 0;             // vertical kinds: +1 joint/body above, -1 below
  double theta = 0.0;      // TwoStretched: direction angle of arm k
  double theta_prime = 0.0; // TwoStretched: direction angle of arm k+1
  double psi = 0.0;        // critical value, the body height y
  Eigen::Matrix2d hessian = Eigen::Matrix2d::Zero(); // closed form, chart coords
  int morse_index = -1;    // number of negative Hessian eigenvalues
};

// All critical points of the height function in a generic regime, with
// closed-form Hessians and Morse indices filled in.  Deterministic order:
// kind, then anchor id, then copy/direction.
std::vector<CriticalPoint> enumerate_critical_points(const SpiderParams& params);

// Closed-form 2x2 Hessian of the height in the canonical chart coordinates of
// the critical point (recomputed from the stored geometry, not copied).
Eigen::Matrix2d closed_form_hessian(const CriticalPoint& point);

// Numerical Hessian of the height in the same chart coordinates, by central
// differences with step h on the constraint-resolved local parameterization.
Eigen::Matrix2d finite_difference_hessian(const CriticalPoint& point, double h = 1e-4);

// Number of negative eigenvalues of a symmetric 2x2 matrix; throws
// DegenerateAngle if an eigenvalue is numerically zero.
int morse_index_of(const Eigen::Matrix2d& hessian, double tol = 1e-9);

// Counts of critical points by Morse index.
struct MorseRows {
  long long index0 = 0;
  long long index1 = 0;
  long long index2 = 0;
  long long total() const { return index0 + index1 + index2; }
  long long euler() const { return index0 - index1 + index2; }
  bool operator==(const MorseRows&) const = default;
};

// Rows obtained by enumerating and classifying every critical point.
MorseRows morse_rows(const SpiderParams& params);

// Closed-form rows (no enumeration), including the extra vertical-anchor
// extrema that exist when n is divisible by 4.
MorseRows morse_rows_closed_form(const SpiderParams& params);

// Alternating sum index0 - index1 + index2 from the enumeration; must equal
// the Euler characteristic of the cell complex.
long long morse_euler(const SpiderParams& params);

} // namespace spider
