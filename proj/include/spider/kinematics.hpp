#pragma once

#include "spider/model.hpp"

#include <optional>

namespace spider {

// Anchor positions B_k = R * (cos(2 pi k / n), sin(2 pi k / n)), k = 0..n-1.
std::vector<Vec2> anchors(const SpiderParams& params);

// The 2n constraint residuals: for each arm k the squared-length defects
// |body - J_k|^2 - 1 and |J_k - B_k|^2 - 1, ordered arm by arm.
Eigen::VectorXd residuals(const Configuration& config);

// Largest absolute residual.
double max_residual(const Configuration& config);

// Jacobian of the residual map with respect to (x, y, p_0, q_0, ..., p_{n-1},
// q_{n-1}); shape 2n x (2n + 2).
Eigen::MatrixXd jacobian(const Configuration& config);

enum class Branch { Plus, Minus };

// Elbow position of a single two-bar arm from body to anchor.  The two
// solutions are mirror images across the body-anchor segment; Branch::Plus is
// the one with positive signed arm angle.  Throws Unreachable when the anchor
// is farther than 2 (beyond tolerance) and FoldedIndeterminate when body and
// anchor coincide.
Vec2 solve_joint(const Vec2& body, const Vec2& anchor, Branch branch);

// Assemble the configuration with the given body position and per-arm branch
// choices.  Entries may be Plus, Minus, or Zero (Zero requires the body to
// lie on the corresponding reach circle within tolerance); folded entries are
// rejected -- use folded_configuration for those.
Configuration solve_configuration(const SpiderParams& params, const Vec2& body,
                                  const MultiIndex& signs);

// Configuration with the body sitting exactly on anchor k, that arm folded
// with the free joint direction theta, and all other arms solved from signs
// (whose entry k must be Infinity).
Configuration folded_configuration(const SpiderParams& params, int k, double theta,
                                   const MultiIndex& signs);

// Signed angle at the elbow of arm k: atan2(cross(b, a), dot(b, a)) with
// a = body - J_k, b = J_k - B_k.  Zero when stretched, +-pi when folded.
double arm_angle(const Configuration& config, int k);

// Qualitative index of arm k derived from arm_angle with tolerance kAngleTol;
// the folded case is recognized by |body - B_k| ~ 0 instead of the angle.
ArmIndexValue arm_index(const Configuration& config, int k);

// All per-arm indices at once.
MultiIndex configuration_index(const Configuration& config);

struct ProjectResult {
  Configuration config;
  // Arms whose two branch candidates were equidistant from the approximate
  // joint; those were resolved to Branch::Plus.
  std::vector<int> tie_arms;
};

// Snap an approximate configuration back onto the constraint set without
// moving the body: each joint is re-solved and the branch nearest the
// approximate joint is kept.  Folded arms keep their joint direction.
ProjectResult project(const SpiderParams& params, const Configuration& approx);

// Smallest singular value of the Jacobian divided by the largest; the rank
// drops below 2n exactly when this ratio vanishes.
double relative_sigma_min(const Eigen::MatrixXd& jac);

// Norm of the projection of grad(height) onto the tangent space (null space
// of the Jacobian); vanishes exactly at critical points of the height.
double tangent_height_gradient(const Configuration& config);

} // namespace spider
