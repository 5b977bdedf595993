#include "spider/kinematics.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <numbers>

namespace spider {

std::vector<Vec2> anchors(const SpiderParams& params) {
  std::vector<Vec2> B(static_cast<std::size_t>(params.n));
  for (int k = 0; k < params.n; ++k) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(params.n);
    B[static_cast<std::size_t>(k)] = params.R * Vec2(std::cos(phi), std::sin(phi));
  }
  return B;
}

Eigen::VectorXd residuals(const Configuration& config) {
  const int n = config.params.n;
  if (static_cast<int>(config.joints.size()) != n)
    throw Error(ErrorKind::InvalidParameter, "residuals: joint count != n");
  const std::vector<Vec2> B = anchors(config.params);
  Eigen::VectorXd r(2 * n);
  for (int k = 0; k < n; ++k) {
    const Vec2& J = config.joints[static_cast<std::size_t>(k)];
    r(2 * k) = (config.body - J).squaredNorm() - 1.0;
    r(2 * k + 1) = (J - B[static_cast<std::size_t>(k)]).squaredNorm() - 1.0;
  }
  return r;
}

double max_residual(const Configuration& config) {
  return residuals(config).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd jacobian(const Configuration& config) {
  const int n = config.params.n;
  if (static_cast<int>(config.joints.size()) != n)
    throw Error(ErrorKind::InvalidParameter, "jacobian: joint count != n");
  const std::vector<Vec2> B = anchors(config.params);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n + 2);
  for (int k = 0; k < n; ++k) {
    const Vec2 a = config.body - config.joints[static_cast<std::size_t>(k)];
    const Vec2 b = config.joints[static_cast<std::size_t>(k)] - B[static_cast<std::size_t>(k)];
    // d/d(body) |body - J_k|^2 = 2 a ; d/d(J_k) = -2 a.
    J(2 * k, 0) = 2.0 * a.x();
    J(2 * k, 1) = 2.0 * a.y();
    J(2 * k, 2 + 2 * k) = -2.0 * a.x();
    J(2 * k, 2 + 2 * k + 1) = -2.0 * a.y();
    // d/d(J_k) |J_k - B_k|^2 = 2 b.
    J(2 * k + 1, 2 + 2 * k) = 2.0 * b.x();
    J(2 * k + 1, 2 + 2 * k + 1) = 2.0 * b.y();
  }
  return J;
}

Vec2 solve_joint(const Vec2& body, const Vec2& anchor, Branch branch) {
  const Vec2 delta = body - anchor;
  const double d = delta.norm();
  if (d > 2.0 + kAngleTol)
    throw Error(ErrorKind::Unreachable, "solve_joint: anchor beyond reach");
  if (d < kAngleTol)
    throw Error(ErrorKind::FoldedIndeterminate,
                "solve_joint: body on anchor, joint direction undetermined");
  const Vec2 mid = 0.5 * (body + anchor);
  // Clamped so that at full stretch both branches give bit-identical joints.
  const double h = std::sqrt(std::max(0.0, 1.0 - 0.25 * d * d));
  const Vec2 perp = rot90(delta / d);
  return (branch == Branch::Plus) ? Vec2(mid - h * perp) : Vec2(mid + h * perp);
}

Configuration solve_configuration(const SpiderParams& params, const Vec2& body,
                                  const MultiIndex& signs) {
  if (signs.n() != params.n)
    throw Error(ErrorKind::InvalidParameter, "solve_configuration: index size != n");
  Configuration config{params, body, std::vector<Vec2>(static_cast<std::size_t>(params.n))};
  const std::vector<Vec2> B = anchors(params);
  for (int k = 0; k < params.n; ++k) {
    const Vec2& Bk = B[static_cast<std::size_t>(k)];
    switch (signs[k]) {
      case ArmIndexValue::Plus:
        config.joints[static_cast<std::size_t>(k)] = solve_joint(body, Bk, Branch::Plus);
        break;
      case ArmIndexValue::Minus:
        config.joints[static_cast<std::size_t>(k)] = solve_joint(body, Bk, Branch::Minus);
        break;
      case ArmIndexValue::Zero: {
        const double d = (body - Bk).norm();
        if (std::abs(d - 2.0) > kAngleTol)
          throw Error(ErrorKind::ChartMismatch,
                      "solve_configuration: stretched entry but body not on reach circle");
        config.joints[static_cast<std::size_t>(k)] = Bk + (body - Bk) / d;
        break;
      }
      case ArmIndexValue::Infinity:
        throw Error(ErrorKind::ChartMismatch,
                    "solve_configuration: folded entry; use folded_configuration");
    }
  }
  return config;
}

Configuration folded_configuration(const SpiderParams& params, int k, double theta,
                                   const MultiIndex& signs) {
  if (signs.n() != params.n || k < 0 || k >= params.n)
    throw Error(ErrorKind::InvalidParameter, "folded_configuration: bad index data");
  if (signs[k] != ArmIndexValue::Infinity)
    throw Error(ErrorKind::InvalidParameter,
                "folded_configuration: entry k must be the folded one");
  const std::vector<Vec2> B = anchors(params);
  const Vec2 body = B[static_cast<std::size_t>(k)];
  Configuration config{params, body, std::vector<Vec2>(static_cast<std::size_t>(params.n))};
  config.joints[static_cast<std::size_t>(k)] = body + Vec2(std::cos(theta), std::sin(theta));
  for (int j = 0; j < params.n; ++j) {
    if (j == k) continue;
    const Vec2& Bj = B[static_cast<std::size_t>(j)];
    switch (signs[j]) {
      case ArmIndexValue::Plus:
        config.joints[static_cast<std::size_t>(j)] = solve_joint(body, Bj, Branch::Plus);
        break;
      case ArmIndexValue::Minus:
        config.joints[static_cast<std::size_t>(j)] = solve_joint(body, Bj, Branch::Minus);
        break;
      case ArmIndexValue::Zero: {
        const double d = (body - Bj).norm();
        if (std::abs(d - 2.0) > kAngleTol)
          throw Error(ErrorKind::ChartMismatch,
                      "folded_configuration: stretched entry but anchor not at distance 2");
        config.joints[static_cast<std::size_t>(j)] = Bj + (body - Bj) / d;
        break;
      }
      case ArmIndexValue::Infinity:
        throw Error(ErrorKind::InvalidParameter,
                    "folded_configuration: more than one folded arm");
    }
  }
  return config;
}

double arm_angle(const Configuration& config, int k) {
  if (k < 0 || k >= config.params.n)
    throw Error(ErrorKind::InvalidParameter, "arm_angle: arm id out of range");
  const std::vector<Vec2> B = anchors(config.params);
  const Vec2 a = config.body - config.joints[static_cast<std::size_t>(k)];
  const Vec2 b = config.joints[static_cast<std::size_t>(k)] - B[static_cast<std::size_t>(k)];
  return std::atan2(cross2(b, a), b.dot(a));
}

ArmIndexValue arm_index(const Configuration& config, int k) {
  const std::vector<Vec2> B = anchors(config.params);
  if ((config.body - B[static_cast<std::size_t>(k)]).norm() <= kAngleTol)
    return ArmIndexValue::Infinity;
  const double theta = arm_angle(config, k);
  if (std::abs(theta) <= kAngleTol) return ArmIndexValue::Zero;
  return theta > 0.0 ? ArmIndexValue::Plus : ArmIndexValue::Minus;
}

MultiIndex configuration_index(const Configuration& config) {
  MultiIndex mi(config.params.n);
  for (int k = 0; k < config.params.n; ++k) mi[k] = arm_index(config, k);
  return mi;
}

ProjectResult project(const SpiderParams& params, const Configuration& approx) {
  if (static_cast<int>(approx.joints.size()) != params.n)
    throw Error(ErrorKind::InvalidParameter, "project: joint count != n");
  ProjectResult result;
  result.config = Configuration{params, approx.body,
                                std::vector<Vec2>(static_cast<std::size_t>(params.n))};
  const std::vector<Vec2> B = anchors(params);
  for (int k = 0; k < params.n; ++k) {
    const Vec2& Bk = B[static_cast<std::size_t>(k)];
    const Vec2& Jk = approx.joints[static_cast<std::size_t>(k)];
    const double d = (approx.body - Bk).norm();
    if (d > 2.0 + kAngleTol)
      throw Error(ErrorKind::Unreachable, "project: anchor beyond reach");
    Vec2 solved;
    if (d < kAngleTol) {
      // Folded arm: keep the free joint direction of the approximation.
      const Vec2 dir = Jk - Bk;
      const double len = dir.norm();
      if (len < 1e-12)
        throw Error(ErrorKind::FoldedIndeterminate,
                    "project: folded arm with joint on the anchor");
      solved = Bk + dir / len;
    } else {
      const Vec2 plus = solve_joint(approx.body, Bk, Branch::Plus);
      const Vec2 minus = solve_joint(approx.body, Bk, Branch::Minus);
      const double dp = (plus - Jk).norm();
      const double dm = (minus - Jk).norm();
      if (std::abs(dp - dm) < 1e-12) {
        result.tie_arms.push_back(k);
        solved = plus;
      } else {
        solved = (dp < dm) ? plus : minus;
      }
    }
    result.config.joints[static_cast<std::size_t>(k)] = solved;
  }
  return result;
}

double relative_sigma_min(const Eigen::MatrixXd& jac) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  const auto& sigma = svd.singularValues();
  const double top = sigma(0);
  if (top <= 0.0) return 0.0;
  return sigma(sigma.size() - 1) / top;
}

double tangent_height_gradient(const Configuration& config) {
  const Eigen::MatrixXd J = jacobian(config);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
  // J has 2n rows and 2n + 2 columns; the last two right singular vectors
  // span the tangent space when the rank is full.
  const Eigen::MatrixXd N = svd.matrixV().rightCols(2);
  Eigen::VectorXd ey = Eigen::VectorXd::Zero(2 * config.params.n + 2);
  ey(1) = 1.0; // the height is the body y coordinate
  return (N.transpose() * ey).norm();
}

} // namespace spider
