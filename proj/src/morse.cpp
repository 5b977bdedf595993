#include "spider/morse.hpp"

#include "spider/domain.hpp"
#include "spider/kinematics.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>
#include <numbers>

namespace spider {

const char* critical_kind_name(CriticalKind kind) {
  switch (kind) {
    case CriticalKind::TwoStretched: return "two_stretched";
    case CriticalKind::FoldedVertical: return "folded_vertical";
    case CriticalKind::StretchedVertical: return "stretched_vertical";
  }
  return "?";
}

namespace {

void for_each_sign_fill(const MultiIndex& base, const std::vector<int>& free_slots,
                        const std::function<void(const MultiIndex&)>& fn) {
  const auto count = static_cast<std::uint32_t>(1u << free_slots.size());
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    MultiIndex mi = base;
    for (std::size_t i = 0; i < free_slots.size(); ++i)
      mi[free_slots[i]] = (bits >> i & 1u) ? ArmIndexValue::Minus : ArmIndexValue::Plus;
    fn(mi);
  }
}

std::vector<int> slots_except(int n, std::initializer_list<int> fixed) {
  std::vector<int> out;
  for (int k = 0; k < n; ++k) {
    bool skip = false;
    for (int f : fixed) skip = skip || (f == k);
    if (!skip) out.push_back(k);
  }
  return out;
}

Eigen::Matrix2d hessian_two_stretched(double theta, double theta_prime) {
  const double span = std::sin(theta_prime - theta);
  const double s1 = std::sin(theta);
  const double s2 = std::sin(theta_prime);
  if (std::abs(span) < 1e-9 || std::abs(s1) < 1e-9 || std::abs(s2) < 1e-9)
    throw Error(ErrorKind::DegenerateAngle,
                "hessian: stretched-pair chart coordinates degenerate");
  Eigen::Matrix2d H = Eigen::Matrix2d::Zero();
  H(0, 0) = 2.0 * std::cos(theta_prime) / (span * s1 * s1);
  H(1, 1) = -2.0 * std::cos(theta) / (span * s2 * s2);
  return H;
}

Eigen::Matrix2d hessian_folded_vertical(int dir) {
  const double s = static_cast<double>(dir);
  Eigen::Matrix2d H;
  H << s, -s, -s, 0.0;
  return H;
}

Eigen::Matrix2d hessian_stretched_vertical(int dir) {
  const double s = static_cast<double>(dir);
  Eigen::Matrix2d H;
  H << -s, s, s, -2.0 * s;
  return H;
}

// Whether the vertically stretched candidate body position for anchor k is a
// valid smooth edge point: strictly inside every other reach disc.
bool vertical_candidate_feasible(const std::vector<Vec2>& B, int k, const Vec2& C) {
  for (std::size_t j = 0; j < B.size(); ++j) {
    if (static_cast<int>(j) == k) continue;
    const double d = (C - B[j]).norm();
    if (d >= 2.0 - kAngleTol || d <= kAngleTol) return false;
  }
  return true;
}

// Intersection of the unit circles about P and Q nearest to a reference
// point; used to recover the body from the two stretched-pair joints.
Vec2 circle_pair_point(const Vec2& P, const Vec2& Q, const Vec2& reference) {
  const Vec2 delta = Q - P;
  const double d = delta.norm();
  if (d < kAngleTol || d > 2.0 - 1e-12)
    throw Error(ErrorKind::DegenerateAngle, "circle_pair_point: circles do not meet transversally");
  const Vec2 mid = 0.5 * (P + Q);
  const double h = std::sqrt(std::max(0.0, 1.0 - 0.25 * d * d));
  const Vec2 perp = rot90(delta / d);
  const Vec2 c1 = mid + h * perp;
  const Vec2 c2 = mid - h * perp;
  return ((c1 - reference).norm() <= (c2 - reference).norm()) ? c1 : c2;
}

double guarded_sqrt(double arg) {
  if (arg < 0.0)
    throw Error(ErrorKind::DegenerateAngle, "finite differences left the chart domain");
  return std::sqrt(arg);
}

} // namespace

std::vector<CriticalPoint> enumerate_critical_points(const SpiderParams& params) {
  const Regime regime = classify_regime(params);
  if (regime.tag != RegimeTag::GenericSmall && regime.tag != RegimeTag::GenericLarge)
    throw Error(ErrorKind::RegimeMismatch,
                "enumerate_critical_points: defined only in the generic regimes");
  const bool small = (regime.tag == RegimeTag::GenericSmall);
  const int n = params.n;
  const std::vector<Vec2> B = anchors(params);
  const BodyDomain domain = BodyDomain::make(params);

  std::vector<CriticalPoint> out;

  // Two adjacent stretched arms: the body sits at a corner of the domain.
  const int pairs = (n == 2) ? 1 : n;
  for (int k = 0; k < pairs; ++k) {
    const int k1 = (k + 1) % n;
    for (int side = 0; side < ((n == 2) ? 2 : 1); ++side) {
      const Vec2 V = domain_vertex(domain, k, side);
      const Vec2 ek = V - B[static_cast<std::size_t>(k)];
      const Vec2 ek1 = V - B[static_cast<std::size_t>(k1)];
      const double theta = std::atan2(ek.y(), ek.x());
      const double theta_prime = std::atan2(ek1.y(), ek1.x());
      MultiIndex base(n);
      base[k] = ArmIndexValue::Zero;
      base[k1] = ArmIndexValue::Zero;
      for_each_sign_fill(base, slots_except(n, {k, k1}), [&](const MultiIndex& mi) {
        CriticalPoint cp;
        cp.config = solve_configuration(params, V, mi);
        cp.kind = CriticalKind::TwoStretched;
        cp.index = mi;
        cp.k = k;
        cp.side = side;
        cp.theta = theta;
        cp.theta_prime = theta_prime;
        cp.psi = V.y();
        cp.hessian = hessian_two_stretched(theta, theta_prime);
        cp.morse_index = morse_index_of(cp.hessian);
        out.push_back(std::move(cp));
      });
    }
  }

  // One folded arm pointing straight up or down: body on the anchor.  Only
  // possible while folded arms exist at all.
  if (small) {
    for (int k = 0; k < n; ++k) {
      for (int s : {-1, +1}) {
        MultiIndex base(n);
        base[k] = ArmIndexValue::Infinity;
        for_each_sign_fill(base, slots_except(n, {k}), [&](const MultiIndex& mi) {
          CriticalPoint cp;
          cp.config = folded_configuration(params, k, static_cast<double>(s) * std::numbers::pi / 2.0, mi);
          cp.kind = CriticalKind::FoldedVertical;
          cp.index = mi;
          cp.k = k;
          cp.dir = s;
          cp.psi = B[static_cast<std::size_t>(k)].y();
          cp.hessian = hessian_folded_vertical(s);
          cp.morse_index = morse_index_of(cp.hessian);
          out.push_back(std::move(cp));
        });
      }
    }
  }

  // One vertically stretched arm: body at anchor +- 2 e_y, when that point
  // lies on the domain boundary away from the corners.
  for (int k = 0; k < n; ++k) {
    for (int s : {-1, +1}) {
      const Vec2 C = B[static_cast<std::size_t>(k)] + Vec2(0.0, 2.0 * static_cast<double>(s));
      if (!vertical_candidate_feasible(B, k, C)) continue;
      MultiIndex base(n);
      base[k] = ArmIndexValue::Zero;
      for_each_sign_fill(base, slots_except(n, {k}), [&](const MultiIndex& mi) {
        CriticalPoint cp;
        cp.config = solve_configuration(params, C, mi);
        cp.kind = CriticalKind::StretchedVertical;
        cp.index = mi;
        cp.k = k;
        cp.dir = s;
        cp.psi = C.y();
        cp.hessian = hessian_stretched_vertical(s);
        cp.morse_index = morse_index_of(cp.hessian);
        out.push_back(std::move(cp));
      });
    }
  }
  return out;
}

Eigen::Matrix2d closed_form_hessian(const CriticalPoint& point) {
  switch (point.kind) {
    case CriticalKind::TwoStretched:
      return hessian_two_stretched(point.theta, point.theta_prime);
    case CriticalKind::FoldedVertical:
      return hessian_folded_vertical(point.dir);
    case CriticalKind::StretchedVertical:
      return hessian_stretched_vertical(point.dir);
  }
  throw Error(ErrorKind::InvalidParameter, "closed_form_hessian: unknown kind");
}

Eigen::Matrix2d finite_difference_hessian(const CriticalPoint& point, double h) {
  const SpiderParams& params = point.config.params;
  const std::vector<Vec2> B = anchors(params);
  std::function<double(double, double)> psi;

  if (point.kind == CriticalKind::TwoStretched) {
    const int k = point.k;
    const int k1 = (k + 1) % params.n;
    const Vec2 A1 = B[static_cast<std::size_t>(k)];
    const Vec2 A2 = B[static_cast<std::size_t>(k1)];
    const double sgn1 = (std::sin(point.theta) >= 0.0) ? 1.0 : -1.0;
    const double sgn2 = (std::sin(point.theta_prime) >= 0.0) ? 1.0 : -1.0;
    if (std::abs(std::sin(point.theta)) < 1e-3 || std::abs(std::sin(point.theta_prime)) < 1e-3)
      throw Error(ErrorKind::DegenerateAngle,
                  "finite_difference_hessian: joint abscissae are not chart coordinates here");
    const double p10 = A1.x() + std::cos(point.theta);
    const double p20 = A2.x() + std::cos(point.theta_prime);
    const Vec2 body0 = point.config.body;
    psi = [=](double d1, double d2) {
      const double a1 = p10 + d1 - A1.x();
      const double a2 = p20 + d2 - A2.x();
      const Vec2 J1(p10 + d1, A1.y() + sgn1 * guarded_sqrt(1.0 - a1 * a1));
      const Vec2 J2(p20 + d2, A2.y() + sgn2 * guarded_sqrt(1.0 - a2 * a2));
      return circle_pair_point(J1, J2, body0).y();
    };
  } else {
    const Vec2 A = B[static_cast<std::size_t>(point.k)];
    const double s = static_cast<double>(point.dir);
    const double sb = (point.kind == CriticalKind::FoldedVertical) ? -s : s;
    const double x0 = A.x();
    const double p0 = A.x();
    psi = [=](double dx, double dp) {
      const double a = p0 + dp - A.x();
      const double q = A.y() + s * guarded_sqrt(1.0 - a * a);
      const double b = x0 + dx - (p0 + dp);
      return q + sb * guarded_sqrt(1.0 - b * b);
    };
  }

  const auto central = [&psi](double step) {
    const double f00 = psi(0.0, 0.0);
    Eigen::Matrix2d H;
    H(0, 0) = (psi(step, 0.0) - 2.0 * f00 + psi(-step, 0.0)) / (step * step);
    H(1, 1) = (psi(0.0, step) - 2.0 * f00 + psi(0.0, -step)) / (step * step);
    H(0, 1) = (psi(step, step) - psi(step, -step) - psi(-step, step) + psi(-step, -step)) /
              (4.0 * step * step);
    H(1, 0) = H(0, 1);
    return H;
  };

  for (double step = h;; step /= 10.0) {
    try {
      // Richardson extrapolation kills the O(step^2) truncation term, which
      // grows like 1/sin^7(theta) in the joint-abscissa charts and would
      // otherwise dominate near shallow corner angles.
      return (4.0 * central(0.5 * step) - central(step)) / 3.0;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateAngle || step < h / 1000.0) throw;
    }
  }
}

int morse_index_of(const Eigen::Matrix2d& hessian, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(hessian);
  const Eigen::Vector2d lambda = solver.eigenvalues();
  const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  int negative = 0;
  for (int i = 0; i < 2; ++i) {
    if (std::abs(lambda(i)) <= tol * scale)
      throw Error(ErrorKind::DegenerateAngle, "morse_index_of: numerically zero eigenvalue");
    if (lambda(i) < 0.0) ++negative;
  }
  return negative;
}

MorseRows morse_rows(const SpiderParams& params) {
  MorseRows rows;
  for (const CriticalPoint& cp : enumerate_critical_points(params)) {
    if (cp.morse_index == 0) ++rows.index0;
    else if (cp.morse_index == 1) ++rows.index1;
    else ++rows.index2;
  }
  return rows;
}

MorseRows morse_rows_closed_form(const SpiderParams& params) {
  const Regime regime = classify_regime(params);
  if (regime.tag != RegimeTag::GenericSmall && regime.tag != RegimeTag::GenericLarge)
    throw Error(ErrorKind::RegimeMismatch, "morse_rows_closed_form: generic regimes only");
  const bool small = (regime.tag == RegimeTag::GenericSmall);
  const long long n = params.n;
  const long long corner_points = n * (1LL << (n - 2));
  const long long folded_points = small ? n * (1LL << n) : 0;
  // The vertically stretched extrema exist whenever the top/bottom of the
  // domain is an edge point rather than a corner: always for n divisible by
  // 4, in the small regime for odd n, never otherwise.
  const bool vertical_extremes = (params.n % 4 == 0) || (small && params.n % 2 == 1);
  MorseRows rows;
  if (vertical_extremes) {
    rows.index0 = 1LL << (n - 1);
    rows.index2 = 1LL << (n - 1);
    rows.index1 = folded_points + corner_points;
  } else {
    rows.index0 = 1LL << (n - 2);
    rows.index2 = 1LL << (n - 2);
    rows.index1 = folded_points + (n - 2) * (1LL << (n - 2));
  }
  return rows;
}

long long morse_euler(const SpiderParams& params) { return morse_rows(params).euler(); }

} // namespace spider
