#include "jointcanvas/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "jointcanvas/errors.hpp"

namespace jointcanvas {

namespace {

constexpr double deg(double d) { return d * std::numbers::pi / 180.0; }

RigidTransform dh_transform(const DhRow& row, double q) {
  const double theta = q + row.theta_offset;
  const double ct = std::cos(theta), st = std::sin(theta);
  const double ca = std::cos(row.alpha), sa = std::sin(row.alpha);
  RigidTransform T;
  T.R << ct, -st * ca, st * sa,
         st,  ct * ca, -ct * sa,
         0.0, sa,      ca;
  T.t = Vec3(row.a * ct, row.a * st, row.d);
  return T;
}

// Cumulative frames *before* each joint (the frame whose z-axis the joint
// rotates about) plus the 8 output frames, in one pass.
struct Chain {
  std::array<RigidTransform, kNumJoints> pre;   // frame preceding joint i
  FramePoses out;
};

Chain compute_chain(const ArmModel& arm, const JointConfig& cfg) {
  Chain c;
  RigidTransform cur = arm.base_pose;
  for (int i = 0; i < kNumJoints; ++i) {
    c.pre[i] = cur;
    cur = cur * dh_transform(arm.dh[i], cfg.q[i]);
    c.out.frames[i] = cur;
  }
  c.out.frames[kEndEffectorFrame] = cur * arm.ee_offset;
  return c;
}

}  // namespace

ArmModel ArmModel::default_model() {
  ArmModel m;
  // Shoulder-elbow-wrist chain with 0.34/0.40/0.40 m links and a 0.126 m
  // flange, all link offsets on the z axes (a = 0 throughout).
  const double hp = std::numbers::pi / 2.0;
  // The pi offset on joint 1 points the elbow's positive fold at the table
  // half-space (+x).
  m.dh = {DhRow{0.0, 0.340, -hp, std::numbers::pi}, DhRow{0.0, 0.0, hp, 0.0},
          DhRow{0.0, 0.400, hp, 0.0},  DhRow{0.0, 0.0, -hp, 0.0},
          DhRow{0.0, 0.400, -hp, 0.0}, DhRow{0.0, 0.0, hp, 0.0},
          DhRow{0.0, 0.126, 0.0, 0.0}};
  // One-sided elbow (joint 3), like most real arms; keeps the elbow off its
  // straight singularity.
  m.limits = {JointLimits{deg(-160), deg(160)}, JointLimits{deg(-105), deg(105)},
              JointLimits{deg(-160), deg(160)}, JointLimits{deg(15), deg(160)},
              JointLimits{deg(-160), deg(160)}, JointLimits{deg(-115), deg(115)},
              JointLimits{deg(-170), deg(170)}};
  m.rate_limit = 0.08;
  m.base_pose = RigidTransform::identity();
  m.ee_offset = RigidTransform::from_translation(Vec3(0.0, 0.0, 0.080));
  m.sphere_joints = SphereJoints{};
  return m;
}

void ArmModel::validate() const {
  for (int i = 0; i < kNumJoints; ++i) {
    if (!(limits[i].lo < limits[i].hi)) {
      std::ostringstream os;
      os << "joint " << i << " limits inverted: [" << limits[i].lo << ", "
         << limits[i].hi << "]";
      throw ConfigError(os.str());
    }
  }
  if (rate_limit <= 0.0) throw ConfigError("rate_limit must be positive");
  for (int f : sphere_joints.frames()) {
    if (f < 0 || f >= kNumFrames) {
      throw ConfigError("sphere joint frame index out of range: " +
                        std::to_string(f));
    }
  }
}

bool ArmModel::within_limits(const std::array<double, kNumJoints>& q,
                             double tol) const {
  for (int i = 0; i < kNumJoints; ++i) {
    if (q[i] < limits[i].lo - tol || q[i] > limits[i].hi + tol) return false;
  }
  return true;
}

std::array<double, kNumJoints> ArmModel::clamp(
    const std::array<double, kNumJoints>& q) const {
  std::array<double, kNumJoints> out;
  for (int i = 0; i < kNumJoints; ++i) {
    out[i] = std::clamp(q[i], limits[i].lo, limits[i].hi);
  }
  return out;
}

FramePoses forward_kinematics(const ArmModel& arm, const JointConfig& cfg) {
  if (!arm.within_limits(cfg.q)) {
    std::ostringstream os;
    os << "configuration outside joint limits:";
    for (int i = 0; i < kNumJoints; ++i) {
      if (cfg.q[i] < arm.limits[i].lo - 1e-9 || cfg.q[i] > arm.limits[i].hi + 1e-9)
        os << " q" << i << "=" << cfg.q[i];
    }
    throw LimitViolation(os.str());
  }
  return compute_chain(arm, cfg).out;
}

std::array<JointAxis, kNumJoints> joint_axes(const ArmModel& arm,
                                             const JointConfig& cfg) {
  Chain c = compute_chain(arm, cfg);
  std::array<JointAxis, kNumJoints> axes;
  for (int i = 0; i < kNumJoints; ++i) {
    axes[i] = JointAxis{c.pre[i].t, c.pre[i].R.col(2)};
  }
  return axes;
}

Eigen::Matrix<double, 3, kNumJoints> point_jacobian(const ArmModel& arm,
                                                    const JointConfig& cfg,
                                                    int frame_index,
                                                    const Vec3& local_offset) {
  if (frame_index < 0 || frame_index >= kNumFrames) {
    throw OutOfBounds("frame index out of range: " + std::to_string(frame_index));
  }
  Chain c = compute_chain(arm, cfg);
  const Vec3 p = c.out.frames[frame_index].apply(local_offset);
  Eigen::Matrix<double, 3, kNumJoints> J =
      Eigen::Matrix<double, 3, kNumJoints>::Zero();
  const int last = std::min(frame_index, kNumJoints - 1);
  for (int i = 0; i <= last; ++i) {
    const Vec3 z = c.pre[i].R.col(2);
    const Vec3 o = c.pre[i].t;
    J.col(i) = z.cross(p - o);
  }
  return J;
}

IkResult solve_ik(const ArmModel& arm, const JointConfig& q_init,
                  std::span<const PointConstraint> points,
                  std::span<const AngleConstraint> angles,
                  const IkOptions& options) {
  if (points.size() < 2) {
    throw InsufficientConstraints(
        "solve_ik needs at least two point constraints, got " +
        std::to_string(points.size()));
  }
  if (!arm.within_limits(q_init.q)) {
    throw LimitViolation("solve_ik seed configuration outside joint limits");
  }

  const int n_rows = static_cast<int>(points.size()) * 3 +
                     static_cast<int>(angles.size());
  using JMat = Eigen::Matrix<double, Eigen::Dynamic, kNumJoints>;

  JointConfig cur = q_init;
  auto eval = [&](const std::array<double, kNumJoints>& q, Eigen::VectorXd& r,
                  JMat* J) -> double {
    JointConfig c = cur;
    c.q = q;
    Chain chain = compute_chain(arm, c);
    r.resize(n_rows);
    if (J) J->setZero(n_rows, kNumJoints);
    int row = 0;
    double pt_sq = 0.0;
    int pt_rows = 0;
    for (const auto& pc : points) {
      const Vec3 p = chain.out.frames[pc.frame].apply(pc.local_offset);
      const Vec3 e = (p - pc.target) * pc.weight;
      r.segment<3>(row) = e;
      pt_sq += (p - pc.target).squaredNorm();
      pt_rows += 3;
      if (J) {
        const int last = std::min(pc.frame, kNumJoints - 1);
        for (int i = 0; i <= last; ++i) {
          const Vec3 z = chain.pre[i].R.col(2);
          const Vec3 o = chain.pre[i].t;
          J->block<3, 1>(row, i) = z.cross(p - o) * pc.weight;
        }
      }
      row += 3;
    }
    for (const auto& ac : angles) {
      r(row) = wrap_to_pi(q[ac.joint] - ac.angle) * ac.weight;
      if (J) (*J)(row, ac.joint) = ac.weight;
      ++row;
    }
    return std::sqrt(pt_sq / (pt_rows / 3));  // RMS point distance
  };

  Eigen::VectorXd r;
  JMat J;
  double point_rms = eval(cur.q, r, &J);
  double cost = r.squaredNorm();
  double lambda = options.lambda_init;

  IkResult best;
  best.q = cur;
  best.residual = point_rms;
  best.converged = point_rms < options.tolerance;
  best.iterations = 0;
  if (best.converged) return best;

  for (int it = 1; it <= options.max_iterations; ++it) {
    Eigen::Matrix<double, kNumJoints, kNumJoints> H =
        J.transpose() * J +
        lambda * Eigen::Matrix<double, kNumJoints, kNumJoints>::Identity();
    Eigen::Matrix<double, kNumJoints, 1> g = J.transpose() * r;
    Eigen::Matrix<double, kNumJoints, 1> delta = H.ldlt().solve(-g);

    std::array<double, kNumJoints> q_try;
    for (int i = 0; i < kNumJoints; ++i) {
      q_try[i] = wrap_to_pi(cur.q[i] + delta(i));
    }
    q_try = arm.clamp(q_try);

    Eigen::VectorXd r_try;
    JMat J_try;
    double rms_try = eval(q_try, r_try, &J_try);
    double cost_try = r_try.squaredNorm();

    if (cost_try < cost) {
      cur.q = q_try;
      r = std::move(r_try);
      J = std::move(J_try);
      cost = cost_try;
      point_rms = rms_try;
      lambda /= options.lambda_shrink;
      if (point_rms < best.residual) {
        best.q = cur;
        best.residual = point_rms;
        best.iterations = it;
      }
      if (point_rms < options.tolerance) {
        best.converged = true;
        best.iterations = it;
        break;
      }
    } else {
      lambda *= options.lambda_grow;
      if (lambda > 1e12) break;  // stuck; damping has flattened the step
    }
  }
  best.q.gripper = q_init.gripper;
  return best;
}

std::vector<JointConfig> interpolate_joints(const JointConfig& q_a,
                                            const JointConfig& q_b, int K) {
  if (K < 1) throw ConfigError("interpolation length must be >= 1");
  std::vector<JointConfig> out;
  out.reserve(K);
  for (int k = 1; k <= K; ++k) {
    JointConfig c;
    const double f = static_cast<double>(k) / K;
    for (int i = 0; i < kNumJoints; ++i) {
      c.q[i] = q_a.q[i] + f * (q_b.q[i] - q_a.q[i]);
    }
    c.gripper = (k == K) ? q_b.gripper : q_a.gripper;
    out.push_back(c);
  }
  return out;
}

}  // namespace jointcanvas
