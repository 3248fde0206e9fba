#pragma once

#include <array>
#include <span>
#include <vector>

#include "jointcanvas/geometry.hpp"

namespace jointcanvas {

inline constexpr int kNumJoints = 7;
// 7 joint frames plus the end-effector frame.
inline constexpr int kNumFrames = 8;
inline constexpr int kEndEffectorFrame = 7;

// One standard Denavit-Hartenberg row:
//   A(q) = RotZ(q + theta_offset) * TransZ(d) * TransX(a) * RotX(alpha).
struct DhRow {
  double a = 0.0;
  double d = 0.0;
  double alpha = 0.0;
  double theta_offset = 0.0;
};

struct JointLimits {
  double lo = 0.0;
  double hi = 0.0;
};

enum class GripperState { Open, Closed };

struct JointConfig {
  std::array<double, kNumJoints> q{};
  GripperState gripper = GripperState::Open;
};

// Frame indices of the four drawn joint spheres. The wrist/elbow entries sit
// on the roll joints so that stripe phases graduate exactly the degrees of
// freedom that joint positions alone cannot pin down.
struct SphereJoints {
  int base = 0;
  int elbow = 2;
  int wrist = 4;
  int gripper = kEndEffectorFrame;

  std::array<int, 4> frames() const { return {base, elbow, wrist, gripper}; }
};

// Joint that a sphere attached to `frame` rotates with.
inline int joint_of_frame(int frame) { return frame < kNumJoints ? frame : kNumJoints - 1; }

struct ArmModel {
  std::array<DhRow, kNumJoints> dh{};
  std::array<JointLimits, kNumJoints> limits{};
  // Maximum joint displacement per control step (rad/step).
  double rate_limit = 0.08;
  RigidTransform base_pose;
  // Fixed transform from the last joint frame to the end-effector frame.
  RigidTransform ee_offset;
  SphereJoints sphere_joints;

  // Desk-scale 7-DoF arm used throughout; see configs/tabletop_arm.cfg.
  static ArmModel default_model();

  // Throws ConfigError when a limit row is inverted or a sphere frame index
  // is out of range.
  void validate() const;

  bool within_limits(const std::array<double, kNumJoints>& q,
                     double tol = 1e-9) const;
  std::array<double, kNumJoints> clamp(
      const std::array<double, kNumJoints>& q) const;
};

struct FramePoses {
  std::array<RigidTransform, kNumFrames> frames;

  const RigidTransform& end_effector() const { return frames[kEndEffectorFrame]; }
};

// World-space rotation axis of one joint: a point on the axis and its unit
// direction.
struct JointAxis {
  Vec3 origin;
  Vec3 dir;
};

// Poses of all 8 frames for configuration `cfg`.
// Throws LimitViolation when cfg.q lies outside the arm's limits.
FramePoses forward_kinematics(const ArmModel& arm, const JointConfig& cfg);

// World axes of all 7 joints at `cfg` (no limit check; internal callers pass
// already-validated configurations).
std::array<JointAxis, kNumJoints> joint_axes(const ArmModel& arm,
                                             const JointConfig& cfg);

// 3x7 Jacobian of the point rigidly attached to `frame_index` at
// `local_offset` (frame coordinates), with respect to the joint angles.
// Columns for joints distal to the frame are exactly zero.
Eigen::Matrix<double, 3, kNumJoints> point_jacobian(
    const ArmModel& arm, const JointConfig& cfg, int frame_index,
    const Vec3& local_offset = Vec3::Zero());

// Pins the point at `local_offset` in `frame` to `target`; offset points on
// the hand let callers constrain orientation with position machinery alone.
struct PointConstraint {
  int frame = kEndEffectorFrame;
  Vec3 target = Vec3::Zero();
  double weight = 1.0;
  Vec3 local_offset = Vec3::Zero();
};

// Soft constraint pulling one joint angle toward `angle`. The weight converts
// radians into the metre units of the point residuals.
struct AngleConstraint {
  int joint = 0;
  double angle = 0.0;
  double weight = 0.05;
};

struct IkResult {
  JointConfig q;
  // RMS point-constraint residual (m) at the returned configuration.
  double residual = 0.0;
  bool converged = false;
  int iterations = 0;
};

struct IkOptions {
  int max_iterations = 200;
  double tolerance = 1e-4;       // metres, RMS over point constraints
  double lambda_init = 1e-3;
  double lambda_grow = 10.0;     // on residual increase
  double lambda_shrink = 3.0;    // on residual decrease
};

// Damped least-squares fit of the joint angles to the given constraints,
// seeded at q_init. Non-convergence is reported in the result, not thrown.
// Throws InsufficientConstraints when fewer than two point constraints are
// given and LimitViolation when q_init violates the arm's limits.
IkResult solve_ik(const ArmModel& arm, const JointConfig& q_init,
                  std::span<const PointConstraint> points,
                  std::span<const AngleConstraint> angles = {},
                  const IkOptions& options = {});

// Joint-space linear interpolation: element k is q_a + (k/K)(q_b - q_a) for
// k = 1..K; the gripper switches at the final step. K must be >= 1.
std::vector<JointConfig> interpolate_joints(const JointConfig& q_a,
                                            const JointConfig& q_b, int K);

}  // namespace jointcanvas
