#include "jointcanvas/expert.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "jointcanvas/errors.hpp"

namespace jointcanvas {
namespace {

// Hover height for approach waypoints (m).
constexpr double kHoverClearance = 0.10;
// Speed fractions: careful near contact, moderate while carrying.
constexpr double kContactSpeed = 0.35;
constexpr double kCarrySpeed = 0.5;
// Wrist roll applied while engaged with the knob (rad); comfortably past the
// success threshold and always inside the joint-7 range from one side.
constexpr double kKnobTurn = 1.75;

// End-effector origin to wrist center along the approach axis. Valid because
// the last link is a pure z translation (spherical wrist).
double wrist_center_offset(const ArmModel& arm) {
  return arm.dh[kNumJoints - 1].d + arm.ee_offset.t.z();
}

}  // namespace

JointConfig solve_hand_down(const ArmModel& arm, const JointConfig& seed_q,
                            const Vec3& p) {
  const int wrist_frame = arm.sphere_joints.wrist;
  const std::array<PointConstraint, 2> points = {
      PointConstraint{kEndEffectorFrame, p, 1.0, Vec3::Zero()},
      PointConstraint{wrist_frame,
                      p + Vec3(0.0, 0.0, wrist_center_offset(arm)), 1.0,
                      Vec3::Zero()},
  };
  const double azimuth = std::atan2(p.y(), p.x());
  const std::array<AngleConstraint, 4> bias = {
      AngleConstraint{0, azimuth, 0.02},
      AngleConstraint{2, 0.0, 0.02},
      AngleConstraint{4, 0.0, 0.02},
      AngleConstraint{6, 0.0, 0.02},
  };
  const IkResult r = solve_ik(arm, seed_q, points, bias);
  if (!r.converged) {
    std::ostringstream os;
    os << "no hand-down pose at (" << p.x() << ", " << p.y() << ", " << p.z()
       << "); residual " << r.residual;
    throw ExpertFailure(os.str());
  }
  return r.q;
}

ExpertPlan plan_expert_path(const TaskWorld& world) {
  const ArmModel& arm = world.arm;
  ExpertPlan plan;
  JointConfig cur = world.q;

  auto move_to = [&](const Vec3& p, GripperState g, const char* phase,
                     double speed) {
    JointConfig q = solve_hand_down(arm, cur, p);
    q.gripper = g;
    cur = q;
    plan.waypoints.push_back({q, phase, speed});
  };
  auto set_gripper = [&](GripperState g, const char* phase) {
    cur.gripper = g;
    plan.waypoints.push_back({cur, phase, 1.0});
  };

  const TaskSpec& s = world.spec;
  if (s.task_name == "reach_target") {
    const Vec3 c = world.find_object("ball")->pose.t;
    move_to(c + Vec3(0.0, 0.0, kHoverClearance), GripperState::Open,
            "approach", 1.0);
    move_to(c + Vec3(0.0, 0.0, 0.008), GripperState::Open, "touch",
            kContactSpeed);
  } else if (s.task_name == "lift_lid") {
    const WorldObject* pan = world.find_object("pan");
    const WorldObject* lid = world.find_object("lid");
    const Vec3 g = lid->grasp_point();
    const double pan_top = pan->pose.t.z() + pan->dims.y();
    move_to(g + Vec3(0.0, 0.0, 0.14), GripperState::Open, "approach", 1.0);
    move_to(g, GripperState::Open, "descend", kContactSpeed);
    set_gripper(GripperState::Closed, "close");
    // Hand height that puts the lid base 4 cm past the clearance bar.
    const double lift_z =
        pan_top + s.lift_height + lid->grasp_local.z() + 0.04;
    move_to(Vec3(g.x(), g.y(), lift_z), GripperState::Closed, "lift",
            kCarrySpeed);
  } else if (s.task_name == "slide_block") {
    const WorldObject* block = world.find_object("block");
    const WorldObject* zone = world.find_object("zone");
    const Vec3 g = block->grasp_point();
    const Vec3 z = zone->pose.t;
    // Hand height at which the carried block rests on the table, plus 2 mm.
    const double place_z = world.table_z + 2.0 * block->dims.z() + 0.002;
    move_to(g + Vec3(0.0, 0.0, kHoverClearance), GripperState::Open,
            "approach", 1.0);
    move_to(g, GripperState::Open, "descend", kContactSpeed);
    set_gripper(GripperState::Closed, "close");
    move_to(g + Vec3(0.0, 0.0, 0.08), GripperState::Closed, "lift",
            kCarrySpeed);
    move_to(Vec3(z.x(), z.y(), g.z() + 0.08), GripperState::Closed, "carry",
            1.0);
    move_to(Vec3(z.x(), z.y(), place_z), GripperState::Closed, "lower",
            kContactSpeed);
    set_gripper(GripperState::Open, "release");
  } else if (s.task_name == "press_button") {
    const WorldObject* b = world.find_object("button");
    const double top = b->pose.t.z() + b->dims.y();
    const Vec3 axis = b->pose.t;
    move_to(Vec3(axis.x(), axis.y(), top + kHoverClearance),
            GripperState::Open, "approach", 1.0);
    move_to(Vec3(axis.x(), axis.y(), top + 0.5 * s.press_depth),
            GripperState::Open, "press", kContactSpeed);
  } else if (s.task_name == "turn_knob") {
    const WorldObject* k = world.find_object("knob");
    const double top = k->pose.t.z() + k->dims.y();
    const Vec3 gp(k->pose.t.x(), k->pose.t.y(), top + 0.02);
    move_to(gp + Vec3(0.0, 0.0, kHoverClearance), GripperState::Open,
            "approach", 1.0);
    move_to(gp, GripperState::Open, "descend", kContactSpeed);
    set_gripper(GripperState::Closed, "grip");
    // Roll the wrist the way that stays inside the joint-7 range.
    JointConfig turn = cur;
    const double hi = arm.limits[kNumJoints - 1].hi - 0.05;
    turn.q[kNumJoints - 1] = (cur.q[kNumJoints - 1] + kKnobTurn <= hi)
                                 ? cur.q[kNumJoints - 1] + kKnobTurn
                                 : cur.q[kNumJoints - 1] - kKnobTurn;
    cur = turn;
    plan.waypoints.push_back({turn, "turn", 1.0});
  } else {
    throw UnknownTask("unknown task: " + s.task_name);
  }
  return plan;
}

ExpertDemo scripted_expert(const TaskSpec& spec, std::uint64_t seed,
                           int max_steps) {
  TaskWorld world = reset(spec, seed);
  const ExpertPlan plan = plan_expert_path(world);

  ExpertDemo demo;
  demo.spec = spec;
  demo.seed = seed;
  for (const auto& wp : plan.waypoints) {
    const double rate =
        world.arm.rate_limit * std::clamp(wp.speed, 0.05, 1.0);
    for (;;) {
      bool arrived = world.q.gripper == wp.q.gripper;
      for (int j = 0; j < kNumJoints && arrived; ++j) {
        arrived = std::abs(world.q.q[j] - wp.q.q[j]) < 1e-9;
      }
      if (arrived) break;
      if (static_cast<int>(demo.commands.size()) >= max_steps) {
        throw ExpertFailure("demonstration exceeded " +
                            std::to_string(max_steps) + " steps");
      }
      // Slow phases command intermediate configurations along the segment.
      JointConfig cmd = wp.q;
      for (int j = 0; j < kNumJoints; ++j) {
        const double d =
            std::clamp(wp.q.q[j] - world.q.q[j], -rate, rate);
        cmd.q[j] = world.q.q[j] + d;
      }
      step(world, cmd);
      demo.commands.push_back(cmd);
    }
  }
  if (check_success(world) != 100) {
    throw ExpertFailure("plan finished without success on task " +
                        spec.task_name);
  }
  return demo;
}

}  // namespace jointcanvas
