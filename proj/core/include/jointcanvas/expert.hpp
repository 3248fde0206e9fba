#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jointcanvas/simworld.hpp"

namespace jointcanvas {

// One target configuration on the expert's path; `phase` names the motion
// segment for diagnostics ("approach", "descend", "close", ...). `speed` is
// the fraction of the arm's rate limit used while moving to this waypoint;
// near-contact segments move slowly.
struct ExpertWaypoint {
  JointConfig q;
  std::string phase;
  double speed = 1.0;
};

struct ExpertPlan {
  std::vector<ExpertWaypoint> waypoints;
};

// Downward-grasp inverse kinematics: end-effector origin at `p`, approach
// axis pointing straight down (the wrist center is pinned directly above the
// hand). Soft angle pulls bias the redundant joints toward a repeatable
// posture. Throws ExpertFailure on non-convergence.
JointConfig solve_hand_down(const ArmModel& arm, const JointConfig& seed_q,
                            const Vec3& p);

// Plans the waypoint sequence that solves `world`'s task from its current
// state. Pure function of the world. Throws ExpertFailure when a waypoint
// has no inverse-kinematics solution.
ExpertPlan plan_expert_path(const TaskWorld& world);

// A successful scripted demonstration: the per-step command sequence.
// Replaying the commands through step() from reset(spec, seed) reproduces
// the demonstration exactly.
struct ExpertDemo {
  TaskSpec spec;
  std::uint64_t seed = 0;
  std::vector<JointConfig> commands;
};

// Rolls the plan out on a freshly reset world, stepping toward each waypoint
// until the arm lands on it. Throws ExpertFailure when planning fails, the
// rollout exceeds max_steps, or the task does not end in success.
ExpertDemo scripted_expert(const TaskSpec& spec, std::uint64_t seed,
                           int max_steps = 400);

}  // namespace jointcanvas
