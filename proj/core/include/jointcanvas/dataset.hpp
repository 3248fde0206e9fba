#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "jointcanvas/expert.hpp"
#include "jointcanvas/render.hpp"

namespace jointcanvas {

inline constexpr const char* kDemoFormat = "jc-demo-1";
inline constexpr const char* kPairsFormat = "jc-pairs-1";

// Object descriptor frozen into a demo record; poses vary per step.
struct DemoObject {
  std::string name;
  WorldObject::Kind kind = WorldObject::Kind::Box;
  Vec3 dims = Vec3::Zero();
  Rgb color;
  bool graspable = false;
};

struct DemoStep {
  int t = 0;
  JointConfig q;
  std::vector<RigidTransform> object_poses;  // parallel to DemoRecord.objects
  // Relative paths of the four saved camera views; empty when the demo was
  // recorded without view rendering.
  std::array<std::string, kNumViews> view_paths;
};

// A recorded demonstration. Steps carry strictly increasing t from 0 and the
// final step satisfies the task's success predicate.
struct DemoRecord {
  std::string format = kDemoFormat;
  std::string task_name;
  std::string goal_text;
  std::uint64_t seed = 0;
  std::uint64_t palette_hash = 0;
  std::uint64_t rig_hash = 0;
  std::vector<DemoObject> objects;
  std::vector<DemoStep> steps;
};

// Replays `demo`'s commands on a freshly reset world and snapshots every
// step (including the initial state). When `views_dir` is non-empty, the
// four camera views are rendered per step into
// views_dir/ep{episode:04}/t{t:04}_{view}.png and recorded as paths relative
// to views_dir. Throws ExpertFailure if the replay does not end in success.
DemoRecord record_demo(const ExpertDemo& demo, const ArmModel& arm,
                       const CameraRig& rig, const Palette& palette,
                       const std::string& views_dir = "", int episode = 0);

// JSON persistence for demo records. Throws IoFailure on filesystem errors
// and ConfigError on malformed content.
void save_demo(const DemoRecord& record, const std::string& path);
DemoRecord load_demo(const std::string& path);

// One image-to-image training example: tiled observation, the same
// observation with target spheres painted over it, and the action labels.
struct TrainingPair {
  TiledImage condition;
  TiledImage target;
  PixelMask sphere_mask;  // tiled; 1 where target differs from condition
  std::string prompt;
  int episode = 0;
  int t = 0;
  int K = 20;
  JointConfig q_t;
  JointConfig q_target;                    // demo config at min(t+K, T)
  std::vector<JointConfig> action_labels;  // q at t+1 .. t+K (clamped), size K
};

struct PairOptions {
  int K = 20;
  int stride = 1;
  int episode = 0;   // stamped into pairs and output filenames
  bool stripes = true;
};

// Sliding-window pair extraction: one pair per stride-spaced t, each
// re-rendered from the recorded world state, with spheres at the joint
// configuration of step min(t+K, T) painted over the target copy. Condition
// and target are bit-identical outside the sphere mask. Throws EmptyDemo
// when the demo has fewer than two steps.
std::vector<TrainingPair> extract_pairs(const DemoRecord& demo,
                                        const PairOptions& opts,
                                        const ArmModel& arm,
                                        const CameraRig& rig,
                                        const Palette& palette);
std::vector<TrainingPair> extract_pairs(const DemoRecord& demo,
                                        const PairOptions& opts = {});

// Controller-training variant: every pair's condition is replaced by the
// target's sphere layer composited over a seeded random background (the
// background stream mixes the pair index). Throws MissingMask when a pair
// lacks a usable sphere mask.
std::vector<TrainingPair> make_controller_set(
    const std::vector<TrainingPair>& pairs, std::uint64_t seed);

struct ManifestRecord {
  int episode = 0;
  int t = 0;
  int K = 0;
  std::string cond_path;
  std::string target_path;
  std::string prompt;
  JointConfig q_t;
  JointConfig q_target;
  std::vector<JointConfig> action_labels;
};

struct Manifest {
  std::string format = kPairsFormat;
  int K = 0;
  std::uint64_t palette_hash = 0;
  std::uint64_t rig_hash = 0;
  std::vector<ManifestRecord> records;
};

// Streaming dataset writer: PNGs are written as pairs arrive; finalize()
// sorts the manifest by (episode, t) and writes manifest.jsonl. Output is
// byte-stable for fixed inputs.
class DatasetWriter {
 public:
  DatasetWriter(std::string out_dir, const Palette& palette,
                const CameraRig& rig);
  void add(const TrainingPair& pair);
  Manifest finalize();

 private:
  std::string out_dir_;
  Manifest manifest_;
  bool finalized_ = false;
};

// One-shot convenience over DatasetWriter. Throws IoFailure.
Manifest write_dataset(const std::vector<TrainingPair>& pairs,
                       const std::string& out_dir, const Palette& palette,
                       const CameraRig& rig);

// Parses dir/manifest.jsonl. Throws IoFailure / ConfigError.
Manifest load_manifest(const std::string& dir);

struct ManifestViolation {
  std::string kind;    // "MissingFile", "BadDimensions", "SchemaError", ...
  std::string detail;  // offending path or line description
};

// Structural dataset check: schema, referenced files, 512x512 dimensions,
// non-empty prompts, hash fields. Violations are data, not exceptions.
std::vector<ManifestViolation> validate_manifest(const std::string& dir);

}  // namespace jointcanvas
