#pragma once

#include <filesystem>
#include <string>

#include "jointcanvas/camera.hpp"
#include "jointcanvas/kinematics.hpp"

namespace jointcanvas {

// Arm + camera rig description, loadable from one plain-text file of
// `key = value` rows (see configs/tabletop_arm.cfg and the README). A config
// file overrides the built-in defaults key by key, so partial files are fine.
struct SystemConfig {
  ArmModel arm = ArmModel::default_model();
  CameraRig rig = CameraRig::default_rig();
};

// Parses config text. Throws ConfigError with the offending line number for
// unknown keys, malformed values, or a description that fails validation.
SystemConfig parse_system_config(const std::string& text);

// Reads a config file; IoFailure when unreadable, otherwise as parse.
SystemConfig load_system_config(const std::filesystem::path& path);

// Canonical text form; parse_system_config(system_config_text(c)) reproduces
// c exactly.
std::string system_config_text(const SystemConfig& config);

void save_system_config(const SystemConfig& config,
                        const std::filesystem::path& path);

}  // namespace jointcanvas
