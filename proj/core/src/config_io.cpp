#include "jointcanvas/config_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "jointcanvas/errors.hpp"

namespace jointcanvas {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string pose_row(const RigidTransform& p) {
  std::string s = fmt(p.t.x()) + " " + fmt(p.t.y()) + " " + fmt(p.t.z());
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) s += " " + fmt(p.R(r, c));
  }
  return s;
}

struct LineError {
  std::string message;
};

std::vector<double> parse_numbers(const std::string& value, size_t expect) {
  std::istringstream iss(value);
  std::vector<double> out;
  double v;
  while (iss >> v) out.push_back(v);
  std::string rest;
  if (iss.clear(), iss >> rest) {
    throw LineError{"trailing garbage '" + rest + "'"};
  }
  if (out.size() != expect) {
    throw LineError{"expected " + std::to_string(expect) + " numbers, got " +
                    std::to_string(out.size())};
  }
  return out;
}

RigidTransform parse_pose(const std::string& value) {
  const auto v = parse_numbers(value, 12);
  RigidTransform p;
  p.t = Vec3(v[0], v[1], v[2]);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) p.R(r, c) = v[3 + r * 3 + c];
  }
  return p;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int view_index(const std::string& name) {
  const auto v = view_name_from_string(name);
  if (!v) throw LineError{"unknown camera name '" + name + "'"};
  return static_cast<int>(*v);
}

void apply_key(SystemConfig& cfg, const std::string& key,
               const std::string& value) {
  if (key == "arm.rate_limit") {
    cfg.arm.rate_limit = parse_numbers(value, 1)[0];
    return;
  }
  if (key == "arm.base_pose") {
    cfg.arm.base_pose = parse_pose(value);
    return;
  }
  if (key == "arm.ee_offset") {
    cfg.arm.ee_offset = parse_pose(value);
    return;
  }
  if (key == "arm.sphere_frames") {
    const auto v = parse_numbers(value, 4);
    cfg.arm.sphere_joints.base = static_cast<int>(v[0]);
    cfg.arm.sphere_joints.elbow = static_cast<int>(v[1]);
    cfg.arm.sphere_joints.wrist = static_cast<int>(v[2]);
    cfg.arm.sphere_joints.gripper = static_cast<int>(v[3]);
    return;
  }
  if (key.rfind("joint", 0) == 0) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) throw LineError{"malformed joint key"};
    const std::string idx_s = key.substr(5, dot - 5);
    int idx = 0;
    try {
      idx = std::stoi(idx_s);
    } catch (...) {
      throw LineError{"bad joint index '" + idx_s + "'"};
    }
    if (idx < 1 || idx > kNumJoints) {
      throw LineError{"joint index out of range (1.." +
                      std::to_string(kNumJoints) + ")"};
    }
    const std::string field = key.substr(dot + 1);
    if (field == "dh") {
      const auto v = parse_numbers(value, 4);
      cfg.arm.dh[idx - 1] = DhRow{v[0], v[1], v[2], v[3]};
      return;
    }
    if (field == "limits_rad") {
      const auto v = parse_numbers(value, 2);
      cfg.arm.limits[idx - 1] = JointLimits{v[0], v[1]};
      return;
    }
    throw LineError{"unknown joint field '" + field + "'"};
  }
  if (key.rfind("camera.", 0) == 0) {
    const auto dot = key.find('.', 7);
    if (dot == std::string::npos) throw LineError{"malformed camera key"};
    const int cam = view_index(key.substr(7, dot - 7));
    const std::string field = key.substr(dot + 1);
    if (field == "intrinsics") {
      const auto v = parse_numbers(value, 4);
      auto& in = cfg.rig.intrinsics[cam];
      in.fx = v[0];
      in.fy = v[1];
      in.cx = v[2];
      in.cy = v[3];
      return;
    }
    if (field == "sphere_radius") {
      cfg.rig.sphere_radius_m[cam] = parse_numbers(value, 1)[0];
      return;
    }
    if (field == "pose") {
      cfg.rig.mounts[cam].pose = parse_pose(value);
      return;
    }
    if (field == "position") {
      const auto v = parse_numbers(value, 3);
      cfg.rig.mounts[cam].pose.t = Vec3(v[0], v[1], v[2]);
      return;
    }
    if (field == "target") {
      // Rebuild the orientation from the stored position; `position` must come
      // first on an earlier line.
      const auto v = parse_numbers(value, 3);
      cfg.rig.mounts[cam].pose =
          look_at(cfg.rig.mounts[cam].pose.t, Vec3(v[0], v[1], v[2]));
      return;
    }
    if (field == "ee_relative") {
      cfg.rig.mounts[cam].ee_relative = parse_numbers(value, 1)[0] != 0.0;
      return;
    }
    throw LineError{"unknown camera field '" + field + "'"};
  }
  throw LineError{"unknown key '" + key + "'"};
}

}  // namespace

SystemConfig parse_system_config(const std::string& text) {
  SystemConfig cfg;
  std::istringstream iss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(iss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      apply_key(cfg, key, value);
    } catch (const LineError& e) {
      throw ConfigError("config line " + std::to_string(lineno) + ": " +
                        e.message);
    }
  }
  cfg.arm.validate();
  cfg.rig.validate();
  return cfg;
}

SystemConfig load_system_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system_config(buf.str());
}

std::string system_config_text(const SystemConfig& config) {
  std::ostringstream out;
  out << "# arm + camera rig description (key = value; '#' comments)\n";
  out << "arm.rate_limit = " << fmt(config.arm.rate_limit) << "\n";
  out << "arm.base_pose = " << pose_row(config.arm.base_pose) << "\n";
  out << "arm.ee_offset = " << pose_row(config.arm.ee_offset) << "\n";
  const auto frames = config.arm.sphere_joints.frames();
  out << "arm.sphere_frames = " << frames[0] << " " << frames[1] << " "
      << frames[2] << " " << frames[3] << "\n";
  for (int j = 0; j < kNumJoints; ++j) {
    const DhRow& r = config.arm.dh[j];
    out << "joint" << (j + 1) << ".dh = " << fmt(r.a) << " " << fmt(r.d) << " "
        << fmt(r.alpha) << " " << fmt(r.theta_offset) << "\n";
    out << "joint" << (j + 1) << ".limits_rad = " << fmt(config.arm.limits[j].lo)
        << " " << fmt(config.arm.limits[j].hi) << "\n";
  }
  for (int i = 0; i < kNumViews; ++i) {
    const std::string& name = view_name_string(static_cast<ViewName>(i));
    const Intrinsics& in = config.rig.intrinsics[i];
    out << "camera." << name << ".intrinsics = " << fmt(in.fx) << " "
        << fmt(in.fy) << " " << fmt(in.cx) << " " << fmt(in.cy) << "\n";
    out << "camera." << name
        << ".sphere_radius = " << fmt(config.rig.sphere_radius_m[i]) << "\n";
    out << "camera." << name << ".ee_relative = "
        << (config.rig.mounts[i].ee_relative ? 1 : 0) << "\n";
    out << "camera." << name << ".pose = " << pose_row(config.rig.mounts[i].pose)
        << "\n";
  }
  return out.str();
}

void save_system_config(const SystemConfig& config,
                        const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot write config file: " + path.string());
  out << system_config_text(config);
  if (!out) throw IoFailure("write failed: " + path.string());
}

}  // namespace jointcanvas
