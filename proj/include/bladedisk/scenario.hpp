#pragma once

#include <string>
#include <vector>

#include "bladedisk/sections.hpp"

namespace bladedisk {

struct AeroEnvironment {
  double air_density = 1.22;
  double freestream = 0;   // V_inf [m/s]
  double c_lift = 0;
  double c_drag = 0;
  double chord = 0;        // 0 means blade width
};

struct RpmProfile {
  double omega_target = 0;  // [rad/s]
  double ramp_time = 0.2;   // [s]
};

struct SolverSettings {
  double dt = 1e-4;
  double alpha = 0.5;
  double beta = 0.25;
  double duration = 0;
};

struct FodEvent {
  double time = 0;
  int stage = 1;
  int blade = 1;
  double mass = 0;
  double velocity = 0;
  double contact_time = 0;
  bool stick = false;
};

struct FboEvent {
  double time = 0;
  int stage = 1;
  int blade = 1;
  double break_location = 0;  // from blade root [m]
};

struct DampingSpec {
  double zeta = 0.02;
  int mode_i = 1;  // anchor modes, 1-based into the ascending assembled spectrum
  int mode_j = 5;
};

enum class RootCondition { clamped, pinned };

struct ModelOptions {
  bool literal_disk_polar = false;
  bool omit_disk_translational_mass = false;
  RootCondition shaft_root = RootCondition::clamped;
};

struct StageConfig {
  ShaftGeometry shaft;
  DiskGeometry disk;
  BladeGeometry blades;
};

struct OutputRequest {
  std::vector<std::string> channels;  // empty means per-stage disk uX,uY,uZ
};

struct Scenario {
  std::vector<StageConfig> stages;
  MaterialProperties material;
  AeroEnvironment aero;
  RpmProfile rpm;
  std::vector<CrackSpec> cracks;
  std::vector<FboEvent> fbo;
  std::vector<FodEvent> fod;
  SolverSettings solver;
  DampingSpec damping;
  ModelOptions options;
  OutputRequest outputs;

  // Throws ValidationError naming the offending field.
  void validate() const;
};

}  // namespace bladedisk
