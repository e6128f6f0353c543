#pragma once

#include <array>
#include <optional>
#include <vector>

#include "bladedisk/loads.hpp"
#include "bladedisk/scenario.hpp"

namespace bladedisk {

double shaft_angle(double t, const RpmProfile& profile);
double shaft_speed(double t, const RpmProfile& profile);
double blade_angle(double t, int blade_index, int blade_count, const RpmProfile& profile);

// Global-to-local direction cosines of a blade at angle theta.
Matrix3 rotation_block(double theta);
Matrix12 transformation(double theta);

struct RayleighCoefficients {
  double a0 = 0;
  double a1 = 0;
};

RayleighCoefficients rayleigh_coefficients(double zeta, double omega_i, double omega_j);

// Picks the anchor frequencies from the generalized eigenproblem of (M, K).
// Returns the coefficients and fills damping = a0 M + a1 K.
RayleighCoefficients rayleigh_damping(const Matrix& mass, const Matrix& stiffness, double zeta,
                                      int mode_i, int mode_j, Matrix& damping);

struct DofMap {
  int free_count = 0;
  std::vector<std::array<int, 6>> node_dofs;  // -1 marks a constrained component
  std::vector<int> stage_disk_node;
  // [stage][blade] -> node ids along the span; entry 0 is the host shaft node.
  std::vector<std::vector<std::vector<int>>> blade_nodes;

  int dof(int node, int comp) const { return node_dofs[node][comp]; }
  int blade_tip_node(int stage, int blade) const { return blade_nodes[stage][blade].back(); }
};

struct SystemMatrices {
  Matrix mass, damping, stiffness;
  Vector force;
  double time = 0;
  double a0 = 0, a1 = 0;
};

// Assembled rotor: stages chained along global X, disk and blade ring at the
// end node of each stage's shaft segment. Damage state (cracks fixed, FBO
// truncation, FOD stick mass) lives here so the solver can mutate topology.
class RotorModel {
 public:
  explicit RotorModel(const Scenario& scenario);

  const DofMap& dof_map() const { return map_; }
  const Scenario& scenario() const { return scenario_; }

  SystemMatrices assemble(double t) const;
  void assemble_into(double t, SystemMatrices& out) const;
  // Load vector alone, with every blade's loads rotated to its angle at t.
  void assemble_force_into(double t, Vector& force) const;

  void set_rayleigh(double a0, double a1) { a0_ = a0; a1_ = a1; }
  double rayleigh_a0() const { return a0_; }
  double rayleigh_a1() const { return a1_; }

  void truncate_blade(int stage, int blade, double break_location);
  void set_stick_mass(int stage, int blade, double mass);

  // 1-based stage and blade indices, matching the event specs.
  double blade_length(int stage, int blade) const;
  const std::vector<double>& blade_element_lengths(int stage, int blade) const;
  double total_mass() const;

 private:
  struct BladeState {
    std::vector<double> element_lengths;
    std::optional<CrackSpec> crack;
    double stick_mass = 0;
    // caches, aligned with element_lengths
    std::vector<Matrix12> mass_local, stiff_local;
    std::vector<Vector12> load_omega2, load_const;  // f = w^2 * load_omega2 + load_const
  };

  void rebuild();
  void rebuild_blade_cache(int stage, int blade);
  ElementContext blade_context(int stage, int blade, int element) const;
  double span_of(int stage, int blade) const;  // 0-based internals
  void check_blade_index(int stage, int blade, const char* what) const;

  Scenario scenario_;
  std::vector<std::vector<BladeState>> blades_;  // [stage][blade]
  std::vector<std::vector<Matrix12>> shaft_mass_, shaft_stiff_;
  std::vector<std::pair<double, double>> disk_lump_;
  DofMap map_;
  double a0_ = 0, a1_ = 0;
};

// Modal side models: a single blade cantilever (crack optional) and the bare
// shaft chain with disks. Both clamp the root per the scenario options.
void assemble_blade_cantilever(const Scenario& scenario, int stage,
                               const std::optional<CrackSpec>& crack, Matrix& mass,
                               Matrix& stiffness);
void assemble_shaft_only(const Scenario& scenario, Matrix& mass, Matrix& stiffness);

}  // namespace bladedisk
