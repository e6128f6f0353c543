#include "bladedisk/assembly.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "bladedisk/errors.hpp"

namespace bladedisk {

double shaft_angle(double t, const RpmProfile& profile) {
  const double tr = profile.ramp_time;
  if (t < tr) return profile.omega_target * t * t / (2.0 * tr);
  return profile.omega_target * tr / 2.0 + profile.omega_target * (t - tr);
}

double shaft_speed(double t, const RpmProfile& profile) {
  if (t < profile.ramp_time) return profile.omega_target * t / profile.ramp_time;
  return profile.omega_target;
}

double blade_angle(double t, int blade_index, int blade_count, const RpmProfile& profile) {
  return shaft_angle(t, profile) + (blade_index - 1) * 2.0 * pi / blade_count;
}

Matrix3 rotation_block(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix3 t;
  t << 0, -s, c,
       0, c, s,
      -1, 0, 0;
  return t;
}

Matrix12 transformation(double theta) {
  Matrix12 tf = Matrix12::Zero();
  const Matrix3 t = rotation_block(theta);
  for (int b = 0; b < 4; ++b) tf.block<3, 3>(3 * b, 3 * b) = t;
  return tf;
}

RayleighCoefficients rayleigh_coefficients(double zeta, double omega_i, double omega_j) {
  if (omega_i == omega_j)
    throw ValidationError("rayleigh anchor frequencies are degenerate; pick distinct modes");
  if (omega_i <= 0 || omega_j <= 0)
    throw ValidationError("rayleigh anchor frequencies must be positive");
  RayleighCoefficients c;
  c.a0 = 2.0 * zeta * omega_i * omega_j / (omega_i + omega_j);
  c.a1 = 2.0 * zeta / (omega_i + omega_j);
  return c;
}

RayleighCoefficients rayleigh_damping(const Matrix& mass, const Matrix& stiffness, double zeta,
                                      int mode_i, int mode_j, Matrix& damping) {
  if (mode_i < 1 || mode_j <= mode_i)
    throw ValidationError("damping.mode_pair must satisfy 1 <= i < j");
  if (mode_j > mass.rows())
    throw ValidationError("damping.mode_pair exceeds the number of system modes");
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> eig(stiffness, mass);
  if (eig.info() != Eigen::Success) throw NumericalError("modal analysis failed to converge");
  const double wi = std::sqrt(std::max(eig.eigenvalues()(mode_i - 1), 0.0));
  const double wj = std::sqrt(std::max(eig.eigenvalues()(mode_j - 1), 0.0));
  const RayleighCoefficients c = rayleigh_coefficients(zeta, wi, wj);
  damping = c.a0 * mass + c.a1 * stiffness;
  return c;
}

namespace {

void scatter(Matrix& out, const Matrix12& local, const std::array<int, 6>& n1,
             const std::array<int, 6>& n2) {
  int dofs[12];
  for (int c = 0; c < 6; ++c) {
    dofs[c] = n1[c];
    dofs[c + 6] = n2[c];
  }
  for (int i = 0; i < 12; ++i) {
    if (dofs[i] < 0) continue;
    for (int j = 0; j < 12; ++j)
      if (dofs[j] >= 0) out(dofs[i], dofs[j]) += local(i, j);
  }
}

void scatter(Vector& out, const Vector12& local, const std::array<int, 6>& n1,
             const std::array<int, 6>& n2) {
  for (int c = 0; c < 6; ++c) {
    if (n1[c] >= 0) out(n1[c]) += local(c);
    if (n2[c] >= 0) out(n2[c]) += local(c + 6);
  }
}

Matrix12 congruence(const Matrix3& t, const Matrix12& local) {
  Matrix12 g;
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      g.block<3, 3>(3 * p, 3 * q) = t.transpose() * local.block<3, 3>(3 * p, 3 * q) * t;
  return g;
}

Vector12 to_global(const Matrix3& t, const Vector12& local) {
  Vector12 g;
  for (int p = 0; p < 4; ++p) g.segment<3>(3 * p) = t.transpose() * local.segment<3>(3 * p);
  return g;
}

}  // namespace

RotorModel::RotorModel(const Scenario& scenario) : scenario_(scenario) {
  scenario_.validate();
  blades_.resize(scenario_.stages.size());
  for (size_t s = 0; s < scenario_.stages.size(); ++s) {
    const BladeGeometry& geom = scenario_.stages[s].blades;
    blades_[s].resize(geom.count);
    for (int j = 0; j < geom.count; ++j) {
      BladeState& b = blades_[s][j];
      b.element_lengths.assign(geom.n_elements, geom.length / geom.n_elements);
      for (const CrackSpec& crack : scenario_.cracks)
        if (crack.stage == int(s) + 1 && crack.blade == j + 1) b.crack = crack;
    }
  }
  rebuild();
}

void RotorModel::rebuild() {
  map_ = DofMap{};
  const size_t n_stages = scenario_.stages.size();

  int node = 0;
  std::vector<std::vector<int>> shaft_chain(n_stages);
  for (size_t s = 0; s < n_stages; ++s) {
    const int n_el = scenario_.stages[s].shaft.n_elements;
    if (s == 0) shaft_chain[s].push_back(node++);
    else shaft_chain[s].push_back(shaft_chain[s - 1].back());
    for (int e = 0; e < n_el; ++e) shaft_chain[s].push_back(node++);
    map_.stage_disk_node.push_back(shaft_chain[s].back());
  }

  map_.blade_nodes.resize(n_stages);
  for (size_t s = 0; s < n_stages; ++s) {
    map_.blade_nodes[s].resize(blades_[s].size());
    for (size_t j = 0; j < blades_[s].size(); ++j) {
      auto& ids = map_.blade_nodes[s][j];
      ids.push_back(map_.stage_disk_node[s]);
      for (size_t e = 0; e < blades_[s][j].element_lengths.size(); ++e) ids.push_back(node++);
    }
  }

  map_.node_dofs.assign(node, {});
  int dof = 0;
  for (int i = 0; i < node; ++i)
    for (int c = 0; c < 6; ++c) {
      const bool root = (i == 0);
      const bool fixed =
          root && (scenario_.options.shaft_root == RootCondition::clamped || c < 3);
      map_.node_dofs[i][c] = fixed ? -1 : dof++;
    }
  map_.free_count = dof;

  shaft_mass_.assign(n_stages, {});
  shaft_stiff_.assign(n_stages, {});
  disk_lump_.clear();
  for (size_t s = 0; s < n_stages; ++s) {
    const StageConfig& stage = scenario_.stages[s];
    const SectionProperties section = shaft_section(stage.shaft);
    ElementContext ctx;
    ctx.element_length = stage.shaft.length / stage.shaft.n_elements;
    ctx.member_length = stage.shaft.length;
    ctx.section = section;
    ctx.material = scenario_.material;
    for (int e = 0; e < stage.shaft.n_elements; ++e) {
      ctx.element_index = e + 1;
      ElementMatrices em = shaft_element(ctx);
      shaft_mass_[s].push_back(em.mass);
      shaft_stiff_[s].push_back(em.stiffness);
    }
    auto lump = disk_inertia(stage.disk, stage.shaft, scenario_.options.literal_disk_polar);
    if (scenario_.options.omit_disk_translational_mass) lump.first = 0;
    disk_lump_.push_back(lump);
  }

  for (size_t s = 0; s < n_stages; ++s)
    for (size_t j = 0; j < blades_[s].size(); ++j) rebuild_blade_cache(int(s), int(j));
}

ElementContext RotorModel::blade_context(int stage, int blade, int element) const {
  const BladeState& b = blades_[stage][blade];
  ElementContext ctx;
  ctx.element_index = element + 1;
  ctx.element_length = b.element_lengths[element];
  ctx.member_length = span_of(stage, blade);
  ctx.blade = scenario_.stages[stage].blades;
  ctx.section = blade_section(*ctx.blade);
  ctx.material = scenario_.material;
  ctx.crack = b.crack;
  double start = 0;
  for (int e = 0; e < element; ++e) start += b.element_lengths[e];
  ctx.span_start_override = start;
  return ctx;
}

void RotorModel::rebuild_blade_cache(int stage, int blade) {
  BladeState& b = blades_[stage][blade];
  const size_t n = b.element_lengths.size();
  b.mass_local.resize(n);
  b.stiff_local.resize(n);
  b.load_omega2.resize(n);
  b.load_const.resize(n);
  const double disk_d = scenario_.stages[stage].disk.d_disk;
  AeroEnvironment spin_only = scenario_.aero;
  spin_only.freestream = 0;
  for (size_t e = 0; e < n; ++e) {
    ElementContext ctx = blade_context(stage, blade, int(e));
    ElementMatrices em = blade_element(ctx);
    b.mass_local[e] = em.mass;
    b.stiff_local[e] = em.stiffness;
    b.load_omega2[e] = consistent_nodal_loads(ctx, spin_only, 1.0, disk_d).values;
    b.load_const[e] = consistent_nodal_loads(ctx, scenario_.aero, 0.0, disk_d).values;
  }
}

SystemMatrices RotorModel::assemble(double t) const {
  SystemMatrices out;
  assemble_into(t, out);
  return out;
}

void RotorModel::assemble_into(double t, SystemMatrices& out) const {
  const int n = map_.free_count;
  out.mass.setZero(n, n);
  out.stiffness.setZero(n, n);
  out.time = t;
  out.a0 = a0_;
  out.a1 = a1_;

  // Shaft elements; chain nodes were issued contiguously in rebuild.
  int chain_node = 0;
  for (size_t s = 0; s < scenario_.stages.size(); ++s) {
    const int n_el = scenario_.stages[s].shaft.n_elements;
    for (int e = 0; e < n_el; ++e) {
      const int a = chain_node + e;
      scatter(out.mass, shaft_mass_[s][e], map_.node_dofs[a], map_.node_dofs[a + 1]);
      scatter(out.stiffness, shaft_stiff_[s][e], map_.node_dofs[a], map_.node_dofs[a + 1]);
    }
    chain_node += n_el;
  }

  // Disk lumps.
  for (size_t s = 0; s < scenario_.stages.size(); ++s) {
    const auto& dofs = map_.node_dofs[map_.stage_disk_node[s]];
    for (int c = 0; c < 3; ++c)
      if (dofs[c] >= 0) out.mass(dofs[c], dofs[c]) += disk_lump_[s].first;
    if (dofs[3] >= 0) out.mass(dofs[3], dofs[3]) += disk_lump_[s].second;
  }

  // Blades, rotated into the global frame.
  for (size_t s = 0; s < scenario_.stages.size(); ++s) {
    const int count = scenario_.stages[s].blades.count;
    double stage_stick = 0;
    for (int j = 0; j < count; ++j) stage_stick += blades_[s][j].stick_mass;
    for (int j = 0; j < count; ++j) {
      const BladeState& b = blades_[s][j];
      const Matrix3 rot = rotation_block(blade_angle(t, j + 1, count, scenario_.rpm));
      const auto& ids = map_.blade_nodes[s][j];
      for (size_t e = 0; e < b.element_lengths.size(); ++e) {
        scatter(out.mass, congruence(rot, b.mass_local[e]), map_.node_dofs[ids[e]],
                map_.node_dofs[ids[e + 1]]);
        scatter(out.stiffness, congruence(rot, b.stiff_local[e]), map_.node_dofs[ids[e]],
                map_.node_dofs[ids[e + 1]]);
      }
      // The matrices hold the axisymmetric mean of any stuck masses; the
      // rotating imbalance they create lives in the force vector. A one-blade
      // lump here would make the frozen-angle matrices anisotropic and bend
      // the steady orbit into an ellipse.
      if (stage_stick > 0) {
        const auto& tip = map_.node_dofs[ids.back()];
        for (int c = 0; c < 3; ++c)
          if (tip[c] >= 0) out.mass(tip[c], tip[c]) += stage_stick / double(count);
      }
    }
  }

  out.damping = a0_ * out.mass + a1_ * out.stiffness;
  assemble_force_into(t, out.force);
}

void RotorModel::assemble_force_into(double t, Vector& force) const {
  force.setZero(map_.free_count);
  const double omega = shaft_speed(t, scenario_.rpm);
  const double w2 = omega * omega;
  for (size_t s = 0; s < scenario_.stages.size(); ++s) {
    const int count = scenario_.stages[s].blades.count;
    const double disk_d = scenario_.stages[s].disk.d_disk;
    for (int j = 0; j < count; ++j) {
      const BladeState& b = blades_[s][j];
      const double theta = blade_angle(t, j + 1, count, scenario_.rpm);
      const Matrix3 rot = rotation_block(theta);
      const auto& ids = map_.blade_nodes[s][j];
      for (size_t e = 0; e < b.element_lengths.size(); ++e) {
        Vector12 f_local = w2 * b.load_omega2[e] + b.load_const[e];
        scatter(force, to_global(rot, f_local), map_.node_dofs[ids[e]],
                map_.node_dofs[ids[e + 1]]);
      }
      // A stuck mass acts on the rotor as a point imbalance. Pulling on the
      // frozen blade tip instead would route a rotating force through one
      // blade's bending compliance and whirl the shaft in a spurious 2/rev
      // ellipse, so the centrifugal pull goes to the disk it orbits.
      if (b.stick_mass > 0) {
        const double r_tip = 0.5 * disk_d + span_of(int(s), j);
        const double f = b.stick_mass * w2 * r_tip;
        const auto& disk = map_.node_dofs[map_.stage_disk_node[s]];
        if (disk[1] >= 0) force(disk[1]) += -std::sin(theta) * f;
        if (disk[2] >= 0) force(disk[2]) += std::cos(theta) * f;
      }
    }
  }
}

void RotorModel::truncate_blade(int stage, int blade, double break_location) {
  check_blade_index(stage, blade, "fbo");
  BladeState& b = blades_[stage - 1][blade - 1];
  const double length = span_of(stage - 1, blade - 1);
  if (break_location <= 0 || break_location >= length)
    throw ValidationError("fbo.break_location must lie strictly inside the blade span");

  const double tol = 1e-9 * length;
  std::vector<double> kept;
  double acc = 0;
  for (double le : b.element_lengths) {
    if (acc + le <= break_location - tol) {
      kept.push_back(le);
      acc += le;
      continue;
    }
    const double partial = break_location - acc;
    if (partial > tol) kept.push_back(partial);
    break;
  }
  if (kept.empty()) throw ValidationError("fbo.break_location leaves no blade material");
  b.element_lengths = kept;
  rebuild();
}

void RotorModel::set_stick_mass(int stage, int blade, double mass) {
  check_blade_index(stage, blade, "fod");
  blades_[stage - 1][blade - 1].stick_mass = mass;
}

double RotorModel::span_of(int stage, int blade) const {
  double sum = 0;
  for (double le : blades_[stage][blade].element_lengths) sum += le;
  return sum;
}

void RotorModel::check_blade_index(int stage, int blade, const char* what) const {
  if (stage < 1 || stage > int(blades_.size()))
    throw ValidationError(std::string(what) + ".stage out of range");
  if (blade < 1 || blade > int(blades_[stage - 1].size()))
    throw ValidationError(std::string(what) + ".blade out of range");
}

double RotorModel::blade_length(int stage, int blade) const {
  check_blade_index(stage, blade, "blade");
  return span_of(stage - 1, blade - 1);
}

const std::vector<double>& RotorModel::blade_element_lengths(int stage, int blade) const {
  check_blade_index(stage, blade, "blade");
  return blades_[stage - 1][blade - 1].element_lengths;
}

double RotorModel::total_mass() const {
  double total = 0;
  for (size_t s = 0; s < scenario_.stages.size(); ++s) {
    const StageConfig& stage = scenario_.stages[s];
    total += scenario_.material.density * shaft_section(stage.shaft).area * stage.shaft.length;
    total += disk_lump_[s].first;
    const double line = scenario_.material.density * blade_section(stage.blades).area;
    for (size_t j = 0; j < blades_[s].size(); ++j) {
      total += line * span_of(int(s), int(j));
      total += blades_[s][j].stick_mass;
    }
  }
  return total;
}

void assemble_blade_cantilever(const Scenario& scenario, int stage,
                               const std::optional<CrackSpec>& crack, Matrix& mass,
                               Matrix& stiffness) {
  if (stage < 1 || stage > int(scenario.stages.size()))
    throw ValidationError("modal stage out of range");
  const BladeGeometry& geom = scenario.stages[stage - 1].blades;
  const int n_el = geom.n_elements;
  const int n = 6 * n_el;
  mass.setZero(n, n);
  stiffness.setZero(n, n);
  ElementContext ctx;
  ctx.element_length = geom.length / n_el;
  ctx.member_length = geom.length;
  ctx.blade = geom;
  ctx.section = blade_section(geom);
  ctx.material = scenario.material;
  ctx.crack = crack;
  for (int e = 0; e < n_el; ++e) {
    ctx.element_index = e + 1;
    const ElementMatrices em = blade_element(ctx);
    // Node 0 is clamped; element e links nodes e and e+1.
    const int base = 6 * (e - 1);
    for (int i = 0; i < 12; ++i) {
      const int gi = base + i;
      if (gi < 0) continue;
      for (int j = 0; j < 12; ++j) {
        const int gj = base + j;
        if (gj < 0) continue;
        mass(gi, gj) += em.mass(i, j);
        stiffness(gi, gj) += em.stiffness(i, j);
      }
    }
  }
}

void assemble_shaft_only(const Scenario& scenario, Matrix& mass, Matrix& stiffness) {
  const size_t n_stages = scenario.stages.size();
  int n_nodes = 1;
  for (const StageConfig& stage : scenario.stages) n_nodes += stage.shaft.n_elements;
  const bool pinned = scenario.options.shaft_root == RootCondition::pinned;
  const int root_free = pinned ? 3 : 0;
  const int n = 6 * (n_nodes - 1) + root_free;
  mass.setZero(n, n);
  stiffness.setZero(n, n);

  auto dof_of = [&](int node, int comp) {
    if (node == 0) return pinned && comp >= 3 ? comp - 3 : -1;
    return root_free + 6 * (node - 1) + comp;
  };

  int chain = 0;
  for (size_t s = 0; s < n_stages; ++s) {
    const StageConfig& stage = scenario.stages[s];
    ElementContext ctx;
    ctx.element_length = stage.shaft.length / stage.shaft.n_elements;
    ctx.member_length = stage.shaft.length;
    ctx.section = shaft_section(stage.shaft);
    ctx.material = scenario.material;
    for (int e = 0; e < stage.shaft.n_elements; ++e) {
      ctx.element_index = e + 1;
      const ElementMatrices em = shaft_element(ctx);
      const int a = chain + e, b = chain + e + 1;
      for (int i = 0; i < 12; ++i) {
        const int gi = dof_of(i < 6 ? a : b, i % 6);
        if (gi < 0) continue;
        for (int j = 0; j < 12; ++j) {
          const int gj = dof_of(j < 6 ? a : b, j % 6);
          if (gj < 0) continue;
          mass(gi, gj) += em.mass(i, j);
          stiffness(gi, gj) += em.stiffness(i, j);
        }
      }
    }
    chain += stage.shaft.n_elements;
    const auto lump =
        disk_inertia(stage.disk, stage.shaft, scenario.options.literal_disk_polar);
    const double m = scenario.options.omit_disk_translational_mass ? 0 : lump.first;
    for (int c = 0; c < 3; ++c) {
      const int g = dof_of(chain, c);
      if (g >= 0) mass(g, g) += m;
    }
    const int g = dof_of(chain, 3);
    if (g >= 0) mass(g, g) += lump.second;
  }
}

}  // namespace bladedisk
