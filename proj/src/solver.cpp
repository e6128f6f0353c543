#include "bladedisk/solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <regex>

#include "bladedisk/errors.hpp"

namespace bladedisk {

State newmark_step(const SystemMatrices& system, const State& state, const Vector& f_next,
                   const SolverSettings& settings) {
  const double dt = settings.dt;
  const double al = settings.alpha;
  const double be = settings.beta;
  if (dt <= 0) throw ValidationError("solver.dt must be positive");
  if (be <= 0) throw ValidationError("solver.beta must be positive");

  const double c0 = 1.0 / (be * dt * dt);
  const double c1 = al / (be * dt);
  const double c2 = 1.0 / (be * dt);
  const double c3 = 0.5 / be - 1.0;
  const double c4 = al / be - 1.0;
  const double c5 = 0.5 * dt * (al / be - 2.0);

  Matrix khat = system.stiffness + c0 * system.mass + c1 * system.damping;
  Vector rhs = f_next +
               system.mass * (c0 * state.displacement + c2 * state.velocity +
                              c3 * state.acceleration) +
               system.damping * (c1 * state.displacement + c4 * state.velocity +
                                 c5 * state.acceleration);
  Eigen::LDLT<Matrix> ldlt(khat);
  Vector u_next = ldlt.solve(rhs);
  const double residual = (khat * u_next - rhs).norm();
  if (!u_next.allFinite() || residual > 1e-6 * std::max(rhs.norm(), 1.0))
    throw NumericalError("newmark step: effective stiffness solve failed (residual " +
                         std::to_string(residual) + ")");

  State out;
  out.displacement = u_next;
  out.acceleration = c0 * (u_next - state.displacement) - c2 * state.velocity -
                     c3 * state.acceleration;
  out.velocity = state.velocity + dt * ((1.0 - al) * state.acceleration + al * out.acceleration);
  out.time = state.time + dt;
  return out;
}

ModalResult modal_analysis(const Matrix& mass, const Matrix& stiffness, int count) {
  if (count < 1) throw ValidationError("modal count must be positive");
  if (mass.rows() == 0) throw ValidationError("modal analysis needs at least one free DOF");
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> eig(stiffness, mass);
  if (eig.info() != Eigen::Success)
    throw NumericalError("modal analysis failed to converge");
  if (!eig.eigenvalues().allFinite())
    throw NumericalError("mass matrix is not positive definite on the free DOFs");
  const int m = std::min<int>(count, int(mass.rows()));
  ModalResult out;
  out.frequencies_hz.resize(m);
  out.mode_shapes = eig.eigenvectors().leftCols(m);
  for (int i = 0; i < m; ++i)
    out.frequencies_hz[i] = std::sqrt(std::max(eig.eigenvalues()(i), 0.0)) / (2.0 * pi);
  const Vector v0 = out.mode_shapes.col(0);
  const double lambda0 = eig.eigenvalues()(0);
  const double residual = (stiffness * v0 - lambda0 * (mass * v0)).norm();
  const double scale = stiffness.norm() + std::abs(lambda0) * mass.norm();
  if (scale > 0 && residual > 1e-6 * scale)
    throw NumericalError("modal analysis residual too large: " + std::to_string(residual));
  return out;
}

double fod_force(const FodEvent& event) {
  if (event.contact_time <= 0) throw ValidationError("fod.contact_time must be positive");
  return event.velocity * event.mass / event.contact_time;
}

int resolve_channel(const DofMap& map, const std::string& name) {
  static const std::regex grammar(
      "^stage([0-9]+)_(?:blade([0-9]+)_)?(uX|uY|uZ|thX|thY|thZ)$");
  std::smatch m;
  if (!std::regex_match(name, m, grammar))
    throw ValidationError("unknown channel: " + name);
  const int stage = std::stoi(m[1]);
  if (stage < 1 || stage > int(map.stage_disk_node.size()))
    throw ValidationError("channel stage out of range: " + name);
  static const char* comps[] = {"uX", "uY", "uZ", "thX", "thY", "thZ"};
  int comp = 0;
  while (m[3] != comps[comp]) ++comp;
  int node;
  if (m[2].matched) {
    const int blade = std::stoi(m[2]);
    if (blade < 1 || blade > int(map.blade_nodes[stage - 1].size()))
      throw ValidationError("channel blade out of range: " + name);
    node = map.blade_tip_node(stage - 1, blade - 1);
  } else {
    node = map.stage_disk_node[stage - 1];
  }
  const int dof = map.dof(node, comp);
  if (dof < 0) throw ValidationError("channel is constrained: " + name);
  return dof;
}

namespace {

struct PendingFbo {
  FboEvent event;
  bool applied = false;
};

struct PendingStick {
  FodEvent event;
  bool applied = false;
};

void add_pulse_forces(const RotorModel& model, double t, const std::vector<FodEvent>& fods,
                      Vector& f) {
  for (const FodEvent& e : fods) {
    if (t < e.time || t >= e.time + e.contact_time) continue;
    const int tip = model.dof_map().blade_tip_node(e.stage - 1, e.blade - 1);
    const int dof = model.dof_map().dof(tip, 0);
    if (dof >= 0) f(dof) -= fod_force(e);
  }
}

void equilibrium_acceleration(const RotorModel& model, const SystemMatrices& sys, double t,
                              const std::vector<FodEvent>& fods, State& state) {
  Vector f(model.dof_map().free_count);
  model.assemble_force_into(t, f);
  add_pulse_forces(model, t, fods, f);
  Eigen::LDLT<Matrix> ldlt(sys.mass);
  state.acceleration = ldlt.solve(f - sys.damping * state.velocity -
                                  sys.stiffness * state.displacement);
  if (!state.acceleration.allFinite())
    throw NumericalError("acceleration recovery failed: singular mass matrix");
}

// Copies the state of every node present in both maps; node identity is its
// position along a stage shaft chain or along a blade.
void copy_shared_nodes(const DofMap& old_map, const DofMap& new_map, const Vector& old_u,
                       const Vector& old_v, Vector& new_u, Vector& new_v) {
  auto copy_node = [&](int old_node, int new_node) {
    for (int c = 0; c < 6; ++c) {
      const int od = old_map.node_dofs[old_node][c];
      const int nd = new_map.node_dofs[new_node][c];
      if (od >= 0 && nd >= 0) {
        new_u(nd) = old_u(od);
        new_v(nd) = old_v(od);
      }
    }
  };
  // Shaft chain nodes occupy the same leading id range in both maps.
  int first_blade_node = int(new_map.node_dofs.size());
  for (const auto& stage : new_map.blade_nodes)
    for (const auto& ids : stage)
      if (ids.size() > 1) first_blade_node = std::min(first_blade_node, ids[1]);
  for (int node = 0; node < first_blade_node; ++node) copy_node(node, node);
  for (size_t s = 0; s < new_map.blade_nodes.size(); ++s)
    for (size_t j = 0; j < new_map.blade_nodes[s].size(); ++j) {
      const auto& old_ids = old_map.blade_nodes[s][j];
      const auto& new_ids = new_map.blade_nodes[s][j];
      const size_t shared = std::min(old_ids.size(), new_ids.size());
      for (size_t p = 1; p < shared; ++p) copy_node(old_ids[p], new_ids[p]);
    }
}

// Hermite/linear interpolation of the six nodal fields at local coordinate xi
// within an element whose end states are u1/u2 in the blade local frame.
Eigen::Matrix<double, 6, 1> interp_local_state(const Eigen::Matrix<double, 6, 1>& n1,
                                               const Eigen::Matrix<double, 6, 1>& n2,
                                               double xi, double le) {
  const double s = xi / le;
  const double lin1 = 1.0 - s, lin2 = s;
  const double h1 = 1.0 - 3.0 * s * s + 2.0 * s * s * s;
  const double h2 = xi * (1.0 - s) * (1.0 - s);
  const double h3 = 3.0 * s * s - 2.0 * s * s * s;
  const double h4 = xi * s * (s - 1.0);
  const double d1 = (-6.0 * s + 6.0 * s * s) / le;
  const double d2 = (1.0 - s) * (1.0 - 3.0 * s);
  const double d3 = -d1;
  const double d4 = s * (3.0 * s - 2.0);

  Eigen::Matrix<double, 6, 1> out;
  out(0) = lin1 * n1(0) + lin2 * n2(0);
  out(3) = lin1 * n1(3) + lin2 * n2(3);
  out(1) = h1 * n1(1) + h2 * n1(5) + h3 * n2(1) + h4 * n2(5);
  out(5) = d1 * n1(1) + d2 * n1(5) + d3 * n2(1) + d4 * n2(5);
  // theta_Y = -w' pairs u_Z with a flipped rotation.
  out(2) = h1 * n1(2) - h2 * n1(4) + h3 * n2(2) - h4 * n2(4);
  out(4) = -(d1 * n1(2) - d2 * n1(4) + d3 * n2(2) - d4 * n2(4));
  return out;
}

void apply_fbo(RotorModel& model, const FboEvent& e, State& state) {
  const DofMap old_map = model.dof_map();
  const std::vector<double> old_lengths = model.blade_element_lengths(e.stage, e.blade);
  const int count = model.scenario().stages[e.stage - 1].blades.count;
  // Structural matrices live at the blades' station angles, so the state
  // transfer interpolates in the station frame as well.
  const Matrix3 rot = rotation_block(blade_angle(0.0, e.blade, count, model.scenario().rpm));
  const Vector old_u = state.displacement;
  const Vector old_v = state.velocity;

  model.truncate_blade(e.stage, e.blade, e.break_location);
  const DofMap& new_map = model.dof_map();

  Vector new_u = Vector::Zero(new_map.free_count);
  Vector new_v = Vector::Zero(new_map.free_count);
  copy_shared_nodes(old_map, new_map, old_u, old_v, new_u, new_v);

  const auto& old_ids = old_map.blade_nodes[e.stage - 1][e.blade - 1];
  const auto& new_ids = new_map.blade_nodes[e.stage - 1][e.blade - 1];
  const size_t tip_pos = new_ids.size() - 1;
  // Span of the old node just before the break.
  double span = 0;
  for (size_t ee = 0; ee + 1 < tip_pos; ++ee) span += old_lengths[ee];
  const double xi = e.break_location - span;
  const double le = old_lengths[tip_pos - 1];
  if (std::abs(xi - le) <= 1e-9 * le) return;  // break fell on an existing node

  auto gather_local = [&](const Vector& g, int node) {
    Eigen::Matrix<double, 6, 1> l;
    for (int c = 0; c < 6; ++c) {
      const int d = old_map.node_dofs[node][c];
      l(c) = d >= 0 ? g(d) : 0.0;
    }
    Eigen::Matrix<double, 6, 1> out;
    out.segment<3>(0) = rot * l.segment<3>(0);
    out.segment<3>(3) = rot * l.segment<3>(3);
    return out;
  };
  auto scatter_global = [&](const Eigen::Matrix<double, 6, 1>& l, Vector& g, int node) {
    Eigen::Matrix<double, 6, 1> gl;
    gl.segment<3>(0) = rot.transpose() * l.segment<3>(0);
    gl.segment<3>(3) = rot.transpose() * l.segment<3>(3);
    for (int c = 0; c < 6; ++c) {
      const int d = new_map.node_dofs[node][c];
      if (d >= 0) g(d) = gl(c);
    }
  };

  const int a = old_ids[tip_pos - 1], b = old_ids[tip_pos];
  scatter_global(interp_local_state(gather_local(old_u, a), gather_local(old_u, b), xi, le),
                 new_u, new_ids[tip_pos]);
  scatter_global(interp_local_state(gather_local(old_v, a), gather_local(old_v, b), xi, le),
                 new_v, new_ids[tip_pos]);

  state.displacement = new_u;
  state.velocity = new_v;
}

}  // namespace

SimulationResult simulate(const Scenario& scenario) {
  RotorModel model(scenario);
  const Scenario& sc = model.scenario();
  const SolverSettings& ss = sc.solver;
  const long n_steps = std::llround(ss.duration / ss.dt);
  if (n_steps < 1) throw ValidationError("duration must cover at least one time step");

  std::vector<std::string> names = sc.outputs.channels;
  if (names.empty())
    for (size_t s = 0; s < sc.stages.size(); ++s)
      for (const char* c : {"uX", "uY", "uZ"})
        names.push_back("stage" + std::to_string(s + 1) + "_" + c);
  std::vector<int> channel_dofs;
  for (const std::string& name : names)
    channel_dofs.push_back(resolve_channel(model.dof_map(), name));

  SimulationResult result;
  SystemMatrices sys = model.assemble(0.0);
  {
    const int want = std::clamp(std::max(sc.damping.mode_j, 8), 1, model.dof_map().free_count);
    const ModalResult modes = modal_analysis(sys, want);
    result.modal_frequencies_hz = modes.frequencies_hz;
    if (sc.damping.zeta > 0) {
      if (sc.damping.mode_j > int(modes.frequencies_hz.size()))
        throw ValidationError("damping.mode_pair exceeds the number of system modes");
      const RayleighCoefficients c = rayleigh_coefficients(
          sc.damping.zeta, 2.0 * pi * modes.frequencies_hz[sc.damping.mode_i - 1],
          2.0 * pi * modes.frequencies_hz[sc.damping.mode_j - 1]);
      model.set_rayleigh(c.a0, c.a1);
      result.rayleigh_a0 = c.a0;
      result.rayleigh_a1 = c.a1;
      sys.damping = c.a0 * sys.mass + c.a1 * sys.stiffness;
    }
  }

  std::vector<PendingFbo> fbos;
  for (const FboEvent& e : sc.fbo) fbos.push_back({e, false});
  std::vector<PendingStick> sticks;
  for (const FodEvent& e : sc.fod)
    if (e.stick && e.mass > 0) sticks.push_back({e, false});

  State state;
  state.displacement = Vector::Zero(model.dof_map().free_count);
  state.velocity = Vector::Zero(model.dof_map().free_count);
  state.time = 0;

  // Applies every event due at state time t; returns whether topology or mass
  // changed (forcing an acceleration recovery and channel re-resolution).
  auto process_events = [&](double t) {
    bool changed = false;
    for (PendingFbo& p : fbos)
      if (!p.applied && p.event.time <= t + 0.5 * ss.dt) {
        apply_fbo(model, p.event, state);
        p.applied = true;
        changed = true;
      }
    for (PendingStick& p : sticks)
      if (!p.applied && p.event.time + p.event.contact_time <= t + 0.5 * ss.dt) {
        model.set_stick_mass(p.event.stage, p.event.blade, p.event.mass);
        p.applied = true;
        changed = true;
      }
    if (changed) {
      channel_dofs.clear();
      for (const std::string& name : names)
        channel_dofs.push_back(resolve_channel(model.dof_map(), name));
    }
    return changed;
  };

  if (process_events(0.0)) sys = model.assemble(0.0);
  equilibrium_acceleration(model, sys, 0.0, sc.fod, state);

  TimeSeries& series = result.series;
  series.dt = ss.dt;
  series.start = 0;
  series.names = names;
  series.values.assign(names.size(), {});
  for (auto& v : series.values) v.reserve(size_t(n_steps) + 1);
  auto record = [&]() {
    for (size_t i = 0; i < channel_dofs.size(); ++i)
      series.values[i].push_back(state.displacement(channel_dofs[i]));
  };
  record();

  // Between damage events the matrices are constant (blades at their station
  // angles); rotation enters through the load vector each step. That keeps one
  // effective-stiffness factorization valid until the next event.
  const double dt = ss.dt, al = ss.alpha, be = ss.beta;
  const double c0 = 1.0 / (be * dt * dt);
  const double c1 = al / (be * dt);
  const double c2 = 1.0 / (be * dt);
  const double c3 = 0.5 / be - 1.0;
  const double c4 = al / be - 1.0;
  const double c5 = 0.5 * dt * (al / be - 2.0);
  Eigen::LDLT<Matrix> khat;
  auto refactor = [&]() {
    khat.compute(sys.stiffness + c0 * sys.mass + c1 * sys.damping);
    if (khat.info() != Eigen::Success)
      throw NumericalError("newmark step: effective stiffness factorization failed");
  };
  refactor();

  Vector f_next(model.dof_map().free_count);
  for (long k = 1; k <= n_steps; ++k) {
    const double t = double(k) * ss.dt;
    model.assemble_force_into(t, f_next);
    add_pulse_forces(model, t, sc.fod, f_next);
    const Vector rhs =
        f_next +
        sys.mass * (c0 * state.displacement + c2 * state.velocity + c3 * state.acceleration) +
        sys.damping *
            (c1 * state.displacement + c4 * state.velocity + c5 * state.acceleration);
    const Vector u_next = khat.solve(rhs);
    if (!u_next.allFinite())
      throw NumericalError("newmark step: effective stiffness solve failed");
    const Vector a_next =
        c0 * (u_next - state.displacement) - c2 * state.velocity - c3 * state.acceleration;
    state.velocity += dt * ((1.0 - al) * state.acceleration + al * a_next);
    state.displacement = u_next;
    state.acceleration = a_next;
    state.time = t;
    if (process_events(t)) {
      sys = model.assemble(0.0);
      refactor();
      equilibrium_acceleration(model, sys, t, sc.fod, state);
      f_next.resize(model.dof_map().free_count);
    }
    record();
  }
  return result;
}

}  // namespace bladedisk
