#pragma once

#include <string>
#include <vector>

#include "bladedisk/assembly.hpp"
#include "bladedisk/signals.hpp"

namespace bladedisk {

struct State {
  Vector displacement, velocity, acceleration;
  double time = 0;
};

State newmark_step(const SystemMatrices& system, const State& state, const Vector& f_next,
                   const SolverSettings& settings);

struct ModalResult {
  std::vector<double> frequencies_hz;  // ascending
  Matrix mode_shapes;                  // mass-normalized columns
};

ModalResult modal_analysis(const Matrix& mass, const Matrix& stiffness, int count);

inline ModalResult modal_analysis(const SystemMatrices& system, int count) {
  return modal_analysis(system.mass, system.stiffness, count);
}

double fod_force(const FodEvent& event);

// Channel names: stage<k>_{uX,uY,uZ,thX,thY,thZ} at the stage disk node, or
// stage<k>_blade<j>_{uX,uY,uZ,thX,thY,thZ} at the blade tip node.
int resolve_channel(const DofMap& map, const std::string& name);

struct SimulationResult {
  TimeSeries series;
  std::vector<double> modal_frequencies_hz;  // assembled system at t = 0
  double rayleigh_a0 = 0;
  double rayleigh_a1 = 0;
};

SimulationResult simulate(const Scenario& scenario);

}  // namespace bladedisk
