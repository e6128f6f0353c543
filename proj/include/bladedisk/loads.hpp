#pragma once

#include "bladedisk/elements.hpp"
#include "bladedisk/scenario.hpp"

namespace bladedisk {

struct BladeForceTotals {
  double centrifugal = 0;  // F_C, along local X'
  double lift = 0;         // F_L
  double drag = 0;         // F_D
};

struct LocalForces {
  double x = 0, y = 0, z = 0;
};

struct ElementLoadVector {
  Vector12 values = Vector12::Zero();
  int element_index = 1;
};

BladeForceTotals total_blade_forces(const BladeGeometry& blade, const AeroEnvironment& aero,
                                    const MaterialProperties& material, double disk_d,
                                    double omega);

// Resolves (F_C, F_L, F_D) into the blade frame through the downwash angle.
LocalForces resolve_downwash(const BladeForceTotals& totals, double downwash_angle);

// Consistent nodal loads of one blade element in the local frame: linear shape
// functions against the centrifugal line load, Hermite translational and
// rotational shape functions against the aerodynamic line loads.
ElementLoadVector consistent_nodal_loads(const ElementContext& ctx, const AeroEnvironment& aero,
                                         double omega, double disk_d);

}  // namespace bladedisk
