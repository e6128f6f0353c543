#include "bladedisk/loads.hpp"

#include <cmath>

namespace bladedisk {

namespace {

constexpr int kLoadQuadratureOrder = 8;  // exact for the quintic integrands

struct LineLoads {
  double axial, transverse_y, transverse_z;
};

}  // namespace

BladeForceTotals total_blade_forces(const BladeGeometry& blade, const AeroEnvironment& aero,
                                    const MaterialProperties& material, double disk_d,
                                    double omega) {
  const double r1 = 0.5 * disk_d;
  const double r2 = r1 + blade.length;
  const double area = blade_section(blade).area;
  const double chord = aero.chord > 0 ? aero.chord : blade.width;

  BladeForceTotals f;
  f.centrifugal = material.density * area * omega * omega * 0.5 * (r2 * r2 - r1 * r1);
  const double dyn = 0.5 * aero.air_density * chord;
  const double v2_int = omega * omega * (r2 * r2 * r2 - r1 * r1 * r1) / 3.0 +
                        aero.freestream * aero.freestream * (r2 - r1);
  f.lift = dyn * aero.c_lift * v2_int;
  f.drag = dyn * aero.c_drag * v2_int;
  return f;
}

LocalForces resolve_downwash(const BladeForceTotals& totals, double downwash_angle) {
  const double c = std::cos(downwash_angle);
  const double s = std::sin(downwash_angle);
  LocalForces f;
  f.x = totals.centrifugal;
  f.y = -totals.drag * c - totals.lift * s;
  f.z = totals.lift * c - totals.drag * s;
  return f;
}

ElementLoadVector consistent_nodal_loads(const ElementContext& ctx, const AeroEnvironment& aero,
                                         double omega, double disk_d) {
  if (!ctx.blade) throw ValidationError("consistent_nodal_loads requires blade geometry");
  const BladeGeometry& blade = *ctx.blade;
  const double l = ctx.element_length;
  const double x0 = ctx.span_start();
  const double rho_a_line = ctx.material.density * blade_section(blade).area;
  const double chord = aero.chord > 0 ? aero.chord : blade.width;
  const double ce = std::cos(blade.downwash_angle);
  const double se = std::sin(blade.downwash_angle);

  auto line = [&](double x) {
    const double r = 0.5 * disk_d + x0 + x;
    const double v2 = r * omega * r * omega + aero.freestream * aero.freestream;
    const double dyn = 0.5 * aero.air_density * v2 * chord;
    const double q_l = dyn * aero.c_lift;
    const double q_d = dyn * aero.c_drag;
    return LineLoads{rho_a_line * omega * omega * r, -q_d * ce - q_l * se, q_l * ce - q_d * se};
  };

  auto shape = [&](double x, int which) {
    const double s = x / l;
    switch (which) {
      case 0: return 1.0 - s;                          // linear, node 1
      case 1: return s;                                // linear, node 2
      case 2: return 1.0 - 3 * s * s + 2 * s * s * s;  // Hermite translation, node 1
      case 3: return 3 * s * s - 2 * s * s * s;        // Hermite translation, node 2
      case 4: return x * (1.0 - s) * (1.0 - s);        // Hermite rotation, node 1
      default: return x * s * (s - 1.0);               // Hermite rotation, node 2
    }
  };

  ElementLoadVector out;
  out.element_index = ctx.element_index;
  auto integral = [&](auto pick, int which) {
    return gauss_integrate([&](double x) { return pick(line(x)) * shape(x, which); }, 0, l,
                           kLoadQuadratureOrder);
  };
  auto ax = [](const LineLoads& q) { return q.axial; };
  auto qy = [](const LineLoads& q) { return q.transverse_y; };
  auto qz = [](const LineLoads& q) { return q.transverse_z; };

  out.values[0] = integral(ax, 0);
  out.values[6] = integral(ax, 1);
  out.values[1] = integral(qy, 2);
  out.values[7] = integral(qy, 3);
  out.values[5] = integral(qy, 4);
  out.values[11] = integral(qy, 5);
  out.values[2] = integral(qz, 2);
  out.values[8] = integral(qz, 3);
  // th_Y is the negated slope, so the Z-plane moment loads flip sign.
  out.values[4] = -integral(qz, 4);
  out.values[10] = -integral(qz, 5);
  return out;
}

}  // namespace bladedisk
