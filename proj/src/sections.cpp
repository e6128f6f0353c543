#include "bladedisk/sections.hpp"

#include <cmath>

#include "bladedisk/types.hpp"

namespace bladedisk {

SectionProperties shaft_section(const ShaftGeometry& geom) {
  if (geom.d_in >= geom.d_out)
    throw ValidationError("shaft inner diameter must be smaller than outer diameter");
  if (geom.d_in < 0 || geom.d_out <= 0) throw ValidationError("shaft diameters must be positive");
  const double do2 = geom.d_out * geom.d_out;
  const double di2 = geom.d_in * geom.d_in;
  SectionProperties s;
  s.area = pi * (do2 - di2) / 4.0;
  s.i_y = pi * (do2 * do2 - di2 * di2) / 64.0;
  s.i_z = s.i_y;
  s.j_x = 2.0 * s.i_y;
  return s;
}

std::pair<double, double> disk_inertia(const DiskGeometry& geom, const ShaftGeometry& host,
                                       bool literal_polar) {
  if (geom.d_disk < host.d_out)
    throw ValidationError("disk diameter must be at least the host shaft outer diameter");
  const double dd2 = geom.d_disk * geom.d_disk;
  const double do2 = host.d_out * host.d_out;
  const double mass = geom.density * geom.thickness * pi * (dd2 - do2) / 4.0;
  double polar = pi * (dd2 * dd2 - do2 * do2) / 32.0;
  if (!literal_polar) polar *= geom.density * geom.thickness;
  return {mass, polar};
}

SectionProperties blade_section(const BladeGeometry& geom) {
  const double t1 = geom.t1, t2 = geom.t2, w = geom.width;
  SectionProperties s;
  s.area = 0.5 * (t1 + t2) * w;
  s.i_y = (t1 * t1 + 4.0 * t1 * t2 + t2 * t2) * w * w * w / (36.0 * (t1 + t2));
  s.i_z = w * (t1 + t2) * (t1 * t1 + t2 * t2) / 48.0;
  s.j_x = s.i_y + s.i_z;
  return s;
}

SectionProperties cracked_blade_section(const BladeGeometry& geom, double depth) {
  if (depth >= geom.width) throw ValidationError("crack depth must be smaller than blade width");
  // Only the width shrinks: area and i_z scale linearly, i_y cubically, and
  // j is rebuilt as the sum of the two cracked inertias.
  BladeGeometry reduced = geom;
  reduced.width = geom.width - depth;
  SectionProperties cut = blade_section(reduced);
  cut.j_x = cut.i_y + cut.i_z;
  return cut;
}

double crack_scale(double baseline, double cracked, double gamma0, double l_c, double w,
                   double x) {
  if (cracked <= 0) throw ValidationError("crack severs the section; model as FBO instead");
  if (w <= 0) throw ValidationError("crack decay length must be positive");
  const double c = (baseline - cracked) / cracked;
  return 1.0 / (1.0 + c * std::exp(-2.0 * gamma0 * std::abs(x - l_c) / w));
}

RigidityProfile::RigidityProfile(const BladeGeometry& geom, const MaterialProperties& mat,
                                 const std::optional<CrackSpec>& crack) {
  const SectionProperties s = blade_section(geom);
  ea0_ = mat.young_modulus * s.area;
  eiy0_ = mat.young_modulus * s.i_y;
  eiz0_ = mat.young_modulus * s.i_z;
  gj0_ = mat.shear_modulus * s.j_x;
  if (crack && crack->depth > 0) {
    const SectionProperties c = cracked_blade_section(geom, crack->depth);
    eac_ = mat.young_modulus * c.area;
    eiyc_ = mat.young_modulus * c.i_y;
    eizc_ = mat.young_modulus * c.i_z;
    gjc_ = mat.shear_modulus * c.j_x;
    cracked_ = true;
    l_c_ = crack->location;
    gamma0_ = crack->gamma0;
    w_ = crack->decay_length > 0 ? crack->decay_length : geom.width;
  } else {
    eac_ = ea0_;
    eiyc_ = eiy0_;
    eizc_ = eiz0_;
    gjc_ = gj0_;
  }
}

double RigidityProfile::scale(double baseline, double cracked, double x) const {
  if (!cracked_) return baseline;
  return baseline * crack_scale(baseline, cracked, gamma0_, l_c_, w_, x);
}

double RigidityProfile::ea(double x) const { return scale(ea0_, eac_, x); }
double RigidityProfile::ei_y(double x) const { return scale(eiy0_, eiyc_, x); }
double RigidityProfile::ei_z(double x) const { return scale(eiz0_, eizc_, x); }
double RigidityProfile::gj(double x) const { return scale(gj0_, gjc_, x); }

}  // namespace bladedisk
