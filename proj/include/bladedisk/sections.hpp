#pragma once

#include <optional>
#include <utility>

#include "bladedisk/errors.hpp"

namespace bladedisk {

struct ShaftGeometry {
  double d_out = 0;  // outer diameter [m]
  double d_in = 0;   // inner diameter [m]
  double length = 0;
  int n_elements = 1;
};

struct DiskGeometry {
  double d_disk = 0;
  double thickness = 0;
  double density = 0;
};

struct BladeGeometry {
  double width = 0;  // chordwise width [m]
  double t1 = 0;     // thick parallel side of the trapezoid [m]
  double t2 = 0;     // thin parallel side [m]
  double length = 0;
  int n_elements = 2;
  int count = 1;           // blades per stage
  double downwash_angle = 0;  // [rad]
};

struct MaterialProperties {
  double young_modulus = 0;
  double shear_modulus = 0;
  double poisson = 0;
  double density = 0;
};

struct CrackSpec {
  int stage = 1;  // 1-based
  int blade = 1;  // 1-based
  double depth = 0;     // d_c [m]
  double location = 0;  // l_c from blade root [m]
  double gamma0 = 0.667;
  double decay_length = 0;  // exponent length scale; 0 means blade width
};

struct SectionProperties {
  double area = 0;
  double i_y = 0;  // bending inertia paired with local Y' displacement
  double i_z = 0;  // bending inertia paired with local Z' displacement
  double j_x = 0;  // torsion constant
};

SectionProperties shaft_section(const ShaftGeometry& geom);

// Lumped (mass, polar mass moment of inertia) of an annular disk around the
// host shaft. literal_polar drops the rho*t factor, reproducing a polar area
// moment instead of a mass moment.
std::pair<double, double> disk_inertia(const DiskGeometry& geom, const ShaftGeometry& host,
                                       bool literal_polar = false);

SectionProperties blade_section(const BladeGeometry& geom);

// Section properties of the cracked plane: width reduced by depth, linear in
// area and i_z, cubic in i_y, j as the sum of the two cracked inertias.
SectionProperties cracked_blade_section(const BladeGeometry& geom, double depth);

// Christides-Barr profile factor s(x) = 1/(1 + C exp(-2 gamma0 |x - l_c| / w))
// with C = (baseline - cracked)/cracked. Multiplies the baseline rigidity.
double crack_scale(double baseline, double cracked, double gamma0, double l_c, double w,
                   double x);

// Spanwise rigidity profile of one blade, crack-aware. Positions are absolute
// span coordinates from the blade root.
class RigidityProfile {
 public:
  RigidityProfile(const BladeGeometry& geom, const MaterialProperties& mat,
                  const std::optional<CrackSpec>& crack);

  double ea(double x) const;
  double ei_y(double x) const;
  double ei_z(double x) const;
  double gj(double x) const;

  bool cracked() const { return cracked_; }
  double crack_location() const { return l_c_; }

 private:
  double scale(double baseline, double cracked, double x) const;

  double ea0_, eiy0_, eiz0_, gj0_;
  double eac_, eiyc_, eizc_, gjc_;
  bool cracked_ = false;
  double l_c_ = 0, gamma0_ = 0, w_ = 0;
};

}  // namespace bladedisk
