#pragma once

#include <array>
#include <functional>
#include <optional>
#include <utility>

#include "bladedisk/sections.hpp"
#include "bladedisk/types.hpp"

namespace bladedisk {

// Local DOF order: node 1 then node 2, each (u_X, u_Y, u_Z, th_X, th_Y, th_Z).
// th_Y carries the -6EI/L^2 coupling pattern of the Z-bending plane.
struct ElementMatrices {
  Matrix12 mass = Matrix12::Zero();
  Matrix12 stiffness = Matrix12::Zero();

  static constexpr std::array<const char*, 12> dof_order = {
      "uX1", "uY1", "uZ1", "thX1", "thY1", "thZ1",
      "uX2", "uY2", "uZ2", "thX2", "thY2", "thZ2"};
};

struct ElementContext {
  int element_index = 1;  // 1-based along the member
  double element_length = 0;
  double member_length = 0;
  SectionProperties section;
  MaterialProperties material;
  std::optional<BladeGeometry> blade;  // required by blade_element
  std::optional<CrackSpec> crack;
  // Absolute span position of the element start; overridden for the partial
  // element left behind by an FBO truncation.
  std::optional<double> span_start_override;

  double span_start() const {
    return span_start_override ? *span_start_override
                               : (element_index - 1) * element_length;
  }
};

ElementMatrices shaft_element(const ElementContext& ctx,
                              std::optional<std::pair<double, double>> disk = std::nullopt);

ElementMatrices blade_element(const ElementContext& ctx);

double gauss_integrate(const std::function<double(double)>& f, double a, double b, int order);

// Closed-form consistent beam matrices; shared by both element kinds.
ElementMatrices beam_matrices(double length, double rho_a, double rho_j, double ea, double ei_y,
                              double ei_z, double gj);

}  // namespace bladedisk
