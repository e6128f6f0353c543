#include "bladedisk/elements.hpp"

#include <cmath>
#include <map>
#include <vector>

namespace bladedisk {

namespace {

// Gauss-Legendre nodes and weights on [-1, 1] via Newton iteration on P_n.
struct GaussRule {
  std::vector<double> nodes, weights;
};

const GaussRule& gauss_rule(int order) {
  static std::map<int, GaussRule> cache;
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return cache.emplace(order, std::move(rule)).first->second;
}

constexpr int kCrackQuadratureOrder = 16;

// DOF index groups within the 12x12 element.
constexpr int kAxial[2] = {0, 6};
constexpr int kTorsion[2] = {3, 9};
constexpr int kPlaneY[4] = {1, 5, 7, 11};   // u_Y, th_Z
constexpr int kPlaneZ[4] = {2, 4, 8, 10};   // u_Z, th_Y (slope-negated plane)

void add_rod(Matrix12& m, const int idx[2], double stiff, double inertia) {
  m(idx[0], idx[0]) += inertia / 3.0 + stiff;
  m(idx[1], idx[1]) += inertia / 3.0 + stiff;
  m(idx[0], idx[1]) += inertia / 6.0 - stiff;
  m(idx[1], idx[0]) += inertia / 6.0 - stiff;
}

// sign = +1 when the rotational DOF is the slope (u_Y/th_Z plane), -1 when it
// is its negative (u_Z/th_Y plane).
void add_bending(Matrix12& mass, Matrix12& stiff, const int idx[4], double sign, double rho_a,
                 double ei, double length) {
  const double l = length, l2 = l * l;
  const double mc = rho_a * l / 420.0;
  const double kc = ei / (l * l2);
  const double m4[4][4] = {{156, 22 * l, 54, -13 * l},
                           {22 * l, 4 * l2, 13 * l, -3 * l2},
                           {54, 13 * l, 156, -22 * l},
                           {-13 * l, -3 * l2, -22 * l, 4 * l2}};
  const double k4[4][4] = {{12, 6 * l, -12, 6 * l},
                           {6 * l, 4 * l2, -6 * l, 2 * l2},
                           {-12, -6 * l, 12, -6 * l},
                           {6 * l, 2 * l2, -6 * l, 4 * l2}};
  const double flip[4] = {1, sign, 1, sign};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      mass(idx[i], idx[j]) += flip[i] * flip[j] * mc * m4[i][j];
      stiff(idx[i], idx[j]) += flip[i] * flip[j] * kc * k4[i][j];
    }
}

// Hermite second derivatives on [0, l], slope-DOF form.
void hermite_dd(double x, double l, double b[4]) {
  b[0] = (-6.0 + 12.0 * x / l) / (l * l);
  b[1] = (-4.0 + 6.0 * x / l) / l;
  b[2] = (6.0 - 12.0 * x / l) / (l * l);
  b[3] = (-2.0 + 6.0 * x / l) / l;
}

// Integrate f over [0, l], splitting at the crack kink when it falls inside.
double integrate_span(const std::function<double(double)>& f, double l, double kink) {
  if (kink > 0 && kink < l)
    return gauss_integrate(f, 0, kink, kCrackQuadratureOrder) +
           gauss_integrate(f, kink, l, kCrackQuadratureOrder);
  return gauss_integrate(f, 0, l, kCrackQuadratureOrder);
}

void add_bending_profile(Matrix12& stiff, const int idx[4], double sign,
                         const std::function<double(double)>& ei, double l, double kink) {
  const double flip[4] = {1, sign, 1, sign};
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      double kij = integrate_span(
          [&](double x) {
            double b[4];
            hermite_dd(x, l, b);
            return ei(x) * b[i] * b[j];
          },
          l, kink);
      kij *= flip[i] * flip[j];
      stiff(idx[i], idx[j]) += kij;
      if (i != j) stiff(idx[j], idx[i]) += kij;
    }
}

}  // namespace

double gauss_integrate(const std::function<double(double)>& f, double a, double b, int order) {
  const GaussRule& rule = gauss_rule(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0;
  for (int i = 0; i < order; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

ElementMatrices beam_matrices(double length, double rho_a, double rho_j, double ea, double ei_y,
                              double ei_z, double gj) {
  ElementMatrices em;
  add_rod(em.mass, kAxial, 0, rho_a * length);
  add_rod(em.mass, kTorsion, 0, rho_j * length);
  add_rod(em.stiffness, kAxial, ea / length, 0);
  add_rod(em.stiffness, kTorsion, gj / length, 0);
  add_bending(em.mass, em.stiffness, kPlaneY, +1, rho_a, ei_y, length);
  add_bending(em.mass, em.stiffness, kPlaneZ, -1, rho_a, ei_z, length);
  return em;
}

ElementMatrices shaft_element(const ElementContext& ctx,
                              std::optional<std::pair<double, double>> disk) {
  const SectionProperties& s = ctx.section;
  const MaterialProperties& m = ctx.material;
  ElementMatrices em = beam_matrices(ctx.element_length, m.density * s.area,
                                     m.density * s.j_x, m.young_modulus * s.area,
                                     m.young_modulus * s.i_y, m.young_modulus * s.i_z,
                                     m.shear_modulus * s.j_x);
  if (disk) {
    em.mass(6, 6) += disk->first;
    em.mass(7, 7) += disk->first;
    em.mass(8, 8) += disk->first;
    em.mass(9, 9) += disk->second;
  }
  return em;
}

ElementMatrices blade_element(const ElementContext& ctx) {
  if (!ctx.blade) throw ValidationError("blade_element requires blade geometry");
  const BladeGeometry& geom = *ctx.blade;
  const MaterialProperties& m = ctx.material;
  const SectionProperties s = blade_section(geom);
  const double l = ctx.element_length;

  // Consistent mass is unaffected by the crack.
  ElementMatrices em = beam_matrices(l, m.density * s.area, m.density * s.j_x,
                                     m.young_modulus * s.area, m.young_modulus * s.i_y,
                                     m.young_modulus * s.i_z, m.shear_modulus * s.j_x);
  if (!ctx.crack || ctx.crack->depth <= 0) return em;

  const RigidityProfile profile(geom, m, ctx.crack);
  const double x0 = ctx.span_start();
  const double kink = profile.crack_location() - x0;

  Matrix12 k = Matrix12::Zero();
  const double ea_bar =
      integrate_span([&](double x) { return profile.ea(x0 + x); }, l, kink) / (l * l);
  const double gj_bar =
      integrate_span([&](double x) { return profile.gj(x0 + x); }, l, kink) / (l * l);
  add_rod(k, kAxial, ea_bar, 0);
  add_rod(k, kTorsion, gj_bar, 0);
  add_bending_profile(k, kPlaneY, +1, [&](double x) { return profile.ei_y(x0 + x); }, l, kink);
  add_bending_profile(k, kPlaneZ, -1, [&](double x) { return profile.ei_z(x0 + x); }, l, kink);
  em.stiffness = k;
  return em;
}

}  // namespace bladedisk
