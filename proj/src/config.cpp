#include "bladedisk/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "bladedisk/errors.hpp"
#include "bladedisk/types.hpp"

namespace bladedisk {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

void check_keys(const json& j, const std::string& ctx,
                std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* key : allowed)
      if (it.key() == key) {
        known = true;
        break;
      }
    if (!known) fail("unknown field in " + ctx + ": " + it.key());
  }
}

const json& object(const json& j, const std::string& ctx, const char* key) {
  if (!j.contains(key)) fail("missing required field: " + ctx + "." + key);
  const json& v = j.at(key);
  if (!v.is_object()) fail(ctx + "." + key + " must be an object");
  return v;
}

double number(const json& j, const std::string& ctx, const char* key) {
  if (!j.contains(key)) fail("missing required field: " + ctx + "." + key);
  const json& v = j.at(key);
  if (!v.is_number()) fail(ctx + "." + key + " must be a number");
  return v.get<double>();
}

double number_or(const json& j, const std::string& ctx, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) fail(ctx + "." + key + " must be a number");
  return v.get<double>();
}

int integer_or(const json& j, const std::string& ctx, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) fail(ctx + "." + key + " must be an integer");
  return v.get<int>();
}

int integer(const json& j, const std::string& ctx, const char* key) {
  if (!j.contains(key)) fail("missing required field: " + ctx + "." + key);
  return integer_or(j, ctx, key, 0);
}

bool flag_or(const json& j, const std::string& ctx, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_boolean()) fail(ctx + "." + key + " must be a boolean");
  return v.get<bool>();
}

ShaftGeometry parse_shaft(const json& j, const std::string& ctx) {
  check_keys(j, ctx, {"outer_diameter", "inner_diameter", "length", "elements"});
  ShaftGeometry g;
  g.d_out = number(j, ctx, "outer_diameter");
  g.d_in = number(j, ctx, "inner_diameter");
  g.length = number(j, ctx, "length");
  g.n_elements = integer_or(j, ctx, "elements", 1);
  return g;
}

DiskGeometry parse_disk(const json& j, const std::string& ctx) {
  check_keys(j, ctx, {"diameter", "thickness", "density"});
  DiskGeometry g;
  g.d_disk = number(j, ctx, "diameter");
  g.thickness = number(j, ctx, "thickness");
  g.density = number(j, ctx, "density");
  return g;
}

BladeGeometry parse_blades(const json& j, const std::string& ctx) {
  check_keys(j, ctx,
             {"count", "width", "root_thickness", "tip_thickness", "length", "elements",
              "downwash_angle"});
  BladeGeometry g;
  g.count = integer(j, ctx, "count");
  g.width = number(j, ctx, "width");
  g.t1 = number(j, ctx, "root_thickness");
  g.t2 = number(j, ctx, "tip_thickness");
  g.length = number(j, ctx, "length");
  g.n_elements = integer_or(j, ctx, "elements", 2);
  g.downwash_angle = number_or(j, ctx, "downwash_angle", 0.0);
  return g;
}

}  // namespace

Scenario scenario_from_json(const json& root) {
  if (!root.is_object()) fail("config root must be an object");
  check_keys(root, "config",
             {"stages", "material", "aero", "rpm", "cracks", "fbo", "fod", "solver",
              "damping", "options", "outputs"});
  Scenario sc;

  if (!root.contains("stages")) fail("missing required field: config.stages");
  const json& stages = root.at("stages");
  if (!stages.is_array() || stages.empty()) fail("config.stages must be a nonempty array");
  for (size_t s = 0; s < stages.size(); ++s) {
    const std::string ctx = "stages[" + std::to_string(s) + "]";
    const json& stage = stages.at(s);
    if (!stage.is_object()) fail(ctx + " must be an object");
    check_keys(stage, ctx, {"shaft", "disk", "blades"});
    StageConfig cfg;
    cfg.shaft = parse_shaft(object(stage, ctx, "shaft"), ctx + ".shaft");
    cfg.disk = parse_disk(object(stage, ctx, "disk"), ctx + ".disk");
    cfg.blades = parse_blades(object(stage, ctx, "blades"), ctx + ".blades");
    sc.stages.push_back(cfg);
  }

  {
    const json& m = object(root, "config", "material");
    check_keys(m, "material", {"young_modulus", "shear_modulus", "poisson", "density"});
    sc.material.young_modulus = number(m, "material", "young_modulus");
    sc.material.poisson = number(m, "material", "poisson");
    sc.material.density = number(m, "material", "density");
    sc.material.shear_modulus =
        number_or(m, "material", "shear_modulus",
                  sc.material.young_modulus / (2.0 * (1.0 + sc.material.poisson)));
  }

  if (root.contains("aero")) {
    const json& a = root.at("aero");
    if (!a.is_object()) fail("config.aero must be an object");
    check_keys(a, "aero",
               {"air_density", "freestream_velocity", "lift_coefficient",
                "drag_coefficient", "chord"});
    sc.aero.air_density = number_or(a, "aero", "air_density", 1.22);
    sc.aero.freestream = number_or(a, "aero", "freestream_velocity", 0.0);
    sc.aero.c_lift = number_or(a, "aero", "lift_coefficient", 0.0);
    sc.aero.c_drag = number_or(a, "aero", "drag_coefficient", 0.0);
    sc.aero.chord = number_or(a, "aero", "chord", 0.0);
  } else {
    sc.aero = AeroEnvironment{};
    sc.aero.c_lift = 0.0;
    sc.aero.c_drag = 0.0;
  }

  {
    const json& r = object(root, "config", "rpm");
    check_keys(r, "rpm", {"rpm", "omega", "ramp_time"});
    const bool has_rpm = r.contains("rpm");
    const bool has_omega = r.contains("omega");
    if (has_rpm == has_omega) fail("rpm requires exactly one of 'rpm' or 'omega'");
    sc.rpm.omega_target = has_omega ? number(r, "rpm", "omega")
                                    : number(r, "rpm", "rpm") * 2.0 * pi / 60.0;
    sc.rpm.ramp_time = number_or(r, "rpm", "ramp_time", 0.2);
  }

  if (root.contains("cracks")) {
    const json& arr = root.at("cracks");
    if (!arr.is_array()) fail("config.cracks must be an array");
    for (size_t i = 0; i < arr.size(); ++i) {
      const std::string ctx = "cracks[" + std::to_string(i) + "]";
      const json& c = arr.at(i);
      if (!c.is_object()) fail(ctx + " must be an object");
      check_keys(c, ctx, {"stage", "blade", "depth", "location", "gamma0", "decay_length"});
      CrackSpec spec;
      spec.stage = integer_or(c, ctx, "stage", 1);
      spec.blade = integer_or(c, ctx, "blade", 1);
      spec.depth = number(c, ctx, "depth");
      spec.location = number(c, ctx, "location");
      spec.gamma0 = number_or(c, ctx, "gamma0", 0.667);
      spec.decay_length = number_or(c, ctx, "decay_length", 0.0);
      sc.cracks.push_back(spec);
    }
  }

  if (root.contains("fbo")) {
    const json& arr = root.at("fbo");
    if (!arr.is_array()) fail("config.fbo must be an array");
    for (size_t i = 0; i < arr.size(); ++i) {
      const std::string ctx = "fbo[" + std::to_string(i) + "]";
      const json& e = arr.at(i);
      if (!e.is_object()) fail(ctx + " must be an object");
      check_keys(e, ctx, {"time", "stage", "blade", "break_location"});
      FboEvent ev;
      ev.time = number(e, ctx, "time");
      ev.stage = integer_or(e, ctx, "stage", 1);
      ev.blade = integer_or(e, ctx, "blade", 1);
      ev.break_location = number(e, ctx, "break_location");
      sc.fbo.push_back(ev);
    }
  }

  if (root.contains("fod")) {
    const json& arr = root.at("fod");
    if (!arr.is_array()) fail("config.fod must be an array");
    for (size_t i = 0; i < arr.size(); ++i) {
      const std::string ctx = "fod[" + std::to_string(i) + "]";
      const json& e = arr.at(i);
      if (!e.is_object()) fail(ctx + " must be an object");
      check_keys(e, ctx,
                 {"time", "stage", "blade", "mass", "velocity", "contact_time", "stick"});
      FodEvent ev;
      ev.time = number(e, ctx, "time");
      ev.stage = integer_or(e, ctx, "stage", 1);
      ev.blade = integer_or(e, ctx, "blade", 1);
      ev.mass = number(e, ctx, "mass");
      ev.velocity = number(e, ctx, "velocity");
      ev.contact_time = number(e, ctx, "contact_time");
      ev.stick = flag_or(e, ctx, "stick", false);
      sc.fod.push_back(ev);
    }
  }

  {
    const json& s = object(root, "config", "solver");
    check_keys(s, "solver", {"duration", "dt", "alpha", "beta"});
    sc.solver.duration = number(s, "solver", "duration");
    sc.solver.dt = number_or(s, "solver", "dt", 1e-4);
    sc.solver.alpha = number_or(s, "solver", "alpha", 0.5);
    sc.solver.beta = number_or(s, "solver", "beta", 0.25);
  }

  if (root.contains("damping")) {
    const json& d = root.at("damping");
    if (!d.is_object()) fail("config.damping must be an object");
    check_keys(d, "damping", {"zeta", "mode_pair"});
    sc.damping.zeta = number_or(d, "damping", "zeta", 0.02);
    if (d.contains("mode_pair")) {
      const json& p = d.at("mode_pair");
      if (!p.is_array() || p.size() != 2 || !p.at(0).is_number_integer() ||
          !p.at(1).is_number_integer())
        fail("damping.mode_pair must be an array of two integers");
      sc.damping.mode_i = p.at(0).get<int>();
      sc.damping.mode_j = p.at(1).get<int>();
    }
  }

  if (root.contains("options")) {
    const json& o = root.at("options");
    if (!o.is_object()) fail("config.options must be an object");
    check_keys(o, "options",
               {"literal_disk_polar", "omit_disk_translational_mass", "shaft_root"});
    sc.options.literal_disk_polar = flag_or(o, "options", "literal_disk_polar", false);
    sc.options.omit_disk_translational_mass =
        flag_or(o, "options", "omit_disk_translational_mass", false);
    if (o.contains("shaft_root")) {
      const json& v = o.at("shaft_root");
      if (!v.is_string()) fail("options.shaft_root must be a string");
      const std::string s = v.get<std::string>();
      if (s == "clamped") sc.options.shaft_root = RootCondition::clamped;
      else if (s == "pinned") sc.options.shaft_root = RootCondition::pinned;
      else fail("options.shaft_root must be 'clamped' or 'pinned'");
    }
  }

  if (root.contains("outputs")) {
    const json& o = root.at("outputs");
    if (!o.is_object()) fail("config.outputs must be an object");
    check_keys(o, "outputs", {"channels"});
    if (o.contains("channels")) {
      const json& arr = o.at("channels");
      if (!arr.is_array()) fail("outputs.channels must be an array of strings");
      for (const json& v : arr) {
        if (!v.is_string()) fail("outputs.channels must be an array of strings");
        sc.outputs.channels.push_back(v.get<std::string>());
      }
    }
  }
  if (sc.outputs.channels.empty())
    for (size_t s = 0; s < sc.stages.size(); ++s)
      for (const char* c : {"uX", "uY", "uZ"})
        sc.outputs.channels.push_back("stage" + std::to_string(s + 1) + "_" + c);

  sc.validate();
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    fail("config is not valid JSON: " + std::string(e.what()));
  }
  return scenario_from_json(j);
}

nlohmann::json scenario_to_json(const Scenario& sc) {
  json root;
  root["stages"] = json::array();
  for (const StageConfig& stage : sc.stages) {
    json s;
    s["shaft"] = {{"outer_diameter", stage.shaft.d_out},
                  {"inner_diameter", stage.shaft.d_in},
                  {"length", stage.shaft.length},
                  {"elements", stage.shaft.n_elements}};
    s["disk"] = {{"diameter", stage.disk.d_disk},
                 {"thickness", stage.disk.thickness},
                 {"density", stage.disk.density}};
    s["blades"] = {{"count", stage.blades.count},
                   {"width", stage.blades.width},
                   {"root_thickness", stage.blades.t1},
                   {"tip_thickness", stage.blades.t2},
                   {"length", stage.blades.length},
                   {"elements", stage.blades.n_elements},
                   {"downwash_angle", stage.blades.downwash_angle}};
    root["stages"].push_back(s);
  }
  root["material"] = {{"young_modulus", sc.material.young_modulus},
                      {"shear_modulus", sc.material.shear_modulus},
                      {"poisson", sc.material.poisson},
                      {"density", sc.material.density}};
  root["aero"] = {{"air_density", sc.aero.air_density},
                  {"freestream_velocity", sc.aero.freestream},
                  {"lift_coefficient", sc.aero.c_lift},
                  {"drag_coefficient", sc.aero.c_drag},
                  {"chord", sc.aero.chord}};
  root["rpm"] = {{"omega", sc.rpm.omega_target}, {"ramp_time", sc.rpm.ramp_time}};
  root["cracks"] = json::array();
  for (const CrackSpec& c : sc.cracks)
    root["cracks"].push_back({{"stage", c.stage},
                              {"blade", c.blade},
                              {"depth", c.depth},
                              {"location", c.location},
                              {"gamma0", c.gamma0},
                              {"decay_length", c.decay_length}});
  root["fbo"] = json::array();
  for (const FboEvent& e : sc.fbo)
    root["fbo"].push_back({{"time", e.time},
                           {"stage", e.stage},
                           {"blade", e.blade},
                           {"break_location", e.break_location}});
  root["fod"] = json::array();
  for (const FodEvent& e : sc.fod)
    root["fod"].push_back({{"time", e.time},
                           {"stage", e.stage},
                           {"blade", e.blade},
                           {"mass", e.mass},
                           {"velocity", e.velocity},
                           {"contact_time", e.contact_time},
                           {"stick", e.stick}});
  root["solver"] = {{"duration", sc.solver.duration},
                    {"dt", sc.solver.dt},
                    {"alpha", sc.solver.alpha},
                    {"beta", sc.solver.beta}};
  root["damping"] = {{"zeta", sc.damping.zeta},
                     {"mode_pair", json::array({sc.damping.mode_i, sc.damping.mode_j})}};
  root["options"] = {
      {"literal_disk_polar", sc.options.literal_disk_polar},
      {"omit_disk_translational_mass", sc.options.omit_disk_translational_mass},
      {"shaft_root", sc.options.shaft_root == RootCondition::pinned ? "pinned" : "clamped"}};
  root["outputs"] = {{"channels", sc.outputs.channels}};
  return root;
}

std::string dump_manifest(const Scenario& scenario) {
  return scenario_to_json(scenario).dump(2) + "\n";
}

void Scenario::validate() const {
  if (stages.empty() || stages.size() > 2)
    throw ValidationError("config must define one or two stages");
  for (size_t s = 0; s < stages.size(); ++s) {
    const std::string ctx = "stages[" + std::to_string(s) + "]";
    const StageConfig& stage = stages[s];
    if (stage.shaft.d_out <= 0) throw ValidationError(ctx + ".shaft.outer_diameter must be positive");
    if (stage.shaft.d_in < 0) throw ValidationError(ctx + ".shaft.inner_diameter must be nonnegative");
    if (stage.shaft.d_in >= stage.shaft.d_out)
      throw ValidationError("shaft inner diameter must be smaller than outer diameter");
    if (stage.shaft.length <= 0) throw ValidationError(ctx + ".shaft.length must be positive");
    if (stage.shaft.n_elements < 1) throw ValidationError(ctx + ".shaft.elements must be at least 1");
    if (stage.disk.thickness <= 0) throw ValidationError(ctx + ".disk.thickness must be positive");
    if (stage.disk.density <= 0) throw ValidationError(ctx + ".disk.density must be positive");
    if (stage.disk.d_disk < stage.shaft.d_out)
      throw ValidationError("disk diameter must be at least the host shaft outer diameter");
    if (stage.blades.count < 1) throw ValidationError(ctx + ".blades.count must be at least 1");
    if (stage.blades.width <= 0) throw ValidationError(ctx + ".blades.width must be positive");
    if (stage.blades.t1 <= 0) throw ValidationError(ctx + ".blades.root_thickness must be positive");
    if (stage.blades.t2 <= 0) throw ValidationError(ctx + ".blades.tip_thickness must be positive");
    if (stage.blades.length <= 0) throw ValidationError(ctx + ".blades.length must be positive");
    if (stage.blades.n_elements < 1) throw ValidationError(ctx + ".blades.elements must be at least 1");
  }
  if (material.young_modulus <= 0) throw ValidationError("material.young_modulus must be positive");
  if (material.shear_modulus <= 0) throw ValidationError("material.shear_modulus must be positive");
  if (material.density <= 0) throw ValidationError("material.density must be positive");
  if (material.poisson <= 0 || material.poisson >= 0.5)
    throw ValidationError("material.poisson must lie in (0, 0.5)");
  if (aero.air_density < 0) throw ValidationError("aero.air_density must be nonnegative");
  if (aero.chord < 0) throw ValidationError("aero.chord must be nonnegative");
  if (rpm.omega_target < 0) throw ValidationError("rpm target speed must be nonnegative");
  if (rpm.ramp_time <= 0) throw ValidationError("rpm.ramp_time must be positive");
  if (solver.duration <= 0) throw ValidationError("duration must be positive");
  if (solver.dt <= 0) throw ValidationError("solver.dt must be positive");
  if (solver.alpha < 0 || solver.alpha > 1)
    throw ValidationError("solver.alpha must lie in [0, 1]");
  if (solver.beta <= 0) throw ValidationError("solver.beta must be positive");
  if (damping.zeta < 0) throw ValidationError("damping.zeta must be nonnegative");
  if (damping.mode_i < 1 || damping.mode_j <= damping.mode_i)
    throw ValidationError("damping.mode_pair must satisfy 1 <= i < j");

  std::set<std::pair<int, int>> crack_targets;
  for (size_t i = 0; i < cracks.size(); ++i) {
    const std::string ctx = "cracks[" + std::to_string(i) + "]";
    const CrackSpec& c = cracks[i];
    if (c.stage < 1 || c.stage > int(stages.size()))
      throw ValidationError(ctx + ".stage out of range");
    const BladeGeometry& blades = stages[c.stage - 1].blades;
    if (c.blade < 1 || c.blade > blades.count) throw ValidationError(ctx + ".blade out of range");
    if (c.depth <= 0) throw ValidationError(ctx + ".depth must be positive");
    if (c.depth >= blades.width)
      throw ValidationError("crack severs the section; model as FBO instead");
    if (c.location < 0 || c.location > blades.length)
      throw ValidationError(ctx + ".location must lie within the blade span");
    if (c.gamma0 <= 0) throw ValidationError(ctx + ".gamma0 must be positive");
    if (c.decay_length < 0) throw ValidationError(ctx + ".decay_length must be nonnegative");
    if (!crack_targets.insert({c.stage, c.blade}).second)
      throw ValidationError("multiple cracks on one blade are not supported");
  }

  std::set<std::pair<int, int>> fbo_targets;
  for (size_t i = 0; i < fbo.size(); ++i) {
    const std::string ctx = "fbo[" + std::to_string(i) + "]";
    const FboEvent& e = fbo[i];
    if (e.stage < 1 || e.stage > int(stages.size()))
      throw ValidationError(ctx + ".stage out of range");
    const BladeGeometry& blades = stages[e.stage - 1].blades;
    if (e.blade < 1 || e.blade > blades.count) throw ValidationError(ctx + ".blade out of range");
    if (e.break_location <= 0 || e.break_location >= blades.length)
      throw ValidationError(ctx + ".break_location must lie strictly inside the blade span");
    if (e.time < 0 || e.time > solver.duration)
      throw ValidationError(ctx + ".time must lie within [0, duration]");
    if (!fbo_targets.insert({e.stage, e.blade}).second)
      throw ValidationError("at most one FBO per blade");
  }

  for (size_t i = 0; i < fod.size(); ++i) {
    const std::string ctx = "fod[" + std::to_string(i) + "]";
    const FodEvent& e = fod[i];
    if (e.stage < 1 || e.stage > int(stages.size()))
      throw ValidationError(ctx + ".stage out of range");
    if (e.blade < 1 || e.blade > stages[e.stage - 1].blades.count)
      throw ValidationError(ctx + ".blade out of range");
    if (e.mass < 0) throw ValidationError(ctx + ".mass must be nonnegative");
    if (e.velocity < 0) throw ValidationError(ctx + ".velocity must be nonnegative");
    if (e.contact_time <= 0) throw ValidationError(ctx + ".contact_time must be positive");
    if (e.time < 0 || e.time > solver.duration)
      throw ValidationError(ctx + ".time must lie within [0, duration]");
  }
}

}  // namespace bladedisk
