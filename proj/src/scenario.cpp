#include "kgflow/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "kgflow/errors.hpp"

namespace kgflow {

std::string stage_name(Stage s) {
  switch (s) {
    case Stage::kg: return "kg";
    case Stage::schrodinger: return "schrodinger";
    case Stage::madelung: return "madelung";
    case Stage::hidden_phase: return "hidden_phase";
    case Stage::trajectories: return "trajectories";
    case Stage::residual_suite: return "residual-suite";
    case Stage::low_speed_compare: return "low-speed-compare";
    case Stage::kinematics_suite: return "kinematics-suite";
  }
  return "?";
}

bool Scenario::needs_grid() const {
  for (Stage s : pipeline)
    if (s != Stage::kinematics_suite) return true;
  return false;
}

namespace {

struct KeyValue {
  std::string value;
  int line = 0;
  mutable bool used = false;
};

using Sections = std::map<std::string, std::map<std::string, KeyValue>>;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

Sections tokenize(const std::string& text) {
  Sections out;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ScenarioError("line " + std::to_string(lineno) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ScenarioError("line " + std::to_string(lineno) + ": empty section name");
      out.emplace(section, Sections::mapped_type{});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ScenarioError("line " + std::to_string(lineno) + ": expected key = value, got '" +
                          line + "'");
    if (section.empty())
      throw ScenarioError("line " + std::to_string(lineno) + ": key outside any [section]");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ScenarioError("line " + std::to_string(lineno) + ": empty key");
    if (!out[section].emplace(key, KeyValue{value, lineno}).second)
      throw ScenarioError("line " + std::to_string(lineno) + ": duplicate key '" + key +
                          "' in [" + section + "]");
  }
  return out;
}

class Reader {
public:
  explicit Reader(const Sections& s) : sections_(s) {}

  bool has(const std::string& section) const { return sections_.count(section) != 0; }

  const KeyValue* find(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    k->second.used = true;
    return &k->second;
  }

  std::string require(const std::string& section, const std::string& key) const {
    const KeyValue* kv = find(section, key);
    if (!kv)
      throw ScenarioError("missing required field '" + key + "' in section [" + section + "]");
    return kv->value;
  }

  double require_num(const std::string& section, const std::string& key) const {
    return to_num(section, key, require(section, key));
  }

  double num_or(const std::string& section, const std::string& key, double fallback) const {
    const KeyValue* kv = find(section, key);
    return kv ? to_num(section, key, kv->value) : fallback;
  }

  std::string str_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const {
    const KeyValue* kv = find(section, key);
    return kv ? kv->value : fallback;
  }

  void check_all_used() const {
    for (const auto& [sec, keys] : sections_)
      for (const auto& [key, kv] : keys)
        if (!kv.used)
          throw ScenarioError("line " + std::to_string(kv.line) + ": unknown field '" + key +
                              "' in section [" + sec + "]");
  }

private:
  static double to_num(const std::string& section, const std::string& key,
                       const std::string& value) {
    try {
      size_t pos = 0;
      const double v = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw ScenarioError("field '" + key + "' in [" + section + "]: not a number: '" + value +
                          "'");
    }
  }

  const Sections& sections_;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Stage parse_stage(const std::string& s) {
  for (Stage st : {Stage::kg, Stage::schrodinger, Stage::madelung, Stage::hidden_phase,
                   Stage::trajectories, Stage::residual_suite, Stage::low_speed_compare,
                   Stage::kinematics_suite})
    if (s == stage_name(st)) return st;
  throw ScenarioError("unknown pipeline stage '" + s + "'");
}

void validate_pipeline(const std::vector<Stage>& stages) {
  if (stages.empty()) throw ScenarioError("pipeline: stages list is empty");
  bool have_kg = false, have_schrodinger = false, have_madelung = false, have_hidden = false;
  for (Stage s : stages) {
    switch (s) {
      case Stage::kg: have_kg = true; break;
      case Stage::schrodinger: have_schrodinger = true; break;
      case Stage::madelung:
        if (!have_kg && !have_schrodinger)
          throw ScenarioError("pipeline: madelung needs kg or schrodinger earlier");
        have_madelung = true;
        break;
      case Stage::hidden_phase:
        if (!have_kg || !have_madelung)
          throw ScenarioError("pipeline: hidden_phase needs kg and madelung earlier");
        have_hidden = true;
        break;
      case Stage::trajectories:
        if (!have_hidden && !(have_schrodinger && have_madelung))
          throw ScenarioError(
              "pipeline: trajectories needs hidden_phase, or schrodinger with madelung, earlier");
        break;
      case Stage::residual_suite:
        if (!have_madelung)
          throw ScenarioError("pipeline: residual-suite needs madelung earlier");
        break;
      case Stage::low_speed_compare:
      case Stage::kinematics_suite:
        break;
    }
  }
}

} // namespace

Scenario parse_scenario(const std::string& text) {
  const Sections sections = tokenize(text);
  Reader r(sections);
  Scenario sc;

  sc.name = r.require("scenario", "name");
  for (char ch : sc.name)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-'))
      throw ScenarioError("scenario name must be alphanumeric/underscore/dash, got '" + sc.name +
                          "'");

  sc.physics.hbar = r.num_or("physics", "hbar", 1.0);
  sc.physics.c = r.num_or("physics", "c", 1.0);
  sc.physics.m = r.num_or("physics", "mass", 1.0);
  sc.physics.q = r.num_or("physics", "charge", 1.0);
  try {
    sc.physics.validate();
  } catch (const std::exception& e) {
    throw ScenarioError(std::string("physics: ") + e.what());
  }

  for (const std::string& item : split_list(r.require("pipeline", "stages")))
    sc.pipeline.push_back(parse_stage(item));
  validate_pipeline(sc.pipeline);

  if (sc.needs_grid()) {
    if (!r.has("grid")) throw ScenarioError("missing section [grid]");
    sc.grid.nx = static_cast<int>(r.require_num("grid", "nx"));
    sc.grid.nt = static_cast<int>(r.require_num("grid", "nt"));
    sc.grid.dx = r.require_num("grid", "dx");
    sc.grid.dt = r.require_num("grid", "dt");
    sc.grid.x_min = r.num_or("grid", "x_min", 0.0);
    sc.grid.t0 = r.num_or("grid", "t0", 0.0);
    try {
      sc.grid.validate();
    } catch (const std::exception& e) {
      throw ScenarioError(std::string("grid: ") + e.what());
    }

    const std::string itype = r.str_or("initial", "type", "plane_wave");
    if (itype == "plane_wave") {
      sc.initial.type = Scenario::Initial::Type::plane_wave;
      sc.initial.k = r.require_num("initial", "k");
    } else if (itype == "gaussian") {
      sc.initial.type = Scenario::Initial::Type::gaussian;
      sc.initial.k = r.num_or("initial", "k", 0.0);
      sc.initial.x0 = r.num_or("initial", "x0", 0.0);
      sc.initial.sigma = r.require_num("initial", "sigma");
      if (sc.initial.sigma <= 0.0) throw ScenarioError("initial: sigma must be > 0");
    } else if (itype == "superposition") {
      sc.initial.type = Scenario::Initial::Type::superposition;
      for (const std::string& item : split_list(r.require("initial", "modes"))) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
          throw ScenarioError("initial: modes entries must be k:amplitude, got '" + item + "'");
        try {
          sc.initial.modes.emplace_back(std::stod(item.substr(0, colon)),
                                        std::stod(item.substr(colon + 1)));
        } catch (const std::exception&) {
          throw ScenarioError("initial: bad mode entry '" + item + "'");
        }
      }
      if (sc.initial.modes.empty()) throw ScenarioError("initial: modes list is empty");
    } else if (itype == "file") {
      sc.initial.type = Scenario::Initial::Type::file;
      sc.initial.path = r.require("initial", "path");
    } else {
      throw ScenarioError("initial: unknown type '" + itype + "'");
    }

    const std::string ptype = r.str_or("potential", "type", "zero");
    if (ptype == "zero") {
      sc.potential.type = Scenario::PotentialSpec::Type::zero;
    } else if (ptype == "uniform_e") {
      sc.potential.type = Scenario::PotentialSpec::Type::uniform_e;
      sc.potential.E0 = r.require_num("potential", "E0");
    } else if (ptype == "table") {
      sc.potential.type = Scenario::PotentialSpec::Type::table;
      sc.potential.path = r.require("potential", "path");
    } else {
      throw ScenarioError("potential: unknown type '" + ptype + "'");
    }
  }

  for (const std::string& f : split_list(r.str_or("outputs", "fields", "")))
    sc.outputs.fields.push_back(f);
  const std::string traj = r.str_or("outputs", "trajectories", "false");
  if (traj == "true") sc.outputs.trajectories = true;
  else if (traj == "false") sc.outputs.trajectories = false;
  else throw ScenarioError("outputs: trajectories must be true or false");

  sc.rng_seed = static_cast<unsigned long long>(r.num_or("run", "rng_seed", 1.0));
  sc.n_seeds = static_cast<int>(r.num_or("run", "seeds", 1000.0));
  sc.bins = static_cast<int>(r.num_or("run", "bins", 40.0));
  sc.node_eps_rel = r.num_or("run", "node_eps_rel", 1e-8);
  if (sc.n_seeds <= 0) throw ScenarioError("run: seeds must be positive");
  if (sc.bins < 2) throw ScenarioError("run: bins must be at least 2");
  if (sc.node_eps_rel <= 0.0) throw ScenarioError("run: node_eps_rel must be > 0");

  r.check_all_used();
  return sc;
}

} // namespace kgflow
