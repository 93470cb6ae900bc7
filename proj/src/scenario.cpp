#include "scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace ifm::scenario {

namespace {

using json = nlohmann::ordered_json;
using matter::Arm;
using matter::AtomModel;
using measurement::AnalysisBasis;
using optics::PolarizationSpec;
using optics::Port;

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ValidationError(field, message);
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) fail(path.empty() ? key : path + "." + key, "unknown field");
  }
}

const json* find(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& require(const json& obj, const std::string& path, const std::string& key) {
  const json* v = find(obj, key);
  if (v == nullptr) fail(path.empty() ? key : path + "." + key, "missing required field");
  return *v;
}

std::string require_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

complexd parse_complex(const json& v, const std::string& path) {
  if (v.is_number()) return complexd{v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return complexd{v[0].get<double>(), v[1].get<double>()};
  }
  fail(path, "expected a number or a [re, im] pair");
}

std::map<std::string, complexd> parse_amplitude_map(const json& v, const std::string& path) {
  if (!v.is_object() || v.empty()) fail(path, "expected a non-empty amplitude map");
  std::map<std::string, complexd> amps;
  for (const auto& [key, value] : v.items()) {
    amps[key] = parse_complex(value, path + "." + key);
  }
  return amps;
}

LabelTuple split_tuple_key(const std::string& key) {
  LabelTuple tuple;
  std::string part;
  std::istringstream in(key);
  while (std::getline(in, part, ',')) tuple.push_back(part);
  return tuple;
}

std::string join_tuple_key(const LabelTuple& tuple) {
  std::string key;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) key += ",";
    key += tuple[i];
  }
  return key;
}

std::map<LabelTuple, complexd> parse_tuple_map(const json& v, const std::string& path) {
  if (!v.is_object() || v.empty()) fail(path, "expected a non-empty amplitude map");
  std::map<LabelTuple, complexd> amps;
  for (const auto& [key, value] : v.items()) {
    amps[split_tuple_key(key)] = parse_complex(value, path + "." + key);
  }
  return amps;
}

PolarizationSpec parse_polarization(const json& v, const std::string& path) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "sigma+") return PolarizationSpec::sigma_plus();
    if (s == "sigma-") return PolarizationSpec::sigma_minus();
    if (s == "x") return PolarizationSpec::x();
    if (s == "y") return PolarizationSpec::y();
    fail(path, "unknown polarization '" + s + "' (expected sigma+, sigma-, x or y)");
  }
  if (v.is_object()) {
    check_keys(v, path, {"sigma+", "sigma-"});
    complexd c_plus{0.0, 0.0}, c_minus{0.0, 0.0};
    if (const json* p = find(v, "sigma+")) c_plus = parse_complex(*p, path + ".sigma+");
    if (const json* p = find(v, "sigma-")) c_minus = parse_complex(*p, path + ".sigma-");
    return PolarizationSpec::custom(c_plus, c_minus);
  }
  fail(path, "expected a polarization name or {sigma+, sigma-} amplitudes");
}

AtomSpec parse_atom(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  check_keys(v, path, {"model", "register", "arm", "resonant", "initial"});

  const std::string model = require_string(require(v, path, "model"), path + ".model");
  AtomSpec spec;
  auto parse_arm = [&](const std::string& s) {
    if (s == "upper") return Arm::upper;
    if (s == "lower") return Arm::lower;
    if (s == "outside") return Arm::outside;
    fail(path + ".arm", "unknown arm '" + s + "'");
  };

  if (model == "classical_opaque") {
    if (find(v, "register")) fail(path + ".register", "classical_opaque carries no atom register");
    if (find(v, "initial")) fail(path + ".initial", "classical_opaque has no internal state");
    if (find(v, "resonant")) fail(path + ".resonant", "classical_opaque absorbs any polarization");
    const Arm arm = parse_arm(require_string(require(v, path, "arm"), path + ".arm"));
    spec.model = AtomModel::classical_opaque(arm);
    return spec;
  }

  const std::string reg = require_string(require(v, path, "register"), path + ".register");
  if (model == "spectator") {
    if (const json* a = find(v, "arm")) {
      if (require_string(*a, path + ".arm") != "outside") {
        fail(path + ".arm", "spectator atoms sit outside the interferometer");
      }
    }
    if (find(v, "resonant")) fail(path + ".resonant", "spectator atoms absorb nothing");
    spec.model = AtomModel::spectator(reg);
  } else if (model == "half_absorber" || model == "two_level") {
    const Arm arm = parse_arm(require_string(require(v, path, "arm"), path + ".arm"));
    if (model == "half_absorber") {
      if (find(v, "resonant")) {
        fail(path + ".resonant", "half_absorber is resonant with both circular polarizations");
      }
      spec.model = AtomModel::half_absorber(reg, arm);
    } else {
      const std::string res = require_string(require(v, path, "resonant"), path + ".resonant");
      if (res != "sigma+" && res != "sigma-") {
        fail(path + ".resonant", "expected sigma+ or sigma-");
      }
      spec.model = AtomModel::two_level(reg, arm,
                                        res == "sigma+" ? PolarizationSpec::Kind::sigma_plus
                                                        : PolarizationSpec::Kind::sigma_minus);
    }
  } else {
    fail(path + ".model", "unknown model '" + model + "'");
  }

  if (const json* init = find(v, "initial")) {
    spec.initial = parse_amplitude_map(*init, path + ".initial");
  }
  return spec;
}

json complex_to_json(const complexd& c) { return json::array({c.real(), c.imag()}); }

json amplitude_map_to_json(const std::map<std::string, complexd>& amps) {
  json obj = json::object();
  for (const auto& [label, amp] : amps) obj[label] = complex_to_json(amp);
  return obj;
}

json tuple_map_to_json(const std::map<LabelTuple, complexd>& amps) {
  json obj = json::object();
  for (const auto& [tuple, amp] : amps) obj[join_tuple_key(tuple)] = complex_to_json(amp);
  return obj;
}

std::map<std::string, complexd> equal_superposition() {
  return {{"m+", complexd{kInvSqrt2, 0.0}}, {"m-", complexd{kInvSqrt2, 0.0}}};
}

Scenario bell_scenario(const std::string& name, AnalysisBasis analysis) {
  Scenario sc;
  sc.name = name;
  sc.polarization = PolarizationSpec::x();
  sc.atoms.push_back({AtomModel::half_absorber("atom1", Arm::lower), {}});
  sc.atoms.push_back({AtomModel::spectator("atom2"), {}});
  sc.joint_initial[{"m-", "m+"}] = complexd{kInvSqrt2, 0.0};
  sc.joint_initial[{"m+", "m-"}] = complexd{kInvSqrt2, 0.0};
  sc.detector.analysis = analysis;
  return sc;
}

}  // namespace

std::vector<matter::AtomModel> registered_atoms(const Scenario& sc) {
  std::vector<AtomModel> models;
  for (const auto& atom : sc.atoms) {
    if (atom.model.has_register()) models.push_back(atom.model);
  }
  return models;
}

void validate(const Scenario& sc) {
  if (sc.polarization.kind == PolarizationSpec::Kind::custom) {
    const double n = std::sqrt(std::norm(sc.polarization.custom_plus) +
                               std::norm(sc.polarization.custom_minus));
    if (n <= 1e-12) fail("photon.polarization", "custom polarization has (near-)zero norm");
  }

  std::set<std::string> registers;
  std::set<Arm> occupied_arms;
  std::size_t registered = 0;
  for (std::size_t i = 0; i < sc.atoms.size(); ++i) {
    const std::string path = "atoms[" + std::to_string(i) + "]";
    const auto& atom = sc.atoms[i];
    const auto& model = atom.model;

    if (model.has_register()) {
      ++registered;
      if (model.register_id.empty()) fail(path + ".register", "register name must be non-empty");
      if (model.register_id == optics::kPhotonRegister) {
        fail(path + ".register", "register name 'photon' is reserved");
      }
      if (!registers.insert(model.register_id).second) {
        fail(path + ".register", "duplicate register name '" + model.register_id + "'");
      }
    } else if (!model.register_id.empty()) {
      fail(path + ".register", "classical_opaque carries no atom register");
    }

    if (model.variant == AtomModel::Variant::spectator) {
      if (model.arm != Arm::outside) fail(path + ".arm", "spectator atoms must sit outside");
    } else {
      if (model.arm == Arm::outside) {
        fail(path + ".arm", "absorbing objects must sit in the upper or lower arm");
      }
      if (!occupied_arms.insert(model.arm).second) {
        fail(path + ".arm", "at most one absorbing object per arm");
      }
    }

    if (model.variant == AtomModel::Variant::two_level &&
        model.resonant != PolarizationSpec::Kind::sigma_plus &&
        model.resonant != PolarizationSpec::Kind::sigma_minus) {
      fail(path + ".resonant", "two_level atoms are resonant with sigma+ or sigma- only");
    }

    for (const auto& [label, amp] : atom.initial) {
      (void)amp;
      if (label != "m+" && label != "m-" && label != "g") {
        fail(path + ".initial." + label, "unknown atomic label");
      }
    }
  }

  if (!sc.joint_initial.empty()) {
    if (registered != 2) {
      fail("joint_initial", "joint preparation requires exactly two registered atoms");
    }
    for (const auto& atom : sc.atoms) {
      if (!atom.initial.empty()) {
        fail("joint_initial", "joint and per-atom preparations are mutually exclusive");
      }
    }
    for (const auto& [tuple, amp] : sc.joint_initial) {
      (void)amp;
      if (tuple.size() != registered) {
        fail("joint_initial." + join_tuple_key(tuple), "expected one label per registered atom");
      }
      for (const auto& label : tuple) {
        if (label != "m+" && label != "m-" && label != "g") {
          fail("joint_initial." + join_tuple_key(tuple), "unknown atomic label '" + label + "'");
        }
      }
    }
  } else {
    for (std::size_t i = 0; i < sc.atoms.size(); ++i) {
      const auto& atom = sc.atoms[i];
      if (atom.model.has_register() && atom.initial.empty()) {
        fail("atoms[" + std::to_string(i) + "].initial",
             "registered atoms need an initial state (or a joint_initial)");
      }
    }
  }

  for (const auto& [name, amps] : sc.report_targets) {
    const std::string path = "report_targets." + name;
    double sq = 0.0;
    for (const auto& [tuple, amp] : amps) {
      if (tuple.size() != registered) {
        fail(path + "." + join_tuple_key(tuple), "expected one label per registered atom");
      }
      for (const auto& label : tuple) {
        if (label != "m+" && label != "m-" && label != "g") {
          fail(path + "." + join_tuple_key(tuple), "unknown atomic label '" + label + "'");
        }
      }
      sq += std::norm(amp);
    }
    if (std::abs(std::sqrt(sq) - 1.0) > kInitialNormTol) {
      fail(path, "target state must be normalized");
    }
  }
}

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t upto = std::min(text.size(), e.byte > 0 ? e.byte - 1 : 0);
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream msg;
    msg << "line " << line << ", column " << column << ": " << e.what();
    throw ValidationError("syntax", msg.str());
  }
  if (!doc.is_object()) fail("", "scenario must be a JSON object");
  check_keys(doc, "", {"name", "photon", "atoms", "joint_initial", "detector", "report_targets"});

  Scenario sc;
  if (const json* name = find(doc, "name")) sc.name = require_string(*name, "name");

  const json& photon = require(doc, "", "photon");
  if (!photon.is_object()) fail("photon", "expected an object");
  check_keys(photon, "photon", {"port", "polarization"});
  const std::string port = require_string(require(photon, "photon", "port"), "photon.port");
  if (port == "upper") {
    sc.port = Port::upper;
  } else if (port == "lower") {
    sc.port = Port::lower;
  } else {
    fail("photon.port", "expected 'upper' or 'lower'");
  }
  sc.polarization =
      parse_polarization(require(photon, "photon", "polarization"), "photon.polarization");

  if (const json* atoms = find(doc, "atoms")) {
    if (!atoms->is_array()) fail("atoms", "expected an array");
    for (std::size_t i = 0; i < atoms->size(); ++i) {
      sc.atoms.push_back(parse_atom((*atoms)[i], "atoms[" + std::to_string(i) + "]"));
    }
  }

  if (const json* joint = find(doc, "joint_initial")) {
    sc.joint_initial = parse_tuple_map(*joint, "joint_initial");
  }

  if (const json* detector = find(doc, "detector")) {
    if (!detector->is_object()) fail("detector", "expected an object");
    check_keys(*detector, "detector", {"analysis"});
    const std::string analysis =
        require_string(require(*detector, "detector", "analysis"), "detector.analysis");
    if (analysis == "none") {
      sc.detector.analysis = AnalysisBasis::none;
    } else if (analysis == "circular") {
      sc.detector.analysis = AnalysisBasis::circular;
    } else if (analysis == "linear") {
      sc.detector.analysis = AnalysisBasis::linear;
    } else {
      fail("detector.analysis", "expected 'none', 'circular' or 'linear'");
    }
  }

  if (const json* targets = find(doc, "report_targets")) {
    if (!targets->is_object()) fail("report_targets", "expected an object");
    for (const auto& [name, value] : targets->items()) {
      sc.report_targets.emplace_back(name, parse_tuple_map(value, "report_targets." + name));
    }
  }

  validate(sc);
  return sc;
}

std::string render_scenario(const Scenario& sc) {
  json doc = json::object();
  if (!sc.name.empty()) doc["name"] = sc.name;

  json photon = json::object();
  photon["port"] = optics::port_label(sc.port);
  if (sc.polarization.kind == PolarizationSpec::Kind::custom) {
    const auto [c_plus, c_minus] = sc.polarization.circular_components();
    json pol = json::object();
    pol["sigma+"] = complex_to_json(c_plus);
    pol["sigma-"] = complex_to_json(c_minus);
    photon["polarization"] = std::move(pol);
  } else {
    photon["polarization"] = sc.polarization.label();
  }
  doc["photon"] = std::move(photon);

  json atoms = json::array();
  for (const auto& atom : sc.atoms) {
    json a = json::object();
    a["model"] = atom.model.variant_label();
    if (atom.model.has_register()) a["register"] = atom.model.register_id;
    a["arm"] = matter::arm_label(atom.model.arm);
    if (atom.model.variant == AtomModel::Variant::two_level) {
      a["resonant"] =
          atom.model.resonant == PolarizationSpec::Kind::sigma_plus ? "sigma+" : "sigma-";
    }
    if (!atom.initial.empty()) a["initial"] = amplitude_map_to_json(atom.initial);
    atoms.push_back(std::move(a));
  }
  doc["atoms"] = std::move(atoms);

  if (!sc.joint_initial.empty()) doc["joint_initial"] = tuple_map_to_json(sc.joint_initial);

  json detector = json::object();
  detector["analysis"] = measurement::analysis_label(sc.detector.analysis);
  doc["detector"] = std::move(detector);

  if (!sc.report_targets.empty()) {
    json targets = json::object();
    for (const auto& [name, amps] : sc.report_targets) targets[name] = tuple_map_to_json(amps);
    doc["report_targets"] = std::move(targets);
  }
  return doc.dump(2) + "\n";
}

const std::vector<std::string>& canned_names() {
  static const std::vector<std::string> names{"no_atom",    "classical_ev", "two_level",
                                              "sigma_plus", "linear_x",     "bell_linear",
                                              "bell_circular"};
  return names;
}

Scenario canned(const std::string& name) {
  Scenario sc;
  sc.name = name;
  if (name == "no_atom") {
    sc.polarization = PolarizationSpec::sigma_plus();
  } else if (name == "classical_ev") {
    sc.polarization = PolarizationSpec::sigma_plus();
    sc.atoms.push_back({AtomModel::classical_opaque(Arm::lower), {}});
  } else if (name == "two_level") {
    sc.polarization = PolarizationSpec::sigma_plus();
    sc.atoms.push_back(
        {AtomModel::two_level("atom", Arm::lower, PolarizationSpec::Kind::sigma_plus),
         {{"m+", complexd{1.0, 0.0}}}});
  } else if (name == "sigma_plus") {
    sc.polarization = PolarizationSpec::sigma_plus();
    sc.atoms.push_back({AtomModel::half_absorber("atom", Arm::lower), equal_superposition()});
    sc.detector.analysis = AnalysisBasis::circular;
  } else if (name == "linear_x") {
    sc.polarization = PolarizationSpec::x();
    sc.atoms.push_back({AtomModel::half_absorber("atom", Arm::lower), equal_superposition()});
    sc.detector.analysis = AnalysisBasis::linear;
    sc.report_targets.emplace_back(
        "superposition_minus",
        std::map<LabelTuple, complexd>{{{"m+"}, complexd{kInvSqrt2, 0.0}},
                                       {{"m-"}, complexd{-kInvSqrt2, 0.0}}});
  } else if (name == "bell_linear") {
    return bell_scenario(name, AnalysisBasis::linear);
  } else if (name == "bell_circular") {
    return bell_scenario(name, AnalysisBasis::circular);
  } else {
    throw ValidationError("", "unknown canned scenario '" + name + "'");
  }
  return sc;
}

}  // namespace ifm::scenario
