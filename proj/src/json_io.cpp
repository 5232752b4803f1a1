#include "gml/json_io.hpp"

#include <fstream>
#include <initializer_list>
#include <string_view>

#include "gml/errors.hpp"
#include "gml/formula.hpp"

namespace gml {
namespace {

void expect_keys(const json& j, std::initializer_list<std::string_view> allowed,
                 const char* what) {
  if (!j.is_object()) throw input_error(std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (std::string_view k : allowed)
      if (key == k) {
        ok = true;
        break;
      }
    if (!ok) throw input_error("unknown key \"" + key + "\" in " + what);
  }
}

const json& need(const json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) throw input_error(std::string(what) + " is missing \"" + key + "\"");
  return *it;
}

std::string need_string(const json& j, const char* what) {
  if (!j.is_string()) throw input_error(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::uint64_t need_nat(const json& j, const char* what) {
  if (!j.is_number_unsigned()) throw input_error(std::string(what) + " must be a natural number");
  return j.get<std::uint64_t>();
}

std::vector<std::string> name_list(const json& j, const char* what) {
  if (!j.is_array()) throw input_error(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const json& item : j) out.push_back(need_string(item, what));
  return out;
}

std::vector<std::string> worlds_field(const json& j, const char* what) {
  std::vector<std::string> names = name_list(need(j, "worlds", what), "a world name");
  for (const auto& name : names)
    if (name.empty()) throw input_error("empty world name");
  return names;
}

std::vector<std::pair<std::string, std::vector<std::string>>> val_field(const json& j,
                                                                        const char* what) {
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  auto it = j.find("val");
  if (it == j.end()) return out;
  if (!it->is_object()) throw input_error(std::string(what) + " \"val\" must be an object");
  for (const auto& [letter, members] : it->items()) {
    if (!is_atom_name(letter))
      throw input_error("\"" + letter + "\" is not a proposition letter");
    out.emplace_back(letter, name_list(members, "a valuation world"));
  }
  return out;
}

std::vector<std::vector<std::string>> set_list(const json& j, const char* what) {
  if (!j.is_array()) throw input_error(std::string(what) + " must be an array of sets");
  std::vector<std::vector<std::string>> out;
  for (const json& item : j) out.push_back(name_list(item, "a set member"));
  return out;
}

json val_to_json(const Valuation& val, const std::vector<std::string>& worlds) {
  json out = json::object();
  for (const auto& [letter, set] : val) out[letter] = names_of(set, worlds);
  return out;
}

}  // namespace

json names_of(const WorldSet& x, const std::vector<std::string>& worlds) {
  json out = json::array();
  for (int m : x.members()) out.push_back(worlds[m]);
  return out;
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw input_error("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

KripkeModel kripke_from_json(const json& j) {
  expect_keys(j, {"type", "worlds", "rel", "val"}, "a kripke model");
  std::vector<std::pair<std::string, std::string>> edges;
  const json& rel = need(j, "rel", "a kripke model");
  if (!rel.is_array()) throw input_error("\"rel\" must be an array of pairs");
  for (const json& pair : rel) {
    if (!pair.is_array() || pair.size() != 2)
      throw input_error("\"rel\" entries must be [from, to] pairs");
    edges.emplace_back(need_string(pair[0], "an edge endpoint"),
                       need_string(pair[1], "an edge endpoint"));
  }
  return make_kripke(worlds_field(j, "a kripke model"), edges, val_field(j, "a kripke model"));
}

GradedModel graded_from_json(const json& j) {
  expect_keys(j, {"type", "worlds", "sigma", "val"}, "a graded model");
  std::vector<std::tuple<std::string, std::string, ExtNat>> entries;
  const json& sigma = need(j, "sigma", "a graded model");
  if (!sigma.is_array()) throw input_error("\"sigma\" must be an array of triples");
  for (const json& triple : sigma) {
    if (!triple.is_array() || triple.size() != 3)
      throw input_error("\"sigma\" entries must be [from, to, multiplicity] triples");
    ExtNat mult = triple[2].is_string() && triple[2].get<std::string>() == "omega"
                      ? ExtNat::omega()
                      : ExtNat(need_nat(triple[2], "a multiplicity"));
    entries.emplace_back(need_string(triple[0], "a sigma endpoint"),
                         need_string(triple[1], "a sigma endpoint"), mult);
  }
  return make_graded(worlds_field(j, "a graded model"), entries, val_field(j, "a graded model"));
}

NeighbourhoodModel nbhd_from_json(const json& j) {
  expect_keys(j, {"type", "worlds", "max_grade", "nu", "nu0", "val"}, "a nbhd model");
  std::vector<NuEntry> nu;
  const json& nu_j = need(j, "nu", "a nbhd model");
  if (!nu_j.is_array()) throw input_error("\"nu\" must be an array of entries");
  for (const json& entry : nu_j) {
    expect_keys(entry, {"world", "grade", "sets"}, "a nu entry");
    nu.push_back(NuEntry{need_string(need(entry, "world", "a nu entry"), "a nu world"),
                         need_nat(need(entry, "grade", "a nu entry"), "a nu grade"),
                         set_list(need(entry, "sets", "a nu entry"), "\"sets\"")});
  }
  std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> nu0;
  if (auto it = j.find("nu0"); it != j.end()) {
    if (!it->is_array()) throw input_error("\"nu0\" must be an array of entries");
    for (const json& entry : *it) {
      expect_keys(entry, {"world", "sets"}, "a nu0 entry");
      nu0.emplace_back(need_string(need(entry, "world", "a nu0 entry"), "a nu0 world"),
                       set_list(need(entry, "sets", "a nu0 entry"), "\"sets\""));
    }
  }
  return make_neighbourhood(worlds_field(j, "a nbhd model"),
                            need_nat(need(j, "max_grade", "a nbhd model"), "\"max_grade\""), nu,
                            nu0, val_field(j, "a nbhd model"));
}

CoreModel core_from_json(const json& j) {
  expect_keys(j, {"type", "worlds", "core", "val"}, "a nbhd-core model");
  const json& core = need(j, "core", "a nbhd-core model");
  if (!core.is_object()) throw input_error("\"core\" must be an object");
  std::vector<std::pair<std::string, std::vector<std::string>>> entries;
  for (const auto& [world, members] : core.items())
    entries.emplace_back(world, name_list(members, "a core member"));
  return make_core(worlds_field(j, "a nbhd-core model"), entries,
                   val_field(j, "a nbhd-core model"));
}

AnyModel model_from_json(const json& j) {
  if (!j.is_object()) throw input_error("a model must be a JSON object");
  const std::string type = need_string(need(j, "type", "a model"), "\"type\"");
  if (type == "kripke") return kripke_from_json(j);
  if (type == "graded") return graded_from_json(j);
  if (type == "nbhd") return nbhd_from_json(j);
  if (type == "nbhd-core") return core_from_json(j);
  throw input_error("unknown model type \"" + type + "\"");
}

AnyModel load_model_file(const std::string& path) {
  return model_from_json(load_json_file(path));
}

json to_json(const KripkeModel& m) {
  json rel = json::array();
  for (std::size_t w = 0; w < m.worlds.size(); ++w)
    for (int u : m.rel[w].members()) rel.push_back(json::array({m.worlds[w], m.worlds[u]}));
  return json{{"type", "kripke"},
              {"worlds", m.worlds},
              {"rel", rel},
              {"val", val_to_json(m.val, m.worlds)}};
}

json to_json(const GradedModel& m) {
  json sigma = json::array();
  for (std::size_t w = 0; w < m.worlds.size(); ++w)
    for (const auto& [u, mult] : m.sigma[w]) {
      json value = mult.is_omega() ? json("omega") : json(mult.value());
      sigma.push_back(json::array({m.worlds[w], m.worlds[u], value}));
    }
  return json{{"type", "graded"},
              {"worlds", m.worlds},
              {"sigma", sigma},
              {"val", val_to_json(m.val, m.worlds)}};
}

json to_json(const NeighbourhoodModel& m) {
  json nu = json::array();
  for (std::size_t w = 0; w < m.worlds.size(); ++w)
    for (std::uint64_t g = 1; g <= m.max_grade; ++g) {
      if (m.nu[w][g - 1].empty()) continue;
      json sets = json::array();
      for (const WorldSet& x : m.nu[w][g - 1]) sets.push_back(names_of(x, m.worlds));
      nu.push_back(json{{"world", m.worlds[w]}, {"grade", g}, {"sets", sets}});
    }
  json out{{"type", "nbhd"},
           {"worlds", m.worlds},
           {"max_grade", m.max_grade},
           {"nu", nu},
           {"val", val_to_json(m.val, m.worlds)}};
  json nu0 = json::array();
  for (std::size_t w = 0; w < m.worlds.size(); ++w) {
    if (!m.nu0[w]) continue;
    json sets = json::array();
    for (const WorldSet& x : *m.nu0[w]) sets.push_back(names_of(x, m.worlds));
    nu0.push_back(json{{"world", m.worlds[w]}, {"sets", sets}});
  }
  if (!nu0.empty()) out["nu0"] = nu0;
  return out;
}

json to_json(const CoreModel& m) {
  json core = json::object();
  for (std::size_t w = 0; w < m.worlds.size(); ++w)
    core[m.worlds[w]] = names_of(m.core[w], m.worlds);
  return json{{"type", "nbhd-core"},
              {"worlds", m.worlds},
              {"core", core},
              {"val", val_to_json(m.val, m.worlds)}};
}

json to_json(const AnyModel& m) {
  return std::visit([](const auto& inner) { return to_json(inner); }, m);
}

BisimRelation relation_from_json(const json& j, const std::vector<std::string>& left_worlds,
                                 const std::vector<std::string>& right_worlds) {
  expect_keys(j, {"pairs"}, "a relation");
  std::vector<std::pair<std::string, std::string>> pairs;
  const json& arr = need(j, "pairs", "a relation");
  if (!arr.is_array()) throw input_error("\"pairs\" must be an array");
  for (const json& pair : arr) {
    if (!pair.is_array() || pair.size() != 2)
      throw input_error("\"pairs\" entries must be [left, right] pairs");
    pairs.emplace_back(need_string(pair[0], "a relation endpoint"),
                       need_string(pair[1], "a relation endpoint"));
  }
  return make_relation(pairs, left_worlds, right_worlds);
}

TupleBisim tuple_from_json(const json& j, const std::vector<std::string>& left_worlds,
                           const std::vector<std::string>& right_worlds) {
  expect_keys(j, {"family"}, "a tuple bisimulation");
  std::vector<std::pair<
      std::uint64_t, std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>>>
      entries;
  const json& fam = need(j, "family", "a tuple bisimulation");
  if (!fam.is_array()) throw input_error("\"family\" must be an array");
  for (const json& entry : fam) {
    expect_keys(entry, {"grade", "pairs"}, "a family entry");
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> pairs;
    const json& arr = need(entry, "pairs", "a family entry");
    if (!arr.is_array()) throw input_error("family \"pairs\" must be an array");
    for (const json& pair : arr) {
      if (!pair.is_array() || pair.size() != 2)
        throw input_error("family entries must be [left set, right set] pairs");
      pairs.emplace_back(name_list(pair[0], "a set member"), name_list(pair[1], "a set member"));
    }
    entries.emplace_back(need_nat(need(entry, "grade", "a family entry"), "a family grade"),
                         pairs);
  }
  return make_tuple_bisim(entries, left_worlds, right_worlds);
}

WorldMap map_from_json(const json& j, const std::vector<std::string>& src_worlds,
                       const std::vector<std::string>& dst_worlds) {
  expect_keys(j, {"map"}, "a world map");
  const json& m = need(j, "map", "a world map");
  if (!m.is_object()) throw input_error("\"map\" must be an object");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& [from, to] : m.items())
    pairs.emplace_back(from, need_string(to, "a map target"));
  return make_world_map(pairs, src_worlds, dst_worlds);
}

json relation_to_json(const BisimRelation& z, const std::vector<std::string>& left_worlds,
                      const std::vector<std::string>& right_worlds) {
  json pairs = json::array();
  for (const auto& [w, wp] : z.pairs)
    pairs.push_back(json::array({left_worlds[w], right_worlds[wp]}));
  return json{{"pairs", pairs}};
}

json tuple_to_json(const TupleBisim& t, const std::vector<std::string>& left_worlds,
                   const std::vector<std::string>& right_worlds) {
  json fam = json::array();
  for (std::size_t i = 1; i <= t.family.size(); ++i) {
    if (t.family[i - 1].empty()) continue;
    json pairs = json::array();
    for (const auto& [x, xp] : t.family[i - 1])
      pairs.push_back(json::array({names_of(x, left_worlds), names_of(xp, right_worlds)}));
    fam.push_back(json{{"grade", i}, {"pairs", pairs}});
  }
  return json{{"family", fam}};
}

}  // namespace gml
