// gmlkit: one binary, subcommand style. Every subcommand prints exactly one
// JSON document on standard output; human diagnostics go to standard error.
// Exit codes: 0 affirmative, 1 negative/witness, 2 input or budget error.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "gml/bisim.hpp"
#include "gml/errors.hpp"
#include "gml/fixtures.hpp"
#include "gml/formula.hpp"
#include "gml/graded.hpp"
#include "gml/json_io.hpp"
#include "gml/kripke.hpp"
#include "gml/minimize.hpp"
#include "gml/neighbourhood.hpp"
#include "gml/random_models.hpp"
#include "gml/rng.hpp"
#include "gml/schema.hpp"
#include "gml/validity.hpp"
#include "gml/worlds.hpp"

namespace {

using namespace gml;

const std::vector<std::string> kFuzzLetters{"p", "q"};

int exit_for(const std::string& status) {
  if (status == "true" || status == "valid" || status == "pass" || status == "agree") return 0;
  if (status == "error") return 2;
  return 1;  // false, countermodel, violation, distinguished, not_found
}

int emit(const json& doc) {
  std::cout << canonical_dump(doc);
  const std::string status = doc.contains("status") ? doc["status"].get<std::string>() : "pass";
  return exit_for(status);
}

std::uint64_t resolve_budget(const std::optional<std::uint64_t>& flag,
                             std::uint64_t fallback = kDefaultBudget) {
  if (flag) return *flag;
  if (const char* env = std::getenv("GMLKIT_BUDGET")) {
    const std::string text(env);
    std::uint64_t value = 0;
    if (text.empty()) throw input_error("GMLKIT_BUDGET must be a natural number");
    for (char c : text) {
      if (c < '0' || c > '9') throw input_error("GMLKIT_BUDGET must be a natural number");
      if (value > (std::numeric_limits<std::uint64_t>::max() - (c - '0')) / 10)
        throw input_error("GMLKIT_BUDGET is out of range");
      value = value * 10 + (c - '0');
    }
    return value;
  }
  return fallback;
}

const std::vector<std::string>& worlds_of(const AnyModel& m) {
  return std::visit([](const auto& inner) -> const std::vector<std::string>& {
    return inner.worlds;
  }, m);
}

const std::vector<std::string>& worlds_of(const NbhdFrame& f) {
  return std::visit([](const auto& inner) -> const std::vector<std::string>& {
    return inner.worlds;
  }, f);
}

NbhdFrame frame_of(AnyModel&& m, const char* which) {
  if (auto* e = std::get_if<NeighbourhoodModel>(&m)) return std::move(*e);
  if (auto* c = std::get_if<CoreModel>(&m)) return std::move(*c);
  throw input_error(std::string(which) + " must be a neighbourhood model file");
}

json valuation_json(const Valuation& val, const std::vector<std::string>& worlds) {
  json out = json::object();
  for (const auto& [letter, set] : val) out[letter] = names_of(set, worlds);
  return out;
}

json sets_json(const std::vector<WorldSet>& sets, const std::vector<std::string>& worlds) {
  json out = json::array();
  for (const WorldSet& x : sets) out.push_back(names_of(x, worlds));
  return out;
}

std::string write_file(const std::string& dir, const std::string& name,
                       const std::string& content) {
  const std::filesystem::path path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw input_error("cannot write " + path.string());
  out << content;
  if (!out) throw input_error("cannot write " + path.string());
  return path.string();
}

// ---------------------------------------------------------------- eval

int run_eval(const std::string& model_path, const std::string& world,
             const std::string& formula_text) {
  const AnyModel m = load_model_file(model_path);
  const Formula f = parse(formula_text);
  const bool truth =
      std::visit([&](const auto& inner) { return eval(inner, world, f); }, m);
  return emit(json{{"status", truth ? "true" : "false"}, {"truth", truth}});
}

// ---------------------------------------------------------------- valid

int run_valid(const std::string& model_path, const std::string& formula_text,
              std::uint64_t budget) {
  const AnyModel m = load_model_file(model_path);
  const Formula f = parse(formula_text);
  const ValidityVerdict v =
      std::visit([&](const auto& inner) { return frame_validity(inner, f, budget); }, m);
  if (v.valid()) return emit(json{{"status", "valid"}});
  const auto& worlds = worlds_of(m);
  return emit(json{{"status", "countermodel"},
                   {"world", worlds[v.countermodel->world]},
                   {"valuation", valuation_json(v.countermodel->valuation, worlds)}});
}

// ------------------------------------------------------------ translate

int run_translate(const std::string& from, const std::string& to,
                  const std::string& model_path, const std::optional<std::uint64_t>& cap,
                  std::uint64_t budget) {
  AnyModel m = load_model_file(model_path);
  if (from == "kripke" && to == "graded") {
    auto* k = std::get_if<KripkeModel>(&m);
    if (!k) throw input_error("--from kripke expects a kripke model file");
    return emit(to_json(kripke_to_graded(*k)));
  }
  if (from == "graded" && to == "kripke") {
    auto* g = std::get_if<GradedModel>(&m);
    if (!g) throw input_error("--from graded expects a graded model file");
    if (!cap) throw input_error("--cap is required for graded to kripke");
    return emit(to_json(graded_to_kripke(*g, *cap)));
  }
  if (from == "kripke" && to == "nbhd") {
    auto* k = std::get_if<KripkeModel>(&m);
    if (!k) throw input_error("--from kripke expects a kripke model file");
    return emit(to_json(bullet(*k)));
  }
  if (from == "nbhd" && to == "kripke") {
    if (auto* c = std::get_if<CoreModel>(&m)) return emit(to_json(unbullet(*c)));
    auto* e = std::get_if<NeighbourhoodModel>(&m);
    if (!e) throw input_error("--from nbhd expects a neighbourhood model file");
    const GradedFrameVerdict verdict = is_graded_frame(*e, budget);
    if (!verdict.graded()) {
      const auto& v = *verdict.violation;
      std::cerr << "error: the explicit frame is not graded\n";
      std::cout << canonical_dump(json{{"status", "error"},
                                       {"error", "the explicit frame is not graded"},
                                       {"world", e->worlds[v.world]},
                                       {"grade", v.grade},
                                       {"witness", names_of(v.witness, e->worlds)}});
      return 2;
    }
    const CoreModel core{e->worlds, verdict.core, e->val};
    return emit(to_json(unbullet(core)));
  }
  throw input_error("unsupported direction " + from + " to " + to);
}

// ---------------------------------------------------------------- check

int run_check_stars(const std::string& model_path, std::uint64_t budget) {
  const AnyModel m = load_model_file(model_path);
  const auto* e = std::get_if<NeighbourhoodModel>(&m);
  if (!e) throw input_error("check stars expects an explicit neighbourhood model");
  const StarReport rep = check_stars(*e, budget);
  json stars = json::object();
  for (std::size_t k = 0; k < 6; ++k) {
    const std::string key = "star" + std::to_string(k + 1);
    if (!rep.violation[k]) {
      stars[key] = nullptr;
    } else {
      const auto& v = *rep.violation[k];
      stars[key] = json{{"world", e->worlds[v.world]},
                        {"grade", v.grade},
                        {"sets", sets_json(v.sets, e->worlds)}};
    }
  }
  return emit(json{{"status", rep.all_pass() ? "pass" : "violation"}, {"stars", stars}});
}

int run_check_graded_frame(const std::string& model_path, std::uint64_t budget) {
  const AnyModel m = load_model_file(model_path);
  const NbhdFrame f = frame_of(AnyModel(m), "check graded-frame");
  const GradedFrameVerdict verdict = std::visit(
      [&](const auto& inner) {
        if constexpr (std::is_same_v<std::decay_t<decltype(inner)>, NeighbourhoodModel>)
          return is_graded_frame(inner, budget);
        else
          return is_graded_frame(inner);
      },
      f);
  const auto& worlds = worlds_of(f);
  if (verdict.graded()) {
    json core = json::object();
    for (std::size_t w = 0; w < worlds.size(); ++w)
      core[worlds[w]] = names_of(verdict.core[w], worlds);
    return emit(json{{"status", "pass"}, {"core", core}});
  }
  const auto& v = *verdict.violation;
  return emit(json{{"status", "violation"},
                   {"world", worlds[v.world]},
                   {"grade", v.grade},
                   {"witness", names_of(v.witness, worlds)}});
}

int run_check_monotonic(const std::string& model_path, std::uint64_t budget) {
  const AnyModel m = load_model_file(model_path);
  const NbhdFrame f = frame_of(AnyModel(m), "check monotonic");
  const std::optional<MonoViolation> v = std::visit(
      [&](const auto& inner) {
        if constexpr (std::is_same_v<std::decay_t<decltype(inner)>, NeighbourhoodModel>)
          return is_monotonic(inner, budget);
        else
          return is_monotonic(inner);
      },
      f);
  if (!v) return emit(json{{"status", "pass"}});
  const auto& worlds = worlds_of(f);
  return emit(json{{"status", "violation"},
                   {"world", worlds[v->world]},
                   {"grade", v->grade},
                   {"member", names_of(v->member, worlds)},
                   {"superset", names_of(v->superset, worlds)}});
}

int run_check_morphism(const std::string& map_path, const std::string& left_path,
                       const std::string& right_path, std::uint64_t budget) {
  const NbhdFrame src = frame_of(load_model_file(left_path), "--left");
  const NbhdFrame dst = frame_of(load_model_file(right_path), "--right");
  const WorldMap f = map_from_json(load_json_file(map_path), worlds_of(src), worlds_of(dst));
  const MorphismVerdict verdict = is_bounded_morphism(f, src, dst, budget);
  if (verdict.ok())
    return emit(json{{"status", "pass"}, {"surjective", verdict.surjective}});
  const auto& v = *verdict.violation;
  const auto& witness_worlds = v.clause == 1 ? worlds_of(src) : worlds_of(dst);
  return emit(json{{"status", "violation"},
                   {"clause", v.clause},
                   {"world", worlds_of(src)[v.world]},
                   {"grade", v.grade},
                   {"witness", names_of(v.witness, witness_worlds)},
                   {"surjective", verdict.surjective}});
}

const char* clause_name(BisimViolation::Clause c) {
  switch (c) {
    case BisimViolation::Prop:
      return "prop";
    case BisimViolation::Forth:
      return "forth";
    case BisimViolation::Back:
      return "back";
  }
  return "prop";
}

int emit_bisim(const BisimVerdict& v, const std::vector<std::string>& left_worlds,
               const std::vector<std::string>& right_worlds) {
  if (!v) return emit(json{{"status", "pass"}});
  json doc{{"status", "violation"},
           {"clause", clause_name(v->clause)},
           {"pair", json::array({left_worlds[v->at.first], right_worlds[v->at.second]})},
           {"grade", v->grade}};
  if (v->clause == BisimViolation::Prop)
    doc["letter"] = v->letter;
  else
    doc["witness"] = names_of(v->witness,
                              v->clause == BisimViolation::Forth ? left_worlds : right_worlds);
  return emit(doc);
}

int run_check_bisim(const std::string& left_path, const std::string& right_path,
                    const std::string& relation_path, std::size_t witness_budget,
                    std::uint64_t budget) {
  AnyModel left = load_model_file(left_path);
  AnyModel right = load_model_file(right_path);
  const json zdoc = load_json_file(relation_path);
  if (std::holds_alternative<KripkeModel>(left) && std::holds_alternative<KripkeModel>(right)) {
    const auto& l = std::get<KripkeModel>(left);
    const auto& r = std::get<KripkeModel>(right);
    const BisimRelation z = relation_from_json(zdoc, l.worlds, r.worlds);
    return emit_bisim(check_graded_bisim(z, l, r, witness_budget), l.worlds, r.worlds);
  }
  const NbhdFrame l = frame_of(std::move(left), "--left");
  const NbhdFrame r = frame_of(std::move(right), "--right");
  const BisimRelation z = relation_from_json(zdoc, worlds_of(l), worlds_of(r));
  return emit_bisim(check_monotonic_bisim(z, l, r, budget), worlds_of(l), worlds_of(r));
}

int run_check_tuple_bisim(const std::string& left_path, const std::string& right_path,
                          const std::string& tuple_path) {
  const AnyModel left = load_model_file(left_path);
  const AnyModel right = load_model_file(right_path);
  const auto* l = std::get_if<KripkeModel>(&left);
  const auto* r = std::get_if<KripkeModel>(&right);
  if (!l || !r) throw input_error("check tuple-bisim expects two kripke model files");
  const TupleBisim t = tuple_from_json(load_json_file(tuple_path), l->worlds, r->worlds);
  const TupleVerdict v = check_tuple_bisim(t, *l, *r);
  if (!v) return emit(json{{"status", "pass"}});
  json doc{{"status", "violation"},
           {"item", v->item},
           {"grade", v->grade},
           {"left", names_of(v->left, l->worlds)},
           {"right", names_of(v->right, r->worlds)}};
  if (v->witness)
    doc["witness"] = names_of(*v->witness, v->item == 6 ? r->worlds : l->worlds);
  if (!v->letter.empty()) doc["letter"] = v->letter;
  return emit(doc);
}

// --------------------------------------------------------------- axioms

struct AxiomInstance {
  std::string name;
  Formula body;
};

std::vector<AxiomInstance> draw_axioms(Rng& rng) {
  std::vector<AxiomInstance> out;
  out.push_back({"ax2", ax2_body()});
  out.push_back({"ax3", ax3_body(1 + rng.below(3))});
  out.push_back({"ax4", ax4_body(rng.below(4))});
  out.push_back({"ax5", ax5_body(rng.below(4))});
  out.push_back({"ax6", ax6_body(rng.below(3), rng.below(3))});
  out.push_back({"ax7", ax7_body()});
  out.push_back({"separation", separation_body(1 + rng.below(3))});
  return out;
}

int run_axioms(const std::string& semantics, std::uint64_t trials, std::uint64_t seed,
               std::uint64_t budget) {
  json failures = json::array();
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = seed + t;
    Rng rng(trial_seed);
    const std::size_t n = 1 + rng.below(4);
    AnyModel model;
    if (semantics == "kripke")
      model = random_kripke(rng, n, kFuzzLetters);
    else if (semantics == "graded")
      model = random_graded(rng, n, kFuzzLetters);
    else
      model = random_core(rng, n, kFuzzLetters);
    for (const AxiomInstance& ax : draw_axioms(rng)) {
      for (int k = 0; k < 5; ++k) {
        Schema schema;
        schema.body = ax.body;
        schema.subst.emplace("?phi", random_formula(rng, 2, 3, kFuzzLetters));
        schema.subst.emplace("?psi", random_formula(rng, 2, 3, kFuzzLetters));
        const Formula instance = instantiate(schema);
        const ValidityVerdict v = std::visit(
            [&](const auto& inner) { return frame_validity(inner, instance, budget); }, model);
        if (v.valid()) continue;
        const auto& worlds = worlds_of(model);
        failures.push_back(json{{"axiom", ax.name},
                                {"formula", print(instance)},
                                {"seed", trial_seed},
                                {"world", worlds[v.countermodel->world]},
                                {"valuation", valuation_json(v.countermodel->valuation, worlds)}});
      }
    }
  }
  return emit(json{{"status", failures.empty() ? "pass" : "violation"},
                   {"semantics", semantics},
                   {"trials", trials},
                   {"failures", failures}});
}

// -------------------------------------------------------------- fixture

int run_fixture(const std::string& name, const std::string& out_dir) {
  std::vector<std::string> files;
  if (name == "figure1-kripke") {
    files.push_back(write_file(out_dir, "figure1-kripke.json",
                               canonical_dump(to_json(figure1_kripke()))));
  } else if (name == "figure1-graded") {
    files.push_back(write_file(out_dir, "figure1-graded.json",
                               canonical_dump(to_json(figure1_graded()))));
  } else if (name == "figure1-nbhd") {
    files.push_back(write_file(out_dir, "figure1-nbhd.json",
                               canonical_dump(to_json(figure1_nbhd()))));
  } else {
    const Section6 s = section6();
    files.push_back(write_file(out_dir, "section6-f.json", canonical_dump(to_json(s.f))));
    files.push_back(
        write_file(out_dir, "section6-fprime.json", canonical_dump(to_json(s.f_prime))));
    json map = json::object();
    for (std::size_t w = 0; w < s.f.worlds.size(); ++w)
      map[s.f.worlds[w]] = s.f_prime.worlds[s.map.to[w]];
    files.push_back(write_file(out_dir, "section6-map.json", canonical_dump(json{{"map", map}})));
  }
  return emit(json{{"status", "pass"}, {"files", files}});
}

// ------------------------------------------------------------------ fuzz

struct SuiteOutcome {
  bool ok = true;
  json detail;                     // populated on failure in witness mode
  std::vector<std::string> files;  // witness files written
};

SuiteOutcome suite_truth_preservation(std::uint64_t s, const std::string* out) {
  Rng rng(s);
  KripkeModel m = random_kripke(rng, 1 + rng.below(6), kFuzzLetters);
  Formula f = random_formula(rng, 4, 4, kFuzzLetters);
  const auto differs = [](const KripkeModel& k, const Formula& g) {
    return !(truth_set(k, g) == truth_set(bullet(k), g));
  };
  if (!differs(m, f)) return {};
  SuiteOutcome res;
  res.ok = false;
  if (out) {
    m = greedy_remove_worlds(std::move(m), [&](const KripkeModel& k) { return differs(k, f); });
    f = greedy_reduce_grades(f, [&](const Formula& g) { return differs(m, g); });
    res.files.push_back(
        write_file(*out, "truth-preservation-model.json", canonical_dump(to_json(m))));
    res.files.push_back(write_file(*out, "truth-preservation-formula.txt", print(f) + "\n"));
    res.detail = json{{"formula", print(f)}};
  }
  return res;
}

SuiteOutcome suite_star_equiv(std::uint64_t s, std::uint64_t budget, const std::string* out) {
  Rng rng(s);
  const std::size_t n = 1 + rng.below(4);
  const std::uint64_t grade = 1 + rng.below(3);
  NeighbourhoodModel m;
  switch (rng.below(3)) {
    case 0:
      m = random_explicit(rng, n, kFuzzLetters, grade);
      break;
    case 1:
      m = random_perturbed_core(rng, n, kFuzzLetters, grade, 1 + rng.below(3));
      break;
    default:
      m = random_perturbed_core(rng, n, kFuzzLetters, grade, 0);
      break;
  }
  const auto disagree = [&](const NeighbourhoodModel& x) {
    return check_stars(x, budget).all_pass() != is_graded_frame(x, budget).graded();
  };
  if (!disagree(m)) return {};
  SuiteOutcome res;
  res.ok = false;
  if (out) {
    m = greedy_remove_worlds(std::move(m), disagree);
    res.files.push_back(write_file(*out, "star-equiv-model.json", canonical_dump(to_json(m))));
    res.detail = json{{"stars_all_pass", check_stars(m, budget).all_pass()},
                      {"graded", is_graded_frame(m, budget).graded()}};
  }
  return res;
}

SuiteOutcome suite_bisim_conversions(std::uint64_t s, const std::string* out) {
  Rng rng(s);
  KripkeModel l = random_kripke_bounded(rng, 1 + rng.below(4), kFuzzLetters, 3);
  KripkeModel r = random_kripke_bounded(rng, 1 + rng.below(4), kFuzzLetters, 3);
  const auto broken = [](const KripkeModel& a, const KripkeModel& b) {
    const BisimRelation z = largest_graded_bisim(a, b);
    if (z.pairs.empty()) return false;
    const TupleBisim t = graded_to_tuple(z, a, b);
    if (check_tuple_bisim(t, a, b)) return true;
    const BisimRelation z2 = tuple_to_graded(t);
    if (!(z2.pairs == z.pairs)) return true;
    return check_graded_bisim(z2, a, b).has_value();
  };
  if (!broken(l, r)) return {};
  SuiteOutcome res;
  res.ok = false;
  if (out) {
    l = greedy_remove_worlds(std::move(l), [&](const KripkeModel& a) { return broken(a, r); });
    r = greedy_remove_worlds(std::move(r), [&](const KripkeModel& b) { return broken(l, b); });
    res.files.push_back(
        write_file(*out, "bisim-conversions-left.json", canonical_dump(to_json(l))));
    res.files.push_back(
        write_file(*out, "bisim-conversions-right.json", canonical_dump(to_json(r))));
    const BisimRelation z = largest_graded_bisim(l, r);
    res.files.push_back(write_file(*out, "bisim-conversions-relation.json",
                                   canonical_dump(relation_to_json(z, l.worlds, r.worlds))));
    res.detail = json{{"pairs", z.pairs.size()}};
  }
  return res;
}

SuiteOutcome suite_roundtrip(std::uint64_t s, const std::string* out) {
  Rng rng(s);
  const std::size_t n = 1 + rng.below(4);
  AnyModel m;
  switch (rng.below(4)) {
    case 0:
      m = random_kripke(rng, n, kFuzzLetters);
      break;
    case 1:
      m = random_graded(rng, n, kFuzzLetters);
      break;
    case 2:
      m = random_explicit(rng, n, kFuzzLetters, 1 + rng.below(3));
      break;
    default:
      m = random_core(rng, n, kFuzzLetters);
      break;
  }
  const auto bad = [](const AnyModel& x) {
    const json j1 = to_json(x);
    const AnyModel back = model_from_json(j1);
    return canonical_dump(to_json(back)) != canonical_dump(j1);
  };
  if (!bad(m)) return {};
  SuiteOutcome res;
  res.ok = false;
  if (out) {
    m = std::visit(
        [&](auto inner) -> AnyModel {
          return greedy_remove_worlds(std::move(inner),
                                      [&](const auto& x) { return bad(AnyModel(x)); });
        },
        std::move(m));
    res.files.push_back(write_file(*out, "roundtrip-model.json", canonical_dump(to_json(m))));
  }
  return res;
}

SuiteOutcome suite_truncation(std::uint64_t s, const std::string* out) {
  Rng rng(s);
  constexpr std::uint64_t kCap = 4;
  GradedModel g = random_graded(rng, 1 + rng.below(4), kFuzzLetters);
  Formula f = random_formula(rng, 3, kCap, kFuzzLetters);
  const auto mismatch = [](const GradedModel& gm, const Formula& ff) {
    const KripkeModel k = graded_to_kripke(gm, kCap);
    const WorldSet tg = truth_set(gm, ff);
    const WorldSet tk = truth_set(k, ff);
    for (std::size_t w = 0; w < gm.worlds.size(); ++w)
      for (std::uint64_t i = 0; i <= kCap; ++i) {
        const int idx = find_world(k.worlds, gm.worlds[w] + "#" + std::to_string(i));
        if (idx >= 0 && tk.test(idx) != tg.test(w)) return true;
      }
    return false;
  };
  if (!mismatch(g, f)) return {};
  SuiteOutcome res;
  res.ok = false;
  if (out) {
    g = greedy_remove_worlds(std::move(g), [&](const GradedModel& x) { return mismatch(x, f); });
    f = greedy_reduce_grades(f, [&](const Formula& x) { return mismatch(g, x); });
    res.files.push_back(write_file(*out, "truncation-model.json", canonical_dump(to_json(g))));
    res.files.push_back(write_file(*out, "truncation-formula.txt", print(f) + "\n"));
    res.detail = json{{"formula", print(f)}, {"cap", kCap}};
  }
  return res;
}

SuiteOutcome suite_section8(std::uint64_t s, std::uint64_t budget, const std::string* out) {
  Schema schema;
  schema.body = separation_body(2);
  schema.subst.emplace("?phi", Formula::atom("p"));
  schema.subst.emplace("?psi", Formula::atom("q"));
  const Formula f = instantiate(schema);
  SuiteOutcome res;
  const auto hit = counterexample_search(f, 4, budget, s, FrameClass::Monotonic);
  if (!hit) {
    res.ok = false;
    res.detail = json{{"reason", "no monotonic countermodel found"}, {"budget", budget}};
    return res;
  }
  const auto& m = std::get<NeighbourhoodModel>(hit->model);
  if (is_monotonic(m)) {
    res.ok = false;
    res.detail = json{{"reason", "search returned a non-monotonic model"}};
  } else if (eval(m, m.worlds[hit->world], f)) {
    res.ok = false;
    res.detail = json{{"reason", "search witness does not falsify the formula"}};
  }
  if (res.ok) {
    const auto graded_hit = counterexample_search(f, 3, 500, s, FrameClass::GradedCore);
    if (graded_hit) {
      res.ok = false;
      res.detail = json{{"reason", "found a graded countermodel to a graded validity"}};
      if (out) {
        const auto& c = std::get<CoreModel>(graded_hit->model);
        res.files.push_back(
            write_file(*out, "section8-graded-model.json", canonical_dump(to_json(c))));
      }
      return res;
    }
  }
  if (!res.ok && out)
    res.files.push_back(write_file(*out, "section8-model.json", canonical_dump(to_json(m))));
  return res;
}

SuiteOutcome run_suite(const std::string& suite, std::uint64_t s, std::uint64_t budget,
                       const std::string* out) {
  if (suite == "truth-preservation") return suite_truth_preservation(s, out);
  if (suite == "star-equiv") return suite_star_equiv(s, budget, out);
  if (suite == "bisim-conversions") return suite_bisim_conversions(s, out);
  if (suite == "roundtrip") return suite_roundtrip(s, out);
  if (suite == "truncation") return suite_truncation(s, out);
  return suite_section8(s, budget, out);
}

int run_fuzz(const std::string& suite, std::uint64_t iters, std::uint64_t seed,
             std::uint64_t jobs, const std::string& out_dir, std::uint64_t budget) {
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> first_fail{std::numeric_limits<std::uint64_t>::max()};
  std::mutex mu;
  std::optional<std::string> first_error;  // earliest-index hard error, if any
  std::uint64_t error_index = std::numeric_limits<std::uint64_t>::max();
  const auto body = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= iters || i >= first_fail.load()) return;
      bool ok = true;
      try {
        ok = run_suite(suite, seed + i, budget, nullptr).ok;
      } catch (const std::exception& e) {
        std::lock_guard lock(mu);
        if (i < error_index) {
          error_index = i;
          first_error = e.what();
        }
        ok = false;
      }
      if (ok) continue;
      std::uint64_t cur = first_fail.load();
      while (i < cur && !first_fail.compare_exchange_weak(cur, i)) {
      }
    }
  };
  if (jobs <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (std::uint64_t j = 0; j < jobs; ++j) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }
  const std::uint64_t fail = first_fail.load();
  if (fail == std::numeric_limits<std::uint64_t>::max())
    return emit(json{{"status", "pass"}, {"suite", suite}, {"iters", iters}});
  if (first_error && error_index <= fail) throw error(*first_error);
  const SuiteOutcome outcome = run_suite(suite, seed + fail, budget, &out_dir);
  json doc{{"status", "violation"},
           {"suite", suite},
           {"iter", fail},
           {"seed", seed + fail},
           {"files", outcome.files}};
  if (!outcome.detail.is_null()) doc["detail"] = outcome.detail;
  return emit(doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gmlkit: graded modal logic under Kripke, graded, and neighbourhood semantics"};
  app.require_subcommand(1);

  std::string model_path, left_path, right_path, relation_path, map_path;
  std::string world, formula_text, from, to, semantics, suite, fixture_name;
  std::string out_dir = ".";
  std::optional<std::uint64_t> cap, budget_flag;
  std::uint64_t trials = 200, iters = 200, seed = 0, jobs = 1;
  std::size_t witness_budget = 10;

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a formula at a world");
  eval_cmd->add_option("--model", model_path, "model file")->required();
  eval_cmd->add_option("--world", world, "world name")->required();
  eval_cmd->add_option("--formula", formula_text, "formula text")->required();

  auto* translate_cmd = app.add_subcommand("translate", "translate between semantics");
  translate_cmd->add_option("--from", from, "source semantics")
      ->required()
      ->check(CLI::IsMember({"kripke", "graded", "nbhd"}));
  translate_cmd->add_option("--to", to, "target semantics")
      ->required()
      ->check(CLI::IsMember({"kripke", "graded", "nbhd"}));
  translate_cmd->add_option("--model", model_path, "model file")->required();
  translate_cmd->add_option("--cap", cap, "truncation cap for graded to kripke");
  translate_cmd->add_option("--budget", budget_flag, "enumeration ceiling");

  auto* check_cmd = app.add_subcommand("check", "run a structural check");
  check_cmd->require_subcommand(1);
  auto* stars_cmd = check_cmd->add_subcommand("stars", "first-order star conditions");
  stars_cmd->add_option("--model", model_path, "explicit neighbourhood model file")->required();
  stars_cmd->add_option("--budget", budget_flag, "enumeration ceiling");
  auto* graded_frame_cmd = check_cmd->add_subcommand("graded-frame", "is the frame graded");
  graded_frame_cmd->add_option("--model", model_path, "neighbourhood model file")->required();
  graded_frame_cmd->add_option("--budget", budget_flag, "enumeration ceiling");
  auto* monotonic_cmd = check_cmd->add_subcommand("monotonic", "superset closure");
  monotonic_cmd->add_option("--model", model_path, "neighbourhood model file")->required();
  monotonic_cmd->add_option("--budget", budget_flag, "enumeration ceiling");
  auto* morphism_cmd = check_cmd->add_subcommand("morphism", "bounded morphism");
  morphism_cmd->add_option("--map", map_path, "world map file")->required();
  morphism_cmd->add_option("--left", left_path, "source model file")->required();
  morphism_cmd->add_option("--right", right_path, "target model file")->required();
  morphism_cmd->add_option("--budget", budget_flag, "enumeration ceiling");
  auto* bisim_cmd = check_cmd->add_subcommand("bisim", "graded or monotonic bisimulation");
  bisim_cmd->add_option("--left", left_path, "left model file")->required();
  bisim_cmd->add_option("--right", right_path, "right model file")->required();
  bisim_cmd->add_option("--relation", relation_path, "relation file")->required();
  bisim_cmd->add_option("--witness-budget", witness_budget, "largest checkable out-degree");
  bisim_cmd->add_option("--budget", budget_flag, "enumeration ceiling");
  auto* tuple_cmd = check_cmd->add_subcommand("tuple-bisim", "size-indexed bisimulation");
  tuple_cmd->add_option("--left", left_path, "left kripke model file")->required();
  tuple_cmd->add_option("--right", right_path, "right kripke model file")->required();
  tuple_cmd->add_option("--relation", relation_path, "tuple family file")->required();

  auto* valid_cmd = app.add_subcommand("valid", "frame validity over all valuations");
  valid_cmd->add_option("--model", model_path, "model file")->required();
  valid_cmd->add_option("--formula", formula_text, "formula text")->required();
  valid_cmd->add_option("--budget", budget_flag, "enumeration ceiling");

  auto* axioms_cmd = app.add_subcommand("axioms", "soundness sweep over random frames");
  axioms_cmd->add_option("--semantics", semantics, "frame class")
      ->required()
      ->check(CLI::IsMember({"kripke", "graded", "nbhd-core"}));
  axioms_cmd->add_option("--trials", trials, "random frames to draw");
  axioms_cmd->add_option("--seed", seed, "random seed");
  axioms_cmd->add_option("--budget", budget_flag, "enumeration ceiling");

  auto* fixture_cmd = app.add_subcommand("fixture", "write built-in example files");
  fixture_cmd->add_option("name", fixture_name, "fixture name")
      ->required()
      ->check(CLI::IsMember({"figure1-kripke", "figure1-graded", "figure1-nbhd", "section6"}));
  fixture_cmd->add_option("--out", out_dir, "output directory");

  auto* fuzz_cmd = app.add_subcommand("fuzz", "randomized property suites");
  fuzz_cmd->add_option("--suite", suite, "property suite")
      ->required()
      ->check(CLI::IsMember({"truth-preservation", "star-equiv", "bisim-conversions",
                             "roundtrip", "truncation", "section8"}));
  fuzz_cmd->add_option("--iters", iters, "iterations");
  fuzz_cmd->add_option("--seed", seed, "random seed");
  fuzz_cmd->add_option("--jobs", jobs, "worker threads");
  fuzz_cmd->add_option("--out", out_dir, "directory for witness files");
  fuzz_cmd->add_option("--budget", budget_flag, "enumeration ceiling");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (eval_cmd->parsed()) return run_eval(model_path, world, formula_text);
    if (translate_cmd->parsed())
      return run_translate(from, to, model_path, cap, resolve_budget(budget_flag));
    if (stars_cmd->parsed()) return run_check_stars(model_path, resolve_budget(budget_flag));
    if (graded_frame_cmd->parsed())
      return run_check_graded_frame(model_path, resolve_budget(budget_flag));
    if (monotonic_cmd->parsed())
      return run_check_monotonic(model_path, resolve_budget(budget_flag));
    if (morphism_cmd->parsed())
      return run_check_morphism(map_path, left_path, right_path, resolve_budget(budget_flag));
    if (bisim_cmd->parsed())
      return run_check_bisim(left_path, right_path, relation_path, witness_budget,
                             resolve_budget(budget_flag));
    if (tuple_cmd->parsed()) return run_check_tuple_bisim(left_path, right_path, relation_path);
    if (valid_cmd->parsed())
      return run_valid(model_path, formula_text, resolve_budget(budget_flag));
    if (axioms_cmd->parsed())
      return run_axioms(semantics, trials, seed, resolve_budget(budget_flag));
    if (fixture_cmd->parsed()) return run_fixture(fixture_name, out_dir);
    if (fuzz_cmd->parsed()) {
      const std::uint64_t fallback = suite == "section8" ? 100000 : kDefaultBudget;
      return run_fuzz(suite, iters, seed, jobs, out_dir,
                      resolve_budget(budget_flag, fallback));
    }
    throw input_error("no subcommand selected");
  } catch (const gml::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << canonical_dump(json{{"status", "error"}, {"error", e.what()}});
    return 2;
  }
}
