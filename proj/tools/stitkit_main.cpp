#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "stitkit/bridge.hpp"
#include "stitkit/btac.hpp"
#include "stitkit/logic.hpp"
#include "stitkit/mc.hpp"
#include "stitkit/morphism.hpp"
#include "stitkit/nbhd.hpp"
#include "stitkit/parser.hpp"
#include "stitkit/sweep.hpp"

namespace {

using nlohmann::json;
using namespace stitkit;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitError = 2;

struct Options {
  std::string model_path;
  std::string bt_model_path;
  std::string source_path;
  std::string target_path;
  std::string map_path;
  std::string formula;
  std::string state;
  std::string frame_class = "C";
  std::string schemas;
  int max_states = 5;
  int agents = 2;
  int atoms = 3;
  int frames = 500;
  int depth = -1;
  double max_seconds = 600.0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool pretty = false;
  bool serial = false;
  bool timing = false;
};

void print_json(const json& j, const Options& opt) {
  if (opt.pretty) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << j.dump() << "\n";
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

std::uint64_t effective_seed(const Options& opt) {
  if (opt.seed_given) return opt.seed;
  if (const char* env = std::getenv("STITKIT_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return opt.seed;
}

ExecMode exec_mode(const Options& opt) {
  return opt.serial ? ExecMode::Serial : ExecMode::Parallel;
}

std::vector<SchemaTag> parse_schemas(const std::string& list) {
  if (list.empty()) return all_schemas();
  std::vector<SchemaTag> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t comma = list.find(',', pos);
    std::string name =
        list.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!name.empty()) {
      auto tag = schema_from_name(name);
      if (!tag) throw ModelError("unknown schema: '" + name + "'");
      out.push_back(*tag);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw ModelError("empty schema list");
  return out;
}

int cmd_parse(const Options& opt) {
  Formula f = parse(opt.formula);
  json out{{"formula", render(f)},
           {"normalized", render(normalize(f))},
           {"vars", vars_of(f)},
           {"modalDepth", modal_depth(f)},
           {"osstitPure", is_osstit_pure(f)},
           {"cstitPure", is_cstit_pure(f)}};
  json agents = json::array();
  for (const auto& a : agents_of(f)) agents.push_back(a.name());
  out["agents"] = agents;
  print_json(out, opt);
  return kExitHolds;
}

int cmd_check(const Options& opt) {
  NbhdModel model = nbhd_model_from_json(load_json_file(opt.model_path));
  Formula f = parse(opt.formula);
  bool value = eval(model, opt.state, f);
  print_json(json{{"value", value}}, opt);
  return value ? kExitHolds : kExitFails;
}

int cmd_frame(const Options& opt) {
  if (!opt.bt_model_path.empty()) {
    json j = load_json_file(opt.bt_model_path);
    try {
      BTACModel model = btac_model_from_json(j);
      CheckReport rep = validate_btac(model);
      print_json(rep.to_json(), opt);
      return rep.holds ? kExitHolds : kExitFails;
    } catch (const ModelError& e) {
      if (!e.detail().is_null()) {
        print_json(json{{"label", "btac"}, {"holds", false}, {"witness", e.detail()}}, opt);
        return kExitFails;
      }
      throw;
    }
  }
  NbhdModel model = nbhd_model_from_json(load_json_file(opt.model_path));
  json checks;
  checks["ind"] = check_ind(model.frame).to_json();
  checks["nec"] = check_nec(model.frame).to_json();
  checks["un"] = check_un(model.frame).to_json();
  CheckReport overall;
  if (opt.frame_class == "P") {
    checks["partition-cores"] = check_partition_cores(model.frame).to_json();
    overall = is_class_P(model.frame);
  } else if (opt.frame_class == "C") {
    overall = is_class_C(model.frame);
  } else {
    throw ModelError("unknown frame class: '" + opt.frame_class + "' (use C or P)");
  }
  json out = overall.to_json();
  out["checks"] = std::move(checks);
  print_json(out, opt);
  return overall.holds ? kExitHolds : kExitFails;
}

int cmd_validity(const Options& opt) {
  Formula f = parse(opt.formula);
  SearchBounds bounds;
  bounds.max_states = opt.max_states;
  bounds.agent_count = opt.agents;
  bounds.atom_count = opt.atoms;
  bounds.max_seconds = opt.max_seconds;
  ValidityResult result = validity_search(f, bounds, exec_mode(opt));
  json out = result.to_json();
  if (!opt.timing) out.erase("elapsedMs");
  print_json(out, opt);
  switch (result.verdict) {
    case ValidityResult::Verdict::ValidUpToBound:
      return kExitHolds;
    case ValidityResult::Verdict::Countermodel:
      return kExitFails;
    case ValidityResult::Verdict::Timeout:
      return kExitError;
  }
  return kExitError;
}

int cmd_translate(const Options& opt) {
  Formula f = parse(opt.formula);
  Formula tr = translate_tr(f);
  print_json(json{{"input", render(f)}, {"translation", render(tr)}}, opt);
  return kExitHolds;
}

int cmd_translate_check(const Options& opt) {
  BTACModel model = btac_model_from_json(load_json_file(opt.bt_model_path));
  Formula f = parse(opt.formula);
  CheckReport rep = check_translation_equiv(model, f);
  print_json(rep.to_json(), opt);
  return rep.holds ? kExitHolds : kExitFails;
}

int cmd_morphism(const Options& opt) {
  NbhdModel source = nbhd_model_from_json(load_json_file(opt.source_path));
  NbhdModel target = nbhd_model_from_json(load_json_file(opt.target_path));
  json map_json = load_json_file(opt.map_path);
  std::map<std::string, std::string> map;
  for (const auto& [src, tgt] : map_json.items()) {
    map[src] = tgt.get<std::string>();
  }
  CoreMorphism morphism(source.frame, target.frame, map);

  CheckReport bounded = is_bounded_core_morphism(morphism);
  bool surjective = is_surjective(morphism);
  json out{{"boundedCoreMorphism", bounded.to_json()}, {"surjective", surjective}};
  bool holds = bounded.holds && surjective;
  if (opt.depth >= 0) {
    CheckReport equiv = check_modal_equivalence(morphism, source, opt.depth);
    out["modalEquivalence"] = equiv.to_json();
    holds = holds && equiv.holds;
  }
  print_json(out, opt);
  return holds ? kExitHolds : kExitFails;
}

int cmd_fuzz(const Options& opt) {
  FuzzConfig config;
  config.models = opt.frames;
  config.bounds.max_states = opt.max_states;
  config.bounds.agent_count = opt.agents;
  config.bounds.atom_count = opt.atoms;
  config.schemas = parse_schemas(opt.schemas);
  config.seed = effective_seed(opt);
  FuzzReport rep = soundness_fuzz(config, exec_mode(opt));
  json out = rep.report.to_json();
  out["verdict"] = rep.report.holds ? "sound" : "counterexample";
  out["modelsChecked"] = rep.models_checked;
  out["instancesChecked"] = rep.instances_checked;
  out["statesExplored"] = rep.states_explored;
  if (opt.timing) out["elapsedMs"] = rep.elapsed_ms;
  print_json(out, opt);
  return rep.report.holds ? kExitHolds : kExitFails;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strategic stit toolkit: parsing, model checking, frame validation,\n"
               "translation checking and bounded validity search"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_flag("--json", opt.pretty, "pretty-print JSON output");
  };
  auto add_seeded = [&](CLI::App* cmd) {
    cmd->add_option("--seed", opt.seed, "RNG seed (STITKIT_SEED as fallback)")
        ->each([&](const std::string&) { opt.seed_given = true; });
    cmd->add_flag("--serial", opt.serial, "disable the OpenMP kernels");
    cmd->add_flag("--timing", opt.timing, "include wall-clock fields in reports");
  };

  CLI::App* parse_cmd = app.add_subcommand("parse", "parse and print a formula");
  parse_cmd->add_option("--formula", opt.formula, "formula text")->required();
  add_common(parse_cmd);

  CLI::App* check_cmd = app.add_subcommand("check", "evaluate a formula at a state");
  check_cmd->add_option("--model", opt.model_path, "strategic model file")->required();
  check_cmd->add_option("--formula", opt.formula, "formula text")->required();
  check_cmd->add_option("--state", opt.state, "evaluation state")->required();
  add_common(check_cmd);

  CLI::App* frame_cmd = app.add_subcommand("frame", "check frame class membership");
  frame_cmd->add_option("--model", opt.model_path, "strategic model file");
  frame_cmd->add_option("--bt-model", opt.bt_model_path, "BT+AC model file");
  frame_cmd->add_option("--class", opt.frame_class, "frame class to check: C or P");
  add_common(frame_cmd);

  CLI::App* validity_cmd =
      app.add_subcommand("validity", "bounded validity / countermodel search");
  validity_cmd->add_option("--formula", opt.formula, "formula text")->required();
  validity_cmd->add_option("--max-states", opt.max_states, "state count bound");
  validity_cmd->add_option("--agents", opt.agents, "agent count");
  validity_cmd->add_option("--max-seconds", opt.max_seconds, "time budget");
  add_common(validity_cmd);
  add_seeded(validity_cmd);

  CLI::App* translate_cmd = app.add_subcommand("translate", "strategic-to-classical translation");
  translate_cmd->add_option("--formula", opt.formula, "formula text")->required();
  add_common(translate_cmd);

  CLI::App* tc_cmd = app.add_subcommand(
      "translate-check", "check the translation equivalence on a BT+AC model");
  tc_cmd->add_option("--bt-model", opt.bt_model_path, "BT+AC model file")->required();
  tc_cmd->add_option("--formula", opt.formula, "strategic formula")->required();
  add_common(tc_cmd);

  CLI::App* morphism_cmd =
      app.add_subcommand("morphism", "bounded core morphism checks between two models");
  morphism_cmd->add_option("--source", opt.source_path, "source model file")->required();
  morphism_cmd->add_option("--target", opt.target_path, "target model file")->required();
  morphism_cmd->add_option("--map", opt.map_path, "state map file {SRC: TGT}")->required();
  morphism_cmd->add_option("--depth", opt.depth,
                           "also check modal equivalence up to this depth");
  add_common(morphism_cmd);

  CLI::App* fuzz_cmd = app.add_subcommand("fuzz", "soundness fuzzing over class-C models");
  fuzz_cmd->add_option("--frames", opt.frames, "number of models");
  fuzz_cmd->add_option("--max-states", opt.max_states, "state count bound");
  fuzz_cmd->add_option("--agents", opt.agents, "agent count bound");
  fuzz_cmd->add_option("--atoms", opt.atoms, "atom count bound");
  fuzz_cmd->add_option("--schemas", opt.schemas, "comma-separated schema names");
  add_common(fuzz_cmd);
  add_seeded(fuzz_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(opt);
    if (check_cmd->parsed()) return cmd_check(opt);
    if (frame_cmd->parsed()) return cmd_frame(opt);
    if (validity_cmd->parsed()) return cmd_validity(opt);
    if (translate_cmd->parsed()) return cmd_translate(opt);
    if (tc_cmd->parsed()) return cmd_translate_check(opt);
    if (morphism_cmd->parsed()) return cmd_morphism(opt);
    if (fuzz_cmd->parsed()) return cmd_fuzz(opt);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const TranslateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!e.detail().is_null()) std::cerr << e.detail().dump() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
