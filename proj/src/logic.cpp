#include "stitkit/logic.hpp"

#include <algorithm>

#include "stitkit/mc.hpp"

namespace stitkit {

const std::vector<SchemaTag>& all_schemas() {
  static const std::vector<SchemaTag> tags{
      SchemaTag::Incl, SchemaTag::M,    SchemaTag::N,    SchemaTag::D,   SchemaTag::Pos,
      SchemaTag::NecA, SchemaTag::Ind,  SchemaTag::KBox, SchemaTag::TBox, SchemaTag::Box4,
      SchemaTag::Box5, SchemaTag::TEx, SchemaTag::Ex4,  SchemaTag::ExB};
  return tags;
}

std::string schema_name(SchemaTag tag) {
  switch (tag) {
    case SchemaTag::Incl: return "Incl";
    case SchemaTag::M: return "M";
    case SchemaTag::N: return "N";
    case SchemaTag::D: return "D";
    case SchemaTag::Pos: return "Pos";
    case SchemaTag::NecA: return "Nec-A";
    case SchemaTag::Ind: return "Ind";
    case SchemaTag::KBox: return "K-box";
    case SchemaTag::TBox: return "T-box";
    case SchemaTag::Box4: return "4-box";
    case SchemaTag::Box5: return "5-box";
    case SchemaTag::TEx: return "T-E";
    case SchemaTag::Ex4: return "4-E";
    case SchemaTag::ExB: return "B-E";
  }
  return "?";
}

std::optional<SchemaTag> schema_from_name(const std::string& name) {
  for (SchemaTag tag : all_schemas()) {
    if (schema_name(tag) == name) return tag;
  }
  return std::nullopt;
}

SchemaArity schema_arity(SchemaTag tag) {
  switch (tag) {
    case SchemaTag::N:
    case SchemaTag::D:
      return {0, 1, false};
    case SchemaTag::M:
      return {2, 1, false};
    case SchemaTag::KBox:
      return {2, 0, false};
    case SchemaTag::TBox:
    case SchemaTag::Box4:
    case SchemaTag::Box5:
      return {1, 0, false};
    case SchemaTag::Ind:
      return {1, 1, true};
    default:
      return {1, 1, false};
  }
}

Formula instantiate(SchemaTag tag, const std::vector<Formula>& formulas,
                    const std::vector<AgentId>& agents) {
  SchemaArity arity = schema_arity(tag);
  if (arity.variadic) {
    if (agents.empty() || formulas.size() != agents.size()) {
      throw std::invalid_argument("Ind takes one formula per agent");
    }
    for (std::size_t i = 0; i < agents.size(); ++i) {
      for (std::size_t j = i + 1; j < agents.size(); ++j) {
        if (agents[i] == agents[j]) throw std::invalid_argument("Ind agents must be distinct");
      }
    }
  } else if (static_cast<int>(formulas.size()) != arity.formulas ||
             static_cast<int>(agents.size()) != arity.agents) {
    throw std::invalid_argument("arity mismatch for schema " + schema_name(tag));
  }

  switch (tag) {
    case SchemaTag::Incl:
      return Formula::implies(Formula::box(formulas[0]),
                              Formula::ability(agents[0], formulas[0]));
    case SchemaTag::M: {
      Formula both = Formula::ability(agents[0], Formula::and_of(formulas[0], formulas[1]));
      return Formula::implies(both, Formula::and_of(Formula::ability(agents[0], formulas[0]),
                                                    Formula::ability(agents[0], formulas[1])));
    }
    case SchemaTag::N:
      return Formula::ability(agents[0], Formula::top());
    case SchemaTag::D:
      return Formula::negate(Formula::ability(agents[0], Formula::bottom()));
    case SchemaTag::Pos:
      return Formula::iff(Formula::box(formulas[0]),
                          Formula::forall_core(agents[0], formulas[0]));
    case SchemaTag::NecA: {
      Formula able = Formula::ability(agents[0], formulas[0]);
      return Formula::implies(able, Formula::box(able));
    }
    case SchemaTag::Ind: {
      Formula premise = Formula::ability(agents[0], formulas[0]);
      Formula conj = formulas[0];
      for (std::size_t i = 1; i < agents.size(); ++i) {
        premise = Formula::and_of(premise, Formula::ability(agents[i], formulas[i]));
        conj = Formula::and_of(conj, formulas[i]);
      }
      return Formula::implies(premise, Formula::dia(conj));
    }
    case SchemaTag::KBox:
      return Formula::implies(Formula::box(Formula::implies(formulas[0], formulas[1])),
                              Formula::implies(Formula::box(formulas[0]),
                                               Formula::box(formulas[1])));
    case SchemaTag::TBox:
      return Formula::implies(Formula::box(formulas[0]), formulas[0]);
    case SchemaTag::Box4:
      return Formula::implies(Formula::box(formulas[0]),
                              Formula::box(Formula::box(formulas[0])));
    case SchemaTag::Box5:
      return Formula::implies(Formula::dia(formulas[0]),
                              Formula::box(Formula::dia(formulas[0])));
    case SchemaTag::TEx:
      return Formula::implies(Formula::forall_core(agents[0], formulas[0]), formulas[0]);
    case SchemaTag::Ex4:
      return Formula::implies(
          Formula::forall_core(agents[0], formulas[0]),
          Formula::forall_core(agents[0], Formula::forall_core(agents[0], formulas[0])));
    case SchemaTag::ExB:
      return Formula::implies(
          formulas[0],
          Formula::forall_core(agents[0], Formula::forall_core_dual(agents[0], formulas[0])));
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// frame generation

std::vector<AgentId> default_agents(int count) {
  static const char* names = "abcdefghijklmnopqrstuvwxyz";
  std::vector<AgentId> out;
  for (int i = 0; i < count; ++i) {
    if (i < 26) {
      out.emplace_back(std::string(1, names[i]));
    } else {
      out.emplace_back("a" + std::to_string(i));
    }
  }
  return out;
}

const std::vector<std::string>& default_atoms() {
  static const std::vector<std::string> atoms{"p", "q", "r", "s", "t"};
  return atoms;
}

namespace {

std::vector<std::string> default_states(int count) {
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) out.push_back("w" + std::to_string(i + 1));
  return out;
}

}  // namespace

// Coordinate-tuple construction: one coordinate per agent, every tuple
// inhabited, cores are coordinate preimages.
std::vector<std::vector<Subset>> grid_partition_cores(Rng& rng, int states, int agents) {
  std::vector<int> cells(agents, 1);
  int capacity = states;
  for (int a = 0; a < agents; ++a) {
    int max_cells = capacity;
    cells[a] = 1 + rng.below(max_cells);
    capacity /= cells[a];
  }
  int tuples = 1;
  for (int c : cells) tuples *= c;

  // first `tuples` slots get each combination once, the rest are random
  std::vector<std::vector<int>> coords(states, std::vector<int>(agents));
  std::vector<int> order(states);
  for (int i = 0; i < states; ++i) order[i] = i;
  rng.shuffle(order);
  for (int s = 0; s < states; ++s) {
    int t = s < tuples ? s : rng.below(tuples);
    for (int a = 0; a < agents; ++a) {
      coords[order[s]][a] = t % cells[a];
      t /= cells[a];
    }
  }

  std::vector<std::vector<Subset>> cores(agents);
  for (int a = 0; a < agents; ++a) {
    cores[a].assign(cells[a], 0);
    for (int s = 0; s < states; ++s) {
      cores[a][coords[s][a]] |= subset_single(s);
    }
  }
  return cores;
}

namespace {

bool try_perturb(Rng& rng, int states, std::vector<std::vector<Subset>>& cores) {
  int a = rng.below(static_cast<int>(cores.size()));
  auto& cells = cores[a];
  if (rng.coin() && cells.size() >= 2) {
    // merge two cells; stays a partition
    int i = rng.below(static_cast<int>(cells.size()));
    int j = rng.below(static_cast<int>(cells.size()));
    if (i == j) return false;
    cells[i] |= cells[j];
    cells.erase(cells.begin() + j);
    return true;
  }
  // add an overlapping cell; leaves class P but must keep the antichain
  // property and cross-agent independence
  Subset z = rng.nonempty_subset(states);
  for (Subset c : cells) {
    if (subset_leq(c, z) || subset_leq(z, c)) return false;
  }
  for (std::size_t b = 0; b < cores.size(); ++b) {
    if (b == static_cast<std::size_t>(a)) continue;
    for (Subset c : cores[b]) {
      if ((c & z) == 0) return false;
    }
  }
  cells.push_back(z);
  return true;
}

}  // namespace

NbhdFrame generate_frame(const FrameGenParams& params) {
  if (params.states < 1 || params.states > kMaxStates || params.agents < 1) {
    throw std::invalid_argument("infeasible frame parameters");
  }
  Rng rng(split_seed(params.seed, 0x9ea1));
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto cores = grid_partition_cores(rng, params.states, params.agents);
    if (params.style == FrameStyle::Perturbed) {
      int steps = 1 + rng.below(3);
      for (int s = 0; s < steps; ++s) try_perturb(rng, params.states, cores);
    }
    try {
      NbhdFrame frame = NbhdFrame::uniform(StateSet(default_states(params.states)),
                                           default_agents(params.agents), std::move(cores));
      if (is_class_C(frame).holds) return frame;
    } catch (const ModelError&) {
      // a perturbation broke the antichain invariant; retry
    }
  }
  throw std::invalid_argument("could not generate a class-C frame for these parameters");
}

Subset random_subset(Rng& rng, int n) { return rng.subset(n); }

std::map<std::string, Subset> random_valuation(Rng& rng, int n, int atoms) {
  std::map<std::string, Subset> val;
  for (int i = 0; i < atoms && i < static_cast<int>(default_atoms().size()); ++i) {
    val[default_atoms()[i]] = rng.subset(n);
  }
  return val;
}

Formula random_osstit_formula(Rng& rng, int atoms, const std::vector<AgentId>& agents,
                              int max_depth, bool for_translation) {
  if (max_depth <= 0 || rng.below(4) == 0) {
    int roll = rng.below(8);
    if (roll == 6) return Formula::top();
    if (roll == 7) return Formula::bottom();
    return Formula::atom(default_atoms()[rng.below(std::min(
        std::max(atoms, 1), static_cast<int>(default_atoms().size())))]);
  }
  int arity = agents.empty() ? 6 : (for_translation ? 7 : 8);
  int roll = rng.below(arity);
  switch (roll) {
    case 0:
      return Formula::negate(random_osstit_formula(rng, atoms, agents, max_depth - 1,
                                                   for_translation));
    case 1:
      return Formula::or_of(
          random_osstit_formula(rng, atoms, agents, max_depth - 1, for_translation),
          random_osstit_formula(rng, atoms, agents, max_depth - 1, for_translation));
    case 2:
      return Formula::and_of(
          random_osstit_formula(rng, atoms, agents, max_depth - 1, for_translation),
          random_osstit_formula(rng, atoms, agents, max_depth - 1, for_translation));
    case 3:
      return Formula::implies(
          random_osstit_formula(rng, atoms, agents, max_depth - 1, for_translation),
          random_osstit_formula(rng, atoms, agents, max_depth - 1, for_translation));
    case 4:
      return Formula::box(
          random_osstit_formula(rng, atoms, agents, max_depth - 1, for_translation));
    case 5:
      return Formula::dia(
          random_osstit_formula(rng, atoms, agents, max_depth - 1, for_translation));
    case 6:
      return Formula::ability(
          agents[rng.below(static_cast<int>(agents.size()))],
          random_osstit_formula(rng, atoms, agents, max_depth - 1, for_translation));
    default:
      return Formula::forall_core(
          agents[rng.below(static_cast<int>(agents.size()))],
          random_osstit_formula(rng, atoms, agents, max_depth - 1, for_translation));
  }
}

// ---------------------------------------------------------------------------
// falsifying valuations

Falsification falsify_ind(const NbhdFrame& frame) {
  CheckReport rep = check_ind(frame);
  if (rep.holds) throw ModelError("frame satisfies (ind)");
  const auto& w = rep.witness;
  AgentId a(w.at("agent_a").get<std::string>());
  AgentId b(w.at("agent_b").get<std::string>());
  std::string state = w.at("state").get<std::string>();
  Subset x = frame.states().make_subset(w.at("cell_a").get<std::vector<std::string>>());
  Subset y = frame.states().make_subset(w.at("cell_b").get<std::vector<std::string>>());

  Falsification out{{{"p", x}, {"q", y}},
                    instantiate(SchemaTag::Ind, {Formula::atom("p"), Formula::atom("q")}, {a, b}),
                    state};
  NbhdModel model{frame, out.valuation};
  if (eval(model, state, out.instance)) {
    throw ModelError("falsifying construction failed for (ind)");
  }
  return out;
}

Falsification falsify_nec(const NbhdFrame& frame) {
  CheckReport rep = check_nec(frame);
  if (rep.holds) throw ModelError("frame satisfies (nec)");
  const auto& w = rep.witness;
  AgentId agent(w.at("agent").get<std::string>());
  std::string state = w.at("state").get<std::string>();
  Subset x = frame.states().make_subset(w.at("set").get<std::vector<std::string>>());

  Falsification out{{{"p", x}},
                    instantiate(SchemaTag::NecA, {Formula::atom("p")}, {agent}),
                    state};
  NbhdModel model{frame, out.valuation};
  if (eval(model, state, out.instance)) {
    throw ModelError("falsifying construction failed for (nec)");
  }
  return out;
}

Falsification falsify_un(const NbhdFrame& frame) {
  CheckReport rep = check_un(frame);
  if (rep.holds) throw ModelError("frame satisfies (un)");
  const auto& w = rep.witness;
  AgentId agent(w.at("agent").get<std::string>());
  std::string state = w.at("state").get<std::string>();
  Subset covered =
      frame.core_union(frame.agent_index(agent), frame.states().index_of(state));

  Falsification out{{{"p", covered}},
                    instantiate(SchemaTag::Pos, {Formula::atom("p")}, {agent}),
                    state};
  NbhdModel model{frame, out.valuation};
  if (eval(model, state, out.instance)) {
    throw ModelError("falsifying construction failed for (un)");
  }
  return out;
}

}  // namespace stitkit
