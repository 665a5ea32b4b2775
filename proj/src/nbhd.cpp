#include "stitkit/nbhd.hpp"

#include <algorithm>

namespace stitkit {

StateSet::StateSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw ModelError("state set must be nonempty");
  if (static_cast<int>(names_.size()) > kMaxStates) {
    throw ModelError("state set exceeds " + std::to_string(kMaxStates) + " states");
  }
  for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
    if (names_[i].empty()) throw ModelError("empty state name");
    if (!index_.emplace(names_[i], i).second) {
      throw ModelError("duplicate state name: '" + names_[i] + "'");
    }
  }
}

int StateSet::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ModelError("unknown state: '" + name + "'");
  return it->second;
}

Subset StateSet::make_subset(const std::vector<std::string>& names) const {
  Subset s = 0;
  for (const auto& n : names) s |= subset_single(index_of(n));
  return s;
}

std::vector<std::string> StateSet::names_of(Subset s) const {
  std::vector<std::string> out;
  for (int i : subset_members(s)) out.push_back(name(i));
  return out;
}

nlohmann::json subset_to_json(const StateSet& states, Subset s) {
  return nlohmann::json(states.names_of(s));
}

NbhdFrame::NbhdFrame(StateSet states, std::vector<AgentId> agents,
                     std::vector<std::vector<std::vector<Subset>>> gens)
    : states_(std::move(states)), agents_(std::move(agents)), gens_(std::move(gens)) {
  if (agents_.empty()) throw ModelError("agent set must be nonempty");
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    for (std::size_t j = i + 1; j < agents_.size(); ++j) {
      if (agents_[i] == agents_[j]) {
        throw ModelError("duplicate agent: '" + agents_[i].name() + "'");
      }
    }
  }
  if (gens_.size() != agents_.size()) throw ModelError("generator table/agent count mismatch");
  const Subset full = states_.full();
  for (std::size_t a = 0; a < gens_.size(); ++a) {
    if (static_cast<int>(gens_[a].size()) != states_.size()) {
      throw ModelError("generator table/state count mismatch for agent '" + agents_[a].name() +
                       "'");
    }
    for (int w = 0; w < states_.size(); ++w) {
      auto& cells = gens_[a][w];
      if (cells.empty()) {
        throw ModelError("empty generator list", {{"agent", agents_[a].name()},
                                                  {"state", states_.name(w)}});
      }
      std::sort(cells.begin(), cells.end());
      cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
      for (Subset x : cells) {
        if (x == 0) {
          throw ModelError("empty set as generator", {{"agent", agents_[a].name()},
                                                      {"state", states_.name(w)}});
        }
        if (!subset_leq(x, full)) throw ModelError("generator not a subset of the state set");
      }
      for (Subset x : cells) {
        for (Subset y : cells) {
          if (subset_lt(x, y)) {
            throw ModelError("generators are not an antichain",
                             {{"agent", agents_[a].name()},
                              {"state", states_.name(w)},
                              {"contained", subset_to_json(states_, x)},
                              {"containing", subset_to_json(states_, y)}});
          }
        }
      }
    }
  }
}

NbhdFrame NbhdFrame::uniform(StateSet states, std::vector<AgentId> agents,
                             std::vector<std::vector<Subset>> gens_per_agent) {
  std::vector<std::vector<std::vector<Subset>>> gens;
  gens.reserve(agents.size());
  const int n = states.size();
  for (auto& cells : gens_per_agent) {
    gens.emplace_back(n, cells);
  }
  return NbhdFrame(std::move(states), std::move(agents), std::move(gens));
}

int NbhdFrame::agent_index(const AgentId& agent) const {
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    if (agents_[i] == agent) return static_cast<int>(i);
  }
  throw ModelError("unknown agent: '" + agent.name() + "'");
}

const std::vector<Subset>& NbhdFrame::core(int agent, int state) const {
  return gens_.at(agent).at(state);
}

const std::vector<Subset>& NbhdFrame::core(const AgentId& agent, const std::string& state) const {
  return core(agent_index(agent), states_.index_of(state));
}

bool NbhdFrame::member(int agent, int state, Subset x) const {
  for (Subset g : core(agent, state)) {
    if (subset_leq(g, x)) return true;
  }
  return false;
}

bool NbhdFrame::member(const AgentId& agent, const std::string& state, Subset x) const {
  return member(agent_index(agent), states_.index_of(state), x);
}

Subset NbhdFrame::core_union(int agent, int state) const {
  Subset u = 0;
  for (Subset g : core(agent, state)) u |= g;
  return u;
}

bool NbhdFrame::operator==(const NbhdFrame& other) const {
  if (!(states_ == other.states_)) return false;
  if (agents_.size() != other.agents_.size()) return false;
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    if (agents_[i] != other.agents_[i]) return false;
  }
  return gens_ == other.gens_;
}

// ---------------------------------------------------------------------------
// frame-condition checks

CheckReport check_ind(const NbhdFrame& frame) {
  // Checking the cores suffices: supersets of intersecting cells intersect.
  for (int w = 0; w < frame.num_states(); ++w) {
    for (int a = 0; a < frame.num_agents(); ++a) {
      for (int b = a + 1; b < frame.num_agents(); ++b) {
        for (Subset x : frame.core(a, w)) {
          for (Subset y : frame.core(b, w)) {
            if ((x & y) == 0) {
              return CheckReport::fail(
                  "ind", {{"state", frame.states().name(w)},
                          {"agent_a", frame.agents()[a].name()},
                          {"agent_b", frame.agents()[b].name()},
                          {"cell_a", subset_to_json(frame.states(), x)},
                          {"cell_b", subset_to_json(frame.states(), y)}});
            }
          }
        }
      }
    }
  }
  return CheckReport::pass("ind");
}

namespace {

// A set in one induced neighbourhood but not the other, if any. Exists
// whenever the generator antichains differ: otherwise each family's
// generators would be members of the other and the two monotone families
// (hence their minimal elements) would coincide.
bool separating_set(const NbhdFrame& frame, int agent, int w1, int w2, Subset& out) {
  for (Subset g : frame.core(agent, w1)) {
    if (!frame.member(agent, w2, g)) {
      out = g;
      return true;
    }
  }
  return false;
}

}  // namespace

CheckReport check_nec(const NbhdFrame& frame) {
  for (int a = 0; a < frame.num_agents(); ++a) {
    for (int w = 1; w < frame.num_states(); ++w) {
      if (frame.core(a, w) == frame.core(a, 0)) continue;
      Subset x = 0;
      int from = 0, to = w;
      if (!separating_set(frame, a, from, to, x)) {
        std::swap(from, to);
        separating_set(frame, a, from, to, x);
      }
      return CheckReport::fail("nec", {{"agent", frame.agents()[a].name()},
                                       {"state", frame.states().name(from)},
                                       {"other_state", frame.states().name(to)},
                                       {"set", subset_to_json(frame.states(), x)}});
    }
  }
  return CheckReport::pass("nec");
}

CheckReport check_un(const NbhdFrame& frame) {
  const Subset full = frame.states().full();
  for (int a = 0; a < frame.num_agents(); ++a) {
    for (int w = 0; w < frame.num_states(); ++w) {
      Subset u = frame.core_union(a, w);
      if (u != full) {
        return CheckReport::fail("un", {{"agent", frame.agents()[a].name()},
                                        {"state", frame.states().name(w)},
                                        {"uncovered", subset_to_json(frame.states(), full & ~u)}});
      }
    }
  }
  return CheckReport::pass("un");
}

CheckReport check_partition_cores(const NbhdFrame& frame) {
  for (int a = 0; a < frame.num_agents(); ++a) {
    for (int w = 0; w < frame.num_states(); ++w) {
      const auto& cells = frame.core(a, w);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t j = i + 1; j < cells.size(); ++j) {
          Subset overlap = cells[i] & cells[j];
          if (overlap != 0) {
            return CheckReport::fail(
                "partition-cores", {{"agent", frame.agents()[a].name()},
                                    {"state", frame.states().name(w)},
                                    {"cell_a", subset_to_json(frame.states(), cells[i])},
                                    {"cell_b", subset_to_json(frame.states(), cells[j])},
                                    {"overlap", subset_to_json(frame.states(), overlap)}});
          }
        }
      }
    }
  }
  return CheckReport::pass("partition-cores");
}

static CheckReport aggregate(const char* label, std::vector<CheckReport> subs) {
  for (auto& sub : subs) {
    if (!sub.holds) {
      CheckReport r = CheckReport::fail(label, {{"failed", sub.label}, {"witness", sub.witness}});
      return r;
    }
  }
  return CheckReport::pass(label);
}

CheckReport is_class_C(const NbhdFrame& frame) {
  // Monotonicity, (N) and (D) hold by construction of the generator form.
  return aggregate("class-C", {check_ind(frame), check_nec(frame), check_un(frame)});
}

CheckReport is_class_P(const NbhdFrame& frame) {
  return aggregate("class-P", {check_ind(frame), check_nec(frame), check_un(frame),
                               check_partition_cores(frame)});
}

RelationReport relation_Ri(const NbhdFrame& frame, const AgentId& agent) {
  CheckReport nec = check_nec(frame);
  if (!nec.holds) {
    throw ModelError("relation_Ri requires (nec)", nec.witness);
  }
  int a = frame.agent_index(agent);
  RelationReport rep;
  rep.field = frame.core_union(a, 0);
  rep.rows.assign(frame.num_states(), 0);
  for (int w = 0; w < frame.num_states(); ++w) {
    if (subset_contains(rep.field, w)) rep.rows[w] = rep.field;
  }
  rep.reflexive_on_field = true;
  rep.symmetric = true;
  rep.transitive = true;
  for (int w = 0; w < frame.num_states(); ++w) {
    if (subset_contains(rep.field, w) && !subset_contains(rep.rows[w], w)) {
      rep.reflexive_on_field = false;
    }
    for (int v : subset_members(rep.rows[w])) {
      if (!subset_contains(rep.rows[v], w)) rep.symmetric = false;
      if (!subset_leq(rep.rows[v], rep.rows[w])) rep.transitive = false;
    }
  }
  rep.total = rep.field == frame.states().full();
  return rep;
}

// ---------------------------------------------------------------------------
// JSON

NbhdModel nbhd_model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ModelError("model file must be a JSON object");
  for (const char* key : {"states", "agents", "choice"}) {
    if (!j.contains(key)) throw ModelError(std::string("model file missing '") + key + "'");
  }
  StateSet states(j.at("states").get<std::vector<std::string>>());
  std::vector<AgentId> agents;
  for (const auto& name : j.at("agents")) agents.emplace_back(name.get<std::string>());

  auto parse_cells = [&](const nlohmann::json& arr) {
    std::vector<Subset> cells;
    for (const auto& cell : arr) {
      cells.push_back(states.make_subset(cell.get<std::vector<std::string>>()));
    }
    return cells;
  };

  std::vector<std::vector<std::vector<Subset>>> gens;
  const auto& choice = j.at("choice");
  for (const auto& agent : agents) {
    if (!choice.contains(agent.name())) {
      throw ModelError("choice table missing agent '" + agent.name() + "'");
    }
    const auto& table = choice.at(agent.name());
    bool uniform = table.contains("uniform") && !states.contains("uniform");
    if (uniform && table.size() != 1) {
      throw ModelError("'uniform' cannot be mixed with per-state entries");
    }
    std::vector<std::vector<Subset>> per_state(states.size());
    if (uniform) {
      auto cells = parse_cells(table.at("uniform"));
      for (auto& slot : per_state) slot = cells;
    } else {
      for (const auto& [state, arr] : table.items()) {
        per_state[states.index_of(state)] = parse_cells(arr);
      }
      for (int w = 0; w < states.size(); ++w) {
        if (per_state[w].empty()) {
          throw ModelError("choice for agent '" + agent.name() + "' missing state '" +
                           states.name(w) + "'");
        }
      }
    }
    gens.push_back(std::move(per_state));
  }

  NbhdModel model{NbhdFrame(std::move(states), std::move(agents), std::move(gens)), {}};
  if (j.contains("valuation")) {
    for (const auto& [atom, arr] : j.at("valuation").items()) {
      if (!is_identifier(atom)) throw ModelError("invalid atom name: '" + atom + "'");
      model.valuation[atom] =
          model.frame.states().make_subset(arr.get<std::vector<std::string>>());
    }
  }
  return model;
}

nlohmann::json nbhd_model_to_json(const NbhdModel& model) {
  const NbhdFrame& frame = model.frame;
  nlohmann::json j;
  j["states"] = frame.states().names();
  nlohmann::json agents = nlohmann::json::array();
  for (const auto& a : frame.agents()) agents.push_back(a.name());
  j["agents"] = agents;

  nlohmann::json choice = nlohmann::json::object();
  for (int a = 0; a < frame.num_agents(); ++a) {
    bool uniform = !frame.states().contains("uniform");
    for (int w = 1; w < frame.num_states() && uniform; ++w) {
      uniform = frame.core(a, w) == frame.core(a, 0);
    }
    auto cells_json = [&](int w) {
      nlohmann::json arr = nlohmann::json::array();
      for (Subset x : frame.core(a, w)) arr.push_back(subset_to_json(frame.states(), x));
      return arr;
    };
    nlohmann::json table = nlohmann::json::object();
    if (uniform) {
      table["uniform"] = cells_json(0);
    } else {
      for (int w = 0; w < frame.num_states(); ++w) {
        table[frame.states().name(w)] = cells_json(w);
      }
    }
    choice[frame.agents()[a].name()] = std::move(table);
  }
  j["choice"] = std::move(choice);

  nlohmann::json val = nlohmann::json::object();
  for (const auto& [atom, set] : model.valuation) {
    val[atom] = subset_to_json(frame.states(), set);
  }
  j["valuation"] = std::move(val);
  return j;
}

}  // namespace stitkit
