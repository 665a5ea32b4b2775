#include "stitkit/btac.hpp"

#include <algorithm>

namespace stitkit {

BTFrame::BTFrame(std::vector<std::string> moments,
                 const std::vector<std::pair<std::string, std::string>>& order)
    : moments_(std::move(moments)), pairs_(order) {
  if (moments_.empty()) throw ModelError("moment set must be nonempty");
  if (static_cast<int>(moments_.size()) > kMaxStates) {
    throw ModelError("moment set exceeds " + std::to_string(kMaxStates) + " moments");
  }
  for (std::size_t i = 0; i < moments_.size(); ++i) {
    for (std::size_t j = i + 1; j < moments_.size(); ++j) {
      if (moments_[i] == moments_[j]) throw ModelError("duplicate moment: '" + moments_[i] + "'");
    }
  }
  const int n = num_moments();
  above_.assign(n, 0);
  for (const auto& [lo, hi] : pairs_) {
    above_[index_of(lo)] |= subset_single(index_of(hi));
  }
  // transitive closure
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      Subset next = above_[i];
      for (int j : subset_members(above_[i])) next |= above_[j];
      if (next != above_[i]) {
        above_[i] = next;
        changed = true;
      }
    }
  }
  below_.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j : subset_members(above_[i])) below_[j] |= subset_single(i);
  }
}

int BTFrame::index_of(const std::string& name) const {
  for (int i = 0; i < num_moments(); ++i) {
    if (moments_[i] == name) return i;
  }
  throw ModelError("unknown moment: '" + name + "'");
}

CheckReport BTFrame::report() const {
  for (int m = 0; m < num_moments(); ++m) {
    if (less(m, m)) {
      return CheckReport::fail("bt-frame", {{"violated", "irreflexivity"}, {"moment", name(m)}});
    }
  }
  for (int m = 0; m < num_moments(); ++m) {
    auto preds = subset_members(below_[m]);
    for (std::size_t i = 0; i < preds.size(); ++i) {
      for (std::size_t j = i + 1; j < preds.size(); ++j) {
        int p = preds[i], q = preds[j];
        if (!less(p, q) && !less(q, p)) {
          return CheckReport::fail("bt-frame", {{"violated", "backward-linearity"},
                                                {"moment", name(m)},
                                                {"predecessor_a", name(p)},
                                                {"predecessor_b", name(q)}});
        }
      }
    }
  }
  return CheckReport::pass("bt-frame");
}

std::vector<History> histories(const BTFrame& frame) {
  CheckReport rep = frame.report();
  if (!rep.holds) throw ModelError("invalid BT frame", rep.witness);
  std::vector<History> out;
  for (int m = 0; m < frame.num_moments(); ++m) {
    if (frame.above(m) == 0) {
      out.push_back({frame.below(m) | subset_single(m), m});
    }
  }
  return out;
}

std::vector<History> histories_through(const BTFrame& frame, const std::string& moment) {
  int m = frame.index_of(moment);
  std::vector<History> out;
  for (const History& h : histories(frame)) {
    if (subset_contains(h.moments, m)) out.push_back(h);
  }
  return out;
}

BTACModel::BTACModel(
    BTFrame frame, std::vector<AgentId> agents,
    const std::map<std::string, std::map<std::string, std::vector<std::vector<std::string>>>>& choice,
    const std::map<std::string, std::vector<std::pair<std::string, std::string>>>& valuation)
    : frame_(std::move(frame)), agents_(std::move(agents)) {
  if (agents_.empty()) throw ModelError("agent set must be nonempty");
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    for (std::size_t j = i + 1; j < agents_.size(); ++j) {
      if (agents_[i] == agents_[j]) throw ModelError("duplicate agent: '" + agents_[i].name() + "'");
    }
  }
  histories_ = histories(frame_);
  const int n = frame_.num_moments();
  hm_.assign(n, 0);
  for (std::size_t h = 0; h < histories_.size(); ++h) {
    for (int m : subset_members(histories_[h].moments)) {
      hm_[m] |= subset_single(static_cast<int>(h));
    }
  }

  choice_.assign(agents_.size(), std::vector<std::vector<Subset>>(n));
  for (std::size_t a = 0; a < agents_.size(); ++a) {
    auto table = choice.find(agents_[a].name());
    if (table == choice.end()) {
      throw ModelError("choice table missing agent '" + agents_[a].name() + "'");
    }
    for (int m = 0; m < n; ++m) {
      auto cells = table->second.find(frame_.name(m));
      if (cells == table->second.end()) {
        throw ModelError("choice for agent '" + agents_[a].name() + "' missing moment '" +
                         frame_.name(m) + "'");
      }
      for (const auto& cell : cells->second) {
        Subset hs = 0;
        for (const auto& id : cell) hs |= subset_single(history_index(id));
        choice_[a][m].push_back(hs);
      }
    }
  }

  for (const auto& [atom, pairs] : valuation) {
    if (!is_identifier(atom)) throw ModelError("invalid atom name: '" + atom + "'");
    std::vector<Subset> per_moment(n, 0);
    for (const auto& [moment, hist] : pairs) {
      int m = frame_.index_of(moment);
      int h = history_index(hist);
      if (!subset_contains(hm_[m], h)) {
        throw ModelError("valuation index " + moment + "/" + hist +
                         ": history does not pass through the moment");
      }
      per_moment[m] |= subset_single(h);
    }
    valuation_[atom] = std::move(per_moment);
  }
}

int BTACModel::agent_index(const AgentId& agent) const {
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    if (agents_[i] == agent) return static_cast<int>(i);
  }
  throw ModelError("unknown agent: '" + agent.name() + "'");
}

int BTACModel::history_index(const std::string& id) const {
  for (std::size_t h = 0; h < histories_.size(); ++h) {
    if (history_id(static_cast<int>(h)) == id) return static_cast<int>(h);
  }
  throw ModelError("unknown history id: '" + id + "'");
}

const std::vector<Subset>& BTACModel::choice_cells(int agent, int m) const {
  return choice_.at(agent).at(m);
}

Subset BTACModel::choice_cell_of(int agent, int m, int h) const {
  for (Subset cell : choice_cells(agent, m)) {
    if (subset_contains(cell, h)) return cell;
  }
  return 0;
}

bool BTACModel::val_at(const std::string& atom, int m, int h) const {
  auto it = valuation_.find(atom);
  if (it == valuation_.end()) return false;
  return subset_contains(it->second.at(m), h);
}

Index BTACModel::index_of(const std::string& moment, const std::string& history) const {
  Index idx{frame_.index_of(moment), history_index(history)};
  if (!valid_index(idx)) {
    throw ModelError("invalid index " + moment + "/" + history);
  }
  return idx;
}

bool BTACModel::valid_index(const Index& idx) const {
  return idx.moment >= 0 && idx.moment < frame_.num_moments() && idx.history >= 0 &&
         idx.history < static_cast<int>(histories_.size()) &&
         subset_contains(hm_[idx.moment], idx.history);
}

namespace {

struct CstitEval {
  const BTACModel& model;

  bool run(int m, int h, const Formula& f) {
    switch (f.kind()) {
      case Kind::Atom:
        return model.val_at(f.atom_name(), m, h);
      case Kind::Not:
        return !run(m, h, f.child());
      case Kind::Or:
        return run(m, h, f.left()) || run(m, h, f.right());
      case Kind::And:
        return run(m, h, f.left()) && run(m, h, f.right());
      case Kind::Implies:
        return !run(m, h, f.left()) || run(m, h, f.right());
      case Kind::Iff:
        return run(m, h, f.left()) == run(m, h, f.right());
      case Kind::Box:
        return forall(m, model.hm(m), f.child());
      case Kind::Dia:
        return !forall_neg(m, model.hm(m), f.child());
      case Kind::Stit:
        return forall(m, cell(f.agent(), m, h), f.child());
      case Kind::StitDual:
        return !forall_neg(m, cell(f.agent(), m, h), f.child());
      case Kind::Ability:
      case Kind::AbilityDual:
      case Kind::ForallCore:
      case Kind::ForallCoreDual:
        throw ModelError("strategic operator is not part of the classical language: " + render(f));
    }
    throw std::logic_error("unreachable");
  }

  Subset cell(const AgentId& agent, int m, int h) {
    int a = model.agent_index(agent);
    Subset c = model.choice_cell_of(a, m, h);
    if (c == 0) {
      throw ModelError("history '" + model.history_id(h) + "' not covered by choice of '" +
                       agent.name() + "' at '" + model.frame().name(m) + "'");
    }
    return c;
  }

  bool forall(int m, Subset hs, const Formula& f) {
    for (int h : subset_members(hs)) {
      if (!run(m, h, f)) return false;
    }
    return true;
  }

  bool forall_neg(int m, Subset hs, const Formula& f) {
    for (int h : subset_members(hs)) {
      if (run(m, h, f)) return false;
    }
    return true;
  }
};

}  // namespace

bool eval_cstit(const BTACModel& model, const Index& idx, const Formula& f) {
  if (!model.valid_index(idx)) throw ModelError("invalid evaluation index");
  return CstitEval{model}.run(idx.moment, idx.history, f);
}

CheckReport validate_btac(const BTACModel& model) {
  CheckReport frame_rep = model.frame().report();
  if (!frame_rep.holds) {
    return CheckReport::fail("btac", {{"failed", "bt-frame"}, {"witness", frame_rep.witness}});
  }
  const BTFrame& frame = model.frame();
  auto hist_names = [&](Subset hs) {
    nlohmann::json arr = nlohmann::json::array();
    for (int h : subset_members(hs)) arr.push_back(model.history_id(h));
    return arr;
  };
  for (int m = 0; m < frame.num_moments(); ++m) {
    for (int a = 0; a < model.num_agents(); ++a) {
      const auto& cells = model.choice_cells(a, m);
      nlohmann::json where = {{"agent", model.agents()[a].name()}, {"moment", frame.name(m)}};
      if (cells.empty()) {
        where["violated"] = "empty choice";
        return CheckReport::fail("btac", where);
      }
      Subset seen = 0;
      for (Subset cell : cells) {
        if (cell == 0) {
          where["violated"] = "empty cell";
          return CheckReport::fail("btac", where);
        }
        if ((cell & seen) != 0) {
          where["violated"] = "cells overlap";
          where["overlap"] = hist_names(cell & seen);
          return CheckReport::fail("btac", where);
        }
        if (!subset_leq(cell, model.hm(m))) {
          where["violated"] = "cell outside H_m";
          where["cell"] = hist_names(cell);
          return CheckReport::fail("btac", where);
        }
        seen |= cell;
      }
      if (seen != model.hm(m)) {
        where["violated"] = "cells do not cover H_m";
        where["uncovered"] = hist_names(model.hm(m) & ~seen);
        return CheckReport::fail("btac", where);
      }
    }
    for (int a = 0; a < model.num_agents(); ++a) {
      for (int b = a + 1; b < model.num_agents(); ++b) {
        for (Subset x : model.choice_cells(a, m)) {
          for (Subset y : model.choice_cells(b, m)) {
            if ((x & y) == 0) {
              return CheckReport::fail("btac", {{"violated", "independence"},
                                                {"moment", frame.name(m)},
                                                {"agent_a", model.agents()[a].name()},
                                                {"agent_b", model.agents()[b].name()},
                                                {"cell_a", hist_names(x)},
                                                {"cell_b", hist_names(y)}});
            }
          }
        }
      }
    }
  }
  return CheckReport::pass("btac");
}

BTACModel btac_model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ModelError("model file must be a JSON object");
  for (const char* key : {"moments", "order", "agents", "choice"}) {
    if (!j.contains(key)) throw ModelError(std::string("model file missing '") + key + "'");
  }
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto& pair : j.at("order")) {
    if (!pair.is_array() || pair.size() != 2) throw ModelError("order entries must be pairs");
    order.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
  }
  BTFrame frame(j.at("moments").get<std::vector<std::string>>(), order);

  std::vector<AgentId> agents;
  for (const auto& name : j.at("agents")) agents.emplace_back(name.get<std::string>());

  std::map<std::string, std::map<std::string, std::vector<std::vector<std::string>>>> choice;
  for (const auto& [agent, table] : j.at("choice").items()) {
    for (const auto& [moment, cells] : table.items()) {
      choice[agent][moment] = cells.get<std::vector<std::vector<std::string>>>();
    }
  }

  std::map<std::string, std::vector<std::pair<std::string, std::string>>> valuation;
  if (j.contains("valuation")) {
    for (const auto& [atom, pairs] : j.at("valuation").items()) {
      for (const auto& pair : pairs) {
        if (!pair.is_array() || pair.size() != 2) {
          throw ModelError("valuation entries must be [moment, historyId] pairs");
        }
        valuation[atom].emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
      }
      if (pairs.empty()) valuation[atom];  // keep empty atoms
    }
  }
  return BTACModel(std::move(frame), std::move(agents), choice, valuation);
}

nlohmann::json btac_model_to_json(const BTACModel& model) {
  const BTFrame& frame = model.frame();
  nlohmann::json j;
  j["moments"] = frame.moments();
  nlohmann::json order = nlohmann::json::array();
  for (int a = 0; a < frame.num_moments(); ++a) {
    for (int b : subset_members(frame.above(a))) {
      order.push_back({frame.name(a), frame.name(b)});
    }
  }
  j["order"] = std::move(order);
  nlohmann::json agents = nlohmann::json::array();
  for (const auto& a : model.agents()) agents.push_back(a.name());
  j["agents"] = std::move(agents);

  auto hist_names = [&](Subset hs) {
    nlohmann::json arr = nlohmann::json::array();
    for (int h : subset_members(hs)) arr.push_back(model.history_id(h));
    return arr;
  };
  nlohmann::json choice = nlohmann::json::object();
  for (int a = 0; a < model.num_agents(); ++a) {
    nlohmann::json table = nlohmann::json::object();
    for (int m = 0; m < frame.num_moments(); ++m) {
      nlohmann::json cells = nlohmann::json::array();
      for (Subset cell : model.choice_cells(a, m)) cells.push_back(hist_names(cell));
      table[frame.name(m)] = std::move(cells);
    }
    choice[model.agents()[a].name()] = std::move(table);
  }
  j["choice"] = std::move(choice);

  nlohmann::json val = nlohmann::json::object();
  for (const auto& [atom, per_moment] : model.valuation()) {
    nlohmann::json pairs = nlohmann::json::array();
    for (int m = 0; m < frame.num_moments(); ++m) {
      for (int h : subset_members(per_moment[m])) {
        pairs.push_back({frame.name(m), model.history_id(h)});
      }
    }
    val[atom] = std::move(pairs);
  }
  j["valuation"] = std::move(val);
  return j;
}

}  // namespace stitkit
