#include "stitkit/bridge.hpp"

#include <unordered_map>

namespace stitkit {

NbhdModel bt_to_osstit(const BTACModel& model, const std::string& moment) {
  const BTFrame& frame = model.frame();
  int m = frame.index_of(moment);
  std::vector<int> hs = subset_members(model.hm(m));

  std::vector<std::string> state_names;
  std::unordered_map<int, int> hist_to_state;
  for (int h : hs) {
    hist_to_state[h] = static_cast<int>(state_names.size());
    state_names.push_back(frame.name(m) + "/" + model.history_id(h));
  }
  StateSet states(state_names);

  auto remap = [&](Subset hset) {
    Subset out = 0;
    for (int h : subset_members(hset)) {
      auto it = hist_to_state.find(h);
      if (it != hist_to_state.end()) out |= subset_single(it->second);
    }
    return out;
  };

  std::vector<std::vector<Subset>> per_agent;
  for (int a = 0; a < model.num_agents(); ++a) {
    std::vector<Subset> cells;
    for (Subset cell : model.choice_cells(a, m)) {
      Subset mapped = remap(cell & model.hm(m));
      if (mapped) cells.push_back(mapped);
    }
    per_agent.push_back(std::move(cells));
  }

  NbhdModel out{NbhdFrame::uniform(std::move(states), model.agents(), std::move(per_agent)), {}};
  for (const auto& [atom, per_moment] : model.valuation()) {
    out.valuation[atom] = remap(per_moment[m]);
  }
  return out;
}

DisjointUnion disjoint_union(const std::vector<NbhdModel>& models) {
  if (models.empty()) throw ModelError("disjoint union of zero models");
  const auto& agents = models.front().frame.agents();
  for (const auto& m : models) {
    if (m.frame.agents() != agents) throw ModelError("agent-set mismatch across components");
  }

  std::vector<std::string> names;
  std::vector<int> offsets;
  for (std::size_t n = 0; n < models.size(); ++n) {
    offsets.push_back(static_cast<int>(names.size()));
    for (const auto& s : models[n].frame.states().names()) {
      names.push_back("c" + std::to_string(n) + ":" + s);
    }
  }
  StateSet states(names);

  std::vector<std::vector<std::vector<Subset>>> gens(
      agents.size(), std::vector<std::vector<Subset>>(states.size()));
  std::vector<Subset> blocks;
  for (std::size_t n = 0; n < models.size(); ++n) {
    const NbhdFrame& f = models[n].frame;
    int off = offsets[n];
    blocks.push_back(subset_full(f.num_states()) << off);
    for (int a = 0; a < f.num_agents(); ++a) {
      for (int w = 0; w < f.num_states(); ++w) {
        for (Subset g : f.core(a, w)) {
          gens[a][off + w].push_back(g << off);
        }
      }
    }
  }

  NbhdModel model{NbhdFrame(std::move(states), agents, std::move(gens)), {}};
  for (std::size_t n = 0; n < models.size(); ++n) {
    for (const auto& [atom, set] : models[n].valuation) {
      model.valuation[atom] |= set << offsets[n];
    }
  }
  return DisjointUnion{std::move(model), std::move(blocks)};
}

namespace {

struct ScopedEval {
  const NbhdModel& model;
  const std::vector<Subset>& blocks;
  std::unordered_map<const void*, Subset> memo;

  Subset block_of(int w) const {
    for (Subset b : blocks) {
      if (subset_contains(b, w)) return b;
    }
    throw ModelError("state outside every block");
  }

  Subset run(const Formula& f) {
    auto it = memo.find(f.id());
    if (it != memo.end()) return it->second;
    Subset r = compute(f);
    memo.emplace(f.id(), r);
    return r;
  }

  Subset compute(const Formula& f) {
    const Subset full = model.frame.states().full();
    switch (f.kind()) {
      case Kind::Box: {
        Subset ext = run(f.child());
        Subset out = 0;
        for (Subset b : blocks) {
          if (subset_leq(b, ext)) out |= b;
        }
        return out;
      }
      case Kind::Dia: {
        Subset ext = run(f.child());
        Subset out = 0;
        for (Subset b : blocks) {
          if ((b & ext) != 0) out |= b;
        }
        return out;
      }
      case Kind::Not:
        return full & ~run(f.child());
      case Kind::Or:
        return run(f.left()) | run(f.right());
      case Kind::And:
        return run(f.left()) & run(f.right());
      case Kind::Implies:
        return (full & ~run(f.left())) | run(f.right());
      case Kind::Iff:
        return full & ~(run(f.left()) ^ run(f.right()));
      default: {
        // atoms and neighbourhood modalities are block-local already
        if (f.kind() == Kind::Atom) return model.val(f.atom_name());
        Subset ext = run(f.child());
        int a = model.frame.agent_index(f.agent());
        Subset out = 0;
        for (int w = 0; w < model.frame.num_states(); ++w) {
          bool v;
          switch (f.kind()) {
            case Kind::Ability:
              v = model.frame.member(a, w, ext);
              break;
            case Kind::AbilityDual:
              v = !model.frame.member(a, w, full & ~ext);
              break;
            case Kind::ForallCore:
              v = subset_leq(model.frame.core_union(a, w), ext);
              break;
            case Kind::ForallCoreDual:
              v = (model.frame.core_union(a, w) & ext) != 0;
              break;
            default:
              throw ModelError("stit operator in strategic evaluation: " + render(f));
          }
          if (v) out |= subset_single(w);
        }
        return out;
      }
    }
  }
};

}  // namespace

Subset extension_scoped(const NbhdModel& model, const std::vector<Subset>& blocks,
                        const Formula& f) {
  ScopedEval ev{model, blocks, {}};
  return ev.run(f);
}

CheckReport check_translation_equiv(const BTACModel& model, const Formula& f) {
  if (!is_osstit_pure(f)) throw ModelError("formula is not strategic: " + render(f));
  Formula translated = translate_tr(f);  // rejects [E:i]

  std::vector<NbhdModel> parts;
  for (const auto& moment : model.frame().moments()) {
    parts.push_back(bt_to_osstit(model, moment));
  }
  DisjointUnion u = disjoint_union(parts);

  Subset scoped = extension_scoped(u.model, u.blocks, f);
  Subset global = extension(u.model, f);

  nlohmann::json divergent = nlohmann::json::array();
  CheckReport report = CheckReport::pass("translation-equiv");
  for (int m = 0; m < model.frame().num_moments(); ++m) {
    for (int h : subset_members(model.hm(m))) {
      // union state for index m/h: block m, local position within W^m
      int local = 0;
      for (int h2 : subset_members(model.hm(m))) {
        if (h2 == h) break;
        ++local;
      }
      int w = subset_members(u.blocks[m]).at(local);
      bool lhs = subset_contains(scoped, w);
      bool rhs = eval_cstit(model, Index{m, h}, translated);
      std::string index_name = model.frame().name(m) + "/" + model.history_id(h);
      if (subset_contains(global, w) != lhs) {
        divergent.push_back(index_name);
      }
      if (lhs != rhs && report.holds) {
        report = CheckReport::fail(
            "translation-equiv",
            {{"index", index_name},
             {"union_state", u.model.frame.states().name(w)},
             {"strategic", lhs},
             {"classical", rhs},
             {"formula", render(f)},
             {"translation", render(translated)}});
      }
    }
  }
  if (!divergent.empty()) {
    report.info["global_box_divergence"] = std::move(divergent);
  }
  return report;
}

}  // namespace stitkit
