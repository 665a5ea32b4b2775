#include "stitkit/mc.hpp"

#include <unordered_map>

namespace stitkit {

namespace {

struct Evaluator {
  const NbhdModel& model;
  std::unordered_map<const void*, Subset> memo;

  Subset run(const Formula& f) {
    auto it = memo.find(f.id());
    if (it != memo.end()) return it->second;
    Subset result = compute(f);
    memo.emplace(f.id(), result);
    return result;
  }

  Subset compute(const Formula& f) {
    const Subset full = model.frame.states().full();
    switch (f.kind()) {
      case Kind::Atom:
        return model.val(f.atom_name());
      case Kind::Not:
        return full & ~run(f.child());
      case Kind::Or:
        return run(f.left()) | run(f.right());
      case Kind::And:
        return run(f.left()) & run(f.right());
      case Kind::Implies:
        return (full & ~run(f.left())) | run(f.right());
      case Kind::Iff: {
        Subset a = run(f.left());
        Subset b = run(f.right());
        return full & ~(a ^ b);
      }
      case Kind::Box:
        return run(f.child()) == full ? full : Subset{0};
      case Kind::Dia:
        return run(f.child()) != 0 ? full : Subset{0};
      case Kind::Ability: {
        Subset ext = run(f.child());
        return per_state(f.agent(), [&](int a, int w) { return model.frame.member(a, w, ext); });
      }
      case Kind::AbilityDual: {
        Subset ext = run(f.child());
        // ~[i]~f
        return per_state(f.agent(), [&](int a, int w) {
          return !model.frame.member(a, w, full & ~ext);
        });
      }
      case Kind::ForallCore: {
        Subset ext = run(f.child());
        return per_state(f.agent(), [&](int a, int w) {
          return subset_leq(model.frame.core_union(a, w), ext);
        });
      }
      case Kind::ForallCoreDual: {
        Subset ext = run(f.child());
        // ~[E:i]~f: some core state satisfies f
        return per_state(f.agent(), [&](int a, int w) {
          return (model.frame.core_union(a, w) & ext) != 0;
        });
      }
      case Kind::Stit:
      case Kind::StitDual:
        throw ModelError("stit operator is not part of the strategic language: " + render(f));
    }
    throw std::logic_error("unreachable");
  }

  template <typename Pred>
  Subset per_state(const AgentId& agent, Pred pred) {
    int a = model.frame.agent_index(agent);
    Subset out = 0;
    for (int w = 0; w < model.frame.num_states(); ++w) {
      if (pred(a, w)) out |= subset_single(w);
    }
    return out;
  }
};

}  // namespace

Subset extension(const NbhdModel& model, const Formula& f) {
  Evaluator ev{model, {}};
  return ev.run(f);
}

bool eval(const NbhdModel& model, int state, const Formula& f) {
  if (state < 0 || state >= model.frame.num_states()) throw ModelError("state index out of range");
  return subset_contains(extension(model, f), state);
}

bool eval(const NbhdModel& model, const std::string& state, const Formula& f) {
  return eval(model, model.frame.states().index_of(state), f);
}

bool eval_ability_core(const NbhdModel& model, int state, const AgentId& agent, const Formula& f) {
  Subset ext = extension(model, f);
  int a = model.frame.agent_index(agent);
  for (Subset cell : model.frame.core(a, state)) {
    if (subset_leq(cell, ext)) return true;
  }
  return false;
}

bool eval_forall_rel(const NbhdModel& model, int state, const AgentId& agent, const Formula& f) {
  RelationReport rel = relation_Ri(model.frame, agent);  // throws unless (nec)
  Subset ext = extension(model, f);
  return subset_leq(rel.rows.at(state), ext);
}

bool valid_on(const NbhdModel& model, const Formula& f) {
  return extension(model, f) == model.frame.states().full();
}

}  // namespace stitkit
