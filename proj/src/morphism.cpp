#include "stitkit/morphism.hpp"

#include <algorithm>

#include "stitkit/mc.hpp"

namespace stitkit {

CoreMorphism::CoreMorphism(NbhdFrame source, NbhdFrame target, std::vector<int> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (static_cast<int>(map_.size()) != source_.num_states()) {
    throw ModelError("morphism map must be total on the source states");
  }
  for (int v : map_) {
    if (v < 0 || v >= target_.num_states()) throw ModelError("morphism map hits unknown state");
  }
  if (source_.agents() != target_.agents()) {
    throw ModelError("morphism endpoints must share the agent set");
  }
}

static std::vector<int> resolve_map(const NbhdFrame& source, const NbhdFrame& target,
                                    const std::map<std::string, std::string>& map) {
  std::vector<int> out(source.num_states(), -1);
  for (const auto& [src, tgt] : map) {
    out[source.states().index_of(src)] = target.states().index_of(tgt);
  }
  for (int w = 0; w < source.num_states(); ++w) {
    if (out[w] < 0) {
      throw ModelError("morphism map missing source state '" + source.states().name(w) + "'");
    }
  }
  return out;
}

CoreMorphism::CoreMorphism(NbhdFrame source, NbhdFrame target,
                           const std::map<std::string, std::string>& map)
    : CoreMorphism(source, target, resolve_map(source, target, map)) {}

Subset CoreMorphism::image(Subset x) const {
  Subset out = 0;
  for (int w : subset_members(x)) out |= subset_single(map_.at(w));
  return out;
}

CheckReport is_bounded_core_morphism(const CoreMorphism& m) {
  const NbhdFrame& src = m.source();
  const NbhdFrame& tgt = m.target();
  nlohmann::json forth_failures = nlohmann::json::array();
  nlohmann::json back_failures = nlohmann::json::array();
  for (int w = 0; w < src.num_states(); ++w) {
    int fw = m.apply(w);
    for (int a = 0; a < src.num_agents(); ++a) {
      const auto& tgt_core = tgt.core(a, fw);
      for (Subset x : src.core(a, w)) {
        Subset fx = m.image(x);
        if (std::find(tgt_core.begin(), tgt_core.end(), fx) == tgt_core.end()) {
          forth_failures.push_back({{"agent", src.agents()[a].name()},
                                    {"state", src.states().name(w)},
                                    {"cell", subset_to_json(src.states(), x)},
                                    {"image", subset_to_json(tgt.states(), fx)}});
        }
      }
      for (Subset y : tgt_core) {
        bool covered = false;
        for (Subset x : src.core(a, w)) {
          if (m.image(x) == y) {
            covered = true;
            break;
          }
        }
        if (!covered) {
          back_failures.push_back({{"agent", src.agents()[a].name()},
                                   {"state", src.states().name(w)},
                                   {"target_cell", subset_to_json(tgt.states(), y)}});
        }
      }
    }
  }
  if (forth_failures.empty() && back_failures.empty()) {
    return CheckReport::pass("bounded-core-morphism");
  }
  return CheckReport::fail("bounded-core-morphism",
                           {{"forth", forth_failures}, {"back", back_failures}});
}

bool is_surjective(const CoreMorphism& m) {
  Subset image = 0;
  for (int w = 0; w < m.source().num_states(); ++w) image |= subset_single(m.apply(w));
  return image == m.target().states().full();
}

CoreMorphism compose(const CoreMorphism& f, const CoreMorphism& g) {
  if (!(f.target() == g.source())) {
    throw ModelError("composition endpoints do not match");
  }
  std::vector<int> map;
  for (int w = 0; w < f.source().num_states(); ++w) map.push_back(g.apply(f.apply(w)));
  return CoreMorphism(f.source(), g.target(), std::move(map));
}

namespace {

// Joint extension of a formula in the source and target models; the
// enumeration keeps one representative formula per distinct pair.
struct Layer {
  Subset src;
  Subset tgt;
  std::string repr;
};

}  // namespace

CheckReport check_modal_equivalence(const CoreMorphism& m, const NbhdModel& src_model,
                                    int depth) {
  if (!(src_model.frame == m.source())) {
    throw ModelError("model frame differs from the morphism source");
  }

  // fibered target valuation: V2(p) = f[V1(p)] with f^-1[V2(p)] = V1(p)
  NbhdModel tgt_model{m.target(), {}};
  for (const auto& [atom, v1] : src_model.valuation) {
    Subset v2 = m.image(v1);
    Subset pullback = 0;
    for (int w = 0; w < m.source().num_states(); ++w) {
      if (subset_contains(v2, m.apply(w))) pullback |= subset_single(w);
    }
    if (pullback != v1) {
      throw ModelError("valuation not fiber-compatible",
                       {{"atom", atom},
                        {"valuation", subset_to_json(m.source().states(), v1)},
                        {"fiber_closure", subset_to_json(m.source().states(), pullback)}});
    }
    tgt_model.valuation[atom] = v2;
  }

  auto agree = [&](const Layer& layer, CheckReport& report) {
    for (int w = 0; w < m.source().num_states(); ++w) {
      bool at_src = subset_contains(layer.src, w);
      bool at_tgt = subset_contains(layer.tgt, m.apply(w));
      if (at_src != at_tgt) {
        report = CheckReport::fail("modal-equivalence",
                                   {{"formula", layer.repr},
                                    {"state", m.source().states().name(w)},
                                    {"image", m.target().states().name(m.apply(w))},
                                    {"source_value", at_src},
                                    {"target_value", at_tgt}});
        return false;
      }
    }
    return true;
  };

  CheckReport report = CheckReport::pass("modal-equivalence");
  std::vector<Layer> layers;
  auto seen = [&](Subset s, Subset t) {
    for (const Layer& l : layers) {
      if (l.src == s && l.tgt == t) return true;
    }
    return false;
  };
  auto add = [&](Subset s, Subset t, std::string repr) {
    if (seen(s, t)) return false;
    Layer layer{s, t, std::move(repr)};
    if (!agree(layer, report)) {
      layers.push_back(std::move(layer));
      return false;  // stop growing; the first witness is enough
    }
    layers.push_back(std::move(layer));
    return true;
  };

  for (const auto& [atom, v1] : src_model.valuation) {
    if (!report.holds) return report;
    add(v1, tgt_model.valuation.at(atom), atom);
  }

  const Subset src_full = m.source().states().full();
  const Subset tgt_full = m.target().states().full();
  int current_depth = 0;
  bool grew = true;
  while (grew && report.holds) {
    grew = false;
    // Boolean closure at the current depth
    for (std::size_t i = 0; i < layers.size() && report.holds; ++i) {
      Layer l = layers[i];
      grew |= add(src_full & ~l.src, tgt_full & ~l.tgt, "~(" + l.repr + ")");
      for (std::size_t j = 0; j < layers.size() && report.holds; ++j) {
        Layer r = layers[j];
        grew |= add(l.src | r.src, l.tgt | r.tgt, "(" + l.repr + ") | (" + r.repr + ")");
      }
    }
    if (grew || !report.holds) continue;
    if (current_depth >= depth) break;
    ++current_depth;
    // one modal step
    std::vector<Layer> base = layers;
    for (const Layer& l : base) {
      if (!report.holds) break;
      grew |= add(l.src == src_full ? src_full : 0, l.tgt == tgt_full ? tgt_full : 0,
                  "box (" + l.repr + ")");
      for (int a = 0; a < m.source().num_agents(); ++a) {
        Subset s = 0, t = 0;
        for (int w = 0; w < m.source().num_states(); ++w) {
          if (m.source().member(a, w, l.src)) s |= subset_single(w);
        }
        for (int w = 0; w < m.target().num_states(); ++w) {
          if (m.target().member(a, w, l.tgt)) t |= subset_single(w);
        }
        grew |= add(s, t, "[" + m.source().agents()[a].name() + "] (" + l.repr + ")");
        if (!report.holds) break;
      }
    }
  }
  return report;
}

UndefinabilityFixture partition_undefinability_fixture() {
  std::vector<AgentId> agents{AgentId("a")};

  StateSet w1234({"w1", "w2", "w3", "w4"});
  Subset full1 = w1234.full();
  std::vector<std::vector<Subset>> gens1(1);
  gens1[0] = {w1234.make_subset({"w1", "w2"}), w1234.make_subset({"w3", "w4"})};
  std::vector<std::vector<std::vector<Subset>>> table1{
      {gens1[0], {full1}, {full1}, {full1}}};
  NbhdFrame f1(w1234, agents, table1);

  StateSet w123({"w1", "w2", "w3"});
  Subset full2 = w123.full();
  std::vector<Subset> core2{w123.make_subset({"w1", "w2"}), w123.make_subset({"w2", "w3"})};
  std::vector<std::vector<std::vector<Subset>>> table2{{core2, {full2}, {full2}}};
  NbhdFrame f2(w123, agents, table2);

  std::map<std::string, std::string> map{
      {"w1", "w1"}, {"w2", "w2"}, {"w3", "w3"}, {"w4", "w2"}};
  CoreMorphism morphism(f1, f2, map);
  return UndefinabilityFixture{std::move(f1), std::move(f2), std::move(morphism)};
}

}  // namespace stitkit
