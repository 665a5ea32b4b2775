#include <doctest.h>

#include <algorithm>

#include "stitkit/bridge.hpp"
#include "stitkit/mc.hpp"
#include "stitkit/parser.hpp"
#include "stitkit/sweep.hpp"
#include "test_support.hpp"

using namespace stitkit;
using namespace stitkit::testing;

namespace {

BTACModel fork_model() {
  BTFrame frame({"m1", "m2", "m3"}, {{"m1", "m2"}, {"m1", "m3"}});
  std::map<std::string, std::map<std::string, std::vector<std::vector<std::string>>>> choice;
  choice["a"]["m1"] = {{"m2"}, {"m3"}};
  choice["a"]["m2"] = {{"m2"}};
  choice["a"]["m3"] = {{"m3"}};
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> valuation;
  valuation["p"] = {{"m1", "m2"}};
  return BTACModel(std::move(frame), {AgentId("a")}, choice, valuation);
}

// name-free structural signature for comparisons up to renaming
struct Signature {
  int states = 0;
  std::vector<std::vector<std::vector<Subset>>> gens;  // [agent][state]
  std::map<std::string, Subset> valuation;

  bool operator==(const Signature&) const = default;
};

Signature signature_of(const NbhdModel& m) {
  Signature sig;
  sig.states = m.frame.num_states();
  sig.gens.resize(m.frame.num_agents());
  for (int a = 0; a < m.frame.num_agents(); ++a) {
    for (int w = 0; w < m.frame.num_states(); ++w) {
      sig.gens[a].push_back(m.frame.core(a, w));
    }
  }
  sig.valuation = m.valuation;
  return sig;
}

Signature permuted_signature(const NbhdModel& m, const std::vector<int>& perm) {
  Signature sig;
  sig.states = m.frame.num_states();
  auto apply = [&](Subset s) {
    Subset out = 0;
    for (int i : subset_members(s)) out |= subset_single(perm[i]);
    return out;
  };
  sig.gens.resize(m.frame.num_agents());
  for (int a = 0; a < m.frame.num_agents(); ++a) {
    sig.gens[a].resize(m.frame.num_states());
    for (int w = 0; w < m.frame.num_states(); ++w) {
      std::vector<Subset> cells;
      for (Subset c : m.frame.core(a, w)) cells.push_back(apply(c));
      std::sort(cells.begin(), cells.end());
      sig.gens[a][perm[w]] = std::move(cells);
    }
  }
  for (const auto& [atom, set] : m.valuation) sig.valuation[atom] = apply(set);
  return sig;
}

NbhdModel single_state_model(const std::string& name, bool p) {
  StateSet ss({name});
  NbhdModel m{NbhdFrame::uniform(ss, {AgentId("a"), AgentId("b")}, {{1}, {1}}), {}};
  m.valuation["p"] = p ? 1 : 0;
  return m;
}

}  // namespace

TEST_CASE("per-moment extraction on the fork") {
  BTACModel bt = fork_model();

  NbhdModel at_root = bt_to_osstit(bt, "m1");
  CHECK(at_root.frame.states().names() == std::vector<std::string>{"m1/m2", "m1/m3"});
  CHECK(at_root.frame.core(AgentId("a"), "m1/m2") ==
        std::vector<Subset>{1, 2});  // two singleton cells
  CHECK(at_root.val("p") == at_root.frame.states().make_subset({"m1/m2"}));
  CHECK(check_nec(at_root.frame).holds);
  CHECK(is_class_C(at_root.frame).holds);
  CHECK(is_class_P(at_root.frame).holds);

  NbhdModel at_leaf = bt_to_osstit(bt, "m2");
  CHECK(at_leaf.frame.num_states() == 1);
  CHECK(at_leaf.frame.core(AgentId("a"), "m2/m2") == std::vector<Subset>{1});

  CHECK_THROWS_AS(bt_to_osstit(bt, "m9"), ModelError);
}

TEST_CASE("extraction of valid models lands in class P") {
  Rng rng(909);
  for (int i = 0; i < 60; ++i) {
    BTACModel bt = random_btac_model(rng.next_u64(), 4, 2, 2);
    REQUIRE(validate_btac(bt).holds);
    for (const auto& moment : bt.frame().moments()) {
      NbhdModel extracted = bt_to_osstit(bt, moment);
      CHECK(is_class_C(extracted.frame).holds);
      CHECK(is_class_P(extracted.frame).holds);
    }
  }
}

TEST_CASE("disjoint union of a single model renames only") {
  Rng rng(910);
  NbhdFrame f = random_any_frame(rng, 3, 2);
  NbhdModel m{f, {{"p", rng.subset(3)}}};
  DisjointUnion u = disjoint_union({m});
  CHECK(u.model.frame.states().name(0) == "c0:" + f.states().name(0));
  CHECK(signature_of(u.model) == signature_of(m));
  CHECK(u.blocks == std::vector<Subset>{subset_full(3)});
}

TEST_CASE("union of two single-state models") {
  DisjointUnion u = disjoint_union({single_state_model("w", true), single_state_model("w", false)});
  CHECK(u.model.frame.states().names() == std::vector<std::string>{"c0:w", "c1:w"});
  CHECK(u.model.frame.core(AgentId("a"), "c0:w") == std::vector<Subset>{1});
  CHECK(u.model.frame.core(AgentId("a"), "c1:w") == std::vector<Subset>{2});
  CHECK(u.model.val("p") == 1);
  // components keep their own neighbourhoods, so (nec) fails across blocks
  CHECK(!check_nec(u.model.frame).holds);
}

TEST_CASE("membership law of the union") {
  Rng rng(911);
  for (int round = 0; round < 40; ++round) {
    std::vector<NbhdModel> parts;
    int count = 1 + rng.below(2);
    int total = 0;
    for (int i = 0; i < count; ++i) {
      int n = 1 + rng.below(2);
      total += n;
      NbhdFrame f = random_any_frame(rng, n, 2);
      parts.push_back({f, {{"p", rng.subset(n)}}});
    }
    if (total > 4) continue;
    DisjointUnion u = disjoint_union(parts);

    for (std::size_t comp = 0; comp < parts.size(); ++comp) {
      int off = subset_members(u.blocks[comp]).front();
      int n = parts[comp].frame.num_states();
      for (int a = 0; a < 2; ++a) {
        for (int w = 0; w < n; ++w) {
          for (Subset x = 0; x <= subset_full(total); ++x) {
            Subset local = (x >> off) & subset_full(n);
            CHECK(u.model.frame.member(a, off + w, x) ==
                  parts[comp].frame.member(a, w, local));
            if (x == subset_full(total)) break;
          }
        }
      }
    }
  }
}

TEST_CASE("union is associative up to renaming and commutative up to isomorphism") {
  Rng rng(912);
  for (int round = 0; round < 20; ++round) {
    NbhdFrame fa = random_any_frame(rng, 1 + rng.below(2), 2);
    NbhdFrame fb = random_any_frame(rng, 1 + rng.below(2), 2);
    NbhdFrame fc = random_any_frame(rng, 1 + rng.below(2), 2);
    NbhdModel a{fa, {{"p", rng.subset(fa.num_states())}}};
    NbhdModel b{fb, {{"p", rng.subset(fb.num_states())}}};
    NbhdModel c{fc, {{"p", rng.subset(fc.num_states())}}};

    DisjointUnion flat = disjoint_union({a, b, c});
    DisjointUnion nested = disjoint_union({disjoint_union({a, b}).model, c});
    CHECK(signature_of(flat.model) == signature_of(nested.model));

    DisjointUnion ab = disjoint_union({a, b});
    DisjointUnion ba = disjoint_union({b, a});
    // swap the two blocks
    std::vector<int> perm(ab.model.frame.num_states());
    int na = fa.num_states(), nb = fb.num_states();
    for (int i = 0; i < na; ++i) perm[i] = nb + i;
    for (int i = 0; i < nb; ++i) perm[na + i] = i;
    CHECK(permuted_signature(ab.model, perm) == signature_of(ba.model));
  }
}

TEST_CASE("scoped box quantifies over the current block") {
  BTACModel bt = fork_model();
  std::vector<NbhdModel> parts;
  for (const auto& moment : bt.frame().moments()) parts.push_back(bt_to_osstit(bt, moment));
  DisjointUnion u = disjoint_union(parts);

  // block of m2 is the single index m2/m2 where p is false, so scoped box ~p
  // holds there while p holds nowhere globally but at m1/m2
  Subset scoped = extension_scoped(u.model, u.blocks, parse("box ~p"));
  int m2_state = u.model.frame.states().index_of("c1:m2/m2");
  CHECK(subset_contains(scoped, m2_state));
  Subset global = extension(u.model, parse("box ~p"));
  CHECK(global == 0);

  // per-block evaluation agrees with the classical box at each index
  for (int m = 0; m < bt.frame().num_moments(); ++m) {
    for (int h : subset_members(bt.hm(m))) {
      std::string state =
          "c" + std::to_string(m) + ":" + bt.frame().name(m) + "/" + bt.history_id(h);
      bool lhs = subset_contains(scoped, u.model.frame.states().index_of(state));
      bool rhs = eval_cstit(bt, Index{m, h}, parse("box ~p"));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("translation equivalence on the fork") {
  BTACModel bt = fork_model();
  CHECK(check_translation_equiv(bt, parse("p")).holds);
  CHECK(check_translation_equiv(bt, parse("[a] p")).holds);
  CHECK(check_translation_equiv(bt, parse("box p | [a] ~p")).holds);

  // the global box reading diverges at indices whose block satisfies ~p
  CheckReport rep = check_translation_equiv(bt, parse("box ~p"));
  CHECK(rep.holds);
  CHECK(rep.info.contains("global_box_divergence"));

  CHECK_THROWS_AS(check_translation_equiv(bt, parse("[E:a] p")), TranslateError);
  CHECK_THROWS_AS(check_translation_equiv(bt, parse("[stit:a] p")), ModelError);
}

TEST_CASE("translation equivalence fuzz, small") {
  TranslationFuzzConfig config;
  config.models = 60;
  config.formulas_per_model = 10;
  config.seed = 4242;
  TranslationFuzzReport rep = translation_fuzz(config, ExecMode::Serial);
  CHECK(rep.report.holds);
  CHECK(rep.checks == 600);
}
